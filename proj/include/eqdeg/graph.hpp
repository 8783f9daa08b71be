#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace eqdeg {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;
using VertexSet = std::vector<Vertex>;

// Simple undirected graph on vertices 0..n-1. Neighbour lists are sorted,
// so every traversal visits vertices in ascending id order. Immutable once
// built.
class Graph {
  public:
    Graph() = default;

    // Duplicate edges (in either orientation) collapse to one; self-loops
    // and out-of-range endpoints throw InputError.
    Graph(std::size_t n, std::span<const Edge> edges);
    Graph(std::size_t n, std::initializer_list<Edge> edges)
        : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

    std::size_t num_vertices() const { return adj_.size(); }
    std::size_t num_edges() const { return num_edges_; }

    std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
    std::size_t degree(Vertex v) const { return adj_[v].size(); }
    bool adjacent(Vertex u, Vertex v) const;

    // All edges as (u, v) with u < v, lexicographically sorted.
    std::vector<Edge> edges() const;

    bool operator==(const Graph& other) const = default;

  private:
    std::vector<std::vector<Vertex>> adj_;
    std::size_t num_edges_ = 0;
};

// Checked neighbour query; throws InputError when v is out of range.
VertexSet neighbors(const Graph& g, Vertex v);

struct InducedSubgraph {
    Graph graph;
    // to_parent[i] is the vertex of the parent graph that became vertex i.
    std::vector<Vertex> to_parent;
};

// Subgraph induced by `vs`; vertex i of the result is vs[i].
InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vs);

// Whether repeatedly deleting a vertex of degree <= d empties the graph.
bool is_d_degenerate(const Graph& g, std::size_t d);

// Same test, but each deletion picks uniformly among the currently eligible
// vertices. The outcome does not depend on the order; this overload exists
// so that claim can be exercised.
bool is_d_degenerate(const Graph& g, std::size_t d, std::mt19937_64& rng);

// Smallest d with is_d_degenerate(g, d). Bucket-queue peeling, O(n + m).
std::size_t degeneracy(const Graph& g);

std::size_t max_degree(const Graph& g);

} // namespace eqdeg
