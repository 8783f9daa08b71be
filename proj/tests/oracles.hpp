#pragma once

// Independent reference implementations used only by the tests. They are
// deliberately naive: exhaustive enumeration over subsets or orderings.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <map>

#include "eqdeg/graph.hpp"
#include "eqdeg/list_coloring.hpp"
#include "eqdeg/partition.hpp"

namespace oracle {

using eqdeg::Graph;
using eqdeg::Vertex;

inline std::vector<std::vector<char>> adjacency_matrix(const Graph& g) {
    std::vector<std::vector<char>> m(g.num_vertices(), std::vector<char>(g.num_vertices(), 0));
    for (auto [u, v] : g.edges()) m[u][v] = m[v][u] = 1;
    return m;
}

// Every non-empty vertex subset (as a bitmask) induces a vertex of degree <= d.
inline bool degenerate_by_subsets(const Graph& g, std::size_t d, std::uint32_t universe) {
    const auto m = adjacency_matrix(g);
    const std::size_t n = g.num_vertices();
    for (std::uint32_t s = universe; s; s = (s - 1) & universe) {
        bool ok = false;
        for (std::size_t v = 0; v < n && !ok; ++v) {
            if (!(s >> v & 1)) continue;
            std::size_t deg = 0;
            for (std::size_t w = 0; w < n; ++w) deg += (s >> w & 1) && m[v][w];
            ok = deg <= d;
        }
        if (!ok) return false;
    }
    return true;
}

inline bool degenerate_by_subsets(const Graph& g, std::size_t d) {
    return degenerate_by_subsets(g, d, g.num_vertices() == 0 ? 0u : (1u << g.num_vertices()) - 1);
}

inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<eqdeg::Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            if (coin(rng)) edges.emplace_back(u, v);
        }
    }
    return Graph(n, edges);
}

// Does a (k,d)-partition exist? Tries every assignment of vertices to layers
// (layer sizes fixed) and every ordering inside each layer.
inline bool kd_partition_exists(const Graph& g, std::size_t k, std::size_t d) {
    const std::size_t n = g.num_vertices();
    if (n == 0) return true;
    const auto m = adjacency_matrix(g);
    const std::size_t layers = (n + k - 1) / k;
    const std::size_t first = n - (layers - 1) * k;
    // A permutation of the vertices read as S_1 ++ S_2 ++ ... with in-layer order.
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (std::size_t pos = first; pos < n && ok; ++pos) {
            const std::size_t layer_start = first + (pos - first) / k * k;
            const std::size_t i = pos - layer_start + 1;
            std::size_t back = 0;
            for (std::size_t q = 0; q < layer_start; ++q) back += m[perm[pos]][perm[q]];
            ok = back + 1 <= d * i;
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// List membership, class sizes, and degeneracy of every class by brute force
// over vertex subsets: a second colouring verifier sharing no code with the
// library's peeling one. n <= 31.
inline bool verify_by_subsets(const Graph& g, const eqdeg::ListAssignment& lists, std::size_t t,
                              const eqdeg::Colouring& c, std::size_t d) {
    const std::size_t n = g.num_vertices();
    for (Vertex v = 0; v < n; ++v) {
        const auto& l = lists.lists[v];
        if (std::find(l.begin(), l.end(), c.colors[v]) == l.end()) return false;
    }
    std::map<eqdeg::Colour, std::uint32_t> classes;
    for (Vertex v = 0; v < n; ++v) classes[c.colors[v]] |= 1u << v;
    for (auto [colour, mask] : classes) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) > (n + t - 1) / t) return false;
        if (!degenerate_by_subsets(g, d - 1, mask)) return false;
    }
    return true;
}

} // namespace oracle
