#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "eqdeg/graph.hpp"
#include "eqdeg/list_coloring.hpp"
#include "eqdeg/partition.hpp"

namespace eqdeg {

// A graph with human-readable vertex labels and, where the construction
// provides them, a certified partition and a list assignment.
struct NamedGraph {
    Graph graph;
    std::vector<std::string> names; // names[v] labels vertex v
    std::optional<KdPartition> partition;
    std::optional<ListAssignment> lists;

    // Vertex carrying `label`; throws InputError for unknown labels.
    Vertex id(const std::string& label) const;

  private:
    mutable std::unordered_map<std::string, Vertex> index_;
};

// 2q+1 copies of K_6 on v_1^i..v_6^i, consecutive copies joined by a fixed
// 15-edge pattern that alternates with the parity of i. Bundles the
// copy-by-copy (6, 1)-partition.
NamedGraph gen_gq(std::size_t q);

// Two K_5s on v_j^1 and v_j^2, v_j^2 joined to v_j^1..v_5^1, pendant paths
// w_1^i..w_5^i with w_j^i ~ v_j^i and v_j^i ~ w_{j+1}^i. Bundles the
// (2, 3)-partition with layers (w_j^i, v_j^i) and 3-uniform lists
// {1,2,3} on v, {2,3,4} on w^1, {1,2,4} on w^2.
NamedGraph gen_example2();

enum class BasicKind { Path, Cycle, Complete, Random };

// path(n), cycle(n >= 3), complete(n), random(n, edge_probability, seed).
NamedGraph gen_basic(BasicKind kind, std::size_t n, double edge_probability = 0.0, std::uint64_t seed = 0);

// Random graph built around a random (k, d)-partition: vertex x_i of a layer
// receives at most d*i - 1 edges into earlier layers; edges inside a layer
// are free. The bundled partition always verifies.
NamedGraph gen_planted_partition(std::size_t n, std::size_t k, std::size_t d, std::uint64_t seed);

} // namespace eqdeg
