#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eqdeg/graph.hpp"

namespace eqdeg {

// A layered vertex partition S_1, ..., S_{eta+1}. layers[0] is S_1 and may
// be short; every later layer holds exactly k vertices, stored in the order
// x_1..x_k that certifies it. A (k, d)-partition additionally requires
//
//     |N(x_i) ∩ (S_1 ∪ ... ∪ S_{j-1})| <= d*i - 1   for every j >= 2, i = 1..k.
struct KdPartition {
    std::size_t k = 1;
    std::size_t d = 1;
    std::vector<std::vector<Vertex>> layers;

    std::size_t num_vertices() const;
    bool operator==(const KdPartition&) const = default;
};

struct PartitionViolation {
    enum class Kind { Structure, BackDegree };
    Kind kind = Kind::Structure;
    std::size_t layer = 0;    // 0-based index into layers
    std::size_t position = 0; // 1-based position i inside the layer
    Vertex vertex = 0;
    std::size_t back_degree = 0;
    std::size_t bound = 0; // d*i - 1
    std::string message;
};

struct PartitionVerdict {
    bool valid = true;
    std::optional<PartitionViolation> violation;

    explicit operator bool() const { return valid; }
};

// Checks shape (layer sizes, ceil(n/k) layers, disjoint cover of V) and then
// the back-degree bound for every stored position. Never throws.
PartitionVerdict verify_kd_partition(const Graph& g, const KdPartition& p);

// back_degrees(g, p)[j][i] = |N(layers[j][i]) ∩ (layers[0] ∪ ... ∪ layers[j-1])|.
// Requires p to be structurally sound.
std::vector<std::vector<std::size_t>> back_degrees(const Graph& g, const KdPartition& p);

// Finds positions for k external degrees so that the value placed at
// position i (1-based) is at most d*i - 1. Returns the indices into
// `ext_degrees` in position order, or nullopt. Sorting ascending is optimal
// because the bounds grow with i.
std::optional<std::vector<std::size_t>> layer_ordering_exists(std::span<const std::size_t> ext_degrees,
                                                              std::size_t k, std::size_t d);

struct SearchResult {
    enum class Status { Found, ProvedAbsent, BudgetExhausted };
    Status status = Status::ProvedAbsent;
    std::optional<KdPartition> partition;
    std::size_t expanded = 0; // candidate k-subsets examined
};

inline constexpr std::size_t unlimited_budget = std::numeric_limits<std::size_t>::max();

// Exact backtracking search. Layers are peeled from the back: each step picks
// a k-subset of the remaining vertices whose degrees into the rest admit a
// certifying order, then recurses on the rest. Subsets are tried in
// lexicographic order of vertex ids; remainders already shown to be dead ends
// are memoised. `budget` caps the number of subsets examined.
SearchResult search_kd_partition(const Graph& g, std::size_t k, std::size_t d,
                                 std::size_t budget = unlimited_budget);

// Every k-subset of `remaining` that could serve as the last layer of a
// (k, d)-partition of g[remaining], each in certified order. Stops after
// `budget` subsets examined; `exhausted` reports whether it ran to completion.
struct LastLayerEnumeration {
    std::vector<std::vector<Vertex>> layers;
    std::size_t expanded = 0;
    bool exhausted = true;
};
LastLayerEnumeration enumerate_last_layers(const Graph& g, std::span<const Vertex> remaining, std::size_t k,
                                           std::size_t d, std::size_t budget = unlimited_budget);

// Heuristic: repeatedly peel the k remaining vertices of smallest remaining
// degree. nullopt proves nothing.
std::optional<KdPartition> greedy_kd_partition(const Graph& g, std::size_t k, std::size_t d);

} // namespace eqdeg
