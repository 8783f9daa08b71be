#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "eqdeg/graph.hpp"
#include "eqdeg/partition.hpp"

namespace eqdeg {

using Colour = std::int64_t;

// Per-vertex colour lists. Every list holds t distinct positive colours when
// handed to the algorithm; list order is kept, the algorithm only removes.
struct ListAssignment {
    std::size_t t = 0;
    std::vector<std::vector<Colour>> lists;

    bool operator==(const ListAssignment&) const = default;
};

struct Colouring {
    std::vector<Colour> colors; // colors[v] > 0

    // Colour classes C_i keyed by colour, members ascending.
    std::map<Colour, std::vector<Vertex>> classes() const;

    bool operator==(const Colouring&) const = default;
};

// Block sizes of the colouring schedule for n vertices, list size t and
// layer size k:
//   n = beta*t + r2 (1 <= r2 <= t),  t = gamma*k + r,  beta*r = rho*k + x,
// so n = r2 + x + rho*k + beta*gamma*k. eta + 1 = ceil(n/k), r1 = n - eta*k.
struct Counters {
    std::size_t n = 0, t = 0, k = 0;
    std::size_t eta = 0, r1 = 0;
    std::size_t beta = 0, r2 = 0;
    std::size_t gamma = 0, r = 0;
    std::size_t rho = 0, x = 0;

    bool operator==(const Counters&) const = default;
};

Counters compute_counters(std::size_t n, std::size_t t, std::size_t k);

// reverse(S_1) ++ reverse(S_2) ++ ... ++ reverse(S_{eta+1})
std::vector<Vertex> build_order(const KdPartition& p);

enum class TieBreak { Smallest, Seeded };

struct ColoringOptions {
    TieBreak tie_break = TieBreak::Smallest;
    std::uint64_t seed = 0;
    // Re-checks the per-call list-size floors, the degeneracy of every
    // partial colour class and the final equitable grouping; throws
    // InvariantError on the first failure.
    bool debug_asserts = false;
};

// Which part of the schedule coloured a vertex.
enum class Phase { Head, Remainder, Blocks, Tail };

struct ColourCall {
    Vertex vertex = 0;
    Phase phase = Phase::Head;
    std::size_t block = 0;         // block index within the phase
    std::size_t index_in_block = 0; // 1-based
    std::size_t available = 0;     // |L(v) \ C| when the colour was picked
    Colour colour = 0;
};

// Intermediate artefacts of one run, for inspection and tests.
struct ColoringTrace {
    Counters counters;
    std::vector<Vertex> order;        // S
    std::vector<Vertex> coloured;     // S_col before reordering
    std::vector<Vertex> reordered;    // S_col after reordering
    std::vector<Vertex> tail;         // the last beta*gamma*k vertices of S
    std::vector<std::vector<Colour>> tail_lists; // their lists right after the list modification
    std::vector<ColourCall> calls;    // one entry per coloured vertex, in order
};

// Mutable working state of the algorithm: current lists, partial colouring,
// and for every vertex the number of neighbours per colour.
class ColoringState {
  public:
    ColoringState(const Graph& g, const ListAssignment& lists, std::size_t d, ColoringOptions options = {});

    const Graph& graph() const { return g_; }
    std::size_t d() const { return d_; }
    const std::vector<Colour>& list(Vertex v) const { return lists_[v]; }
    std::vector<Colour>& list(Vertex v) { return lists_[v]; }
    bool is_coloured(Vertex v) const { return colors_[v] != 0; }
    Colour colour_of(Vertex v) const { return colors_[v]; }
    // Number of neighbours of v currently coloured c.
    std::size_t neighbours_with(Vertex v, Colour c) const;
    const ColoringOptions& options() const { return options_; }

    Colouring colouring() const;

    // Set by equitable_coloring; lets debug mode check per-call list floors.
    std::optional<Counters> schedule;
    ColoringTrace* trace = nullptr;

  private:
    friend Colour colour_vertex(ColoringState& state, Vertex v);

    const Graph& g_;
    std::size_t d_;
    ColoringOptions options_;
    std::vector<std::vector<Colour>> lists_;
    std::vector<Colour> colors_;
    std::vector<std::vector<std::pair<Colour, std::size_t>>> counts_;
    std::mt19937_64 rng_;
};

// Gives v a colour from its current list (smallest, or uniform under the
// seeded tie-break), then deletes that colour from the list of every
// uncoloured neighbour that now has exactly d neighbours of that colour.
// Throws InvariantError if the list is empty.
Colour colour_vertex(ColoringState& state, Vertex v);

// Lower bound on |L(v) \ C| for the `index_in_block`-th vertex of a block
// in the given phase, as guaranteed for a valid (k, d)-partition with t >= k.
std::size_t guaranteed_list_size(const Counters& counters, Phase phase, std::size_t index_in_block);

// Colours `vertices` in consecutive blocks of `block`; inside a block each
// vertex first loses the colours already used in that block, so a block's
// colours are pairwise distinct.
void colour_list(ColoringState& state, std::span<const Vertex> vertices, std::size_t block,
                 Phase phase = Phase::Head);

// Permutes a coloured list so that any k consecutive entries have distinct
// colours. Expects the first x entries distinct and each following k-block
// distinct. Keeps the x-prefix, then refills each k-block greedily with the
// earliest pool vertex whose colour avoids the last k-1 placed.
std::vector<Vertex> reorder(std::span<const Vertex> coloured, std::span<const Colour> colours, std::size_t k,
                            std::size_t x);

// For i = 1..beta, removes the colours of the i-th group of r vertices of
// `coloured` from the lists of the i-th group of `group` vertices of `rest`.
void modify_colour_lists(ColoringState& state, std::span<const Vertex> coloured, std::span<const Vertex> rest,
                         std::size_t r, std::size_t group);

// Equitable list colouring whose colour classes induce (d-1)-degenerate
// subgraphs, given a (k, d)-partition and a t-uniform list assignment with
// t >= k. Every class has at most ceil(n/t) vertices.
Colouring equitable_coloring(const Graph& g, const KdPartition& p, const ListAssignment& lists,
                             const ColoringOptions& options = {}, ColoringTrace* trace = nullptr);

struct ColoringViolation {
    enum class Clause { Shape, NotInList, Degenerate, ClassSize };
    Clause clause = Clause::Shape;
    Vertex vertex = 0;  // witness for NotInList
    Colour colour = 0;  // witness class for Degenerate / ClassSize
    std::size_t size = 0;
    std::string message;
};

struct ColoringVerdict {
    bool valid = true;
    std::optional<ColoringViolation> violation;

    explicit operator bool() const { return valid; }
};

// (a) c(v) in L(v); (b) every class induces a (d-1)-degenerate subgraph;
// (c) every class has at most ceil(n/t) vertices.
ColoringVerdict verify_equitable_list_coloring(const Graph& g, const ListAssignment& original, std::size_t t,
                                               const Colouring& c, std::size_t d);

// Exhaustive search over all list choices with class-size and partial
// degeneracy pruning. Only practical for small graphs.
std::optional<Colouring> brute_force_equitable_coloring(const Graph& g, const ListAssignment& lists,
                                                        std::size_t t, std::size_t d);

// Random t-uniform lists drawn from the palette 1..palette.
ListAssignment random_uniform_lists(std::size_t n, std::size_t t, std::size_t palette, std::mt19937_64& rng);

} // namespace eqdeg
