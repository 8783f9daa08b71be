#pragma once

#include <span>
#include <string>
#include <vector>

#include "eqdeg/graph.hpp"
#include "eqdeg/partition.hpp"

namespace eqdeg {

using Coords = std::vector<std::size_t>; // 1-based, one entry per axis

// Cartesian product of paths P_{n_1} x ... x P_{n_d}. Axes are stored sorted
// so that n_1 >= ... >= n_d; vertex ids enumerate coordinates
// lexicographically with axis 1 most significant. An axis-1 slice is a layer.
struct GridSpec {
    std::vector<std::size_t> dims;
    // original_axis[i] is the position sorted axis i had in the caller's input.
    std::vector<std::size_t> original_axis;

    std::size_t dimension() const { return dims.size(); }
    std::size_t num_vertices() const;
    Coords coords(Vertex v) const;
    Vertex id(std::span<const std::size_t> coords) const;
    // "(c_1,...,c_d)" with coordinates in the caller's original axis order.
    std::string label(Vertex v) const;
};

struct Grid {
    Graph graph;
    GridSpec spec;
};

// Each dim must be >= 2; dims are sorted descending.
Grid make_grid(std::span<const std::size_t> dims);

// The vertices of a grid that have not been removed yet. Nothing here
// assumes the removals keep any particular shape; is_prefix_complete()
// reports whether they did.
class IncompleteGrid {
  public:
    explicit IncompleteGrid(GridSpec spec);

    const GridSpec& spec() const { return spec_; }
    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    bool contains(Vertex v) const { return present_[v] != 0; }
    bool contains(std::span<const std::size_t> coords) const;
    void remove(Vertex v);
    void restore(Vertex v);

    // Degree inside the remaining vertex set.
    std::size_t degree(Vertex v) const;
    std::vector<Vertex> neighbors(Vertex v) const;

    // 1-based index of the first layer that still has vertices.
    std::size_t first_nonempty_layer() const;
    std::size_t layer_size(std::size_t layer) const { return layer_count_[layer - 1]; }
    // Present vertices of a layer, ascending.
    std::vector<Vertex> layer_vertices(std::size_t layer) const;
    // True when every layer after the first non-empty one is complete.
    bool is_prefix_complete() const;

    // Smallest present id >= the previous answer (ids only ever disappear).
    Vertex lex_min() const;

  private:
    GridSpec spec_;
    std::vector<char> present_;
    std::vector<std::size_t> layer_count_;
    std::size_t layer_volume_ = 0;
    std::size_t size_ = 0;
    mutable Vertex cursor_ = 0;
};

// Corner(a_1..a_d): a_1 is the first non-empty layer, each later a_i is the
// least x_i that still extends (a_1..a_{i-1}) to a present vertex. That is
// the lexicographically smallest present vertex, so all its "-1" neighbours
// are gone and its degree is at most d. Requires d >= 2 and a non-empty grid.
Coords corner(const IncompleteGrid& grid);

struct Partition3dStats {
    std::size_t steps = 0;
    std::size_t degree_counts[4] = {0, 0, 0, 0}; // deg(y_1) at each step
    std::size_t shape_breaks = 0;   // steps that started on a non prefix-complete remainder
    std::size_t layer_fallbacks = 0; // y_3 came from a layer after the one first tried
    std::size_t unfit_choices = 0;   // no candidate kept the per-position bounds 1, 3, 5
};

// (3, 2)-partition of the grid make_grid(dims): ceil(n/3) - 1 layers of three
// vertices are cut from the front corner of the grid, the first of them
// becoming the last layer; what is left is S_1. Each layer is stored as
// (y_1, y_2, y_3).
KdPartition partition3d(std::span<const std::size_t> dims, Partition3dStats* stats = nullptr);

} // namespace eqdeg
