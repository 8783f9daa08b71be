#include "eqdeg/grid.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "eqdeg/error.hpp"

namespace eqdeg {

std::size_t GridSpec::num_vertices() const {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

Coords GridSpec::coords(Vertex v) const {
    Coords out(dims.size());
    std::size_t rest = v;
    for (std::size_t i = dims.size(); i-- > 0;) {
        out[i] = rest % dims[i] + 1;
        rest /= dims[i];
    }
    return out;
}

Vertex GridSpec::id(std::span<const std::size_t> coords) const {
    std::size_t id = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) id = id * dims[i] + (coords[i] - 1);
    return static_cast<Vertex>(id);
}

std::string GridSpec::label(Vertex v) const {
    const Coords c = coords(v);
    Coords original(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) original[original_axis[i]] = c[i];
    std::string out = "(";
    for (std::size_t i = 0; i < original.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(original[i]);
    }
    return out + ")";
}

Grid make_grid(std::span<const std::size_t> dims) {
    if (dims.empty()) throw InputError("a grid needs at least one axis");
    for (std::size_t n : dims) {
        if (n < 2) throw InputError("every grid axis must be a path on at least two vertices");
    }
    GridSpec spec;
    spec.original_axis.resize(dims.size());
    std::iota(spec.original_axis.begin(), spec.original_axis.end(), 0);
    std::stable_sort(spec.original_axis.begin(), spec.original_axis.end(),
                     [&](std::size_t a, std::size_t b) { return dims[a] > dims[b]; });
    for (std::size_t axis : spec.original_axis) spec.dims.push_back(dims[axis]);

    const std::size_t n = spec.num_vertices();
    std::vector<Edge> edges;
    std::size_t stride = 1;
    for (std::size_t axis = spec.dims.size(); axis-- > 0;) {
        for (std::size_t v = 0; v < n; ++v) {
            if ((v / stride) % spec.dims[axis] + 1 < spec.dims[axis]) {
                edges.emplace_back(static_cast<Vertex>(v), static_cast<Vertex>(v + stride));
            }
        }
        stride *= spec.dims[axis];
    }
    return {Graph(n, edges), std::move(spec)};
}

IncompleteGrid::IncompleteGrid(GridSpec spec)
    : spec_(std::move(spec)), present_(spec_.num_vertices(), 1), size_(spec_.num_vertices()) {
    layer_volume_ = spec_.num_vertices() / spec_.dims.front();
    layer_count_.assign(spec_.dims.front(), layer_volume_);
}

bool IncompleteGrid::contains(std::span<const std::size_t> coords) const {
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] < 1 || coords[i] > spec_.dims[i]) return false;
    }
    return contains(spec_.id(coords));
}

void IncompleteGrid::remove(Vertex v) {
    if (!present_[v]) throw InputError("vertex " + std::to_string(v) + " already removed");
    present_[v] = 0;
    --size_;
    --layer_count_[v / layer_volume_];
}

void IncompleteGrid::restore(Vertex v) {
    if (present_[v]) throw InputError("vertex " + std::to_string(v) + " is present");
    present_[v] = 1;
    ++size_;
    ++layer_count_[v / layer_volume_];
    cursor_ = std::min(cursor_, v);
}

std::vector<Vertex> IncompleteGrid::neighbors(Vertex v) const {
    std::vector<Vertex> out;
    std::size_t stride = 1;
    for (std::size_t axis = spec_.dims.size(); axis-- > 0;) {
        const std::size_t coord = (v / stride) % spec_.dims[axis];
        if (coord > 0 && present_[v - stride]) out.push_back(static_cast<Vertex>(v - stride));
        if (coord + 1 < spec_.dims[axis] && present_[v + stride]) out.push_back(static_cast<Vertex>(v + stride));
        stride *= spec_.dims[axis];
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t IncompleteGrid::degree(Vertex v) const { return neighbors(v).size(); }

std::size_t IncompleteGrid::first_nonempty_layer() const {
    if (empty()) throw InputError("grid has no vertices left");
    return lex_min() / layer_volume_ + 1;
}

std::vector<Vertex> IncompleteGrid::layer_vertices(std::size_t layer) const {
    std::vector<Vertex> out;
    if (layer < 1 || layer > spec_.dims.front()) return out;
    const std::size_t begin = (layer - 1) * layer_volume_;
    for (std::size_t v = begin; v < begin + layer_volume_; ++v) {
        if (present_[v]) out.push_back(static_cast<Vertex>(v));
    }
    return out;
}

bool IncompleteGrid::is_prefix_complete() const {
    if (empty()) return true;
    for (std::size_t layer = first_nonempty_layer() + 1; layer <= spec_.dims.front(); ++layer) {
        if (layer_count_[layer - 1] != layer_volume_) return false;
    }
    return true;
}

Vertex IncompleteGrid::lex_min() const {
    if (empty()) throw InputError("grid has no vertices left");
    while (!present_[cursor_]) ++cursor_;
    return cursor_;
}

Coords corner(const IncompleteGrid& grid) {
    const std::size_t d = grid.spec().dimension();
    if (d < 2) throw InputError("corner needs a grid of dimension at least 2");
    if (grid.empty()) throw InputError("corner of an empty grid");
    const Vertex y = grid.lex_min();
    if (grid.degree(y) > d) {
        throw InvariantError("corner vertex has degree above d", grid.spec().label(y));
    }
    return grid.spec().coords(y);
}

namespace {

// Neighbours of v still present in `grid`, not counting `skip`.
std::size_t outside_degree(const IncompleteGrid& grid, Vertex v, Vertex skip) {
    std::size_t deg = 0;
    for (Vertex w : grid.neighbors(v)) deg += w != skip;
    return deg;
}

// With y_1 and y_2 already removed: do y_1, y_2, y_3 have at most 1, 3, 5
// neighbours left outside the layer?
bool fits(const IncompleteGrid& grid, Vertex y1, Vertex y2, Vertex y3) {
    return outside_degree(grid, y1, y3) <= 1 && outside_degree(grid, y2, y3) <= 3 &&
           outside_degree(grid, y3, y3) <= 5;
}

struct Pick {
    std::optional<Vertex> vertex;
    bool fell_back = false; // taken from a layer after `layer`
    bool unfit = false;     // no candidate met the bounds
};

// y_3: the smallest present vertex on `layer` meeting the bounds, else the
// smallest one on a later layer meeting them. With no fitting vertex the
// plain smallest candidate is returned and flagged.
Pick pick_third(const IncompleteGrid& grid, std::size_t layer, Vertex y1, Vertex y2) {
    const std::size_t last = grid.spec().dims.front();
    Pick first_seen;
    for (std::size_t l = layer; l <= last; ++l) {
        for (Vertex v : grid.layer_vertices(l)) {
            if (!first_seen.vertex) first_seen = {v, l != layer, true};
            if (fits(grid, y1, y2, v)) return {v, l != layer, false};
        }
    }
    return first_seen;
}

} // namespace

KdPartition partition3d(std::span<const std::size_t> dims, Partition3dStats* stats) {
    if (dims.size() != 3) throw InputError("partition3d needs exactly three dimensions");
    const Grid grid = make_grid(dims);
    const GridSpec& spec = grid.spec;
    const std::size_t n = spec.num_vertices();
    const std::size_t alpha = (n + 2) / 3 - 1;

    IncompleteGrid rest(spec);
    Partition3dStats local;
    std::vector<std::vector<Vertex>> peeled;

    for (std::size_t j = alpha + 1; j >= 2; --j) {
        local.shape_breaks += !rest.is_prefix_complete();
        ++local.steps;

        const Coords a = corner(rest);
        const Vertex y1 = spec.id(a);
        const std::size_t deg = rest.degree(y1);
        ++local.degree_counts[deg];
        const std::size_t layer = a[0];
        Vertex y2 = y1;
        Pick y3;

        if (deg <= 1) {
            // deg 0 only happens if the remainder fell apart; it is handled
            // like deg 1, since y_1 then has no outside neighbour at all.
            const bool alone = rest.layer_size(layer) == 1;
            rest.remove(y1);
            y2 = spec.id(corner(rest));
            rest.remove(y2);
            y3 = pick_third(rest, alone ? layer + 1 : layer, y1, y2);
        } else if (deg == 2) {
            std::vector<Vertex> same_layer;
            for (Vertex w : rest.neighbors(y1)) {
                if (spec.coords(w)[0] == layer) same_layer.push_back(w);
            }
            if (same_layer.empty()) throw InvariantError("partition3d: corner has no neighbour on its layer", spec.label(y1));
            rest.remove(y1);
            // Usually unique; on the last layer there may be two.
            for (Vertex candidate : same_layer) {
                rest.remove(candidate);
                Pick p = pick_third(rest, layer, y1, candidate);
                if (!y3.vertex || (y3.unfit && !p.unfit)) {
                    y2 = candidate;
                    y3 = p;
                }
                rest.restore(candidate);
            }
            rest.remove(y2);
        } else {
            y2 = spec.id(Coords{a[0], a[1], a[2] + 1});
            y3 = {spec.id(Coords{a[0], a[1] + 1, a[2]}), false, false};
            rest.remove(y1);
            rest.remove(y2);
            y3.unfit = !fits(rest, y1, y2, *y3.vertex);
        }
        if (!y3.vertex || y2 == y1) throw InvariantError("partition3d could not complete a layer", spec.label(y1));
        local.layer_fallbacks += y3.fell_back;
        local.unfit_choices += y3.unfit;
        rest.remove(*y3.vertex);
        peeled.push_back({y1, y2, *y3.vertex});
    }

    KdPartition p{3, 2, {}};
    std::vector<Vertex> first;
    for (Vertex v = 0; v < n; ++v) {
        if (rest.contains(v)) first.push_back(v);
    }
    p.layers.push_back(std::move(first));
    for (auto it = peeled.rbegin(); it != peeled.rend(); ++it) p.layers.push_back(*it);
    if (stats) *stats = local;
    return p;
}

} // namespace eqdeg
