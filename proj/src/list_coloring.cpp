#include "eqdeg/list_coloring.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "eqdeg/error.hpp"

namespace eqdeg {

std::map<Colour, std::vector<Vertex>> Colouring::classes() const {
    std::map<Colour, std::vector<Vertex>> out;
    for (Vertex v = 0; v < colors.size(); ++v) out[colors[v]].push_back(v);
    return out;
}

Counters compute_counters(std::size_t n, std::size_t t, std::size_t k) {
    if (n == 0) throw InputError("compute_counters: n must be positive");
    if (k == 0) throw InputError("compute_counters: k must be positive");
    if (t < k) {
        throw InputError("list size t = " + std::to_string(t) + " is smaller than the layer size k = " +
                         std::to_string(k));
    }
    Counters c;
    c.n = n;
    c.t = t;
    c.k = k;
    c.eta = (n + k - 1) / k - 1;
    c.r1 = n - c.eta * k;
    c.beta = (n + t - 1) / t - 1;
    c.r2 = n % t == 0 ? t : n % t;
    c.gamma = t / k;
    c.r = t % k;
    c.rho = c.beta * c.r / k;
    c.x = c.beta * c.r % k;
    return c;
}

std::vector<Vertex> build_order(const KdPartition& p) {
    std::vector<Vertex> order;
    order.reserve(p.num_vertices());
    for (const auto& layer : p.layers) order.insert(order.end(), layer.rbegin(), layer.rend());
    return order;
}

ColoringState::ColoringState(const Graph& g, const ListAssignment& lists, std::size_t d, ColoringOptions options)
    : g_(g), d_(d), options_(options), lists_(lists.lists), colors_(g.num_vertices(), 0),
      counts_(g.num_vertices()), rng_(options.seed) {
    if (lists_.size() != g.num_vertices()) {
        throw InputError("list assignment covers " + std::to_string(lists_.size()) + " vertices, graph has " +
                         std::to_string(g.num_vertices()));
    }
    if (d == 0) throw InputError("d must be positive");
}

std::size_t ColoringState::neighbours_with(Vertex v, Colour c) const {
    for (const auto& [colour, count] : counts_[v]) {
        if (colour == c) return count;
    }
    return 0;
}

Colouring ColoringState::colouring() const { return {colors_}; }

namespace {

std::string describe_state(const ColoringState& state, Vertex v) {
    std::ostringstream out;
    out << "vertex " << v << ": current list empty; coloured neighbours:";
    for (Vertex w : state.graph().neighbors(v)) {
        if (state.is_coloured(w)) out << ' ' << w << "->" << state.colour_of(w);
    }
    std::size_t coloured = 0;
    for (Vertex u = 0; u < state.graph().num_vertices(); ++u) coloured += state.is_coloured(u);
    out << "; " << coloured << " of " << state.graph().num_vertices() << " vertices coloured";
    return out.str();
}

void check_class_degeneracy(const ColoringState& state, Colour c) {
    std::vector<Vertex> members;
    for (Vertex u = 0; u < state.graph().num_vertices(); ++u) {
        if (state.colour_of(u) == c) members.push_back(u);
    }
    if (!is_d_degenerate(induced_subgraph(state.graph(), members).graph, state.d() - 1)) {
        throw InvariantError("colour class " + std::to_string(c) + " is no longer (d-1)-degenerate",
                             std::to_string(members.size()) + " members");
    }
}

} // namespace

Colour colour_vertex(ColoringState& state, Vertex v) {
    auto& list = state.lists_[v];
    if (list.empty()) throw InvariantError("empty colour list", describe_state(state, v));

    Colour c;
    if (state.options_.tie_break == TieBreak::Smallest) {
        c = *std::min_element(list.begin(), list.end());
    } else {
        std::uniform_int_distribution<std::size_t> pick(0, list.size() - 1);
        c = list[pick(state.rng_)];
    }
    state.colors_[v] = c;

    for (Vertex w : state.g_.neighbors(v)) {
        auto& counts = state.counts_[w];
        auto it = std::find_if(counts.begin(), counts.end(), [c](const auto& e) { return e.first == c; });
        if (it == counts.end()) {
            counts.emplace_back(c, 1);
            it = std::prev(counts.end());
        } else {
            ++it->second;
        }
        // w now has exactly d neighbours coloured c: c is no longer safe for w.
        if (it->second == state.d_ && !state.is_coloured(w)) {
            auto& lw = state.lists_[w];
            lw.erase(std::remove(lw.begin(), lw.end(), c), lw.end());
        }
    }

    if (state.options_.debug_asserts) check_class_degeneracy(state, c);
    return c;
}

std::size_t guaranteed_list_size(const Counters& c, Phase phase, std::size_t index_in_block) {
    const auto t = static_cast<long long>(c.t);
    const auto k = static_cast<long long>(c.k);
    const auto i = static_cast<long long>(index_in_block);
    long long floor = 0;
    switch (phase) {
    case Phase::Head:
        floor = t - (i - 1);
        break;
    case Phase::Remainder:
    case Phase::Blocks:
        floor = t - k + 1;
        break;
    case Phase::Tail: {
        const long long y = (i - 1) / k;
        floor = t - static_cast<long long>(c.r) - k - y * k + 1;
        break;
    }
    }
    return floor > 0 ? static_cast<std::size_t>(floor) : 0;
}

void colour_list(ColoringState& state, std::span<const Vertex> vertices, std::size_t block, Phase phase) {
    if (vertices.empty()) return;
    if (block == 0 || vertices.size() % block != 0) {
        throw InputError("colour_list: " + std::to_string(vertices.size()) + " vertices do not split into blocks of " +
                         std::to_string(block));
    }
    std::vector<Colour> used;
    used.reserve(block);
    for (std::size_t start = 0; start < vertices.size(); start += block) {
        used.clear();
        for (std::size_t i = 0; i < block; ++i) {
            const Vertex v = vertices[start + i];
            auto& list = state.list(v);
            list.erase(std::remove_if(list.begin(), list.end(),
                                      [&](Colour c) { return std::find(used.begin(), used.end(), c) != used.end(); }),
                       list.end());
            const std::size_t available = list.size();
            if (state.options().debug_asserts && state.schedule) {
                const std::size_t floor = guaranteed_list_size(*state.schedule, phase, i + 1);
                if (available < floor) {
                    throw InvariantError("list of vertex " + std::to_string(v) + " has " + std::to_string(available) +
                                             " colours, expected at least " + std::to_string(floor),
                                         "block " + std::to_string(start / block) + ", index " +
                                             std::to_string(i + 1));
                }
            }
            const Colour c = colour_vertex(state, v);
            used.push_back(c);
            if (state.trace) state.trace->calls.push_back({v, phase, start / block, i + 1, available, c});
        }
    }
}

std::vector<Vertex> reorder(std::span<const Vertex> coloured, std::span<const Colour> colours, std::size_t k,
                            std::size_t x) {
    if (colours.size() != coloured.size()) throw InputError("reorder: colour list length mismatch");
    if (k == 0 || x > coloured.size() || (coloured.size() - x) % k != 0) {
        throw InputError("reorder: " + std::to_string(coloured.size()) + " entries are not " + std::to_string(x) +
                         " plus whole blocks of " + std::to_string(k));
    }
    struct Entry {
        Vertex v;
        Colour c;
    };
    std::vector<Entry> out;
    out.reserve(coloured.size());
    for (std::size_t i = 0; i < x; ++i) out.push_back({coloured[i], colours[i]});

    std::vector<Entry> pool;
    for (std::size_t start = x; start < coloured.size(); start += k) {
        pool.clear();
        for (std::size_t i = 0; i < k; ++i) pool.push_back({coloured[start + i], colours[start + i]});
        while (!pool.empty()) {
            const std::size_t look_back = std::min(k - 1, out.size());
            auto clashes = [&](const Entry& e) {
                for (std::size_t b = out.size() - look_back; b < out.size(); ++b) {
                    if (out[b].c == e.c) return true;
                }
                return false;
            };
            auto it = std::find_if(pool.begin(), pool.end(), [&](const Entry& e) { return !clashes(e); });
            if (it == pool.end()) {
                throw InvariantError("reorder: no vertex of the current block fits",
                                     "block starting at " + std::to_string(start));
            }
            out.push_back(*it);
            pool.erase(it);
        }
    }

    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t j = i + 1; j < std::min(out.size(), i + k); ++j) {
            if (out[i].c == out[j].c) {
                throw InvariantError("reorder: repeated colour inside a window of " + std::to_string(k),
                                     "positions " + std::to_string(i) + " and " + std::to_string(j));
            }
        }
    }
    std::vector<Vertex> result;
    result.reserve(out.size());
    for (const auto& e : out) result.push_back(e.v);
    return result;
}

void modify_colour_lists(ColoringState& state, std::span<const Vertex> coloured, std::span<const Vertex> rest,
                         std::size_t r, std::size_t group) {
    if (group == 0) {
        if (!rest.empty() || !coloured.empty()) throw InputError("modify_colour_lists: zero group size");
        return;
    }
    if (rest.size() % group != 0 || coloured.size() != rest.size() / group * r) {
        throw InputError("modify_colour_lists: expected beta*" + std::to_string(r) + " coloured and beta*" +
                         std::to_string(group) + " uncoloured vertices, got " + std::to_string(coloured.size()) +
                         " and " + std::to_string(rest.size()));
    }
    const std::size_t beta = rest.size() / group;
    for (std::size_t i = 0; i < beta; ++i) {
        std::vector<Colour> used;
        for (std::size_t a = 0; a < r; ++a) used.push_back(state.colour_of(coloured[i * r + a]));
        for (std::size_t b = 0; b < group; ++b) {
            auto& list = state.list(rest[i * group + b]);
            list.erase(std::remove_if(list.begin(), list.end(),
                                      [&](Colour c) { return std::find(used.begin(), used.end(), c) != used.end(); }),
                       list.end());
        }
    }
}

namespace {

void check_lists(const ListAssignment& lists, std::size_t n) {
    if (lists.lists.size() != n) {
        throw InputError("list assignment covers " + std::to_string(lists.lists.size()) + " vertices, graph has " +
                         std::to_string(n));
    }
    if (lists.t == 0) throw InputError("list size t must be positive");
    for (Vertex v = 0; v < n; ++v) {
        const auto& list = lists.lists[v];
        if (list.size() != lists.t) {
            throw InputError("list of vertex " + std::to_string(v) + " has " + std::to_string(list.size()) +
                             " colours, expected t = " + std::to_string(lists.t));
        }
        std::set<Colour> distinct(list.begin(), list.end());
        if (distinct.size() != list.size()) {
            throw InputError("list of vertex " + std::to_string(v) + " repeats a colour");
        }
        if (*distinct.begin() <= 0) throw InputError("colours must be positive integers");
    }
}

void check_distinct(const ColoringState& state, std::span<const Vertex> group, const std::string& what) {
    std::set<Colour> seen;
    for (Vertex v : group) {
        if (!seen.insert(state.colour_of(v)).second) {
            throw InvariantError("repeated colour inside " + what, "vertex " + std::to_string(v));
        }
    }
}

} // namespace

Colouring equitable_coloring(const Graph& g, const KdPartition& p, const ListAssignment& lists,
                             const ColoringOptions& options, ColoringTrace* trace) {
    const std::size_t n = g.num_vertices();
    check_lists(lists, n);
    if (lists.t < p.k) {
        throw InputError("list size t = " + std::to_string(lists.t) + " is smaller than the layer size k = " +
                         std::to_string(p.k));
    }
    if (auto verdict = verify_kd_partition(g, p); !verdict) {
        throw InputError("not a (" + std::to_string(p.k) + ", " + std::to_string(p.d) +
                         ")-partition: " + verdict.violation->message);
    }
    if (n == 0) return {};

    const Counters c = compute_counters(n, lists.t, p.k);
    const std::vector<Vertex> order = build_order(p);
    ColoringState state(g, lists, p.d, options);
    state.schedule = c;
    state.trace = trace;
    if (trace) {
        *trace = {};
        trace->counters = c;
        trace->order = order;
    }

    const std::span<const Vertex> s(order);
    const auto head = s.subspan(0, c.r2);
    const auto remainder = s.subspan(c.r2, c.x);
    const auto blocks = s.subspan(c.r2 + c.x, c.rho * c.k);
    const auto coloured = s.subspan(c.r2, c.x + c.rho * c.k);
    const auto tail = s.subspan(c.r2 + c.x + c.rho * c.k);

    colour_list(state, head, c.r2, Phase::Head);
    colour_list(state, remainder, c.x, Phase::Remainder);
    colour_list(state, blocks, c.k, Phase::Blocks);

    std::vector<Colour> coloured_colours;
    coloured_colours.reserve(coloured.size());
    for (Vertex v : coloured) coloured_colours.push_back(state.colour_of(v));
    const std::vector<Vertex> reordered = reorder(coloured, coloured_colours, c.k, c.x);

    modify_colour_lists(state, reordered, tail, c.r, c.gamma * c.k);
    if (trace) {
        trace->coloured.assign(coloured.begin(), coloured.end());
        trace->reordered = reordered;
        trace->tail.assign(tail.begin(), tail.end());
        for (Vertex v : tail) trace->tail_lists.push_back(state.list(v));
    }

    colour_list(state, tail, c.gamma * c.k, Phase::Tail);

    if (options.debug_asserts) {
        // Each of the beta groups (a tail block plus its r-slice of the
        // reordered list) and the head must be rainbow.
        const std::size_t group = c.gamma * c.k;
        for (std::size_t i = 0; i < c.beta; ++i) {
            std::vector<Vertex> w(tail.begin() + static_cast<std::ptrdiff_t>(i * group),
                                  tail.begin() + static_cast<std::ptrdiff_t>((i + 1) * group));
            w.insert(w.end(), reordered.begin() + static_cast<std::ptrdiff_t>(i * c.r),
                     reordered.begin() + static_cast<std::ptrdiff_t>((i + 1) * c.r));
            check_distinct(state, w, "group " + std::to_string(i + 1));
        }
        check_distinct(state, head, "the head block");
    }
    return state.colouring();
}

ColoringVerdict verify_equitable_list_coloring(const Graph& g, const ListAssignment& original, std::size_t t,
                                               const Colouring& c, std::size_t d) {
    const std::size_t n = g.num_vertices();
    auto fail = [](ColoringViolation v) { return ColoringVerdict{false, std::move(v)}; };
    if (c.colors.size() != n || original.lists.size() != n || t == 0 || d == 0) {
        ColoringViolation v;
        v.clause = ColoringViolation::Clause::Shape;
        v.message = "colouring, lists and graph disagree on n, or t/d is zero";
        return fail(std::move(v));
    }
    for (Vertex v = 0; v < n; ++v) {
        const auto& list = original.lists[v];
        if (std::find(list.begin(), list.end(), c.colors[v]) == list.end()) {
            ColoringViolation bad;
            bad.clause = ColoringViolation::Clause::NotInList;
            bad.vertex = v;
            bad.colour = c.colors[v];
            bad.message = "vertex " + std::to_string(v) + " has colour " + std::to_string(c.colors[v]) +
                          " which is not on its list";
            return fail(std::move(bad));
        }
    }
    const std::size_t cap = (n + t - 1) / t;
    for (const auto& [colour, members] : c.classes()) {
        if (!is_d_degenerate(induced_subgraph(g, members).graph, d - 1)) {
            ColoringViolation bad;
            bad.clause = ColoringViolation::Clause::Degenerate;
            bad.colour = colour;
            bad.size = members.size();
            bad.message = "colour class " + std::to_string(colour) + " is not " + std::to_string(d - 1) +
                          "-degenerate";
            return fail(std::move(bad));
        }
        if (members.size() > cap) {
            ColoringViolation bad;
            bad.clause = ColoringViolation::Clause::ClassSize;
            bad.colour = colour;
            bad.size = members.size();
            bad.message = "colour class " + std::to_string(colour) + " has " + std::to_string(members.size()) +
                          " vertices, limit " + std::to_string(cap);
            return fail(std::move(bad));
        }
    }
    return {true, std::nullopt};
}

namespace {

class BruteForce {
  public:
    BruteForce(const Graph& g, const ListAssignment& lists, std::size_t t, std::size_t d)
        : g_(g), lists_(lists), d_(d), cap_((g.num_vertices() + t - 1) / t), colors_(g.num_vertices(), 0) {}

    bool run(Vertex v) {
        if (v == g_.num_vertices()) return true;
        std::vector<Colour> options = lists_.lists[v];
        std::sort(options.begin(), options.end());
        for (Colour c : options) {
            if (size_[c] >= cap_) continue;
            colors_[v] = c;
            if (class_ok(v, c)) {
                ++size_[c];
                if (run(v + 1)) return true;
                --size_[c];
            }
            colors_[v] = 0;
        }
        return false;
    }

    Colouring result() const { return {colors_}; }

  private:
    // Classes are hereditary, so a partial class that fails dooms the branch.
    bool class_ok(Vertex v, Colour c) const {
        std::vector<Vertex> members;
        for (Vertex u = 0; u <= v; ++u) {
            if (colors_[u] == c) members.push_back(u);
        }
        return is_d_degenerate(induced_subgraph(g_, members).graph, d_ - 1);
    }

    const Graph& g_;
    const ListAssignment& lists_;
    std::size_t d_;
    std::size_t cap_;
    std::vector<Colour> colors_;
    std::map<Colour, std::size_t> size_;
};

} // namespace

std::optional<Colouring> brute_force_equitable_coloring(const Graph& g, const ListAssignment& lists, std::size_t t,
                                                        std::size_t d) {
    if (lists.lists.size() != g.num_vertices()) throw InputError("list assignment does not match the graph");
    if (t == 0 || d == 0) throw InputError("t and d must be positive");
    BruteForce search(g, lists, t, d);
    if (!search.run(0)) return std::nullopt;
    return search.result();
}

ListAssignment random_uniform_lists(std::size_t n, std::size_t t, std::size_t palette, std::mt19937_64& rng) {
    if (t == 0 || palette < t) {
        throw InputError("palette of " + std::to_string(palette) + " colours cannot fill lists of size " +
                         std::to_string(t));
    }
    ListAssignment out{t, std::vector<std::vector<Colour>>(n)};
    std::vector<Colour> all(palette);
    for (std::size_t i = 0; i < palette; ++i) all[i] = static_cast<Colour>(i + 1);
    for (auto& list : out.lists) {
        // partial Fisher-Yates
        for (std::size_t i = 0; i < t; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, palette - 1);
            std::swap(all[i], all[pick(rng)]);
        }
        list.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(t));
        std::sort(list.begin(), list.end());
    }
    return out;
}

} // namespace eqdeg
