#include "eqdeg/partition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <unordered_set>

#include "eqdeg/error.hpp"

namespace eqdeg {

std::size_t KdPartition::num_vertices() const {
    std::size_t total = 0;
    for (const auto& layer : layers) total += layer.size();
    return total;
}

namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

// Size of S_1 for an n-vertex graph: n - eta*k with eta + 1 = ceil(n/k).
std::size_t first_layer_size(std::size_t n, std::size_t k) {
    if (n == 0) return 0;
    return n - (ceil_div(n, k) - 1) * k;
}

PartitionVerdict structural_failure(std::size_t layer, std::string message) {
    PartitionViolation v;
    v.kind = PartitionViolation::Kind::Structure;
    v.layer = layer;
    v.message = std::move(message);
    return {false, std::move(v)};
}

} // namespace

PartitionVerdict verify_kd_partition(const Graph& g, const KdPartition& p) {
    const std::size_t n = g.num_vertices();
    if (p.k == 0 || p.d == 0) return structural_failure(0, "k and d must be positive");

    const std::size_t expected_layers = n == 0 ? 0 : ceil_div(n, p.k);
    if (p.layers.size() != expected_layers) {
        return structural_failure(0, "expected " + std::to_string(expected_layers) + " layers, got " +
                                         std::to_string(p.layers.size()));
    }
    constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
    std::vector<std::size_t> layer_of(n, unassigned);
    for (std::size_t j = 0; j < p.layers.size(); ++j) {
        const auto& layer = p.layers[j];
        if (j == 0 && (layer.empty() || layer.size() > p.k)) {
            return structural_failure(j, "first layer must hold between 1 and k vertices, has " +
                                             std::to_string(layer.size()));
        }
        if (j > 0 && layer.size() != p.k) {
            return structural_failure(j, "layer " + std::to_string(j) + " must hold exactly k = " +
                                             std::to_string(p.k) + " vertices, has " +
                                             std::to_string(layer.size()));
        }
        for (Vertex v : layer) {
            if (v >= n) {
                return structural_failure(j, "vertex " + std::to_string(v) + " out of range in layer " +
                                                 std::to_string(j));
            }
            if (layer_of[v] != unassigned) {
                return structural_failure(j, "vertex " + std::to_string(v) + " appears in layers " +
                                                 std::to_string(layer_of[v]) + " and " + std::to_string(j));
            }
            layer_of[v] = j;
        }
    }
    // Sizes add up to n and there are no repeats, so the layers cover V.

    for (std::size_t j = 1; j < p.layers.size(); ++j) {
        for (std::size_t i = 0; i < p.k; ++i) {
            const Vertex v = p.layers[j][i];
            std::size_t back = 0;
            for (Vertex w : g.neighbors(v)) back += layer_of[w] < j;
            const std::size_t bound = p.d * (i + 1) - 1;
            if (back > bound) {
                PartitionViolation violation;
                violation.kind = PartitionViolation::Kind::BackDegree;
                violation.layer = j;
                violation.position = i + 1;
                violation.vertex = v;
                violation.back_degree = back;
                violation.bound = bound;
                violation.message = "vertex " + std::to_string(v) + " at layer " + std::to_string(j) +
                                    ", position " + std::to_string(i + 1) + " has " + std::to_string(back) +
                                    " earlier neighbours, bound " + std::to_string(bound);
                return {false, std::move(violation)};
            }
        }
    }
    return {true, std::nullopt};
}

std::vector<std::vector<std::size_t>> back_degrees(const Graph& g, const KdPartition& p) {
    std::vector<std::size_t> layer_of(g.num_vertices(), p.layers.size());
    for (std::size_t j = 0; j < p.layers.size(); ++j) {
        for (Vertex v : p.layers[j]) layer_of.at(v) = j;
    }
    std::vector<std::vector<std::size_t>> out(p.layers.size());
    for (std::size_t j = 0; j < p.layers.size(); ++j) {
        for (Vertex v : p.layers[j]) {
            std::size_t back = 0;
            for (Vertex w : g.neighbors(v)) back += layer_of[w] < j;
            out[j].push_back(back);
        }
    }
    return out;
}

std::optional<std::vector<std::size_t>> layer_ordering_exists(std::span<const std::size_t> ext_degrees,
                                                              std::size_t k, std::size_t d) {
    if (ext_degrees.size() != k) {
        throw InputError("layer_ordering_exists: expected " + std::to_string(k) + " degrees, got " +
                         std::to_string(ext_degrees.size()));
    }
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return ext_degrees[a] < ext_degrees[b]; });
    for (std::size_t i = 0; i < k; ++i) {
        // d*(i+1) - 1 >= 0 since d >= 1
        if (ext_degrees[order[i]] + 1 > d * (i + 1)) return std::nullopt;
    }
    return order;
}

namespace {

// Backtracking state over the set R of not-yet-peeled vertices.
class LayerSearch {
  public:
    LayerSearch(const Graph& g, std::size_t k, std::size_t d, std::size_t budget)
        : g_(g), k_(k), d_(d), budget_(budget), in_rest_(g.num_vertices(), 1), rest_degree_(g.num_vertices()) {
        for (Vertex v = 0; v < g.num_vertices(); ++v) rest_degree_[v] = g.degree(v);
        rest_count_ = g.num_vertices();
    }

    LayerSearch(const Graph& g, std::span<const Vertex> remaining, std::size_t k, std::size_t d,
                std::size_t budget)
        : g_(g), k_(k), d_(d), budget_(budget), in_rest_(g.num_vertices(), 0), rest_degree_(g.num_vertices(), 0) {
        for (Vertex v : remaining) {
            if (v >= g.num_vertices()) throw InputError("vertex " + std::to_string(v) + " out of range");
            in_rest_[v] = 1;
        }
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
            if (!in_rest_[v]) continue;
            ++rest_count_;
            for (Vertex w : g.neighbors(v)) rest_degree_[v] += in_rest_[w];
        }
    }

    std::size_t expanded() const { return expanded_; }
    bool budget_hit() const { return budget_hit_; }

    // Calls `visit(layer)` for every admissible last layer of R, in certified
    // order, until it returns false or the budget runs out.
    void for_each_last_layer(const std::function<bool(const std::vector<Vertex>&)>& visit) {
        std::vector<Vertex> candidates;
        std::vector<std::size_t> lower;
        for (Vertex v = 0; v < g_.num_vertices(); ++v) {
            if (!in_rest_[v]) continue;
            const std::size_t lb = floor_sub(rest_degree_[v], k_ - 1);
            // Even with all k-1 layer-mates adjacent, v would exceed the largest bound dk-1.
            if (lb + 1 > d_ * k_) continue;
            candidates.push_back(v);
            lower.push_back(lb);
        }
        if (candidates.size() < k_) return;
        // The i-th smallest lower bound among candidates must fit position i.
        std::vector<std::size_t> sorted = lower;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < k_; ++i) {
            if (sorted[i] + 1 > d_ * (i + 1)) return;
        }
        std::vector<Vertex> chosen;
        chosen.reserve(k_);
        stop_ = false;
        choose(candidates, 0, chosen, visit);
    }

    // Peels layers until only |S_1| vertices remain. Layers are appended
    // back-to-front into `peeled`.
    bool solve(std::size_t first_size, std::vector<std::vector<Vertex>>& peeled) {
        if (rest_count_ <= first_size) return true;
        const auto key = rest_key();
        if (dead_ends_.count(key)) return false;

        bool found = false;
        for_each_last_layer([&](const std::vector<Vertex>& layer) {
            remove(layer);
            peeled.push_back(layer);
            found = solve(first_size, peeled);
            if (!found) peeled.pop_back();
            restore(layer);
            return !found && !budget_hit_;
        });
        if (!found && !budget_hit_) dead_ends_.insert(key);
        return found;
    }

  private:
    struct KeyHash {
        std::size_t operator()(const std::vector<std::uint64_t>& words) const {
            std::size_t h = 1469598103934665603ull;
            for (auto w : words) h = (h ^ std::hash<std::uint64_t>{}(w)) * 1099511628211ull;
            return h;
        }
    };

    static std::size_t floor_sub(std::size_t a, std::size_t b) { return a > b ? a - b : 0; }

    std::vector<std::uint64_t> rest_key() const {
        std::vector<std::uint64_t> words((g_.num_vertices() + 63) / 64, 0);
        for (Vertex v = 0; v < g_.num_vertices(); ++v) {
            if (in_rest_[v]) words[v / 64] |= std::uint64_t{1} << (v % 64);
        }
        return words;
    }

    // Necessary condition for a partial layer P (|P| = s): every member's
    // external degree is at least rest_degree - |N ∩ P| - (k - s), and the
    // m-th smallest of those must fit position m + k - s.
    bool partial_feasible(const std::vector<Vertex>& chosen) const {
        const std::size_t s = chosen.size();
        const std::size_t open = k_ - s;
        std::vector<std::size_t> lbs;
        lbs.reserve(s);
        for (Vertex v : chosen) {
            std::size_t inside = 0;
            for (Vertex w : chosen) inside += (w != v && g_.adjacent(v, w));
            lbs.push_back(floor_sub(rest_degree_[v], inside + open));
        }
        std::sort(lbs.begin(), lbs.end());
        for (std::size_t m = 0; m < s; ++m) {
            if (lbs[m] + 1 > d_ * (m + 1 + open)) return false;
        }
        return true;
    }

    void choose(const std::vector<Vertex>& candidates, std::size_t start, std::vector<Vertex>& chosen,
                const std::function<bool(const std::vector<Vertex>&)>& visit) {
        if (chosen.size() == k_) {
            if (expanded_ >= budget_) {
                budget_hit_ = true;
                stop_ = true;
                return;
            }
            ++expanded_;
            std::vector<std::size_t> ext(k_);
            for (std::size_t i = 0; i < k_; ++i) {
                std::size_t inside = 0;
                for (Vertex w : chosen) inside += (w != chosen[i] && g_.adjacent(chosen[i], w));
                ext[i] = rest_degree_[chosen[i]] - inside;
            }
            auto order = layer_ordering_exists(ext, k_, d_);
            if (!order) return;
            std::vector<Vertex> layer(k_);
            for (std::size_t i = 0; i < k_; ++i) layer[i] = chosen[(*order)[i]];
            if (!visit(layer)) stop_ = true;
            return;
        }
        for (std::size_t c = start; c < candidates.size() && !stop_; ++c) {
            if (candidates.size() - c < k_ - chosen.size()) break;
            chosen.push_back(candidates[c]);
            if (partial_feasible(chosen)) choose(candidates, c + 1, chosen, visit);
            chosen.pop_back();
        }
    }

    void remove(const std::vector<Vertex>& layer) {
        for (Vertex v : layer) in_rest_[v] = 0;
        for (Vertex v : layer) {
            for (Vertex w : g_.neighbors(v)) --rest_degree_[w];
        }
        rest_count_ -= layer.size();
    }

    void restore(const std::vector<Vertex>& layer) {
        for (Vertex v : layer) in_rest_[v] = 1;
        for (Vertex v : layer) {
            for (Vertex w : g_.neighbors(v)) ++rest_degree_[w];
        }
        rest_count_ += layer.size();
    }

    const Graph& g_;
    std::size_t k_;
    std::size_t d_;
    std::size_t budget_;
    std::vector<char> in_rest_;
    // Degree into R; only meaningful for members of R.
    std::vector<std::size_t> rest_degree_;
    std::size_t rest_count_ = 0;
    std::size_t expanded_ = 0;
    bool budget_hit_ = false;
    bool stop_ = false;
    std::unordered_set<std::vector<std::uint64_t>, KeyHash> dead_ends_;
};

void check_parameters(std::size_t k, std::size_t d) {
    if (k == 0 || d == 0) throw InputError("k and d must be positive integers");
}

} // namespace

SearchResult search_kd_partition(const Graph& g, std::size_t k, std::size_t d, std::size_t budget) {
    check_parameters(k, d);
    const std::size_t n = g.num_vertices();
    LayerSearch search(g, k, d, budget);
    std::vector<std::vector<Vertex>> peeled;
    const bool found = search.solve(first_layer_size(n, k), peeled);

    SearchResult result;
    result.expanded = search.expanded();
    if (found) {
        KdPartition p{k, d, {}};
        std::vector<char> taken(n, 0);
        for (const auto& layer : peeled) {
            for (Vertex v : layer) taken[v] = 1;
        }
        std::vector<Vertex> first;
        for (Vertex v = 0; v < n; ++v) {
            if (!taken[v]) first.push_back(v);
        }
        if (n > 0) p.layers.push_back(std::move(first));
        for (auto it = peeled.rbegin(); it != peeled.rend(); ++it) p.layers.push_back(*it);
        result.status = SearchResult::Status::Found;
        result.partition = std::move(p);
    } else {
        result.status = search.budget_hit() ? SearchResult::Status::BudgetExhausted
                                            : SearchResult::Status::ProvedAbsent;
    }
    return result;
}

LastLayerEnumeration enumerate_last_layers(const Graph& g, std::span<const Vertex> remaining, std::size_t k,
                                           std::size_t d, std::size_t budget) {
    check_parameters(k, d);
    LayerSearch search(g, remaining, k, d, budget);
    LastLayerEnumeration out;
    search.for_each_last_layer([&](const std::vector<Vertex>& layer) {
        out.layers.push_back(layer);
        return true;
    });
    out.expanded = search.expanded();
    out.exhausted = !search.budget_hit();
    return out;
}

std::optional<KdPartition> greedy_kd_partition(const Graph& g, std::size_t k, std::size_t d) {
    check_parameters(k, d);
    const std::size_t n = g.num_vertices();
    std::vector<char> in_rest(n, 1);
    std::vector<std::size_t> rest_degree(n);
    for (Vertex v = 0; v < n; ++v) rest_degree[v] = g.degree(v);

    std::vector<Vertex> rest(n);
    std::iota(rest.begin(), rest.end(), 0);
    std::vector<std::vector<Vertex>> peeled;
    const std::size_t first_size = first_layer_size(n, k);

    while (rest.size() > first_size) {
        std::stable_sort(rest.begin(), rest.end(),
                         [&](Vertex a, Vertex b) { return rest_degree[a] < rest_degree[b]; });
        std::vector<Vertex> take(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(k));
        std::vector<std::size_t> ext(k);
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t inside = 0;
            for (Vertex w : take) inside += (w != take[i] && g.adjacent(take[i], w));
            ext[i] = rest_degree[take[i]] - inside;
        }
        auto order = layer_ordering_exists(ext, k, d);
        if (!order) return std::nullopt;

        std::vector<Vertex> layer(k);
        for (std::size_t i = 0; i < k; ++i) layer[i] = take[(*order)[i]];
        for (Vertex v : take) in_rest[v] = 0;
        for (Vertex v : take) {
            for (Vertex w : g.neighbors(v)) --rest_degree[w];
        }
        rest.erase(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(k));
        peeled.push_back(std::move(layer));
    }

    KdPartition p{k, d, {}};
    if (n > 0) {
        std::sort(rest.begin(), rest.end());
        p.layers.push_back(rest);
    }
    for (auto it = peeled.rbegin(); it != peeled.rend(); ++it) p.layers.push_back(*it);
    return p;
}

} // namespace eqdeg
