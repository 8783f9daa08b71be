#include "eqdeg/generators.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>

#include "eqdeg/error.hpp"

namespace eqdeg {

Vertex NamedGraph::id(const std::string& label) const {
    if (index_.size() != names.size()) {
        index_.clear();
        for (Vertex v = 0; v < names.size(); ++v) index_.emplace(names[v], v);
    }
    auto it = index_.find(label);
    if (it == index_.end()) throw InputError("unknown vertex label '" + label + "'");
    return it->second;
}

namespace {

std::string label(char letter, std::size_t sub, std::size_t sup) {
    return std::string(1, letter) + "_" + std::to_string(sub) + "^" + std::to_string(sup);
}

void check_bundles(const NamedGraph& ng) {
    if (ng.partition) {
        if (auto verdict = verify_kd_partition(ng.graph, *ng.partition); !verdict) {
            throw InvariantError("generated partition does not verify", verdict.violation->message);
        }
    }
}

// Neighbours of v_a^i (a = 1..6) inside copy i-1, by parity of i.
constexpr std::array<std::array<int, 5>, 6> even_links{{
    {0, 0, 0, 0, 0},
    {1, 0, 0, 0, 0},
    {2, 3, 0, 0, 0},
    {1, 2, 3, 0, 0},
    {1, 4, 5, 6, 0},
    {2, 3, 4, 5, 6},
}};
constexpr std::array<std::array<int, 5>, 6> odd_links{{
    {2, 3, 4, 5, 6},
    {1, 4, 5, 6, 0},
    {1, 2, 3, 0, 0},
    {2, 3, 0, 0, 0},
    {1, 0, 0, 0, 0},
    {0, 0, 0, 0, 0},
}};

} // namespace

NamedGraph gen_gq(std::size_t q) {
    if (q < 1) throw InputError("G(q) needs q >= 1");
    const std::size_t copies = 2 * q + 1;
    const std::size_t n = 6 * copies;
    auto vid = [](std::size_t copy, std::size_t a) { return static_cast<Vertex>(6 * (copy - 1) + (a - 1)); };

    NamedGraph ng;
    ng.names.resize(n);
    std::vector<Edge> edges;
    KdPartition p{6, 1, {}};
    for (std::size_t i = 1; i <= copies; ++i) {
        for (std::size_t a = 1; a <= 6; ++a) {
            ng.names[vid(i, a)] = label('v', a, i);
            for (std::size_t b = a + 1; b <= 6; ++b) edges.emplace_back(vid(i, a), vid(i, b));
        }
        std::vector<Vertex> layer;
        if (i >= 2) {
            const auto& links = i % 2 == 0 ? even_links : odd_links;
            for (std::size_t a = 1; a <= 6; ++a) {
                for (int b : links[a - 1]) {
                    if (b) edges.emplace_back(vid(i, a), vid(i - 1, static_cast<std::size_t>(b)));
                }
            }
        }
        // Order by back-degree: 0..5 is v_1..v_6 for even copies, v_6..v_1 for odd ones.
        for (std::size_t a = 1; a <= 6; ++a) layer.push_back(vid(i, (i % 2 == 0 || i == 1) ? a : 7 - a));
        p.layers.push_back(std::move(layer));
    }
    ng.graph = Graph(n, edges);
    ng.partition = std::move(p);
    check_bundles(ng);
    return ng;
}

NamedGraph gen_example2() {
    // v_j^i -> 10(i-1) + 2(j-1) + 1, w_j^i -> 10(i-1) + 2(j-1), matching the order of the layers
    auto v = [](std::size_t j, std::size_t i) { return static_cast<Vertex>(10 * (i - 1) + 2 * (j - 1) + 1); };
    auto w = [](std::size_t j, std::size_t i) { return static_cast<Vertex>(10 * (i - 1) + 2 * (j - 1)); };

    NamedGraph ng;
    ng.names.resize(20);
    std::vector<Edge> edges;
    KdPartition p{2, 3, {}};
    ListAssignment lists{3, std::vector<std::vector<Colour>>(20)};

    for (std::size_t i = 1; i <= 2; ++i) {
        for (std::size_t j = 1; j <= 5; ++j) {
            ng.names[v(j, i)] = label('v', j, i);
            ng.names[w(j, i)] = label('w', j, i);
            for (std::size_t b = j + 1; b <= 5; ++b) edges.emplace_back(v(j, i), v(b, i));
            edges.emplace_back(w(j, i), v(j, i));
            if (j < 5) {
                edges.emplace_back(w(j, i), w(j + 1, i));
                edges.emplace_back(v(j, i), w(j + 1, i));
            }
            p.layers.push_back({w(j, i), v(j, i)});
            lists.lists[v(j, i)] = {1, 2, 3};
            lists.lists[w(j, i)] = i == 1 ? std::vector<Colour>{2, 3, 4} : std::vector<Colour>{1, 2, 4};
        }
    }
    for (std::size_t j = 1; j <= 5; ++j) {
        for (std::size_t a = j; a <= 5; ++a) edges.emplace_back(v(j, 2), v(a, 1));
    }
    ng.graph = Graph(20, edges);
    ng.partition = std::move(p);
    ng.lists = std::move(lists);
    check_bundles(ng);
    return ng;
}

NamedGraph gen_basic(BasicKind kind, std::size_t n, double edge_probability, std::uint64_t seed) {
    if (n < 1) throw InputError("graph size must be at least 1");
    std::vector<Edge> edges;
    switch (kind) {
    case BasicKind::Path:
        for (Vertex u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
        break;
    case BasicKind::Cycle:
        if (n < 3) throw InputError("a cycle needs at least 3 vertices");
        for (Vertex u = 0; u < n; ++u) edges.emplace_back(u, static_cast<Vertex>((u + 1) % n));
        break;
    case BasicKind::Complete:
        for (Vertex u = 0; u < n; ++u) {
            for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
        }
        break;
    case BasicKind::Random: {
        if (!(edge_probability >= 0.0 && edge_probability <= 1.0)) {
            throw InputError("edge probability must lie in [0, 1]");
        }
        std::mt19937_64 rng(seed);
        std::bernoulli_distribution coin(edge_probability);
        for (Vertex u = 0; u < n; ++u) {
            for (Vertex v = u + 1; v < n; ++v) {
                if (coin(rng)) edges.emplace_back(u, v);
            }
        }
        break;
    }
    }
    NamedGraph ng;
    ng.graph = Graph(n, edges);
    ng.names.resize(n);
    for (std::size_t v = 0; v < n; ++v) ng.names[v] = std::to_string(v);
    return ng;
}

NamedGraph gen_planted_partition(std::size_t n, std::size_t k, std::size_t d, std::uint64_t seed) {
    if (n < 1 || k < 1 || d < 1) throw InputError("n, k and d must be positive");
    std::mt19937_64 rng(seed);
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);

    const std::size_t layers = (n + k - 1) / k;
    const std::size_t first = n - (layers - 1) * k;
    KdPartition p{k, d, {}};
    p.layers.emplace_back(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(first));
    for (std::size_t j = 1; j < layers; ++j) {
        const auto begin = perm.begin() + static_cast<std::ptrdiff_t>(first + (j - 1) * k);
        p.layers.emplace_back(begin, begin + static_cast<std::ptrdiff_t>(k));
    }

    std::vector<Edge> edges;
    std::bernoulli_distribution inner(0.5);
    std::vector<Vertex> earlier;
    for (std::size_t j = 0; j < p.layers.size(); ++j) {
        const auto& layer = p.layers[j];
        for (std::size_t a = 0; a < layer.size(); ++a) {
            for (std::size_t b = a + 1; b < layer.size(); ++b) {
                if (inner(rng)) edges.emplace_back(layer[a], layer[b]);
            }
        }
        if (j > 0) {
            for (std::size_t i = 0; i < k; ++i) {
                const std::size_t cap = std::min(d * (i + 1) - 1, earlier.size());
                const std::size_t count = std::uniform_int_distribution<std::size_t>(0, cap)(rng);
                std::vector<Vertex> picks;
                std::sample(earlier.begin(), earlier.end(), std::back_inserter(picks), count, rng);
                for (Vertex u : picks) edges.emplace_back(layer[i], u);
            }
        }
        earlier.insert(earlier.end(), layer.begin(), layer.end());
    }

    NamedGraph ng;
    ng.graph = Graph(n, edges);
    ng.names.resize(n);
    for (std::size_t v = 0; v < n; ++v) ng.names[v] = std::to_string(v);
    ng.partition = std::move(p);
    check_bundles(ng);
    return ng;
}

} // namespace eqdeg
