#include "eqdeg/graph.hpp"

#include <algorithm>
#include <string>

#include "eqdeg/error.hpp"

namespace eqdeg {

Graph::Graph(std::size_t n, std::span<const Edge> edges) : adj_(n) {
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n) {
            throw InputError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                             ") has an endpoint outside 0.." + std::to_string(n) + "-1");
        }
        if (u == v) {
            throw InputError("self-loop at vertex " + std::to_string(u));
        }
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& list : adj_) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        num_edges_ += list.size();
    }
    num_edges_ /= 2;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
    const auto& list = adj_[u];
    return std::binary_search(list.begin(), list.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges_);
    for (Vertex u = 0; u < adj_.size(); ++u) {
        for (Vertex v : adj_[u]) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

VertexSet neighbors(const Graph& g, Vertex v) {
    if (v >= g.num_vertices()) {
        throw InputError("vertex " + std::to_string(v) + " out of range (n = " +
                         std::to_string(g.num_vertices()) + ")");
    }
    auto nb = g.neighbors(v);
    return {nb.begin(), nb.end()};
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vs) {
    const std::size_t n = g.num_vertices();
    constexpr Vertex absent = static_cast<Vertex>(-1);
    std::vector<Vertex> to_local(n, absent);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (vs[i] >= n) {
            throw InputError("vertex " + std::to_string(vs[i]) + " out of range (n = " +
                             std::to_string(n) + ")");
        }
        if (to_local[vs[i]] != absent) {
            throw InputError("vertex " + std::to_string(vs[i]) + " listed twice");
        }
        to_local[vs[i]] = static_cast<Vertex>(i);
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        for (Vertex w : g.neighbors(vs[i])) {
            const Vertex j = to_local[w];
            if (j != absent && i < j) edges.emplace_back(static_cast<Vertex>(i), j);
        }
    }
    return {Graph(vs.size(), edges), std::vector<Vertex>(vs.begin(), vs.end())};
}

namespace {

// Peels vertices of degree <= d. `pick` chooses which eligible vertex goes
// next from the pending stack; returns whether everything got deleted.
template <class Pick>
bool peel(const Graph& g, std::size_t d, Pick&& pick) {
    const std::size_t n = g.num_vertices();
    std::vector<std::size_t> deg(n);
    std::vector<char> queued(n, 0);
    std::vector<Vertex> pending;
    for (Vertex v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        if (deg[v] <= d) {
            queued[v] = 1;
            pending.push_back(v);
        }
    }
    std::size_t deleted = 0;
    while (!pending.empty()) {
        const std::size_t at = pick(pending.size());
        const Vertex v = pending[at];
        pending[at] = pending.back();
        pending.pop_back();
        ++deleted;
        for (Vertex w : g.neighbors(v)) {
            if (queued[w]) continue;
            if (--deg[w] <= d) {
                queued[w] = 1;
                pending.push_back(w);
            }
        }
    }
    return deleted == n;
}

} // namespace

bool is_d_degenerate(const Graph& g, std::size_t d) {
    return peel(g, d, [](std::size_t size) { return size - 1; });
}

bool is_d_degenerate(const Graph& g, std::size_t d, std::mt19937_64& rng) {
    return peel(g, d, [&rng](std::size_t size) {
        return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng);
    });
}

std::size_t degeneracy(const Graph& g) {
    const std::size_t n = g.num_vertices();
    if (n == 0) return 0;
    const std::size_t max_deg = max_degree(g);
    std::vector<std::size_t> deg(n);
    std::vector<std::vector<Vertex>> buckets(max_deg + 1);
    for (Vertex v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        buckets[deg[v]].push_back(v);
    }
    std::vector<char> removed(n, 0);
    std::size_t result = 0;
    std::size_t low = 0;
    for (std::size_t done = 0; done < n;) {
        while (buckets[low].empty()) ++low;
        const Vertex v = buckets[low].back();
        buckets[low].pop_back();
        // Stale entries are left behind when a degree drops; skip them.
        if (removed[v] || deg[v] != low) continue;
        removed[v] = 1;
        ++done;
        result = std::max(result, low);
        for (Vertex w : g.neighbors(v)) {
            if (removed[w]) continue;
            buckets[--deg[w]].push_back(w);
            if (deg[w] < low) low = deg[w];
        }
    }
    return result;
}

std::size_t max_degree(const Graph& g) {
    std::size_t best = 0;
    for (Vertex v = 0; v < g.num_vertices(); ++v) best = std::max(best, g.degree(v));
    return best;
}

} // namespace eqdeg
