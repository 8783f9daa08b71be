#include "eqdeg/io.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include "eqdeg/error.hpp"

namespace eqdeg {

namespace {

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), "document");
    }
}

const Json& member(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw ParseError("expected an object", where);
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'", where);
    return *it;
}

std::uint64_t as_count(const Json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
        throw ParseError("expected a non-negative integer", where);
    }
    return j.get<std::uint64_t>();
}

Colour as_colour(const Json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<std::int64_t>() <= 0) {
        throw ParseError("colours must be positive integers", where);
    }
    return j.get<Colour>();
}

Vertex as_vertex_key(const std::string& key, const std::string& where) {
    std::uint64_t value = 0;
    const auto* end = key.data() + key.size();
    auto [ptr, ec] = std::from_chars(key.data(), end, value);
    if (key.empty() || ec != std::errc() || ptr != end || value > std::numeric_limits<Vertex>::max()) {
        throw ParseError("vertex key '" + key + "' is not a vertex id", where);
    }
    return static_cast<Vertex>(value);
}

// Object keyed by vertex id, required to cover exactly 0..n-1.
template <class T, class Convert>
std::vector<T> vertex_map(const Json& j, const std::string& where, Convert convert) {
    if (!j.is_object()) throw ParseError("expected an object keyed by vertex id", where);
    std::map<Vertex, T> entries;
    for (const auto& [key, value] : j.items()) {
        const Vertex v = as_vertex_key(key, where);
        const std::string at = where + "[\"" + key + "\"]";
        if (!entries.emplace(v, convert(value, at)).second) throw ParseError("duplicate vertex key", at);
    }
    std::vector<T> out;
    out.reserve(entries.size());
    for (const auto& [v, value] : entries) {
        if (v != out.size()) {
            throw ParseError("vertex keys must be exactly 0..n-1; missing " + std::to_string(out.size()), where);
        }
        out.push_back(value);
    }
    return out;
}

std::string dump(const Json& j) { return j.dump() + "\n"; }

} // namespace

Json graph_to_json(const GraphDocument& doc) {
    Json j;
    j["n"] = doc.graph.num_vertices();
    Json edges = Json::array();
    for (const auto& [u, v] : doc.graph.edges()) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    if (!doc.names.empty()) j["names"] = doc.names;
    if (doc.partition) j["partition"] = partition_to_json(*doc.partition);
    if (doc.lists) j["lists"] = lists_to_json(*doc.lists);
    return j;
}

GraphDocument graph_from_json(const Json& j) {
    const std::string where = "graph";
    const std::uint64_t n = as_count(member(j, "n", where), where + ".n");
    const Json& edges = member(j, "edges", where);
    if (!edges.is_array()) throw ParseError("expected an array of [u, v] pairs", where + ".edges");
    std::vector<Edge> list;
    list.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string at = where + ".edges[" + std::to_string(i) + "]";
        const Json& e = edges[i];
        if (!e.is_array() || e.size() != 2) throw ParseError("expected a pair [u, v]", at);
        const auto u = as_count(e[0], at);
        const auto v = as_count(e[1], at);
        if (u >= n || v >= n) throw ParseError("endpoint out of range 0..n-1", at);
        if (u == v) throw ParseError("self-loop", at);
        list.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    GraphDocument doc;
    doc.graph = Graph(n, list);
    if (auto it = j.find("names"); it != j.end()) {
        if (!it->is_array() || it->size() != n) throw ParseError("expected n labels", where + ".names");
        for (std::size_t i = 0; i < n; ++i) {
            if (!(*it)[i].is_string()) throw ParseError("labels must be strings", where + ".names");
            doc.names.push_back((*it)[i].get<std::string>());
        }
    }
    if (auto it = j.find("partition"); it != j.end()) doc.partition = partition_from_json(*it, where + ".partition");
    if (auto it = j.find("lists"); it != j.end()) doc.lists = lists_from_json(*it, where + ".lists");
    return doc;
}

Graph parse_dimacs(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::size_t> n;
    std::size_t declared = 0;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string at = "line " + std::to_string(line_no);
        std::istringstream fields(line);
        std::string tag;
        if (!(fields >> tag) || tag == "c") continue;
        if (tag == "p") {
            std::string format;
            std::size_t vertices = 0, count = 0;
            if (n || !(fields >> format >> vertices >> count)) throw ParseError("bad problem line", at);
            n = vertices;
            declared = count;
        } else if (tag == "e") {
            long long u = 0, v = 0;
            if (!n) throw ParseError("edge before problem line", at);
            if (!(fields >> u >> v)) throw ParseError("bad edge line", at);
            if (u < 1 || v < 1 || static_cast<std::size_t>(u) > *n || static_cast<std::size_t>(v) > *n) {
                throw ParseError("endpoint out of range 1..n", at);
            }
            if (u == v) throw ParseError("self-loop", at);
            edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
        } else {
            throw ParseError("unknown line type '" + tag + "'", at);
        }
    }
    if (!n) throw ParseError("missing problem line", "document");
    if (edges.size() != declared) {
        throw ParseError("problem line declares " + std::to_string(declared) + " edges, found " +
                             std::to_string(edges.size()),
                         "document");
    }
    return Graph(*n, edges);
}

GraphDocument parse_graph_document(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] != '{') return {parse_dimacs(text), {}, {}, {}};
    return graph_from_json(parse_json(text));
}

Graph parse_graph(std::string_view text) { return parse_graph_document(text).graph; }

std::string serialize_graph(const GraphDocument& doc) { return dump(graph_to_json(doc)); }
std::string serialize_graph(const Graph& g) { return serialize_graph(GraphDocument{g, {}, {}, {}}); }

Json partition_to_json(const KdPartition& p) {
    Json j;
    j["k"] = p.k;
    j["d"] = p.d;
    j["layers"] = p.layers;
    return j;
}

KdPartition partition_from_json(const Json& j, const std::string& where) {
    KdPartition p;
    p.k = as_count(member(j, "k", where), where + ".k");
    p.d = as_count(member(j, "d", where), where + ".d");
    if (p.k == 0 || p.d == 0) throw ParseError("k and d must be positive", where);
    const Json& layers = member(j, "layers", where);
    if (!layers.is_array()) throw ParseError("expected an array of layers", where + ".layers");
    std::set<Vertex> seen;
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const std::string at = where + ".layers[" + std::to_string(l) + "]";
        const Json& layer = layers[l];
        if (!layer.is_array()) throw ParseError("expected an array of vertex ids", at);
        if (l == 0 ? (layer.empty() || layer.size() > p.k) : layer.size() != p.k) {
            throw ParseError(l == 0 ? "first layer must hold 1..k vertices"
                                    : "layer must hold exactly k = " + std::to_string(p.k) + " vertices",
                             at);
        }
        std::vector<Vertex> ids;
        for (const Json& v : layer) {
            const auto id = as_count(v, at);
            if (id > std::numeric_limits<Vertex>::max()) throw ParseError("vertex id too large", at);
            if (!seen.insert(static_cast<Vertex>(id)).second) {
                throw ParseError("vertex " + std::to_string(id) + " appears twice", at);
            }
            ids.push_back(static_cast<Vertex>(id));
        }
        p.layers.push_back(std::move(ids));
    }
    return p;
}

KdPartition parse_partition(std::string_view text) { return partition_from_json(parse_json(text)); }
std::string serialize_partition(const KdPartition& p) { return dump(partition_to_json(p)); }

Json lists_to_json(const ListAssignment& lists) {
    Json j;
    j["t"] = lists.t;
    Json body = Json::object();
    for (std::size_t v = 0; v < lists.lists.size(); ++v) body[std::to_string(v)] = lists.lists[v];
    j["lists"] = std::move(body);
    return j;
}

ListAssignment lists_from_json(const Json& j, const std::string& where) {
    ListAssignment out;
    out.t = as_count(member(j, "t", where), where + ".t");
    if (out.t == 0) throw ParseError("t must be positive", where + ".t");
    out.lists = vertex_map<std::vector<Colour>>(
        member(j, "lists", where), where + ".lists", [&](const Json& value, const std::string& at) {
            if (!value.is_array()) throw ParseError("expected an array of colours", at);
            if (value.size() != out.t) throw ParseError("list length differs from t = " + std::to_string(out.t), at);
            std::vector<Colour> list;
            for (const Json& c : value) list.push_back(as_colour(c, at));
            if (std::set<Colour>(list.begin(), list.end()).size() != list.size()) {
                throw ParseError("colour listed twice", at);
            }
            return list;
        });
    return out;
}

ListAssignment parse_lists(std::string_view text) { return lists_from_json(parse_json(text)); }
std::string serialize_lists(const ListAssignment& lists) { return dump(lists_to_json(lists)); }

Json coloring_to_json(const Colouring& c) {
    Json body = Json::object();
    for (std::size_t v = 0; v < c.colors.size(); ++v) body[std::to_string(v)] = c.colors[v];
    Json j;
    j["colors"] = std::move(body);
    return j;
}

Colouring coloring_from_json(const Json& j, const std::string& where) {
    return {vertex_map<Colour>(member(j, "colors", where), where + ".colors",
                               [](const Json& value, const std::string& at) { return as_colour(value, at); })};
}

Colouring parse_coloring(std::string_view text) { return coloring_from_json(parse_json(text)); }
std::string serialize_coloring(const Colouring& c) { return dump(coloring_to_json(c)); }

} // namespace eqdeg
