#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "eqdeg/graph.hpp"
#include "eqdeg/list_coloring.hpp"
#include "eqdeg/partition.hpp"

namespace eqdeg {

// File formats. All documents are JSON with 0-based vertex ids:
//
//   graph      {"n": 4, "edges": [[0,1],[1,2]], "names": [...]?, "partition": {...}?, "lists": {...}?}
//   partition  {"k": 2, "d": 1, "layers": [[0,1],[3,2]]}        layers[0] is S_1
//   lists      {"t": 2, "lists": {"0": [1,2], "1": [2,3]}}
//   colouring  {"colors": {"0": 1, "1": 2}}
//
// Graphs may also be given in DIMACS form: "p edge n m" then m lines "e u v"
// with 1-based ids; "c" lines are comments. Serialisation is canonical:
// edges sorted with u < v, vertex keys in ascending numeric order. Every
// parser throws ParseError whose context names the offending element.

using Json = nlohmann::ordered_json;

// A graph file together with the optional blocks it may carry.
struct GraphDocument {
    Graph graph;
    std::vector<std::string> names; // empty when absent
    std::optional<KdPartition> partition;
    std::optional<ListAssignment> lists;
};

GraphDocument parse_graph_document(std::string_view text);
Graph parse_graph(std::string_view text);
Graph parse_dimacs(std::string_view text);
std::string serialize_graph(const GraphDocument& doc);
std::string serialize_graph(const Graph& g);

KdPartition parse_partition(std::string_view text);
std::string serialize_partition(const KdPartition& p);

ListAssignment parse_lists(std::string_view text);
std::string serialize_lists(const ListAssignment& lists);

Colouring parse_coloring(std::string_view text);
std::string serialize_coloring(const Colouring& c);

Json graph_to_json(const GraphDocument& doc);
GraphDocument graph_from_json(const Json& j);
Json partition_to_json(const KdPartition& p);
KdPartition partition_from_json(const Json& j, const std::string& where = "partition");
Json lists_to_json(const ListAssignment& lists);
ListAssignment lists_from_json(const Json& j, const std::string& where = "lists");
Json coloring_to_json(const Colouring& c);
Colouring coloring_from_json(const Json& j, const std::string& where = "colouring");

} // namespace eqdeg
