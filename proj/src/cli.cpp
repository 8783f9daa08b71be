#include "eqdeg/cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "eqdeg/error.hpp"
#include "eqdeg/generators.hpp"
#include "eqdeg/grid.hpp"
#include "eqdeg/io.hpp"

namespace eqdeg {

namespace {

struct Io {
    std::istream& in;
    std::ostream& out;
    bool stdin_used = false;

    std::string read(const std::string& path) {
        if (path == "-") {
            if (stdin_used) throw InputError("standard input can only be read once");
            stdin_used = true;
            return {std::istreambuf_iterator<char>(in), {}};
        }
        std::ifstream file(path, std::ios::binary);
        if (!file) throw InputError("cannot open '" + path + "'");
        return {std::istreambuf_iterator<char>(file), {}};
    }

    void write(const std::string& path, const std::string& text) {
        if (path.empty() || path == "-") {
            out << text;
            return;
        }
        std::ofstream file(path, std::ios::binary);
        if (!file || !(file << text)) throw InputError("cannot write '" + path + "'");
    }
};

void print_error(std::ostream& err, int code, const std::string& message, const std::string& context) {
    Json j;
    j["code"] = code;
    j["message"] = message;
    j["context"] = context;
    err << j.dump() << "\n";
}

Json partition_verdict_json(const PartitionVerdict& v) {
    Json j;
    j["valid"] = v.valid;
    if (v.violation) {
        const auto& x = *v.violation;
        Json w;
        w["kind"] = x.kind == PartitionViolation::Kind::Structure ? "structure" : "back-degree";
        w["layer"] = x.layer;
        if (x.kind == PartitionViolation::Kind::BackDegree) {
            w["position"] = x.position;
            w["vertex"] = x.vertex;
            w["back_degree"] = x.back_degree;
            w["bound"] = x.bound;
        }
        w["message"] = x.message;
        j["violation"] = std::move(w);
    }
    return j;
}

Json coloring_verdict_json(const ColoringVerdict& v) {
    Json j;
    j["valid"] = v.valid;
    if (v.violation) {
        const auto& x = *v.violation;
        static const char* names[] = {"shape", "not-in-list", "degenerate", "class-size"};
        Json w;
        w["clause"] = names[static_cast<int>(x.clause)];
        if (x.clause == ColoringViolation::Clause::NotInList) w["vertex"] = x.vertex;
        if (x.clause == ColoringViolation::Clause::Degenerate || x.clause == ColoringViolation::Clause::ClassSize) {
            w["colour"] = x.colour;
            w["size"] = x.size;
        }
        w["message"] = x.message;
        j["violation"] = std::move(w);
    }
    return j;
}

Json status_json(const char* status, std::size_t expanded) {
    Json j;
    j["status"] = status;
    j["expanded"] = expanded;
    return j;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Io io{in, out};
    int status = exit_ok;

    CLI::App app{"Equitable list colouring with degenerate colour classes"};
    app.name("eqdeg");
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a graph, with partition and lists when known");
    gen->require_subcommand(1);
    gen->fallthrough();
    std::string out_path, partition_out, lists_out;
    std::vector<std::size_t> dims;
    std::size_t q = 1, n = 0, k = 0, d = 0;
    double p = 0.5;
    std::uint64_t seed = 0;
    gen->add_option("--out", out_path, "graph file (default stdout)");
    gen->add_option("--partition-out", partition_out, "also write the bundled partition here");
    gen->add_option("--lists-out", lists_out, "also write the bundled lists here");
    auto* gen_grid = gen->add_subcommand("grid", "Cartesian product of paths");
    gen_grid->add_option("--dims", dims, "axis lengths, e.g. 5,3,2")->delimiter(',')->required();
    auto* gen_gq_cmd = gen->add_subcommand("gq", "the layered graph G(q)");
    gen_gq_cmd->add_option("--q", q)->required()->check(CLI::PositiveNumber);
    auto* gen_ex = gen->add_subcommand("example2", "the 20-vertex worked example with its partition and lists");
    auto* gen_path = gen->add_subcommand("path", "path on n vertices");
    auto* gen_cycle = gen->add_subcommand("cycle", "cycle on n vertices");
    auto* gen_complete = gen->add_subcommand("complete", "complete graph on n vertices");
    for (auto* cmd : {gen_path, gen_cycle, gen_complete}) cmd->add_option("--n", n)->required();
    auto* gen_random = gen->add_subcommand("random", "G(n, p)");
    gen_random->add_option("--n", n)->required();
    gen_random->add_option("--p", p);
    gen_random->add_option("--seed", seed);
    auto* gen_planted = gen->add_subcommand("planted", "random graph with a planted (k,d)-partition");
    gen_planted->add_option("--n", n)->required();
    gen_planted->add_option("-k", k)->required();
    gen_planted->add_option("-d", d)->required();
    gen_planted->add_option("--seed", seed);

    gen->final_callback([&] {
        NamedGraph ng = [&] {
            if (*gen_grid) {
                const Grid grid = make_grid(dims);
                NamedGraph g;
                g.graph = grid.graph;
                for (Vertex v = 0; v < grid.graph.num_vertices(); ++v) g.names.push_back(grid.spec.label(v));
                if (dims.size() == 3) g.partition = partition3d(dims);
                return g;
            }
            if (*gen_gq_cmd) return gen_gq(q);
            if (*gen_ex) return gen_example2();
            if (*gen_path) return gen_basic(BasicKind::Path, n);
            if (*gen_cycle) return gen_basic(BasicKind::Cycle, n);
            if (*gen_complete) return gen_basic(BasicKind::Complete, n);
            if (*gen_random) return gen_basic(BasicKind::Random, n, p, seed);
            return gen_planted_partition(n, k, d, seed);
        }();
        io.write(out_path, serialize_graph(GraphDocument{ng.graph, ng.names, ng.partition, ng.lists}));
        if (!partition_out.empty()) {
            if (!ng.partition) throw InputError("this generator has no bundled partition");
            io.write(partition_out, serialize_partition(*ng.partition));
        }
        if (!lists_out.empty()) {
            if (!ng.lists) throw InputError("this generator has no bundled lists");
            io.write(lists_out, serialize_lists(*ng.lists));
        }
    });

    // partition
    auto* part = app.add_subcommand("partition", "build or check (k,d)-partitions");
    part->require_subcommand(1);
    std::string graph_path, partition_path, lists_path, coloring_path;
    std::size_t budget = unlimited_budget;
    auto* verify = part->add_subcommand("verify", "check a partition against a graph");
    verify->add_option("--graph", graph_path)->required();
    verify->add_option("--partition", partition_path, "default: the graph file's partition block");
    auto* grid3d = part->add_subcommand("grid3d", "(3,2)-partition of a 3-dimensional grid");
    grid3d->add_option("--dims", dims)->delimiter(',')->required()->expected(3);
    auto* search = part->add_subcommand("search", "exact search for a (k,d)-partition");
    auto* greedy = part->add_subcommand("greedy", "peel the k smallest-degree vertices per layer");
    for (auto* cmd : {search, greedy}) {
        cmd->add_option("--graph", graph_path)->required();
        cmd->add_option("-k", k)->required()->check(CLI::PositiveNumber);
        cmd->add_option("-d", d)->required()->check(CLI::PositiveNumber);
    }
    search->add_option("--budget", budget, "maximum number of candidate layers examined");

    auto load_graph = [&]() { return parse_graph_document(io.read(graph_path)); };
    auto emit_partition_result = [&](const std::optional<KdPartition>& found, const char* missing,
                                     std::size_t expanded, int missing_code) {
        if (found) {
            out << serialize_partition(*found);
        } else {
            out << status_json(missing, expanded).dump() << "\n";
            status = missing_code;
        }
    };

    verify->final_callback([&] {
        const GraphDocument doc = load_graph();
        std::optional<KdPartition> partition = doc.partition;
        if (!partition_path.empty()) partition = parse_partition(io.read(partition_path));
        if (!partition) throw InputError("no partition given and the graph file carries none");
        const PartitionVerdict verdict = verify_kd_partition(doc.graph, *partition);
        out << partition_verdict_json(verdict).dump() << "\n";
        status = verdict ? exit_ok : exit_negative;
    });
    grid3d->final_callback([&] { out << serialize_partition(partition3d(dims)); });
    search->final_callback([&] {
        const SearchResult result = search_kd_partition(load_graph().graph, k, d, budget);
        if (result.status == SearchResult::Status::BudgetExhausted) {
            emit_partition_result(std::nullopt, "budget-exhausted", result.expanded, exit_precondition);
        } else {
            emit_partition_result(result.partition, "absent", result.expanded, exit_negative);
        }
    });
    greedy->final_callback([&] { emit_partition_result(greedy_kd_partition(load_graph().graph, k, d), "absent", 0, exit_negative); });

    // color
    auto* color = app.add_subcommand("color", "equitable list colouring from a (k,d)-partition");
    std::string tie_break = "smallest";
    bool debug_asserts = false;
    std::size_t uniform_t = 0, palette = 0;
    color->add_option("--graph", graph_path)->required();
    color->add_option("--partition", partition_path, "default: the graph file's partition block");
    auto* lists_opt = color->add_option("--lists", lists_path, "default: the graph file's lists block");
    auto* uniform_opt = color->add_option("--uniform-lists", uniform_t, "draw random t-uniform lists")
                            ->check(CLI::PositiveNumber)->excludes(lists_opt);
    color->add_option("--palette", palette, "colours 1..m for --uniform-lists")->needs(uniform_opt);
    color->add_option("--lists-out", lists_out, "write the lists actually used");
    color->add_option("--tie-break", tie_break)->check(CLI::IsMember({"smallest", "seeded"}));
    color->add_option("--seed", seed);
    color->add_flag("--debug-asserts", debug_asserts, "check internal guarantees while colouring");
    color->final_callback([&] {
        const GraphDocument doc = load_graph();
        std::optional<KdPartition> partition = doc.partition;
        if (!partition_path.empty()) partition = parse_partition(io.read(partition_path));
        if (!partition) throw InputError("no partition given and the graph file carries none");
        std::optional<ListAssignment> lists = doc.lists;
        if (!lists_path.empty()) lists = parse_lists(io.read(lists_path));
        if (uniform_t > 0) {
            std::mt19937_64 rng(seed);
            lists = random_uniform_lists(doc.graph.num_vertices(), uniform_t, palette ? palette : uniform_t, rng);
        }
        if (!lists) throw InputError("no lists given and the graph file carries none");
        ColoringOptions options;
        options.tie_break = tie_break == "seeded" ? TieBreak::Seeded : TieBreak::Smallest;
        options.seed = seed;
        options.debug_asserts = debug_asserts;
        const Colouring c = equitable_coloring(doc.graph, *partition, *lists, options);
        if (!lists_out.empty()) io.write(lists_out, serialize_lists(*lists));
        out << serialize_coloring(c);
    });

    // verify-coloring
    auto* vc = app.add_subcommand("verify-coloring", "check an equitable list colouring");
    std::size_t t = 0;
    vc->add_option("--graph", graph_path)->required();
    vc->add_option("--lists", lists_path, "default: the graph file's lists block");
    vc->add_option("--coloring", coloring_path)->required();
    vc->add_option("-d", d, "each class must be (d-1)-degenerate")->required()->check(CLI::PositiveNumber);
    vc->add_option("-t", t, "list size; default: the lists file's t");
    vc->final_callback([&] {
        const GraphDocument doc = load_graph();
        std::optional<ListAssignment> lists = doc.lists;
        if (!lists_path.empty()) lists = parse_lists(io.read(lists_path));
        if (!lists) throw InputError("no lists given and the graph file carries none");
        const Colouring c = parse_coloring(io.read(coloring_path));
        const ColoringVerdict verdict =
            verify_equitable_list_coloring(doc.graph, *lists, t ? t : lists->t, c, d);
        out << coloring_verdict_json(verdict).dump() << "\n";
        status = verdict ? exit_ok : exit_negative;
    });

    // degeneracy
    auto* deg = app.add_subcommand("degeneracy", "smallest d such that the graph is d-degenerate");
    deg->add_option("--graph", graph_path)->required();
    deg->final_callback([&] { out << degeneracy(load_graph().graph) << "\n"; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        print_error(err, exit_parse, e.what(), "command line");
        return exit_parse;
    } catch (const ParseError& e) {
        print_error(err, exit_parse, e.what(), e.context());
        return exit_parse;
    } catch (const InvariantError& e) {
        print_error(err, exit_precondition, e.what(), e.state());
        return exit_precondition;
    } catch (const InputError& e) {
        print_error(err, exit_precondition, e.what(), "input");
        return exit_precondition;
    }
    return status;
}

} // namespace eqdeg
