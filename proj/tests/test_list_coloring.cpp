#include <doctest.h>

#include <random>
#include <set>

#include "eqdeg/error.hpp"
#include "eqdeg/generators.hpp"
#include "eqdeg/grid.hpp"
#include "eqdeg/list_coloring.hpp"
#include "oracles.hpp"

using namespace eqdeg;

namespace {

std::vector<Vertex> ids(const NamedGraph& g, std::initializer_list<const char*> names) {
    std::vector<Vertex> out;
    for (const char* name : names) out.push_back(g.id(name));
    return out;
}

ListAssignment same_lists(std::size_t n, std::vector<Colour> list) {
    return {list.size(), std::vector<std::vector<Colour>>(n, list)};
}

} // namespace

TEST_CASE("compute_counters examples") {
    CHECK(compute_counters(20, 3, 2) == Counters{20, 3, 2, 9, 2, 6, 2, 1, 1, 3, 0});
    const Counters a = compute_counters(9, 3, 3);
    CHECK(a.beta == 2);
    CHECK(a.r2 == 3);
    CHECK(a.gamma == 1);
    CHECK(a.r == 0);
    CHECK(a.rho == 0);
    CHECK(a.x == 0);
    const Counters b = compute_counters(7, 5, 2);
    CHECK(b.beta == 1);
    CHECK(b.r2 == 2);
    CHECK(b.gamma == 2);
    CHECK(b.r == 1);
    CHECK(b.rho == 0);
    CHECK(b.x == 1);
    CHECK(b.r2 + b.x + b.rho * b.k + b.beta * b.gamma * b.k == 7);
    CHECK_THROWS_AS(compute_counters(5, 2, 3), InputError);
    CHECK_THROWS_AS(compute_counters(0, 2, 1), InputError);
}

TEST_CASE("counter identities") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 5000)(rng);
        const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 30)(rng);
        const std::size_t t = std::uniform_int_distribution<std::size_t>(k, 40)(rng);
        const Counters c = compute_counters(n, t, k);
        REQUIRE(n == c.beta * t + c.r2);
        REQUIRE(c.r2 >= 1);
        REQUIRE(c.r2 <= t);
        REQUIRE(t == c.gamma * k + c.r);
        REQUIRE(c.beta * c.r == c.rho * k + c.x);
        REQUIRE(n == c.r2 + c.x + c.rho * k + c.beta * c.gamma * k);
        REQUIRE(c.eta + 1 == (n + k - 1) / k);
        REQUIRE(c.r1 == n - c.eta * k);
        REQUIRE(c.r1 >= 1);
        REQUIRE(c.r1 <= k);
    }
}

TEST_CASE("build_order") {
    CHECK(build_order(KdPartition{2, 1, {{0}, {1, 2}}}) == std::vector<Vertex>{0, 2, 1});
    CHECK(build_order(KdPartition{3, 1, {{7, 8, 9}}}) == std::vector<Vertex>{9, 8, 7});
    const NamedGraph ex = gen_example2();
    std::vector<Vertex> expected;
    for (int i = 1; i <= 2; ++i) {
        for (int j = 1; j <= 5; ++j) {
            expected.push_back(ex.id("v_" + std::to_string(j) + "^" + std::to_string(i)));
            expected.push_back(ex.id("w_" + std::to_string(j) + "^" + std::to_string(i)));
        }
    }
    CHECK(build_order(*ex.partition) == expected);
}

TEST_CASE("colour_vertex") {
    SUBCASE("isolated vertex") {
        const Graph g(1, {});
        ColoringState state(g, ListAssignment{1, {{5}}}, 1);
        CHECK(colour_vertex(state, 0) == 5);
        CHECK(state.colour_of(0) == 5);
    }
    SUBCASE("star centre loses a colour at the d-th same-coloured neighbour") {
        const Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
        ColoringState state(star, same_lists(4, {1, 2}), 2);
        CHECK(colour_vertex(state, 1) == 1);
        CHECK(state.list(0) == std::vector<Colour>{1, 2});
        CHECK(colour_vertex(state, 2) == 1);
        CHECK(state.list(0) == std::vector<Colour>{2});
        CHECK(state.neighbours_with(0, 1) == 2);
    }
    SUBCASE("empty list is an invariant failure") {
        const Graph g(2, {{0, 1}});
        ColoringState state(g, ListAssignment{1, {{1}, {1}}}, 1);
        colour_vertex(state, 0);
        CHECK(state.list(1).empty());
        CHECK_THROWS_AS(colour_vertex(state, 1), InvariantError);
    }
    SUBCASE("worked example: colouring v_3^1 removes 1 from L(v_1^2)") {
        const NamedGraph ex = gen_example2();
        ColoringState state(ex.graph, *ex.lists, 3);
        const auto first = ids(ex, {"v_1^1", "w_1^1", "v_2^1", "w_2^1"});
        colour_list(state, first, 2);
        CHECK(colour_vertex(state, ex.id("v_3^1")) == 1);
        CHECK(state.list(ex.id("v_1^2")) == std::vector<Colour>{2, 3});
    }
}

TEST_CASE("colour_list") {
    const Graph edge(2, {{0, 1}});
    ColoringState state(edge, same_lists(2, {1, 2}), 1);
    const std::vector<Vertex> both{0, 1};
    colour_list(state, both, 2);
    CHECK(state.colouring().colors == std::vector<Colour>{1, 2});

    const NamedGraph ex = gen_example2();
    ColoringState s2(ex.graph, *ex.lists, 3);
    const auto head = ids(ex, {"v_1^1", "w_1^1"});
    CHECK(s2.list(head[0]) == std::vector<Colour>{1, 2, 3});
    CHECK(s2.list(head[1]) == std::vector<Colour>{2, 3, 4});
    colour_list(s2, head, 2);
    CHECK(s2.colour_of(head[0]) == 1);
    CHECK(s2.colour_of(head[1]) == 2);
    const auto blocks = ids(ex, {"v_2^1", "w_2^1", "v_3^1", "w_3^1", "v_4^1", "w_4^1"});
    colour_list(s2, blocks, 2);
    std::vector<Colour> got;
    for (Vertex v : blocks) got.push_back(s2.colour_of(v));
    CHECK(got == std::vector<Colour>{1, 2, 1, 2, 2, 3});

    ColoringState s3(ex.graph, *ex.lists, 3);
    const std::vector<Vertex> three{0, 1, 2};
    CHECK_THROWS_AS(colour_list(s3, three, 2), InputError);
}

TEST_CASE("reorder examples") {
    const std::vector<Vertex> vs{10, 11, 12, 13, 14, 15};
    const std::vector<Colour> cs{1, 2, 1, 2, 2, 3};
    CHECK(reorder(vs, cs, 2, 0) == std::vector<Vertex>{10, 11, 12, 13, 15, 14});

    const std::vector<Vertex> four{0, 1, 2, 3};
    const std::vector<Colour> alternating{1, 2, 1, 2};
    CHECK(reorder(four, alternating, 2, 0) == four);

    const std::vector<Colour> triples{1, 2, 3, 3, 1, 2};
    const std::vector<Vertex> six{0, 1, 2, 3, 4, 5};
    const auto out = reorder(six, triples, 3, 0);
    std::vector<Colour> colours;
    for (Vertex v : out) colours.push_back(triples[v]);
    CHECK(colours == std::vector<Colour>{1, 2, 3, 1, 2, 3});

    CHECK_THROWS_AS(reorder(six, triples, 4, 0), InputError);
}

TEST_CASE("reorder keeps every window rainbow") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
        const std::size_t x = std::uniform_int_distribution<std::size_t>(0, k - 1)(rng);
        const std::size_t blocks = std::uniform_int_distribution<std::size_t>(0, 8)(rng);
        const std::size_t palette = k + std::uniform_int_distribution<std::size_t>(0, 4)(rng);
        std::vector<Colour> pool(palette);
        std::iota(pool.begin(), pool.end(), 1);
        std::vector<Colour> colours;
        auto rainbow = [&](std::size_t size) {
            std::shuffle(pool.begin(), pool.end(), rng);
            colours.insert(colours.end(), pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
        };
        rainbow(x);
        for (std::size_t b = 0; b < blocks; ++b) rainbow(k);
        std::vector<Vertex> vs(colours.size());
        std::iota(vs.begin(), vs.end(), 0);
        const auto out = reorder(vs, colours, k, x);
        REQUIRE(out.size() == vs.size());
        CHECK(std::is_permutation(out.begin(), out.end(), vs.begin()));
        for (std::size_t i = 0; i < x; ++i) CHECK(out[i] == vs[i]);
        for (std::size_t i = 0; i + 1 < out.size(); ++i) {
            for (std::size_t j = i + 1; j < std::min(out.size(), i + k); ++j) {
                CHECK(colours[out[i]] != colours[out[j]]);
            }
        }
    }
}

TEST_CASE("modify_colour_lists") {
    const Graph g(5, {});
    ListAssignment lists{4, {{7, 8, 9, 10}, {7, 8, 9, 10}, {7, 8, 9, 10}, {7, 8, 9, 10}, {7, 8, 9, 10}}};
    SUBCASE("one group of two colours") {
        ColoringState state(g, ListAssignment{1, {{7}, {9}, {1}, {1}, {1}}}, 1);
        for (Vertex v = 2; v < 5; ++v) state.list(v) = lists.lists[v];
        colour_vertex(state, 0);
        colour_vertex(state, 1);
        const std::vector<Vertex> coloured{0, 1}, rest{2, 3, 4};
        modify_colour_lists(state, coloured, rest, 2, 3);
        for (Vertex v : rest) CHECK(state.list(v) == std::vector<Colour>{8, 10});
    }
    SUBCASE("r = 0 leaves lists alone") {
        ColoringState state(g, lists, 1);
        const std::vector<Vertex> none, rest{0, 1, 2, 3};
        modify_colour_lists(state, none, rest, 0, 2);
        for (Vertex v = 0; v < 5; ++v) CHECK(state.list(v) == lists.lists[v]);
    }
    SUBCASE("length mismatch") {
        ColoringState state(g, lists, 1);
        const std::vector<Vertex> one{0}, rest{1, 2, 3};
        CHECK_THROWS_AS(modify_colour_lists(state, one, rest, 1, 2), InputError);
    }
}

TEST_CASE("worked example reproduced step by step") {
    const NamedGraph ex = gen_example2();
    ColoringTrace trace;
    ColoringOptions options;
    options.debug_asserts = true;
    const Colouring c = equitable_coloring(ex.graph, *ex.partition, *ex.lists, options, &trace);

    CHECK(trace.counters == compute_counters(20, 3, 2));
    REQUIRE(trace.calls.size() == 20);
    std::vector<Colour> first;
    for (std::size_t i = 0; i < 8; ++i) first.push_back(trace.calls[i].colour);
    CHECK(first == std::vector<Colour>{1, 2, 1, 2, 1, 2, 2, 3});

    CHECK(trace.reordered == ids(ex, {"v_2^1", "w_2^1", "v_3^1", "w_3^1", "w_4^1", "v_4^1"}));

    CHECK(trace.tail == ids(ex, {"v_5^1", "w_5^1", "v_1^2", "w_1^2", "v_2^2", "w_2^2", "v_3^2", "w_3^2", "v_4^2",
                                 "w_4^2", "v_5^2", "w_5^2"}));
    const std::vector<std::vector<Colour>> modified{{2, 3}, {2, 3, 4}, {3},    {1, 4}, {2, 3},    {2, 4},
                                                    {1, 3}, {1, 4},    {1, 2}, {1, 2, 4}, {1, 3}, {1, 4}};
    CHECK(trace.tail_lists == modified);

    std::vector<Colour> final_row;
    for (Vertex v : trace.tail) final_row.push_back(c.colors[v]);
    CHECK(final_row == std::vector<Colour>{2, 3, 3, 1, 2, 4, 1, 4, 1, 2, 1, 4});

    CHECK(verify_equitable_list_coloring(ex.graph, *ex.lists, 3, c, 3));
    const auto classes = c.classes();
    CHECK(classes.at(1).size() == 7);
    CHECK(classes.at(2).size() == 7);
}

TEST_CASE("equitable_coloring small cases") {
    const Graph k1(1, {});
    CHECK(equitable_coloring(k1, KdPartition{1, 1, {{0}}}, ListAssignment{1, {{5}}}).colors ==
          std::vector<Colour>{5});

    const std::vector<std::size_t> dims{2, 2, 2};
    const Grid cube = make_grid(dims);
    const KdPartition p = partition3d(dims);
    const ListAssignment lists = same_lists(8, {1, 2, 3});
    ColoringOptions options;
    options.debug_asserts = true;
    const Colouring c = equitable_coloring(cube.graph, p, lists, options);
    CHECK(verify_equitable_list_coloring(cube.graph, lists, 3, c, 2));
    for (const auto& [colour, members] : c.classes()) {
        CHECK(members.size() <= 3);
        CHECK(is_d_degenerate(induced_subgraph(cube.graph, members).graph, 1));
    }

    // n <= t: a single rainbow block.
    const Graph k3 = gen_basic(BasicKind::Complete, 3).graph;
    const Colouring rainbow = equitable_coloring(k3, KdPartition{3, 3, {{0, 1, 2}}}, same_lists(3, {4, 5, 6, 7}));
    CHECK(std::set<Colour>(rainbow.colors.begin(), rainbow.colors.end()).size() == 3);
}

TEST_CASE("equitable_coloring rejects bad input") {
    const Graph p4(4, {{0, 1}, {1, 2}, {2, 3}});
    const KdPartition good{2, 1, {{0, 1}, {3, 2}}};
    CHECK_THROWS_AS(equitable_coloring(p4, good, same_lists(4, {1})), InputError);             // t < k
    CHECK_THROWS_AS(equitable_coloring(p4, KdPartition{2, 1, {{0, 1}, {2, 3}}}, same_lists(4, {1, 2})),
                    InputError);                                                              // bad partition
    CHECK_THROWS_AS(equitable_coloring(p4, good, same_lists(3, {1, 2})), InputError);           // wrong n
    CHECK_THROWS_AS(equitable_coloring(p4, good, ListAssignment{2, {{1, 1}, {1, 2}, {1, 2}, {1, 2}}}),
                    InputError);                                                              // repeated colour
    CHECK_THROWS_AS(equitable_coloring(p4, good, ListAssignment{2, {{0, 1}, {1, 2}, {1, 2}, {1, 2}}}),
                    InputError);                                                              // non-positive
}

TEST_CASE("verify_equitable_list_coloring examples") {
    const NamedGraph ex = gen_example2();
    // The printed colouring of the worked example.
    Colouring fig{std::vector<Colour>(20, 0)};
    const std::vector<Colour> w1{2, 2, 2, 3, 3}, v1{1, 1, 1, 2, 2}, v2{3, 2, 1, 1, 1}, w2{1, 4, 4, 2, 4};
    for (int j = 1; j <= 5; ++j) {
        const auto s = std::to_string(j);
        fig.colors[ex.id("w_" + s + "^1")] = w1[j - 1];
        fig.colors[ex.id("v_" + s + "^1")] = v1[j - 1];
        fig.colors[ex.id("v_" + s + "^2")] = v2[j - 1];
        fig.colors[ex.id("w_" + s + "^2")] = w2[j - 1];
    }
    CHECK(verify_equitable_list_coloring(ex.graph, *ex.lists, 3, fig, 3));

    SUBCASE("oversized class") {
        const ListAssignment wide = same_lists(20, {1, 2, 3});
        Colouring c{std::vector<Colour>(20, 0)};
        for (Vertex v = 0; v < 20; ++v) c.colors[v] = v < 8 ? 1 : (v < 14 ? 2 : 3);
        const auto verdict = verify_equitable_list_coloring(ex.graph, wide, 3, c, 20);
        REQUIRE_FALSE(verdict);
        CHECK(verdict.violation->clause == ColoringViolation::Clause::ClassSize);
        CHECK(verdict.violation->colour == 1);
        CHECK(verdict.violation->size == 8);
    }
    SUBCASE("edge inside a class with d = 1") {
        const Graph edge(2, {{0, 1}});
        const auto verdict = verify_equitable_list_coloring(edge, same_lists(2, {1}), 1, Colouring{{1, 1}}, 1);
        REQUIRE_FALSE(verdict);
        CHECK(verdict.violation->clause == ColoringViolation::Clause::Degenerate);
    }
    SUBCASE("colour off the list") {
        const Graph edge(2, {});
        const auto verdict = verify_equitable_list_coloring(edge, same_lists(2, {1, 2}), 2, Colouring{{1, 3}}, 1);
        REQUIRE_FALSE(verdict);
        CHECK(verdict.violation->clause == ColoringViolation::Clause::NotInList);
        CHECK(verdict.violation->vertex == 1);
    }
    SUBCASE("shape") {
        const Graph edge(2, {});
        CHECK_FALSE(verify_equitable_list_coloring(edge, same_lists(2, {1, 2}), 2, Colouring{{1}}, 1));
    }
}

TEST_CASE("brute_force_equitable_coloring examples") {
    const Graph k2(2, {{0, 1}});
    CHECK_FALSE(brute_force_equitable_coloring(k2, same_lists(2, {1}), 1, 1));
    const auto two = brute_force_equitable_coloring(k2, same_lists(2, {1}), 1, 2);
    REQUIRE(two);
    CHECK(two->colors == std::vector<Colour>{1, 1});
    const Graph p3(3, {{0, 1}, {1, 2}});
    const auto path = brute_force_equitable_coloring(p3, same_lists(3, {1, 2}), 2, 1);
    REQUIRE(path);
    CHECK(verify_equitable_list_coloring(p3, same_lists(3, {1, 2}), 2, *path, 1));
}

TEST_CASE("planted instances colour with every internal guarantee checked") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 40)(rng);
        const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
        const std::size_t d = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
        const std::size_t t = k + std::uniform_int_distribution<std::size_t>(0, 3)(rng);
        const NamedGraph g = gen_planted_partition(n, k, d, rng());
        const ListAssignment lists = random_uniform_lists(n, t, 2 * t, rng);
        ColoringOptions options;
        options.debug_asserts = true;
        ColoringTrace trace;
        Colouring c;
        REQUIRE_NOTHROW(c = equitable_coloring(g.graph, *g.partition, lists, options, &trace));
        CHECK(verify_equitable_list_coloring(g.graph, lists, t, c, d));
        for (const auto& call : trace.calls) {
            CHECK(call.available >= guaranteed_list_size(trace.counters, call.phase, call.index_in_block));
            CHECK(call.available >= 1);
        }
    }
}

TEST_CASE("seeded tie-break stays valid and is reproducible") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
        const NamedGraph g = gen_planted_partition(30, k, 2, rng());
        const ListAssignment lists = random_uniform_lists(30, k + 1, 2 * k + 2, rng);
        ColoringOptions options;
        options.tie_break = TieBreak::Seeded;
        options.seed = rng();
        options.debug_asserts = true;
        const Colouring a = equitable_coloring(g.graph, *g.partition, lists, options);
        const Colouring b = equitable_coloring(g.graph, *g.partition, lists, options);
        CHECK(a == b);
        CHECK(verify_equitable_list_coloring(g.graph, lists, k + 1, a, 2));
    }
}

TEST_CASE("smallest-first output is deterministic") {
    const NamedGraph g = gen_planted_partition(40, 3, 2, 5);
    std::mt19937_64 rng(6);
    const ListAssignment lists = random_uniform_lists(40, 4, 8, rng);
    CHECK(equitable_coloring(g.graph, *g.partition, lists) == equitable_coloring(g.graph, *g.partition, lists));
}

TEST_CASE("algorithm and brute force agree on small instances") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
        const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
        const std::size_t d = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
        const std::size_t t = k + std::uniform_int_distribution<std::size_t>(0, 2)(rng);
        const NamedGraph g = gen_planted_partition(n, k, d, rng());
        const ListAssignment lists = random_uniform_lists(n, t, t + 2, rng);
        const Colouring c = equitable_coloring(g.graph, *g.partition, lists);
        CHECK(oracle::verify_by_subsets(g.graph, lists, t, c, d));
        const auto brute = brute_force_equitable_coloring(g.graph, lists, t, d);
        REQUIRE(brute);
        CHECK(oracle::verify_by_subsets(g.graph, lists, t, *brute, d));
    }
}

TEST_CASE("the two verifiers agree on random colourings") {
    std::mt19937_64 rng(321);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 9)(rng);
        const std::size_t t = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
        const std::size_t d = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
        const Graph g = oracle::random_graph(n, 0.5, rng);
        const ListAssignment lists = random_uniform_lists(n, t, t + 1, rng);
        Colouring c{std::vector<Colour>(n)};
        for (Vertex v = 0; v < n; ++v) {
            // Mostly on-list colours, occasionally an off-list one.
            c.colors[v] = rng() % 10 == 0 ? static_cast<Colour>(t + 2)
                                          : lists.lists[v][rng() % t];
        }
        CHECK(static_cast<bool>(verify_equitable_list_coloring(g, lists, t, c, d)) ==
              oracle::verify_by_subsets(g, lists, t, c, d));
    }
}

TEST_CASE("random_uniform_lists") {
    std::mt19937_64 rng(2);
    const ListAssignment l = random_uniform_lists(50, 4, 7, rng);
    CHECK(l.t == 4);
    REQUIRE(l.lists.size() == 50);
    for (const auto& list : l.lists) {
        CHECK(list.size() == 4);
        CHECK(std::is_sorted(list.begin(), list.end()));
        CHECK(std::set<Colour>(list.begin(), list.end()).size() == 4);
        CHECK(list.front() >= 1);
        CHECK(list.back() <= 7);
    }
    CHECK_THROWS_AS(random_uniform_lists(5, 4, 3, rng), InputError);
}
