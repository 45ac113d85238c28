#include <doctest.h>

#include <set>

#include "aos/generators.hpp"

using namespace aos;

TEST_CASE("flat graph has the requested shape and a proper planted colouring") {
    const ColoredGraph g = generate_flat_graph(50, 115, 3, 3);
    CHECK(g.vertices == 50);
    CHECK(g.edges.size() == 115);
    std::set<std::pair<std::uint32_t, std::uint32_t>> unique(g.edges.begin(), g.edges.end());
    CHECK(unique.size() == g.edges.size());
    for (const auto& [u, v] : g.edges) {
        CHECK(u < v);
        CHECK(g.planted_coloring[u] != g.planted_coloring[v]);
    }
    std::vector<int> class_size(3, 0);
    for (auto c : g.planted_coloring) ++class_size[c];
    for (int s : class_size) CHECK((s == 16 || s == 17));
}

TEST_CASE("edges are spread evenly over colour class pairs") {
    const ColoredGraph g = generate_flat_graph(50, 115, 3, 9);
    std::vector<int> per_pair(3, 0);
    for (const auto& [u, v] : g.edges) {
        const auto a = std::min(g.planted_coloring[u], g.planted_coloring[v]);
        const auto b = std::max(g.planted_coloring[u], g.planted_coloring[v]);
        ++per_pair[a == 0 ? (b == 1 ? 0 : 1) : 2];
    }
    for (int n : per_pair) CHECK((n == 38 || n == 39));
}

TEST_CASE("colouring encoding matches the flat family sizes and is satisfied by the planted colouring") {
    const ColoredGraph g = generate_flat_graph(50, 115, 3, 3);
    const CnfFormula f = encode_coloring(g);
    CHECK(f.num_variables() == 150);
    CHECK(f.num_clauses() == 545);
    CHECK(count_false_clauses(f, planted_assignment(g)) == 0);
}

TEST_CASE("generators are deterministic in the seed") {
    CHECK(generate_flat_graph(30, 60, 3, 5).edges == generate_flat_graph(30, 60, 3, 5).edges);
    CHECK(generate_flat_graph(30, 60, 3, 5).edges != generate_flat_graph(30, 60, 3, 6).edges);
    const CnfFormula a = generate_random_ksat(20, 80, 3, 1);
    const CnfFormula b = generate_random_ksat(20, 80, 3, 1);
    for (std::size_t i = 0; i < a.num_clauses(); ++i) CHECK(a.clause(i).literals == b.clause(i).literals);
}

TEST_CASE("random k-SAT clauses have k distinct variables") {
    const CnfFormula f = generate_random_ksat(10, 100, 3, 2);
    CHECK(f.num_clauses() == 100);
    for (const Clause& c : f.clauses()) {
        REQUIRE(c.size() == 3);
        CHECK(c.literals[0].var != c.literals[1].var);
        CHECK(c.literals[0].var != c.literals[2].var);
        CHECK(c.literals[1].var != c.literals[2].var);
    }
}

TEST_CASE("generator argument checks") {
    CHECK_THROWS_AS((void)generate_flat_graph(5, 3, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)generate_flat_graph(6, 100, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)generate_random_ksat(2, 5, 3, 1), std::invalid_argument);
}
