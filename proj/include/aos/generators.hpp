#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "aos/cnf.hpp"

namespace aos {

/// A graph with a planted proper colouring, as produced by the flat-graph generator.
struct ColoredGraph {
    std::size_t vertices = 0;
    std::size_t colors = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::vector<std::uint32_t> planted_coloring;
};

/// Flat k-colourable graph: vertices are split into k near-equal colour classes, edges are
/// spread evenly over class pairs and, within a pair, drawn between the endpoints of lowest
/// current degree. The planted colouring is proper by construction.
[[nodiscard]] ColoredGraph generate_flat_graph(std::size_t vertices, std::size_t edges, std::size_t colors,
                                               std::uint64_t seed);

/// Standard direct encoding of graph colouring (the layout of the SATLIB "flat" family):
/// variable v*k+c means "vertex v has colour c"; per vertex one at-least-one clause, then
/// the pairwise at-most-one clauses, then one clause per edge and colour.
[[nodiscard]] CnfFormula encode_coloring(const ColoredGraph& graph);

/// Assignment corresponding to the planted colouring under encode_coloring.
[[nodiscard]] Assignment planted_assignment(const ColoredGraph& graph);

/// Uniform random k-SAT: each clause draws k distinct variables with random signs.
[[nodiscard]] CnfFormula generate_random_ksat(std::size_t variables, std::size_t clauses, std::size_t k,
                                              std::uint64_t seed);

} // namespace aos
