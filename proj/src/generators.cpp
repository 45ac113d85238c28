#include "aos/generators.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "aos/rng.hpp"

namespace aos {

ColoredGraph generate_flat_graph(std::size_t vertices, std::size_t edges, std::size_t colors, std::uint64_t seed) {
    if (colors < 2 || vertices < colors) throw std::invalid_argument("need at least two colours and one vertex per colour");
    Rng rng = make_rng(seed, 0x666c6174);

    ColoredGraph graph;
    graph.vertices = vertices;
    graph.colors = colors;
    graph.planted_coloring.resize(vertices);

    std::vector<std::uint32_t> order(vertices);
    std::iota(order.begin(), order.end(), 0u);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::vector<std::uint32_t>> classes(colors);
    for (std::size_t i = 0; i < vertices; ++i) {
        graph.planted_coloring[order[i]] = static_cast<std::uint32_t>(i % colors);
        classes[i % colors].push_back(order[i]);
    }

    std::vector<std::pair<std::size_t, std::size_t>> class_pairs;
    std::size_t capacity = 0;
    for (std::size_t a = 0; a < colors; ++a)
        for (std::size_t b = a + 1; b < colors; ++b) {
            class_pairs.emplace_back(a, b);
            capacity += classes[a].size() * classes[b].size();
        }
    if (edges > capacity) throw std::invalid_argument("too many edges for a colourable graph");

    std::vector<std::vector<std::uint8_t>> adjacent(vertices, std::vector<std::uint8_t>(vertices, 0));
    std::vector<std::size_t> degree(vertices, 0);
    std::vector<std::size_t> pair_edges(class_pairs.size(), 0);

    for (std::size_t e = 0; e < edges; ++e) {
        // Class pair with the fewest edges that still has room; lowest index on ties.
        std::size_t chosen_pair = class_pairs.size();
        for (std::size_t p = 0; p < class_pairs.size(); ++p) {
            const auto [a, b] = class_pairs[p];
            if (pair_edges[p] >= classes[a].size() * classes[b].size()) continue;
            if (chosen_pair == class_pairs.size() || pair_edges[p] < pair_edges[chosen_pair]) chosen_pair = p;
        }
        const auto [ca, cb] = class_pairs[chosen_pair];

        std::size_t best_score = std::numeric_limits<std::size_t>::max();
        std::vector<std::pair<std::uint32_t, std::uint32_t>> candidates;
        for (std::uint32_t u : classes[ca])
            for (std::uint32_t v : classes[cb]) {
                if (adjacent[u][v]) continue;
                const std::size_t score = std::max(degree[u], degree[v]) * vertices + degree[u] + degree[v];
                if (score < best_score) {
                    best_score = score;
                    candidates.clear();
                }
                if (score == best_score) candidates.emplace_back(u, v);
            }
        auto [u, v] = candidates[uniform_index(candidates.size(), rng)];
        adjacent[u][v] = adjacent[v][u] = 1;
        ++degree[u];
        ++degree[v];
        ++pair_edges[chosen_pair];
        graph.edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(graph.edges.begin(), graph.edges.end());
    return graph;
}

CnfFormula encode_coloring(const ColoredGraph& graph) {
    const auto k = static_cast<std::uint32_t>(graph.colors);
    auto var = [k](std::uint32_t vertex, std::uint32_t color) { return vertex * k + color; };
    std::vector<Clause> clauses;
    for (std::uint32_t v = 0; v < graph.vertices; ++v) {
        Clause at_least_one;
        for (std::uint32_t c = 0; c < k; ++c) at_least_one.literals.push_back({var(v, c), false});
        clauses.push_back(std::move(at_least_one));
    }
    for (std::uint32_t v = 0; v < graph.vertices; ++v)
        for (std::uint32_t c1 = 0; c1 < k; ++c1)
            for (std::uint32_t c2 = c1 + 1; c2 < k; ++c2)
                clauses.push_back(Clause{{{var(v, c1), true}, {var(v, c2), true}}});
    for (const auto& [u, v] : graph.edges)
        for (std::uint32_t c = 0; c < k; ++c) clauses.push_back(Clause{{{var(u, c), true}, {var(v, c), true}}});
    return CnfFormula(graph.vertices * graph.colors, std::move(clauses));
}

Assignment planted_assignment(const ColoredGraph& graph) {
    Assignment assignment(graph.vertices * graph.colors, 0);
    for (std::size_t v = 0; v < graph.vertices; ++v) assignment[v * graph.colors + graph.planted_coloring[v]] = 1;
    return assignment;
}

CnfFormula generate_random_ksat(std::size_t variables, std::size_t clauses, std::size_t k, std::uint64_t seed) {
    if (k == 0 || k > variables) throw std::invalid_argument("clause width must be in [1, variables]");
    Rng rng = make_rng(seed, 0x6b736174);
    std::vector<Clause> out;
    out.reserve(clauses);
    for (std::size_t c = 0; c < clauses; ++c) {
        Clause clause;
        while (clause.literals.size() < k) {
            const auto v = static_cast<std::uint32_t>(uniform_index(variables, rng));
            const bool dup = std::any_of(clause.literals.begin(), clause.literals.end(),
                                         [v](const Literal& l) { return l.var == v; });
            if (!dup) clause.literals.push_back({v, coin_flip(rng)});
        }
        out.push_back(std::move(clause));
    }
    return CnfFormula(variables, std::move(out));
}

} // namespace aos
