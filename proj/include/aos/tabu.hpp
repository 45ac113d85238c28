#pragma once

#include <cstddef>
#include <cstdint>

#include "aos/cnf.hpp"
#include "aos/population.hpp"
#include "aos/rng.hpp"

namespace aos {

/// Tabu tenure as a fraction of the variable count, rounded to nearest.
[[nodiscard]] std::size_t tabu_length_for(std::size_t num_variables, double fraction = 0.10);

/// Best-neighbour tabu search over single-variable flips. Each step flips the non-tabu variable
/// with the lowest flip gain (random tie-break); a tabu variable is admissible when flipping it
/// beats the best false count seen so far. A flipped variable stays tabu for tabu_length flips.
/// Stops after max_flips or on a satisfying assignment and returns the best assignment seen.
[[nodiscard]] Individual tabu_improve(const Individual& start, const CnfFormula& formula, std::size_t tabu_length,
                                      std::uint64_t max_flips, Rng& rng);

/// Tabu search from a uniformly random assignment.
[[nodiscard]] Individual tabu_standalone(const CnfFormula& formula, std::size_t tabu_length, std::uint64_t max_flips,
                                         Rng& rng);

} // namespace aos
