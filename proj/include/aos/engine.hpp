#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aos/cnf.hpp"
#include "aos/controller.hpp"
#include "aos/operators.hpp"
#include "aos/population.hpp"
#include "aos/strategies.hpp"

namespace aos {

enum class TabuMode { Off, Memetic, Standalone };
/// Who picks the next operator: the adaptive controller or one of the uncontrolled baselines.
enum class SelectionMode { Controller, UniformRandom, Roulette };

[[nodiscard]] TabuMode parse_tabu_mode(std::string_view name);
[[nodiscard]] SelectionMode parse_selection_mode(std::string_view name);
[[nodiscard]] std::string_view to_string(TabuMode mode) noexcept;
[[nodiscard]] std::string_view to_string(SelectionMode mode) noexcept;

struct TabuSettings {
    TabuMode mode = TabuMode::Off;
    double fraction = 0.10;
    std::uint64_t memetic_flip_budget = 100;
    std::uint64_t standalone_flip_budget = 10'000'000;
};

struct RunConfig {
    std::string formula_path;
    std::size_t population_size = 30;
    std::uint64_t max_iterations = 100'000;
    std::vector<std::string> operator_codes;
    ControllerConfig controller;
    Strategy strategy;
    TabuSettings tabu;
    SelectionMode selection = SelectionMode::Controller;
    /// Roulette baseline application rates, one per operator.
    std::vector<double> rates;
    std::uint64_t seed = 1;
    /// Optional file of '0'/'1' rows; otherwise the population is drawn from the seed.
    std::string initial_population_path;
    bool early_exit = true;
    bool keep_trace = true;

    /// Throws std::invalid_argument on inconsistent settings.
    void validate() const;
};

/// One row per iteration, taken after the child has been inserted.
struct TraceRecord {
    std::uint64_t iteration = 0;
    std::string op;
    double dq = 0.0;
    double dd = 0.0;
    double theta = 0.0;
    double entropy = 0.0;
    double mean_q = 0.0;
    std::size_t best = 0;
};

struct RunResult {
    std::size_t best_false_count = 0;
    std::uint64_t best_iteration = 0;
    std::uint64_t iterations = 0;
    Assignment best_assignment;
    std::vector<std::string> operator_codes;
    std::vector<std::uint64_t> application_counts;
    /// Criteria of the initial population (reference point for the first trace row).
    CriterionSnapshot initial;
    std::vector<TraceRecord> trace;

    [[nodiscard]] bool solved() const noexcept { return best_false_count == 0; }
};

/// Relative mean-quality improvement; positive when the mean false count drops.
[[nodiscard]] double quality_delta(const CriterionSnapshot& before, const CriterionSnapshot& after) noexcept;
[[nodiscard]] double diversity_delta(const CriterionSnapshot& before, const CriterionSnapshot& after) noexcept;

/// Population the run starts from: the configured file, or seeded uniform assignments.
[[nodiscard]] Population initial_population(const CnfFormula& formula, const RunConfig& config);

/// Runs the configured algorithm (selection mode and tabu mode taken from the config).
[[nodiscard]] RunResult run(const CnfFormula& formula, const RunConfig& config);

/// Steady-state EA driven by the controller, no local search.
[[nodiscard]] RunResult run_ea(const CnfFormula& formula, RunConfig config);
/// As run_ea, every non-null child refined by tabu search before insertion.
[[nodiscard]] RunResult run_memetic(const CnfFormula& formula, RunConfig config);
/// Next operator drawn uniformly at random; controller bypassed.
[[nodiscard]] RunResult run_baseline_random(const CnfFormula& formula, RunConfig config);
/// Next operator drawn from fixed application rates.
[[nodiscard]] RunResult run_baseline_roulette(const CnfFormula& formula, RunConfig config, std::vector<double> rates);
/// Tabu search alone from one random assignment.
[[nodiscard]] RunResult run_tabu_only(const CnfFormula& formula, const RunConfig& config);

} // namespace aos
