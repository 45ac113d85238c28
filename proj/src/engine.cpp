#include "aos/engine.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "aos/tabu.hpp"

namespace aos {

namespace {
constexpr double kQualityEpsilon = 1e-9;
constexpr std::uint64_t kPopulationStream = 1;
constexpr std::uint64_t kSearchStream = 2;
} // namespace

TabuMode parse_tabu_mode(std::string_view name) {
    if (name == "off" || name == "none") return TabuMode::Off;
    if (name == "memetic") return TabuMode::Memetic;
    if (name == "standalone") return TabuMode::Standalone;
    throw std::invalid_argument("unknown tabu mode '" + std::string(name) + "' (off|memetic|standalone)");
}

SelectionMode parse_selection_mode(std::string_view name) {
    if (name == "controller") return SelectionMode::Controller;
    if (name == "random") return SelectionMode::UniformRandom;
    if (name == "roulette") return SelectionMode::Roulette;
    throw std::invalid_argument("unknown selection mode '" + std::string(name) + "' (controller|random|roulette)");
}

std::string_view to_string(TabuMode mode) noexcept {
    switch (mode) {
    case TabuMode::Off: return "off";
    case TabuMode::Memetic: return "memetic";
    case TabuMode::Standalone: return "standalone";
    }
    return "off";
}

std::string_view to_string(SelectionMode mode) noexcept {
    switch (mode) {
    case SelectionMode::Controller: return "controller";
    case SelectionMode::UniformRandom: return "random";
    case SelectionMode::Roulette: return "roulette";
    }
    return "controller";
}

void RunConfig::validate() const {
    if (population_size < 2) throw std::invalid_argument("population size must be at least 2");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
    if (tabu.mode != TabuMode::Standalone && operator_codes.empty())
        throw std::invalid_argument("operator list must not be empty");
    for (const auto& code : operator_codes) (void)decode(code);
    if (tabu.fraction < 0.0) throw std::invalid_argument("tabu fraction must be non-negative");
    if (tabu.mode != TabuMode::Standalone && selection == SelectionMode::Controller)
        controller.validate(operator_codes.size());
    if (tabu.mode != TabuMode::Standalone && selection == SelectionMode::Roulette) {
        if (rates.size() != operator_codes.size())
            throw std::invalid_argument("roulette needs one rate per operator (" + std::to_string(rates.size()) +
                                        " rates for " + std::to_string(operator_codes.size()) + " operators)");
        if (std::any_of(rates.begin(), rates.end(), [](double r) { return !(r >= 0.0); }))
            throw std::invalid_argument("roulette rates must be non-negative");
        const double total = std::accumulate(rates.begin(), rates.end(), 0.0);
        if (std::abs(total - 1.0) > 1e-6)
            throw std::invalid_argument("roulette rates sum to " + std::to_string(total) + ", expected 1");
    }
    Strategy s = strategy;
    s.total_iterations = max_iterations;
    s.validate();
}

double quality_delta(const CriterionSnapshot& before, const CriterionSnapshot& after) noexcept {
    return (before.mean_quality - after.mean_quality) / std::max(before.mean_quality, kQualityEpsilon);
}

double diversity_delta(const CriterionSnapshot& before, const CriterionSnapshot& after) noexcept {
    return after.diversity - before.diversity;
}

Population initial_population(const CnfFormula& formula, const RunConfig& config) {
    if (!config.initial_population_path.empty()) {
        std::ifstream in(config.initial_population_path);
        if (!in) throw std::runtime_error("cannot open " + config.initial_population_path);
        Population pop = Population::from_text(formula, in);
        if (pop.size() != config.population_size)
            throw std::invalid_argument("initial population file has " + std::to_string(pop.size()) +
                                        " rows, population size is " + std::to_string(config.population_size));
        return pop;
    }
    Rng rng = make_rng(config.seed, kPopulationStream);
    return Population::random(formula, config.population_size, rng);
}

namespace {

class OperatorChooser {
public:
    OperatorChooser(const RunConfig& config, std::size_t n) : config_(config), n_(n) {
        if (config.selection == SelectionMode::Controller) controller_.emplace(n, config.controller);
    }

    std::size_t first(Rng& rng) {
        if (config_.selection == SelectionMode::Roulette) return sample_categorical(config_.rates, rng);
        return uniform_index(n_, rng);
    }

    std::size_t next(std::size_t last, double dd, double dq, double theta, Rng& rng) {
        switch (config_.selection) {
        case SelectionMode::Controller: return controller_->step(last, dd, dq, theta, rng);
        case SelectionMode::UniformRandom: return uniform_index(n_, rng);
        case SelectionMode::Roulette: return sample_categorical(config_.rates, rng);
        }
        return 0;
    }

private:
    const RunConfig& config_;
    std::size_t n_;
    std::optional<Controller> controller_;
};

} // namespace

RunResult run(const CnfFormula& formula, const RunConfig& config) {
    config.validate();
    if (config.tabu.mode == TabuMode::Standalone) return run_tabu_only(formula, config);

    std::vector<OperatorSpec> specs;
    for (const auto& code : config.operator_codes) specs.push_back(decode(code));

    Population population = initial_population(formula, config);
    Rng rng = make_rng(config.seed, kSearchStream);

    Strategy strategy = config.strategy;
    strategy.total_iterations = config.max_iterations;
    ThetaSchedule schedule(strategy);
    OperatorChooser chooser(config, specs.size());
    const std::size_t tabu_length = tabu_length_for(formula.num_variables(), config.tabu.fraction);

    RunResult result;
    result.operator_codes = config.operator_codes;
    result.application_counts.assign(specs.size(), 0);
    result.initial = snapshot(population);
    {
        const auto& members = population.members();
        const auto best_it = std::min_element(members.begin(), members.end(), [](const auto& a, const auto& b) {
            return a.false_count < b.false_count;
        });
        result.best_false_count = best_it->false_count;
        result.best_assignment = best_it->assignment;
    }
    if (config.keep_trace) result.trace.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(config.max_iterations, 1u << 20)));

    SearchObservation observation;
    observation.entropy = result.initial.diversity;
    observation.best_quality = result.best_false_count;
    if (config.early_exit && result.best_false_count == 0) return result;

    CriterionSnapshot before = result.initial;
    std::size_t current = chooser.first(rng);

    for (std::uint64_t t = 0; t < config.max_iterations; ++t) {
        const auto [ia, ib] = tournament_select_pair(population, rng);
        const Individual& oldest = population[population.oldest_index()];
        const OperatorSpec& spec = specs[current];
        Individual child = apply(spec, population[ia], population[ib], ApplyContext{formula, rng, oldest});
        if (config.tabu.mode == TabuMode::Memetic && !spec.is_null)
            child = tabu_improve(child, formula, tabu_length, config.tabu.memetic_flip_budget, rng);

        if (child.false_count < result.best_false_count) {
            result.best_false_count = child.false_count;
            result.best_iteration = t + 1;
            result.best_assignment = child.assignment;
        }
        insert_replace_oldest(population, std::move(child), t + 1);
        ++result.application_counts[current];
        result.iterations = t + 1;

        const CriterionSnapshot after = snapshot(population);
        const double dq = quality_delta(before, after);
        const double dd = diversity_delta(before, after);
        before = after;

        observation.update(t, after.diversity, result.best_false_count);
        const double theta = schedule.theta_at(observation);
        const std::size_t next = chooser.next(current, dd, dq, theta, rng);

        if (config.keep_trace)
            result.trace.push_back(TraceRecord{t, spec.code, dq, dd, theta, after.diversity, after.mean_quality,
                                               result.best_false_count});
        current = next;
        if (config.early_exit && result.best_false_count == 0) break;
    }
    return result;
}

RunResult run_ea(const CnfFormula& formula, RunConfig config) {
    config.selection = SelectionMode::Controller;
    config.tabu.mode = TabuMode::Off;
    return run(formula, config);
}

RunResult run_memetic(const CnfFormula& formula, RunConfig config) {
    config.tabu.mode = TabuMode::Memetic;
    return run(formula, config);
}

RunResult run_baseline_random(const CnfFormula& formula, RunConfig config) {
    config.selection = SelectionMode::UniformRandom;
    return run(formula, config);
}

RunResult run_baseline_roulette(const CnfFormula& formula, RunConfig config, std::vector<double> rates) {
    config.selection = SelectionMode::Roulette;
    config.rates = std::move(rates);
    return run(formula, config);
}

RunResult run_tabu_only(const CnfFormula& formula, const RunConfig& config) {
    Rng rng = make_rng(config.seed, kSearchStream);
    const Individual best = tabu_standalone(formula, tabu_length_for(formula.num_variables(), config.tabu.fraction),
                                            config.tabu.standalone_flip_budget, rng);
    RunResult result;
    result.best_false_count = best.false_count;
    result.best_assignment = best.assignment;
    result.iterations = config.tabu.standalone_flip_budget;
    return result;
}

} // namespace aos
