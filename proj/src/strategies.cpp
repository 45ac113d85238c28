#include "aos/strategies.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace aos {

StrategyKind parse_strategy_kind(std::string_view name) {
    if (name == "fixed") return StrategyKind::Fixed;
    if (name == "increase") return StrategyKind::Increase;
    if (name == "decrease") return StrategyKind::Decrease;
    if (name == "alwaysmoving") return StrategyKind::AlwaysMoving;
    if (name == "reactivemoving") return StrategyKind::ReactiveMoving;
    throw std::invalid_argument("unknown strategy '" + std::string(name) +
                                "' (fixed|increase|decrease|alwaysmoving|reactivemoving)");
}

std::string_view to_string(StrategyKind kind) noexcept {
    switch (kind) {
    case StrategyKind::Fixed: return "fixed";
    case StrategyKind::Increase: return "increase";
    case StrategyKind::Decrease: return "decrease";
    case StrategyKind::AlwaysMoving: return "alwaysmoving";
    case StrategyKind::ReactiveMoving: return "reactivemoving";
    }
    return "fixed";
}

void Strategy::validate() const {
    if (epochs < 1) throw std::invalid_argument("epochs must be at least 1");
    if (!(entropy_threshold >= 0.0 && entropy_threshold <= 1.0))
        throw std::invalid_argument("entropy threshold must lie in [0, 1]");
    if (stagnation_limit < 1) throw std::invalid_argument("stagnation limit must be at least 1");
    if (total_iterations < 1) throw std::invalid_argument("total iterations must be at least 1");
    if (kind == StrategyKind::Fixed && !(theta >= 0.0 && theta <= kHalfPi))
        throw std::invalid_argument("fixed theta must lie in [0, pi/2]");
}

void SearchObservation::update(std::uint64_t iter, double current_entropy, std::size_t best_so_far) {
    iteration = iter;
    entropy = current_entropy;
    if (best_so_far < best_quality) {
        best_quality = best_so_far;
        iterations_since_improved = 0;
    } else {
        ++iterations_since_improved;
    }
}

double scheduled_theta(const Strategy& strategy, std::uint64_t iteration) {
    const auto epochs = static_cast<std::uint64_t>(strategy.epochs);
    const std::uint64_t clamped = std::min(iteration, strategy.total_iterations - 1);
    const std::uint64_t level = clamped * epochs / strategy.total_iterations;
    auto increasing = [&] {
        if (epochs == 1) return kHalfPi / 2.0;
        return static_cast<double>(level) * kHalfPi / static_cast<double>(epochs - 1);
    };
    switch (strategy.kind) {
    case StrategyKind::Fixed: return std::clamp(strategy.theta, 0.0, kHalfPi);
    case StrategyKind::Increase: return increasing();
    case StrategyKind::Decrease: return kHalfPi - increasing();
    case StrategyKind::AlwaysMoving: return level % 2 == 0 ? 0.0 : kHalfPi;
    case StrategyKind::ReactiveMoving: return 0.0;
    }
    return 0.0;
}

ThetaSchedule::ThetaSchedule(Strategy strategy) : strategy_(strategy) { strategy_.validate(); }

double ThetaSchedule::theta_at(SearchObservation& observation) {
    if (strategy_.kind != StrategyKind::ReactiveMoving) return scheduled_theta(strategy_, observation.iteration);

    const double low_entropy_theta = strategy_.reactive_swap ? 0.0 : kHalfPi;
    const double stagnation_theta = strategy_.reactive_swap ? kHalfPi : 0.0;
    const bool low_entropy = observation.entropy < strategy_.entropy_threshold;
    const bool stagnating = observation.iterations_since_improved >= strategy_.stagnation_limit;

    if (stagnating && (strategy_.stagnation_wins || !low_entropy)) {
        reactive_theta_ = stagnation_theta;
        observation.iterations_since_improved = 0;
    } else if (low_entropy) {
        reactive_theta_ = low_entropy_theta;
        if (stagnating) observation.iterations_since_improved = 0;
    }
    return reactive_theta_;
}

} // namespace aos
