#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace aos {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;

enum class StrategyKind { Fixed, Increase, Decrease, AlwaysMoving, ReactiveMoving };

[[nodiscard]] StrategyKind parse_strategy_kind(std::string_view name);
[[nodiscard]] std::string_view to_string(StrategyKind kind) noexcept;

/// Schedule of the search angle theta: 0 favours diversity, pi/2 favours quality.
struct Strategy {
    StrategyKind kind = StrategyKind::Fixed;
    double theta = kHalfPi;          // Fixed
    std::size_t epochs = 10;         // Increase, Decrease, AlwaysMoving
    double entropy_threshold = 0.9;  // ReactiveMoving
    std::size_t stagnation_limit = 200;
    /// When both reactive triggers fire at once, the stagnation trigger wins.
    bool stagnation_wins = true;
    /// Swaps the reactive mapping (low entropy -> 0, stagnation -> pi/2).
    bool reactive_swap = false;
    std::uint64_t total_iterations = 100'000;

    void validate() const;
};

struct SearchObservation {
    std::uint64_t iteration = 0;
    double entropy = 1.0;
    std::size_t best_quality = 0;
    std::uint64_t iterations_since_improved = 0;

    /// Records the best false count seen after an iteration; resets the stagnation counter
    /// on strict improvement.
    void update(std::uint64_t iter, double current_entropy, std::size_t best_so_far);
};

/// Evaluates a strategy over a run. Only ReactiveMoving carries state (the previous theta).
class ThetaSchedule {
public:
    explicit ThetaSchedule(Strategy strategy);

    [[nodiscard]] const Strategy& strategy() const noexcept { return strategy_; }

    /// Theta for the observation. ReactiveMoving resets the observation's stagnation counter
    /// when its stagnation trigger fires.
    double theta_at(SearchObservation& observation);

private:
    Strategy strategy_;
    double reactive_theta_ = 0.0;
};

/// Stateless part of the schedule: theta of the non-reactive strategies at an iteration.
[[nodiscard]] double scheduled_theta(const Strategy& strategy, std::uint64_t iteration);

} // namespace aos
