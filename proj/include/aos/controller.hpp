#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "aos/rng.hpp"

namespace aos {

/// Bounded FIFO of recent values; pushing past capacity evicts the oldest.
class SlidingWindow {
public:
    explicit SlidingWindow(std::size_t capacity = 1);

    void push(double value);
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::size_t capacity() const noexcept { return capacity_; }
    [[nodiscard]] bool empty() const noexcept { return values_.empty(); }
    [[nodiscard]] const std::deque<double>& values() const noexcept { return values_; }

    /// 0 when empty.
    [[nodiscard]] double mean() const noexcept;
    /// 0 when empty.
    [[nodiscard]] double max() const noexcept;

private:
    std::size_t capacity_;
    std::deque<double> values_;
};

enum class Aggregator { Mean, Max };
enum class SelectionMethod { ProbabilityMatching, WinnerTakeAll, Bandit };

[[nodiscard]] double aggregate(const SlidingWindow& window, Aggregator fn) noexcept;

[[nodiscard]] Aggregator parse_aggregator(std::string_view name);
[[nodiscard]] SelectionMethod parse_selection_method(std::string_view name);
[[nodiscard]] std::string_view to_string(Aggregator fn) noexcept;
[[nodiscard]] std::string_view to_string(SelectionMethod method) noexcept;

struct ControllerConfig {
    std::size_t twin = 50;
    Aggregator fwin = Aggregator::Mean;
    std::size_t tprime_win = 50;
    Aggregator fprime_win = Aggregator::Mean;
    double p_min = 0.01;
    double beta = 0.8;
    double c = 1.0;
    /// Utility learning rate; empty selects the running mean (alpha = 1/(t+1)).
    std::optional<double> alpha;
    SelectionMethod method = SelectionMethod::ProbabilityMatching;

    /// Throws std::invalid_argument when a field is out of range for n operators.
    void validate(std::size_t num_operators) const;
};

/// Impact vector of an operator in the (delta diversity, delta quality) plane.
struct OpDir {
    double diversity = 0.0;
    double quality = 0.0;
};

struct OperatorStats {
    SlidingWindow diversity_window;
    SlidingWindow quality_window;
    SlidingWindow reward_window;
    double utility = 0.0;
    double selection_prob = 0.0;
    std::uint64_t n_applied = 0;

    OperatorStats(std::size_t twin, std::size_t tprime_win)
        : diversity_window(twin), quality_window(twin), reward_window(tprime_win) {}
};

// Stage 1: aggregated criteria computation.
void record_impact(OperatorStats& stats, double delta_diversity, double delta_quality);
[[nodiscard]] OpDir aggregate(const OperatorStats& stats, Aggregator fwin) noexcept;

// Stage 2: Compass reward. Axes are normalised by their largest magnitude over operators,
// projected on (cos theta, sin theta) and shifted so that the smallest reward is 0.
[[nodiscard]] std::vector<double> compass_projection(std::span<const OpDir> opdirs, double theta);
[[nodiscard]] std::vector<double> compass_reward(std::span<const OpDir> opdirs, double theta);

// Stage 3: credit assignment.
[[nodiscard]] double assign_credit(const OperatorStats& stats, Aggregator fprime_win) noexcept;
[[nodiscard]] double update_utility(double utility, double reward, double alpha) noexcept;

// Stage 4: operator selection.
[[nodiscard]] std::vector<double> pm_probabilities(std::span<const double> credits, double p_min);
[[nodiscard]] std::size_t select_pm(std::span<const double> credits, double p_min, Rng& rng);

/// Moves probabilities towards p_max for the best-credited operator (lowest index on ties)
/// and towards p_min for the others.
void wta_update(std::span<double> probs, std::span<const double> credits, double beta, double p_min);
[[nodiscard]] std::size_t select_wta(std::span<double> probs, std::span<const double> credits, double beta,
                                     double p_min, Rng& rng);

[[nodiscard]] double mab_score(double utility, std::uint64_t n_i, std::uint64_t n_total, double c) noexcept;
/// Unplayed operators first (lowest index), then argmax of the UCB score (lowest index on ties).
[[nodiscard]] std::size_t select_mab(std::span<const double> utilities, std::span<const std::uint64_t> counts,
                                     double c);

/// The four-stage pipeline for a fixed operator set.
class Controller {
public:
    Controller(std::size_t num_operators, ControllerConfig config);

    [[nodiscard]] std::size_t num_operators() const noexcept { return stats_.size(); }
    [[nodiscard]] const ControllerConfig& config() const noexcept { return config_; }
    [[nodiscard]] const std::vector<OperatorStats>& stats() const noexcept { return stats_; }
    [[nodiscard]] std::span<const double> rewards() const noexcept { return rewards_; }
    [[nodiscard]] std::span<const double> credits() const noexcept { return credits_; }

    /// Feeds back the impact of last_op and returns the operator to apply next.
    std::size_t step(std::size_t last_op, double delta_diversity, double delta_quality, double theta, Rng& rng);

private:
    ControllerConfig config_;
    std::vector<OperatorStats> stats_;
    std::vector<OpDir> opdirs_;
    std::vector<double> rewards_;
    std::vector<double> credits_;
    std::vector<double> probs_;
    std::vector<std::uint64_t> counts_;
    std::vector<double> utilities_;
};

} // namespace aos
