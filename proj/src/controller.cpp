#include "aos/controller.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace aos {

SlidingWindow::SlidingWindow(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw std::invalid_argument("sliding window capacity must be at least 1");
}

void SlidingWindow::push(double value) {
    values_.push_back(value);
    if (values_.size() > capacity_) values_.pop_front();
}

double SlidingWindow::mean() const noexcept {
    if (values_.empty()) return 0.0;
    return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

double SlidingWindow::max() const noexcept {
    if (values_.empty()) return 0.0;
    return *std::max_element(values_.begin(), values_.end());
}

double aggregate(const SlidingWindow& window, Aggregator fn) noexcept {
    return fn == Aggregator::Max ? window.max() : window.mean();
}

Aggregator parse_aggregator(std::string_view name) {
    if (name == "mean") return Aggregator::Mean;
    if (name == "max") return Aggregator::Max;
    throw std::invalid_argument("unknown window function '" + std::string(name) + "' (mean|max)");
}

SelectionMethod parse_selection_method(std::string_view name) {
    if (name == "pm" || name == "PM") return SelectionMethod::ProbabilityMatching;
    if (name == "wta" || name == "WTA") return SelectionMethod::WinnerTakeAll;
    if (name == "mab" || name == "MAB") return SelectionMethod::Bandit;
    throw std::invalid_argument("unknown selection method '" + std::string(name) + "' (pm|wta|mab)");
}

std::string_view to_string(Aggregator fn) noexcept { return fn == Aggregator::Max ? "max" : "mean"; }

std::string_view to_string(SelectionMethod method) noexcept {
    switch (method) {
    case SelectionMethod::ProbabilityMatching: return "pm";
    case SelectionMethod::WinnerTakeAll: return "wta";
    case SelectionMethod::Bandit: return "mab";
    }
    return "pm";
}

void ControllerConfig::validate(std::size_t num_operators) const {
    if (num_operators == 0) throw std::invalid_argument("controller needs at least one operator");
    if (twin < 1 || tprime_win < 1) throw std::invalid_argument("window sizes must be at least 1");
    const double limit = 1.0 / static_cast<double>(num_operators);
    if (!(p_min >= 0.0) || p_min > limit + 1e-12)
        throw std::invalid_argument("p_min=" + std::to_string(p_min) + " outside [0, 1/n] for n=" +
                                    std::to_string(num_operators));
    if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must lie in [0, 1]");
    if (!(c >= 0.0)) throw std::invalid_argument("MAB scaling factor must be non-negative");
    if (alpha && !(*alpha >= 0.0 && *alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
}

void record_impact(OperatorStats& stats, double delta_diversity, double delta_quality) {
    stats.diversity_window.push(delta_diversity);
    stats.quality_window.push(delta_quality);
}

OpDir aggregate(const OperatorStats& stats, Aggregator fwin) noexcept {
    return {aggregate(stats.diversity_window, fwin), aggregate(stats.quality_window, fwin)};
}

std::vector<double> compass_projection(std::span<const OpDir> opdirs, double theta) {
    double max_d = 0.0;
    double max_q = 0.0;
    for (const OpDir& dir : opdirs) {
        max_d = std::max(max_d, std::abs(dir.diversity));
        max_q = std::max(max_q, std::abs(dir.quality));
    }
    const double scale_d = max_d > 0.0 ? max_d : 1.0;
    const double scale_q = max_q > 0.0 ? max_q : 1.0;
    const double cos_t = std::cos(theta);
    const double sin_t = std::sin(theta);
    std::vector<double> rewards;
    rewards.reserve(opdirs.size());
    for (const OpDir& dir : opdirs) rewards.push_back(cos_t * (dir.diversity / scale_d) + sin_t * (dir.quality / scale_q));
    return rewards;
}

std::vector<double> compass_reward(std::span<const OpDir> opdirs, double theta) {
    std::vector<double> rewards = compass_projection(opdirs, theta);
    if (rewards.empty()) return rewards;
    const double lowest = *std::min_element(rewards.begin(), rewards.end());
    for (double& r : rewards) r -= lowest;
    return rewards;
}

double assign_credit(const OperatorStats& stats, Aggregator fprime_win) noexcept {
    return aggregate(stats.reward_window, fprime_win);
}

double update_utility(double utility, double reward, double alpha) noexcept {
    return (1.0 - alpha) * utility + alpha * reward;
}

std::vector<double> pm_probabilities(std::span<const double> credits, double p_min) {
    const std::size_t n = credits.size();
    std::vector<double> probs(n, n ? 1.0 / static_cast<double>(n) : 0.0);
    const double total = std::accumulate(credits.begin(), credits.end(), 0.0);
    if (total <= 0.0) return probs;
    const double spread = 1.0 - static_cast<double>(n) * p_min;
    for (std::size_t i = 0; i < n; ++i) probs[i] = p_min + spread * credits[i] / total;
    return probs;
}

std::size_t select_pm(std::span<const double> credits, double p_min, Rng& rng) {
    const auto probs = pm_probabilities(credits, p_min);
    return sample_categorical(probs, rng);
}

namespace {

std::size_t argmax_lowest(std::span<const double> values) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[best]) best = i;
    return best;
}

} // namespace

void wta_update(std::span<double> probs, std::span<const double> credits, double beta, double p_min) {
    const std::size_t n = probs.size();
    const double p_max = 1.0 - static_cast<double>(n - 1) * p_min;
    const std::size_t winner = argmax_lowest(credits);
    for (std::size_t i = 0; i < n; ++i) {
        const double target = i == winner ? p_max : p_min;
        probs[i] += beta * (target - probs[i]);
    }
}

std::size_t select_wta(std::span<double> probs, std::span<const double> credits, double beta, double p_min, Rng& rng) {
    wta_update(probs, credits, beta, p_min);
    return sample_categorical(probs, rng);
}

double mab_score(double utility, std::uint64_t n_i, std::uint64_t n_total, double c) noexcept {
    if (n_i == 0) return std::numeric_limits<double>::infinity();
    return utility + c * std::sqrt(std::log(static_cast<double>(n_total)) / static_cast<double>(n_i));
}

std::size_t select_mab(std::span<const double> utilities, std::span<const std::uint64_t> counts, double c) {
    for (std::size_t i = 0; i < counts.size(); ++i)
        if (counts[i] == 0) return i;
    const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < utilities.size(); ++i) {
        const double score = mab_score(utilities[i], counts[i], total, c);
        if (score > best_score) {
            best_score = score;
            best = i;
        }
    }
    return best;
}

Controller::Controller(std::size_t num_operators, ControllerConfig config)
    : config_(config),
      opdirs_(num_operators),
      rewards_(num_operators, 0.0),
      credits_(num_operators, 0.0),
      probs_(num_operators, num_operators ? 1.0 / static_cast<double>(num_operators) : 0.0),
      counts_(num_operators, 0),
      utilities_(num_operators, 0.0) {
    config_.validate(num_operators);
    stats_.reserve(num_operators);
    for (std::size_t i = 0; i < num_operators; ++i) {
        stats_.emplace_back(config_.twin, config_.tprime_win);
        stats_.back().selection_prob = probs_[i];
    }
}

std::size_t Controller::step(std::size_t last_op, double delta_diversity, double delta_quality, double theta,
                             Rng& rng) {
    if (last_op >= stats_.size()) throw std::out_of_range("operator index out of range");
    theta = std::clamp(theta, 0.0, std::acos(0.0));

    OperatorStats& applied = stats_[last_op];
    record_impact(applied, delta_diversity, delta_quality);
    ++applied.n_applied;
    counts_[last_op] = applied.n_applied;

    for (std::size_t i = 0; i < stats_.size(); ++i) opdirs_[i] = aggregate(stats_[i], config_.fwin);
    rewards_ = compass_reward(opdirs_, theta);
    for (std::size_t i = 0; i < stats_.size(); ++i) {
        stats_[i].reward_window.push(rewards_[i]);
        credits_[i] = assign_credit(stats_[i], config_.fprime_win);
    }

    const double alpha = config_.alpha.value_or(1.0 / static_cast<double>(applied.n_applied));
    applied.utility = update_utility(applied.utility, credits_[last_op], alpha);
    utilities_[last_op] = applied.utility;

    std::size_t next = 0;
    switch (config_.method) {
    case SelectionMethod::ProbabilityMatching:
        probs_ = pm_probabilities(credits_, config_.p_min);
        next = sample_categorical(probs_, rng);
        break;
    case SelectionMethod::WinnerTakeAll:
        next = select_wta(probs_, credits_, config_.beta, config_.p_min, rng);
        break;
    case SelectionMethod::Bandit:
        next = select_mab(utilities_, counts_, config_.c);
        break;
    }
    for (std::size_t i = 0; i < stats_.size(); ++i) stats_[i].selection_prob = probs_[i];
    return next;
}

} // namespace aos
