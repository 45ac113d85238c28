#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace aos {

/// Combined sample sizes up to this use the exact null distribution.
inline constexpr std::size_t kExactRankSumLimit = 20;

struct RankSumResult {
    double w = 0.0;       // rank sum of the first sample (midranks on ties)
    double u = 0.0;       // Mann-Whitney U of the first sample
    double p_value = 1.0; // two-sided
    bool exact = false;
};

/// Midranks (1-based, ties averaged) of values in their given order.
[[nodiscard]] std::vector<double> midranks(std::span<const double> values);

/// Two-sided Wilcoxon rank-sum (Mann-Whitney) test. Exact permutation distribution of the rank
/// sum (ties kept as midranks) when the combined size is at most kExactRankSumLimit, otherwise
/// the normal approximation with tie correction and continuity correction.
/// Throws std::invalid_argument on an empty sample.
[[nodiscard]] RankSumResult wilcoxon_ranksum_test(std::span<const double> a, std::span<const double> b);
[[nodiscard]] double wilcoxon_ranksum(std::span<const double> a, std::span<const double> b);

[[nodiscard]] double minimum(std::span<const double> values);
[[nodiscard]] double mean(std::span<const double> values);
[[nodiscard]] double median(std::span<const double> values);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
[[nodiscard]] double sample_std(std::span<const double> values);

} // namespace aos
