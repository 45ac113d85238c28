#include "aos/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace aos {

std::vector<double> midranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
    std::vector<double> ranks(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
        const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

namespace {

// Exact two-sided p-value: counts, over all ways of giving |a| of the pooled ranks to the
// first sample, how many rank sums lie at least as far from the null mean as the observed one.
// Ranks are doubled so that midranks stay integral.
double exact_p_value(const std::vector<std::int64_t>& doubled_ranks, std::size_t n_a, std::int64_t observed_doubled) {
    const std::size_t n = doubled_ranks.size();
    const std::int64_t max_sum = std::accumulate(doubled_ranks.begin(), doubled_ranks.end(), std::int64_t{0});
    // ways[k][s]: subsets of size k with doubled rank sum s.
    std::vector<std::vector<double>> ways(n_a + 1, std::vector<double>(static_cast<std::size_t>(max_sum) + 1, 0.0));
    ways[0][0] = 1.0;
    for (std::int64_t r : doubled_ranks)
        for (std::size_t k = n_a; k >= 1; --k)
            for (std::int64_t s = max_sum; s >= r; --s) ways[k][static_cast<std::size_t>(s)] += ways[k - 1][static_cast<std::size_t>(s - r)];

    // Null mean of the doubled rank sum is n_a * (n + 1).
    const std::int64_t mean2 = static_cast<std::int64_t>(n_a) * static_cast<std::int64_t>(n + 1);
    const std::int64_t observed_dev = std::llabs(observed_doubled - mean2);
    double extreme = 0.0;
    double total = 0.0;
    for (std::int64_t s = 0; s <= max_sum; ++s) {
        const double count = ways[n_a][static_cast<std::size_t>(s)];
        total += count;
        if (std::llabs(s - mean2) >= observed_dev) extreme += count;
    }
    return std::min(1.0, extreme / total);
}

} // namespace

RankSumResult wilcoxon_ranksum_test(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("rank-sum test needs two non-empty samples");
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::vector<double> ranks = midranks(pooled);

    const auto n_a = static_cast<double>(a.size());
    const auto n_b = static_cast<double>(b.size());
    const auto n = n_a + n_b;

    RankSumResult result;
    result.w = std::accumulate(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(a.size()), 0.0);
    result.u = result.w - n_a * (n_a + 1.0) / 2.0;

    if (pooled.size() <= kExactRankSumLimit) {
        std::vector<std::int64_t> doubled(ranks.size());
        std::transform(ranks.begin(), ranks.end(), doubled.begin(),
                       [](double r) { return static_cast<std::int64_t>(std::llround(2.0 * r)); });
        const auto observed_doubled = static_cast<std::int64_t>(std::llround(2.0 * result.w));
        result.p_value = exact_p_value(doubled, a.size(), observed_doubled);
        result.exact = true;
        return result;
    }

    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    double tie_term = 0.0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        const auto t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        i = j;
    }
    const double mean_u = n_a * n_b / 2.0;
    const double var_u = n_a * n_b / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if (var_u <= 0.0) {
        result.p_value = 1.0;
        return result;
    }
    const double z = std::max(0.0, std::abs(result.u - mean_u) - 0.5) / std::sqrt(var_u);
    result.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    return result;
}

double wilcoxon_ranksum(std::span<const double> a, std::span<const double> b) {
    return wilcoxon_ranksum_test(a, b).p_value;
}

double minimum(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("minimum of empty sample");
    return *std::min_element(values.begin(), values.end());
}

double mean(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("mean of empty sample");
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double median(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("median of empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    return sorted.size() % 2 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;
}

double sample_std(std::span<const double> values) {
    if (values.size() < 2) return 0.0;
    const double m = mean(values);
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

} // namespace aos
