#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "aos/rng.hpp"
#include "aos/stats.hpp"

using namespace aos;

namespace {

// Two-sided p by listing every subset of pooled midranks of size |a|.
double enumerate_p(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> pooled = a;
    pooled.insert(pooled.end(), b.begin(), b.end());
    const auto ranks = midranks(pooled);
    const std::size_t n = pooled.size();
    const std::size_t k = a.size();
    double w = 0;
    for (std::size_t i = 0; i < k; ++i) w += ranks[i];
    const double center = static_cast<double>(k) * (n + 1) / 2.0;
    const double observed = std::abs(w - center);
    std::size_t extreme = 0;
    std::size_t total = 0;
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
        double s = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1U) s += ranks[i];
        ++total;
        if (std::abs(s - center) >= observed - 1e-9) ++extreme;
    }
    return static_cast<double>(extreme) / static_cast<double>(total);
}

} // namespace

TEST_CASE("midranks with ties") {
    CHECK(midranks(std::vector<double>{10, 20, 20, 5}) == std::vector<double>{2, 3.5, 3.5, 1});
    CHECK(midranks(std::vector<double>{1, 1, 1}) == std::vector<double>{2, 2, 2});
}

TEST_CASE("exact test on separated samples") {
    const std::vector<double> a{1, 2, 3};
    const std::vector<double> b{10, 11, 12};
    const RankSumResult r = wilcoxon_ranksum_test(a, b);
    CHECK(r.exact);
    CHECK(r.u == 0.0);
    CHECK(r.w == 6.0);
    CHECK(std::abs(r.p_value - 0.1) <= 1e-12);
}

TEST_CASE("exact test against a reference value") {
    const std::vector<double> a{1.5, 2.5, 3.1, 4.2, 5.9, 6.3};
    const std::vector<double> b{2.2, 3.3, 7.7, 8.1, 9.4, 10.0, 11.2};
    CHECK(std::abs(wilcoxon_ranksum(a, b) - 0.07342657342657342) <= 1e-12);
}

TEST_CASE("identical samples and symmetry") {
    const std::vector<double> a{3, 1, 4, 1, 5};
    CHECK(wilcoxon_ranksum(a, a) == doctest::Approx(1.0));
    std::vector<double> big(30);
    for (std::size_t i = 0; i < big.size(); ++i) big[i] = static_cast<double>(i % 7);
    CHECK(wilcoxon_ranksum(big, big) >= 0.99);

    Rng rng = make_rng(3);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> x(1 + uniform_index(15, rng));
        std::vector<double> y(1 + uniform_index(15, rng));
        for (auto& v : x) v = static_cast<double>(uniform_index(6, rng));
        for (auto& v : y) v = static_cast<double>(uniform_index(6, rng));
        CHECK(wilcoxon_ranksum(x, y) == doctest::Approx(wilcoxon_ranksum(y, x)).epsilon(1e-12));
    }
}

TEST_CASE("exact mode agrees with enumeration including ties") {
    Rng rng = make_rng(4);
    for (int t = 0; t < 300; ++t) {
        const std::size_t na = 1 + uniform_index(8, rng);
        const std::size_t nb = 1 + uniform_index(std::min<std::size_t>(8, 16 - na), rng);
        std::vector<double> a(na);
        std::vector<double> b(nb);
        const std::size_t levels = 2 + uniform_index(10, rng);
        for (auto& v : a) v = static_cast<double>(uniform_index(levels, rng));
        for (auto& v : b) v = static_cast<double>(uniform_index(levels, rng));
        const RankSumResult r = wilcoxon_ranksum_test(a, b);
        CHECK(r.exact);
        CHECK(std::abs(r.p_value - enumerate_p(a, b)) <= 1e-12);
    }
}

TEST_CASE("normal approximation with ties and continuity") {
    std::vector<double> a;
    std::vector<double> b;
    for (int i = 1; i <= 15; ++i) a.push_back(i);
    for (int i = 16; i <= 30; ++i) b.push_back(i);
    const RankSumResult r = wilcoxon_ranksum_test(a, b);
    CHECK_FALSE(r.exact);
    CHECK(r.p_value == doctest::Approx(3.3918213908250945e-06).epsilon(1e-9));

    const std::vector<double> c{0, 0, 1, 1, 2, 2, 3, 3, 3, 4, 5, 1};
    const std::vector<double> d{1, 2, 2, 3, 4, 4, 5, 5, 6, 6, 7, 2, 3};
    CHECK(wilcoxon_ranksum(c, d) == doctest::Approx(0.027717581642498913).epsilon(1e-9));

    const std::vector<double> same(25, 4.0);
    CHECK(wilcoxon_ranksum(std::span(same).first(10), std::span(same).subspan(10)) == 1.0);
}

TEST_CASE("exact limit boundary") {
    std::vector<double> a(10, 0.0);
    std::vector<double> b(10, 1.0);
    CHECK(wilcoxon_ranksum_test(a, b).exact);
    b.push_back(1.0);
    CHECK_FALSE(wilcoxon_ranksum_test(a, b).exact);
}

TEST_CASE("empty samples are rejected") {
    const std::vector<double> a{1};
    CHECK_THROWS_AS((void)wilcoxon_ranksum(a, std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS((void)wilcoxon_ranksum(std::vector<double>{}, a), std::invalid_argument);
}

TEST_CASE("descriptive statistics") {
    const std::vector<double> v{4, 1, 3, 2};
    CHECK(minimum(v) == 1);
    CHECK(mean(v) == 2.5);
    CHECK(median(v) == 2.5);
    CHECK(median(std::vector<double>{5, 1, 3}) == 3);
    CHECK(sample_std(v) == doctest::Approx(std::sqrt(5.0 / 3.0)));
    CHECK(sample_std(std::vector<double>{7}) == 0.0);
    CHECK_THROWS((void)median(std::vector<double>{}));
}
