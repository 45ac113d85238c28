// Acceptance suite: one line per criterion, exit status 1 if any unexpected failure.

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "aos/config.hpp"
#include "aos/controller.hpp"
#include "aos/engine.hpp"
#include "aos/operators.hpp"
#include "aos/stats.hpp"
#include "aos/strategies.hpp"
#include "aos/trace_io.hpp"

using namespace aos;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* title;
    double time_limit_s;
    bool known_deviation;
    std::function<Outcome()> check;
};

fs::path flat50_dir() {
    if (const char* env = std::getenv("AOS_FLAT50_DIR")) return env;
    return fs::path(AOS_SOURCE_DIR) / "data" / "flat50";
}

CnfFormula load_flat(const std::string& name) { return load_dimacs_file((flat50_dir() / (name + ".cnf")).string()); }

std::string fmt(const char* format, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

// Probability matching evaluated directly from its closed form.
std::vector<double> pm_oracle(const std::vector<double>& credits, double p_min) {
    const double n = static_cast<double>(credits.size());
    const double sum = std::accumulate(credits.begin(), credits.end(), 0.0);
    std::vector<double> s(credits.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] = sum > 0.0 ? p_min + (1.0 - n * p_min) * credits[i] / sum : 1.0 / n;
    return s;
}

Outcome criterion1() {
    Rng rng = make_rng(1001);
    double worst = 0.0;
    bool ok = true;
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = 2 + uniform_index(19, rng);
        const double choices[] = {0.0, 0.05, 1.0 / static_cast<double>(n)};
        const double p_min = choices[uniform_index(3, rng)];
        std::vector<double> credits(n);
        for (auto& c : credits) c = uniform_index(5, rng) == 0 ? 0.0 : uniform_unit(rng) * 10.0;
        const auto got = pm_probabilities(credits, p_min);
        const auto want = pm_oracle(credits, p_min);
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            worst = std::max(worst, std::abs(got[i] - want[i]));
            sum += got[i];
            if (got[i] < p_min - 1e-12) ok = false;
        }
        if (std::abs(sum - 1.0) > 1e-9) ok = false;
    }
    ok = ok && worst <= 1e-9;
    return {ok, fmt("max |s - oracle| = %.2e", worst)};
}

Outcome criterion2() {
    const std::size_t n = 5;
    const double p_min = 0.05;
    const double p_max = 1.0 - (n - 1) * p_min;
    std::vector<double> probs(n, 1.0 / n);
    const std::vector<double> credits{0.1, 0.9, 0.2, 0.3, 0.0};
    int steps = 0;
    while (std::abs(probs[1] - p_max) > 1e-6 && steps < 200) {
        wta_update(probs, credits, 0.8, p_min);
        ++steps;
    }
    const bool ok = std::abs(probs[1] - p_max) <= 1e-6;
    return {ok, fmt("s_winner = %.9f after %d steps (p_max %.2f)", probs[1], steps, p_max)};
}

Outcome criterion3() {
    const double worked = mab_score(0.5, 1, 4, 1.0);
    const double expected = 0.5 + std::sqrt(std::log(4.0));
    bool ok = std::abs(worked - expected) <= 1e-6 && std::abs(worked - 1.678) <= 1e-3;

    const std::vector<double> u{0.9, 0.1, 0.5, 0.7};
    const std::vector<std::uint64_t> some_unplayed{3, 2, 0, 0};
    ok = ok && select_mab(u, some_unplayed, 1.0) == 2;

    Rng rng = make_rng(1003);
    for (int t = 0; t < 500 && ok; ++t) {
        std::vector<double> util(2 + uniform_index(10, rng));
        std::vector<std::uint64_t> counts(util.size());
        for (auto& x : util) x = uniform_unit(rng);
        for (auto& c : counts) c = 1 + uniform_index(50, rng);
        const auto argmax = static_cast<std::size_t>(std::distance(util.begin(), std::max_element(util.begin(), util.end())));
        ok = select_mab(util, counts, 0.0) == argmax;
    }
    return {ok, fmt("MAB(0.5, 1, 4, C=1) = %.6f", worked)};
}

Outcome criterion4() {
    RunConfig c = default_run_config();
    c.operator_codes.clear();
    for (unsigned i = 0; i < 20; ++i) c.operator_codes.push_back(null_operator_code(i));
    c.max_iterations = 10'000;
    c.early_exit = false;
    const RunResult r = run(load_flat("flat50-3"), c);
    bool ok = r.trace.size() == 10'000;
    for (const auto& rec : r.trace)
        ok = ok && rec.entropy == r.initial.diversity && rec.mean_q == r.initial.mean_quality && rec.dq == 0.0 &&
             rec.dd == 0.0;
    return {ok, fmt("%zu iterations, entropy %.17g, mean quality %.17g", r.trace.size(), r.initial.diversity,
                    r.initial.mean_quality)};
}

RunConfig discrimination_config(std::uint64_t seed) {
    RunConfig c = default_run_config();
    c.operator_codes = parse_operator_list("1111,6011,@nulls:18");
    c.max_iterations = 10'000;
    c.early_exit = false;
    c.seed = seed;
    return c;
}

bool beats_every_null(const RunResult& r, std::size_t op) {
    for (std::size_t i = 2; i < r.application_counts.size(); ++i)
        if (r.application_counts[op] <= r.application_counts[i]) return false;
    return true;
}

Outcome criterion5() {
    const CnfFormula f = load_flat("flat50-3");
    int quality_ok = 0;
    int diversity_ok = 0;
    std::string counts;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        RunConfig c = discrimination_config(seed);
        c.strategy.theta = kHalfPi;
        const RunResult q = run(f, c);
        c.strategy.theta = 0.0;
        const RunResult d = run(f, c);
        quality_ok += beats_every_null(q, 0);
        diversity_ok += beats_every_null(d, 1);
        const auto max_null = [](const RunResult& r) {
            return *std::max_element(r.application_counts.begin() + 2, r.application_counts.end());
        };
        counts += fmt(" [%llu/%llu %llu/%llu]", static_cast<unsigned long long>(q.application_counts[0]),
                      static_cast<unsigned long long>(max_null(q)), static_cast<unsigned long long>(d.application_counts[1]),
                      static_cast<unsigned long long>(max_null(d)));
    }
    return {quality_ok >= 4 && diversity_ok >= 4,
            fmt("1111 wins at pi/2 on %d/5, 6011 wins at 0 on %d/5; op/max-null:", quality_ok, diversity_ok) + counts};
}

Outcome criterion6() {
    const CnfFormula f = load_flat("flat50-3");
    int ok = 0;
    std::string means;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        RunConfig c = discrimination_config(seed);
        c.strategy.kind = StrategyKind::AlwaysMoving;
        c.strategy.epochs = 2;
        const RunResult r = run(f, c);
        double sum0 = 0, sum1 = 0;
        std::size_t n0 = 0, n1 = 0;
        for (const auto& rec : r.trace) {
            if (rec.theta == 0.0) {
                sum0 += rec.entropy;
                ++n0;
            } else {
                sum1 += rec.entropy;
                ++n1;
            }
        }
        const double m0 = n0 ? sum0 / n0 : 0.0;
        const double m1 = n1 ? sum1 / n1 : 0.0;
        ok += n0 > 0 && n1 > 0 && m0 > m1;
        means += fmt(" [%.4f>%.4f]", m0, m1);
    }
    return {ok >= 4, fmt("diversity epoch higher on %d/5:", ok) + means};
}

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

// Runs fn(i) for i in [0, n) on a small thread pool.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(worker_count(), n); ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) fn(i);
        });
}

Outcome criterion7() {
    const std::vector<std::string> names{"flat50-293", "flat50-297", "flat50-298", "flat50-299", "flat50-3", "flat50-30"};
    std::vector<CnfFormula> formulas;
    for (const auto& n : names) formulas.push_back(load_flat(n));
    std::vector<int> solved(names.size() * 10, 0);
    parallel_for(solved.size(), [&](std::size_t j) {
        RunConfig c = default_run_config();
        c.strategy.kind = StrategyKind::ReactiveMoving;
        c.tabu.mode = TabuMode::Memetic;
        c.tabu.memetic_flip_budget = 100;
        c.max_iterations = 20'000;
        c.seed = 1 + j % 10;
        solved[j] = run(formulas[j / 10], c).solved();
    });
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < names.size(); ++i) {
        const int s = std::accumulate(solved.begin() + i * 10, solved.begin() + i * 10 + 10, 0);
        ok = ok && s >= 9;
        detail += fmt(" %s:%d/10", names[i].c_str(), s);
    }
    return {ok, "solved" + detail};
}

Outcome criterion8() {
    const CnfFormula f = load_flat("flat50-3");
    const std::uint64_t bases[] = {1, 101, 201};
    std::vector<double> ctl(30), rnd(30);
    parallel_for(60, [&](std::size_t j) {
        const std::size_t batch = (j % 30) / 10;
        RunConfig c = default_run_config();
        c.max_iterations = 20'000;
        c.early_exit = false;
        c.seed = bases[batch] + j % 10;
        if (j < 30) {
            c.strategy.theta = kHalfPi;
            ctl[j] = static_cast<double>(run(f, c).best_false_count);
        } else {
            c.selection = SelectionMode::UniformRandom;
            rnd[j - 30] = static_cast<double>(run(f, c).best_false_count);
        }
    });
    int significant = 0;
    bool median_ok = true;
    std::string detail;
    for (std::size_t b = 0; b < 3; ++b) {
        const std::span<const double> a(ctl.data() + b * 10, 10);
        const std::span<const double> r(rnd.data() + b * 10, 10);
        const double ma = median(a);
        const double mr = median(r);
        const double p = wilcoxon_ranksum(a, r);
        median_ok = median_ok && ma <= mr;
        significant += ma <= mr && p < 0.05;
        detail += fmt(" [median %g vs %g, p=%.3f]", ma, mr, p);
    }
    return {median_ok && significant >= 2, fmt("controller vs random, significant in %d/3:", significant) + detail};
}

Outcome criterion9() {
    const CnfFormula f = parse_dimacs("p cnf 3 3\n1 -2 -3 0\n-1 2 0\n-1 3 0\n");
    const Individual a = make_individual(f, {1, 1, 0});
    const Individual b = make_individual(f, {1, 0, 0});
    const OperatorSpec cc = decode("1111");
    bool ok = true;
    bool seen[2] = {false, false};
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
        Rng rng = make_rng(seed);
        const Individual child = apply(cc, a, b, {f, rng, a});
        ok = ok && child.false_count == 0 && count_false_clauses(f, child.assignment) == 0 && child.assignment[0] == 0 &&
             child.assignment[2] == 0;
        seen[child.assignment[1]] = true;
    }
    ok = ok && seen[0] && seen[1];
    return {ok, fmt("64 seeds, child (0,b,0) with b=0 seen:%d b=1 seen:%d", seen[0], seen[1])};
}

double enumerate_p(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> pooled = a;
    pooled.insert(pooled.end(), b.begin(), b.end());
    const auto ranks = midranks(pooled);
    const std::size_t n = pooled.size();
    const std::size_t k = a.size();
    const double center = static_cast<double>(k) * static_cast<double>(n + 1) / 2.0;
    const double observed = std::abs(std::accumulate(ranks.begin(), ranks.begin() + static_cast<long>(k), 0.0) - center);
    std::size_t extreme = 0, total = 0;
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != k) continue;
        double s = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1U) s += ranks[i];
        ++total;
        extreme += std::abs(s - center) >= observed - 1e-9;
    }
    return static_cast<double>(extreme) / static_cast<double>(total);
}

Outcome criterion10() {
    Rng rng = make_rng(1010);
    double worst = 0.0;
    std::size_t cases = 0;
    for (std::size_t n = 2; n <= 10; ++n)
        for (std::size_t na = 1; na < n; ++na)
            for (int rep = 0; rep < 40; ++rep) {
                const std::size_t levels = rep % 2 ? n * 3 : 1 + uniform_index(4, rng);
                std::vector<double> a(na), b(n - na);
                for (auto& v : a) v = static_cast<double>(uniform_index(levels + 1, rng));
                for (auto& v : b) v = static_cast<double>(uniform_index(levels + 1, rng));
                const RankSumResult r = wilcoxon_ranksum_test(a, b);
                if (!r.exact) return {false, "exact mode not used"};
                worst = std::max(worst, std::abs(r.p_value - enumerate_p(a, b)));
                ++cases;
            }
    return {worst <= 1e-12, fmt("%zu splits, max |p - enumeration| = %.2e", cases, worst)};
}

std::string read_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome criterion11() {
    const CnfFormula f = load_flat("flat50-3");
    const fs::path dir = fs::temp_directory_path() / "aos_acceptance_determinism";
    fs::create_directories(dir);
    bool ok = true;
    std::size_t bytes = 0;
    for (const char* ext : {".csv", ".bin"}) {
        for (int mode = 0; mode < 3; ++mode) {
            RunConfig c = default_run_config();
            c.max_iterations = 3'000;
            c.early_exit = false;
            c.seed = 77;
            if (mode == 1) c.strategy.kind = StrategyKind::ReactiveMoving, c.tabu.mode = TabuMode::Memetic;
            if (mode == 2) c.selection = SelectionMode::UniformRandom;
            const fs::path p1 = dir / (std::string("a") + ext);
            const fs::path p2 = dir / (std::string("b") + ext);
            save_trace(p1.string(), run(f, c).trace);
            save_trace(p2.string(), run(f, c).trace);
            const std::string x = read_bytes(p1);
            ok = ok && !x.empty() && x == read_bytes(p2);
            bytes += x.size();
        }
    }
    fs::remove_all(dir);
    return {ok, fmt("6 trace pairs identical (%zu bytes compared)", bytes)};
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "probability matching matches its closed form", 1.0, false, criterion1},
        {2, "winner-take-all reaches p_max", 1.0, false, criterion2},
        {3, "bandit score and selection rules", 1.0, false, criterion3},
        {4, "null operators leave the population bit-identical", 60.0, false, criterion4},
        {5, "null-operator discrimination", 120.0, false, criterion5},
        {6, "strategy steering of entropy", 120.0, false, criterion6},
        {7, "memetic tabu solves flat50 instances", 900.0, false, criterion7},
        {8, "controller beats the random baseline", 600.0, true, criterion8},
        {9, "corrective crossover on the example formula", 1.0, false, criterion9},
        {10, "exact rank-sum p-values match enumeration", 60.0, false, criterion10},
        {11, "byte-identical traces for identical seeds", 60.0, false, criterion11},
    };

    int unexpected = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.time_limit_s) {
            o.pass = false;
            o.detail += fmt(" (over the %.0f s limit)", c.time_limit_s);
        }
        const char* tag = o.pass ? "PASS" : c.known_deviation ? "FAIL*" : "FAIL";
        std::printf("[%s] %2d %s: %s (%.2f s)\n", tag, c.id, c.title, o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass && !c.known_deviation) ++unexpected;
    }
    std::printf("FAIL* marks a documented known deviation; %d unexpected failure(s)\n", unexpected);
    return unexpected == 0 ? 0 : 1;
}
