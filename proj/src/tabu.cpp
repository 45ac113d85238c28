#include "aos/tabu.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace aos {

std::size_t tabu_length_for(std::size_t num_variables, double fraction) {
    return static_cast<std::size_t>(std::llround(static_cast<double>(num_variables) * fraction));
}

namespace {

/// Incremental flip-gain bookkeeping: true-literal count per clause and, per variable, the
/// change in false clauses its flip would cause.
class FlipState {
public:
    FlipState(const CnfFormula& formula, Assignment assignment)
        : formula_(formula), values_(std::move(assignment)), true_count_(formula.num_clauses(), 0),
          gain_(formula.num_variables(), 0) {
        for (std::size_t ci = 0; ci < formula_.num_clauses(); ++ci) {
            for (const Literal& lit : formula_.clause(ci).literals)
                if (lit.satisfied_by(values_[lit.var])) ++true_count_[ci];
            if (true_count_[ci] == 0) ++false_count_;
            add_contribution(static_cast<std::uint32_t>(ci), +1);
        }
    }

    [[nodiscard]] long gain(std::uint32_t var) const { return gain_[var]; }
    [[nodiscard]] std::size_t false_count() const noexcept { return false_count_; }
    [[nodiscard]] const Assignment& values() const noexcept { return values_; }

    void flip(std::uint32_t var) {
        const auto clauses = formula_.clauses_of(var);
        for (std::uint32_t ci : clauses) add_contribution(ci, -1);
        values_[var] ^= 1U;
        for (std::uint32_t ci : clauses) {
            const std::uint32_t before = true_count_[ci];
            std::uint32_t now = 0;
            for (const Literal& lit : formula_.clause(ci).literals)
                if (lit.satisfied_by(values_[lit.var])) ++now;
            true_count_[ci] = now;
            if (before == 0 && now > 0) --false_count_;
            if (before > 0 && now == 0) ++false_count_;
        }
        for (std::uint32_t ci : clauses) add_contribution(ci, +1);
    }

private:
    // Adds sign * (effect on clause ci of flipping each of its variables) to the gains.
    void add_contribution(std::uint32_t ci, int sign) {
        const auto& lits = formula_.clause(ci).literals;
        const std::uint32_t tc = true_count_[ci];
        for (std::size_t i = 0; i < lits.size(); ++i) {
            const std::uint32_t var = lits[i].var;
            bool seen = false;
            for (std::size_t j = 0; j < i; ++j) seen = seen || lits[j].var == var;
            if (seen) continue;
            std::int64_t after = tc;
            for (const Literal& lit : lits) {
                if (lit.var != var) continue;
                after += lit.satisfied_by(values_[var]) ? -1 : +1;
            }
            const long delta = static_cast<long>(after == 0) - static_cast<long>(tc == 0);
            gain_[var] += sign * delta;
        }
    }

    const CnfFormula& formula_;
    Assignment values_;
    std::vector<std::uint32_t> true_count_;
    std::vector<long> gain_;
    std::size_t false_count_ = 0;
};

} // namespace

Individual tabu_improve(const Individual& start, const CnfFormula& formula, std::size_t tabu_length,
                        std::uint64_t max_flips, Rng& rng) {
    Individual best = start;
    if (max_flips == 0 || start.false_count == 0 || formula.num_variables() == 0) return best;

    FlipState state(formula, start.assignment);
    std::vector<std::uint64_t> tabu_until(formula.num_variables(), 0);

    for (std::uint64_t flip = 0; flip < max_flips; ++flip) {
        std::uint32_t chosen = 0;
        std::size_t ties = 0;
        long chosen_gain = std::numeric_limits<long>::max();
        std::uint32_t fallback = 0;
        long fallback_gain = std::numeric_limits<long>::max();

        for (std::uint32_t v = 0; v < formula.num_variables(); ++v) {
            const long g = state.gain(v);
            if (g < fallback_gain) {
                fallback_gain = g;
                fallback = v;
            }
            const bool tabu = flip < tabu_until[v];
            const bool aspiration =
                static_cast<long>(state.false_count()) + g < static_cast<long>(best.false_count);
            if (tabu && !aspiration) continue;
            if (g < chosen_gain) {
                chosen_gain = g;
                chosen = v;
                ties = 1;
            } else if (g == chosen_gain && uniform_index(++ties, rng) == 0) {
                chosen = v;
            }
        }
        // Every variable tabu and none aspirated: take the best move anyway.
        if (ties == 0) chosen = fallback;

        state.flip(chosen);
        tabu_until[chosen] = flip + 1 + tabu_length;

        if (state.false_count() < best.false_count) {
            best.assignment = state.values();
            best.false_count = state.false_count();
            if (best.false_count == 0) break;
        }
    }
    return best;
}

Individual tabu_standalone(const CnfFormula& formula, std::size_t tabu_length, std::uint64_t max_flips, Rng& rng) {
    Assignment initial(formula.num_variables());
    for (auto& bit : initial) bit = coin_flip(rng) ? 1 : 0;
    return tabu_improve(make_individual(formula, std::move(initial), 0), formula, tabu_length, max_flips, rng);
}

} // namespace aos
