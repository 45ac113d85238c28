#include "aos/operators.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace aos {

OperatorSpec decode(std::string_view code) {
    if (code.size() != 4 || !std::all_of(code.begin(), code.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw OperatorCodeError("operator code '" + std::string(code) + "' is not four decimal digits");
    OperatorSpec spec;
    spec.code = std::string(code);
    spec.f1 = code[0] - '0';
    spec.f2 = code[1] - '0';
    spec.f3 = code[2] - '0';
    spec.f4 = code[3] - '0';
    if (spec.f1 == 7) {
        spec.is_null = true;
        return spec;
    }
    auto check = [&](int value, int lo, int hi, const char* feature) {
        if (value < lo || value > hi)
            throw OperatorCodeError("operator code '" + spec.code + "': " + feature + "=" + std::to_string(value) +
                                    " outside [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
    };
    check(spec.f1, 0, 6, "f1");
    check(spec.f2, 0, 4, "f2");
    check(spec.f3, 1, 5, "f3");
    check(spec.f4, 1, 5, "f4");
    return spec;
}

std::string null_operator_code(unsigned index) {
    if (index > 99) throw std::out_of_range("at most 100 null operator codes");
    std::string code = "70";
    code += static_cast<char>('0' + index / 10);
    code += static_cast<char>('0' + index % 10);
    return code;
}

std::string_view to_string(OperatorGroup group) noexcept {
    switch (group) {
    case OperatorGroup::Exploration: return "exploration";
    case OperatorGroup::Exploitation: return "exploitation";
    case OperatorGroup::Neutral: return "neutral";
    }
    return "unknown";
}

std::vector<GroupedOperator> experiment_operator_set() {
    static constexpr std::array<std::string_view, 5> exploration{"0011", "0035", "0015", "4455", "6011"};
    static constexpr std::array<std::string_view, 10> exploitation{"1111", "1122", "5011", "3332", "1134",
                                                                   "0022", "2352", "4454", "1224", "0013"};
    static constexpr std::array<std::string_view, 5> neutral{"2455", "4335", "1125", "5035", "1335"};
    std::vector<GroupedOperator> out;
    for (auto code : exploration) out.push_back({decode(code), OperatorGroup::Exploration});
    for (auto code : exploitation) out.push_back({decode(code), OperatorGroup::Exploitation});
    for (auto code : neutral) out.push_back({decode(code), OperatorGroup::Neutral});
    return out;
}

long flip_gain(const CnfFormula& formula, std::span<const std::uint8_t> assignment, std::uint32_t var) {
    long delta = 0;
    for (std::uint32_t ci : formula.clauses_of(var)) {
        bool before = false;
        bool after = false;
        for (const Literal& lit : formula.clause(ci).literals) {
            const std::uint8_t value = assignment[lit.var];
            before = before || lit.satisfied_by(value);
            after = after || lit.satisfied_by(lit.var == var ? static_cast<std::uint8_t>(value ^ 1U) : value);
        }
        delta += static_cast<long>(before) - static_cast<long>(after);
    }
    return delta;
}

namespace {

constexpr std::int8_t kUnassigned = -1;

class ChildDraft {
public:
    explicit ChildDraft(std::size_t n) : values_(n, kUnassigned) {}

    /// First write wins.
    void fix(std::uint32_t var, std::uint8_t value) {
        if (values_[var] == kUnassigned) values_[var] = static_cast<std::int8_t>(value);
    }
    [[nodiscard]] bool is_fixed(std::uint32_t var) const { return values_[var] != kUnassigned; }
    [[nodiscard]] bool satisfies(const Clause& clause) const {
        return std::any_of(clause.literals.begin(), clause.literals.end(), [&](const Literal& lit) {
            return values_[lit.var] != kUnassigned && lit.satisfied_by(static_cast<std::uint8_t>(values_[lit.var]));
        });
    }

    Assignment complete(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, Rng& rng) const {
        Assignment out(values_.size());
        for (std::size_t v = 0; v < values_.size(); ++v) {
            if (values_[v] != kUnassigned) out[v] = static_cast<std::uint8_t>(values_[v]);
            else if (a[v] == b[v]) out[v] = a[v];
            else out[v] = coin_flip(rng) ? a[v] : b[v];
        }
        return out;
    }

private:
    std::vector<std::int8_t> values_;
};

enum class Pick { None, All, One, Smallest, Biggest };

std::vector<std::uint32_t> pick_clauses(const std::vector<std::uint32_t>& pool, Pick pick, const CnfFormula& formula,
                                        Rng& rng) {
    if (pool.empty() || pick == Pick::None) return {};
    if (pick == Pick::All) return pool;
    if (pick == Pick::One) return {pool[uniform_index(pool.size(), rng)]};

    std::size_t target = formula.clause(pool.front()).size();
    for (std::uint32_t ci : pool) {
        const std::size_t size = formula.clause(ci).size();
        target = pick == Pick::Smallest ? std::min(target, size) : std::max(target, size);
    }
    std::vector<std::uint32_t> ties;
    for (std::uint32_t ci : pool)
        if (formula.clause(ci).size() == target) ties.push_back(ci);
    return {ties[uniform_index(ties.size(), rng)]};
}

Pick false_pick(int f1) {
    switch (f1) {
    case 1: return Pick::All;
    case 2: return Pick::One;
    case 3: return Pick::Smallest;
    case 4: return Pick::Biggest;
    case 5:
    case 6: return Pick::All;
    default: return Pick::None;
    }
}

Pick true_pick(int f3) {
    switch (f3) {
    case 2: return Pick::All;
    case 3: return Pick::One;
    case 4: return Pick::Smallest;
    case 5: return Pick::Biggest;
    default: return Pick::None;
    }
}

/// Uniform choice among the minimisers of score over [0, n).
template <typename Score>
std::size_t argmin_random_tie(std::size_t n, Score score, Rng& rng) {
    std::size_t chosen = 0;
    std::size_t ties = 0;
    long best = std::numeric_limits<long>::max();
    for (std::size_t i = 0; i < n; ++i) {
        const long s = score(i);
        if (s < best) {
            best = s;
            chosen = i;
            ties = 1;
        } else if (s == best && uniform_index(++ties, rng) == 0) {
            chosen = i;
        }
    }
    return chosen;
}

std::vector<std::uint32_t> distinct_vars(const Clause& clause) {
    std::vector<std::uint32_t> vars;
    for (const Literal& lit : clause.literals)
        if (std::find(vars.begin(), vars.end(), lit.var) == vars.end()) vars.push_back(lit.var);
    return vars;
}

std::uint32_t occurrences_in(const Clause& clause, Literal lit) {
    return static_cast<std::uint32_t>(std::count(clause.literals.begin(), clause.literals.end(), lit));
}

class Recombiner {
public:
    Recombiner(const Individual& a, const Individual& b, const ApplyContext& ctx)
        : a_(a), b_(b), formula_(ctx.formula), rng_(ctx.rng), draft_(ctx.formula.num_variables()) {}

    Individual run(const OperatorSpec& spec) {
        const ClauseStatus status = clause_status_in_both(formula_, a_.assignment, b_.assignment);

        const auto false_clauses = pick_clauses(status.false_in_both, false_pick(spec.f1), formula_, rng_);
        if (spec.f1 == 5) fleurent_ferland(false_clauses);
        if (spec.f1 == 6) flip_shared();
        for (std::uint32_t ci : false_clauses) act_on_false(ci, spec.f2);

        const auto true_clauses = pick_clauses(status.true_in_both, true_pick(spec.f3), formula_, rng_);
        for (std::uint32_t ci : true_clauses) act_on_true(ci, spec.f4);

        return make_individual(formula_, draft_.complete(a_.assignment, b_.assignment, rng_), 0);
    }

private:
    [[nodiscard]] std::uint8_t flipped(std::uint32_t var) const { return a_.assignment[var] ^ 1U; }

    // For each selected clause, copy the clause variables from the parent with fewer false clauses.
    void fleurent_ferland(const std::vector<std::uint32_t>& clauses) {
        const Individual& better = b_.false_count < a_.false_count ? b_ : a_;
        for (std::uint32_t ci : clauses)
            for (const Literal& lit : formula_.clause(ci).literals) draft_.fix(lit.var, better.assignment[lit.var]);
    }

    // Every variable on which the parents agree is set to the opposite value.
    void flip_shared() {
        for (std::uint32_t v = 0; v < a_.assignment.size(); ++v)
            if (a_.assignment[v] == b_.assignment[v]) draft_.fix(v, flipped(v));
    }

    void act_on_false(std::uint32_t ci, int action) {
        const Clause& clause = formula_.clause(ci);
        switch (action) {
        case 1:
        case 2: {
            if (action == 2 && draft_.satisfies(clause)) return;
            const auto vars = distinct_vars(clause);
            const std::size_t pick = argmin_random_tie(
                vars.size(),
                [&](std::size_t i) {
                    return flip_gain(formula_, a_.assignment, vars[i]) + flip_gain(formula_, b_.assignment, vars[i]);
                },
                rng_);
            draft_.fix(vars[pick], flipped(vars[pick]));
            break;
        }
        case 3:
            for (const Literal& lit : clause.literals) draft_.fix(lit.var, flipped(lit.var));
            break;
        case 4: {
            const auto& lits = clause.literals;
            const std::size_t pick = argmin_random_tie(
                lits.size(),
                [&](std::size_t i) {
                    return static_cast<long>(formula_.occurrence_count(lits[i]) - occurrences_in(clause, lits[i]));
                },
                rng_);
            draft_.fix(lits[pick].var, flipped(lits[pick].var));
            break;
        }
        default: break;
        }
    }

    void act_on_true(std::uint32_t ci, int action) {
        const Clause& clause = formula_.clause(ci);
        const auto& lits = clause.literals;
        auto satisfying = [](const Literal& lit) { return static_cast<std::uint8_t>(lit.negated ? 0 : 1); };
        switch (action) {
        case 2: {
            auto cost = [&](const Individual& parent, const Literal& lit) {
                const long base = static_cast<long>(parent.false_count);
                if (lit.satisfied_by(parent.assignment[lit.var])) return base;
                return base + flip_gain(formula_, parent.assignment, lit.var);
            };
            const std::size_t pick = argmin_random_tie(
                lits.size(), [&](std::size_t i) { return cost(a_, lits[i]) + cost(b_, lits[i]); }, rng_);
            draft_.fix(lits[pick].var, satisfying(lits[pick]));
            break;
        }
        case 3:
            for (const Literal& lit : lits) draft_.fix(lit.var, satisfying(lit));
            break;
        case 4: {
            const std::size_t pick = argmin_random_tie(
                lits.size(),
                [&](std::size_t i) {
                    const Literal negation = ~lits[i];
                    return static_cast<long>(formula_.occurrence_count(negation) - occurrences_in(clause, negation));
                },
                rng_);
            draft_.fix(lits[pick].var, satisfying(lits[pick]));
            break;
        }
        case 5:
            for (const Literal& lit : lits) draft_.fix(lit.var, static_cast<std::uint8_t>(satisfying(lit) ^ 1U));
            break;
        default: break;
        }
    }

    const Individual& a_;
    const Individual& b_;
    const CnfFormula& formula_;
    Rng& rng_;
    ChildDraft draft_;
};

} // namespace

Individual apply(const OperatorSpec& spec, const Individual& parent_a, const Individual& parent_b,
                 const ApplyContext& context) {
    if (spec.is_null) return Individual{context.oldest.assignment, context.oldest.false_count, 0};
    return Recombiner(parent_a, parent_b, context).run(spec);
}

} // namespace aos
