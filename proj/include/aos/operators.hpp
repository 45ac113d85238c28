#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aos/cnf.hpp"
#include "aos/population.hpp"
#include "aos/rng.hpp"

namespace aos {

/// Crossover operator described by four features:
///   f1 (0..6) how clauses false in both parents are selected,
///     (5: copy those clauses from the fitter parent, 6: negate every variable the parents share),
///   f2 (0..4) what is done to each selected false clause,
///   f3 (1..5) how clauses true in both parents are selected,
///   f4 (1..5) what is done to each selected true clause.
/// Codes starting with '7' are null operators.
struct OperatorSpec {
    std::string code;
    int f1 = 0;
    int f2 = 0;
    int f3 = 1;
    int f4 = 1;
    bool is_null = false;

    friend bool operator==(const OperatorSpec&, const OperatorSpec&) = default;
};

class OperatorCodeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

[[nodiscard]] OperatorSpec decode(std::string_view code);

/// "70NN" for the n-th null operator.
[[nodiscard]] std::string null_operator_code(unsigned index);

enum class OperatorGroup { Exploration, Exploitation, Neutral };

struct GroupedOperator {
    OperatorSpec spec;
    OperatorGroup group;
};

[[nodiscard]] std::string_view to_string(OperatorGroup group) noexcept;

/// The twenty SAT crossovers used in the experiments, grouped by expected effect.
[[nodiscard]] std::vector<GroupedOperator> experiment_operator_set();

struct ApplyContext {
    const CnfFormula& formula;
    Rng& rng;
    /// Member about to be replaced; null operators return a copy of it.
    const Individual& oldest;
};

/// Produces one child from two parents. The child's birth iteration is left at 0.
[[nodiscard]] Individual apply(const OperatorSpec& spec, const Individual& parent_a, const Individual& parent_b,
                               const ApplyContext& context);

/// Change in the false-clause count if `var` is flipped; negative means improvement.
[[nodiscard]] long flip_gain(const CnfFormula& formula, std::span<const std::uint8_t> assignment, std::uint32_t var);

} // namespace aos
