#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aos {

/// A Boolean assignment; one byte per variable holding 0 or 1.
using Assignment = std::vector<std::uint8_t>;

/// Literal over a 0-based variable. DIMACS indices are 1-based; the parser converts.
struct Literal {
    std::uint32_t var = 0;
    bool negated = false;

    [[nodiscard]] bool satisfied_by(std::uint8_t value) const noexcept { return (value != 0) != negated; }
    [[nodiscard]] Literal operator~() const noexcept { return {var, !negated}; }
    [[nodiscard]] std::int64_t to_dimacs() const noexcept {
        const auto v = static_cast<std::int64_t>(var) + 1;
        return negated ? -v : v;
    }
    /// Dense index into per-literal tables: 2*var + negated.
    [[nodiscard]] std::size_t code() const noexcept { return 2 * static_cast<std::size_t>(var) + (negated ? 1 : 0); }

    friend bool operator==(const Literal&, const Literal&) = default;
};

struct Clause {
    std::vector<Literal> literals;

    [[nodiscard]] std::size_t size() const noexcept { return literals.size(); }
    [[nodiscard]] bool satisfied_by(std::span<const std::uint8_t> assignment) const noexcept {
        for (const Literal& lit : literals)
            if (lit.satisfied_by(assignment[lit.var])) return true;
        return false;
    }
    [[nodiscard]] bool is_tautology() const noexcept;
};

enum class ParseErrorKind {
    MissingHeader,
    MalformedHeader,
    DuplicateHeader,
    BadToken,
    LiteralOutOfRange,
    EmptyClause,
    ClauseCountMismatch,
};

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, std::size_t line, const std::string& what);

    [[nodiscard]] ParseErrorKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    ParseErrorKind kind_;
    std::size_t line_;
};

/// Immutable CNF instance. Besides the clauses it keeps, per signed literal, the number of
/// clauses the literal occurs in, and per variable the clauses mentioning it.
class CnfFormula {
public:
    CnfFormula() = default;
    /// Duplicate literals inside a clause are collapsed; throws std::invalid_argument on
    /// empty clauses or variables out of range.
    CnfFormula(std::size_t num_variables, std::vector<Clause> clauses);

    [[nodiscard]] std::size_t num_variables() const noexcept { return num_variables_; }
    [[nodiscard]] std::size_t num_clauses() const noexcept { return clauses_.size(); }
    [[nodiscard]] const std::vector<Clause>& clauses() const noexcept { return clauses_; }
    [[nodiscard]] const Clause& clause(std::size_t i) const { return clauses_[i]; }

    [[nodiscard]] std::uint32_t occurrence_count(Literal lit) const { return occurrence_index_[lit.code()]; }
    [[nodiscard]] std::span<const std::uint32_t> occurrence_index() const noexcept { return occurrence_index_; }
    /// Indices of clauses containing the variable in either polarity (each clause once).
    [[nodiscard]] std::span<const std::uint32_t> clauses_of(std::uint32_t var) const;

    [[nodiscard]] std::size_t min_clause_size() const noexcept { return min_clause_size_; }
    [[nodiscard]] std::size_t max_clause_size() const noexcept { return max_clause_size_; }

private:
    std::size_t num_variables_ = 0;
    std::vector<Clause> clauses_;
    std::vector<std::uint32_t> occurrence_index_;
    std::vector<std::uint32_t> var_clause_offsets_;
    std::vector<std::uint32_t> var_clauses_;
    std::size_t min_clause_size_ = 0;
    std::size_t max_clause_size_ = 0;
};

/// Parses DIMACS CNF. Comment lines start with 'c'; a line starting with '%' ends the
/// clause section (SATLIB convention). Clauses may span lines.
[[nodiscard]] CnfFormula parse_dimacs(std::istream& in);
[[nodiscard]] CnfFormula parse_dimacs(std::string_view text);
[[nodiscard]] CnfFormula load_dimacs_file(const std::string& path);

void write_dimacs(std::ostream& out, const CnfFormula& formula, std::string_view comment = {});

/// Number of clauses with no satisfied literal. Throws std::invalid_argument when the
/// assignment length differs from the variable count.
[[nodiscard]] std::size_t count_false_clauses(const CnfFormula& formula, std::span<const std::uint8_t> assignment);

struct ClauseStatus {
    std::vector<std::uint32_t> false_in_both;
    std::vector<std::uint32_t> true_in_both;
};

[[nodiscard]] ClauseStatus clause_status_in_both(const CnfFormula& formula, std::span<const std::uint8_t> parent_a,
                                                 std::span<const std::uint8_t> parent_b);

} // namespace aos
