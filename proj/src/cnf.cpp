#include "aos/cnf.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace aos {

bool Clause::is_tautology() const noexcept {
    for (std::size_t i = 0; i < literals.size(); ++i)
        for (std::size_t j = i + 1; j < literals.size(); ++j)
            if (literals[i].var == literals[j].var && literals[i].negated != literals[j].negated) return true;
    return false;
}

ParseError::ParseError(ParseErrorKind kind, std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), kind_(kind), line_(line) {}

CnfFormula::CnfFormula(std::size_t num_variables, std::vector<Clause> clauses)
    : num_variables_(num_variables), clauses_(std::move(clauses)) {
    if (num_variables_ > std::numeric_limits<std::uint32_t>::max() / 2)
        throw std::invalid_argument("too many variables");

    occurrence_index_.assign(2 * num_variables_, 0);
    std::vector<std::uint32_t> var_degree(num_variables_, 0);
    min_clause_size_ = clauses_.empty() ? 0 : std::numeric_limits<std::size_t>::max();

    for (std::size_t ci = 0; ci < clauses_.size(); ++ci) {
        auto& lits = clauses_[ci].literals;
        if (lits.empty()) throw std::invalid_argument("clause " + std::to_string(ci) + " is empty");
        std::vector<Literal> unique;
        unique.reserve(lits.size());
        for (const Literal& lit : lits) {
            if (lit.var >= num_variables_)
                throw std::invalid_argument("clause " + std::to_string(ci) + " references variable " +
                                            std::to_string(lit.var + 1) + " beyond " +
                                            std::to_string(num_variables_));
            if (std::find(unique.begin(), unique.end(), lit) == unique.end()) unique.push_back(lit);
        }
        lits = std::move(unique);

        for (std::size_t i = 0; i < lits.size(); ++i) {
            ++occurrence_index_[lits[i].code()];
            bool seen = false;
            for (std::size_t j = 0; j < i; ++j) seen = seen || lits[j].var == lits[i].var;
            if (!seen) ++var_degree[lits[i].var];
        }
        min_clause_size_ = std::min(min_clause_size_, lits.size());
        max_clause_size_ = std::max(max_clause_size_, lits.size());
    }

    var_clause_offsets_.assign(num_variables_ + 1, 0);
    for (std::size_t v = 0; v < num_variables_; ++v) var_clause_offsets_[v + 1] = var_clause_offsets_[v] + var_degree[v];
    var_clauses_.resize(var_clause_offsets_.back());
    std::vector<std::uint32_t> fill(var_clause_offsets_.begin(), var_clause_offsets_.end() - 1);
    for (std::size_t ci = 0; ci < clauses_.size(); ++ci) {
        const auto& lits = clauses_[ci].literals;
        for (std::size_t i = 0; i < lits.size(); ++i) {
            bool seen = false;
            for (std::size_t j = 0; j < i; ++j) seen = seen || lits[j].var == lits[i].var;
            if (!seen) var_clauses_[fill[lits[i].var]++] = static_cast<std::uint32_t>(ci);
        }
    }
}

std::span<const std::uint32_t> CnfFormula::clauses_of(std::uint32_t var) const {
    return std::span<const std::uint32_t>(var_clauses_).subspan(var_clause_offsets_[var],
                                                                var_clause_offsets_[var + 1] - var_clause_offsets_[var]);
}

namespace {

bool parse_int(std::string_view token, long long& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

} // namespace

CnfFormula parse_dimacs(std::istream& in) {
    bool have_header = false;
    long long declared_vars = 0;
    long long declared_clauses = 0;
    std::vector<Clause> clauses;
    Clause pending;
    std::size_t line_no = 0;
    std::string line;

    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        const auto first = view.find_first_not_of(" \t\r");
        if (first == std::string_view::npos) continue;
        view.remove_prefix(first);
        if (view.front() == 'c') continue;
        if (view.front() == '%') break;
        if (view.front() == 'p') {
            if (have_header) throw ParseError(ParseErrorKind::DuplicateHeader, line_no, "second problem line");
            const auto tokens = split_ws(view);
            if (tokens.size() != 4 || tokens[0] != "p" || tokens[1] != "cnf" || !parse_int(tokens[2], declared_vars) ||
                !parse_int(tokens[3], declared_clauses) || declared_vars < 0 || declared_clauses < 0)
                throw ParseError(ParseErrorKind::MalformedHeader, line_no, "expected 'p cnf <vars> <clauses>'");
            have_header = true;
            continue;
        }
        if (!have_header) throw ParseError(ParseErrorKind::MissingHeader, line_no, "clause data before 'p cnf' header");

        for (std::string_view token : split_ws(view)) {
            long long value = 0;
            if (!parse_int(token, value))
                throw ParseError(ParseErrorKind::BadToken, line_no, "invalid token '" + std::string(token) + "'");
            if (value == 0) {
                if (pending.literals.empty()) throw ParseError(ParseErrorKind::EmptyClause, line_no, "empty clause");
                if (static_cast<long long>(clauses.size()) >= declared_clauses)
                    throw ParseError(ParseErrorKind::ClauseCountMismatch, line_no,
                                     "more clauses than the declared " + std::to_string(declared_clauses));
                clauses.push_back(std::move(pending));
                pending = Clause{};
                continue;
            }
            const long long magnitude = value < 0 ? -value : value;
            if (magnitude > declared_vars)
                throw ParseError(ParseErrorKind::LiteralOutOfRange, line_no,
                                 "literal " + std::to_string(value) + " exceeds declared variable count " +
                                     std::to_string(declared_vars));
            pending.literals.push_back(Literal{static_cast<std::uint32_t>(magnitude - 1), value < 0});
        }
    }

    if (!have_header) throw ParseError(ParseErrorKind::MissingHeader, line_no, "no 'p cnf' header found");
    if (!pending.literals.empty()) {
        // Unterminated final clause.
        if (static_cast<long long>(clauses.size()) >= declared_clauses)
            throw ParseError(ParseErrorKind::ClauseCountMismatch, line_no,
                             "more clauses than the declared " + std::to_string(declared_clauses));
        clauses.push_back(std::move(pending));
    }
    if (static_cast<long long>(clauses.size()) != declared_clauses)
        throw ParseError(ParseErrorKind::ClauseCountMismatch, line_no,
                         "found " + std::to_string(clauses.size()) + " clauses, header declares " +
                             std::to_string(declared_clauses));
    return CnfFormula(static_cast<std::size_t>(declared_vars), std::move(clauses));
}

CnfFormula parse_dimacs(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_dimacs(in);
}

CnfFormula load_dimacs_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_dimacs(in);
}

void write_dimacs(std::ostream& out, const CnfFormula& formula, std::string_view comment) {
    std::istringstream lines{std::string(comment)};
    std::string line;
    while (std::getline(lines, line)) out << "c " << line << '\n';
    out << "p cnf " << formula.num_variables() << ' ' << formula.num_clauses() << '\n';
    for (const Clause& clause : formula.clauses()) {
        for (const Literal& lit : clause.literals) out << lit.to_dimacs() << ' ';
        out << "0\n";
    }
}

std::size_t count_false_clauses(const CnfFormula& formula, std::span<const std::uint8_t> assignment) {
    if (assignment.size() != formula.num_variables())
        throw std::invalid_argument("assignment has " + std::to_string(assignment.size()) + " values, formula has " +
                                    std::to_string(formula.num_variables()) + " variables");
    std::size_t count = 0;
    for (const Clause& clause : formula.clauses())
        if (!clause.satisfied_by(assignment)) ++count;
    return count;
}

ClauseStatus clause_status_in_both(const CnfFormula& formula, std::span<const std::uint8_t> parent_a,
                                   std::span<const std::uint8_t> parent_b) {
    if (parent_a.size() != formula.num_variables() || parent_b.size() != formula.num_variables())
        throw std::invalid_argument("parent length does not match variable count");
    ClauseStatus status;
    for (std::size_t ci = 0; ci < formula.num_clauses(); ++ci) {
        const Clause& clause = formula.clause(ci);
        const bool sat_a = clause.satisfied_by(parent_a);
        const bool sat_b = clause.satisfied_by(parent_b);
        if (!sat_a && !sat_b) status.false_in_both.push_back(static_cast<std::uint32_t>(ci));
        else if (sat_a && sat_b) status.true_in_both.push_back(static_cast<std::uint32_t>(ci));
    }
    return status;
}

} // namespace aos
