#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "aos/cnf.hpp"
#include "aos/rng.hpp"

namespace aos {

struct Individual {
    Assignment assignment;
    std::size_t false_count = 0;
    std::uint64_t birth_iteration = 0;
};

/// Evaluates the assignment and packs it into an individual.
[[nodiscard]] Individual make_individual(const CnfFormula& formula, Assignment assignment,
                                         std::uint64_t birth_iteration = 0);

struct CriterionSnapshot {
    double mean_quality = 0.0;
    double diversity = 0.0;
};

/// Fixed-size population bound to one formula. Keeps per-variable counts of true values and
/// the summed false counts so that both control criteria are computed from integers.
class Population {
public:
    Population(const CnfFormula& formula, std::vector<Individual> members);

    /// Uniform random assignments, all born at iteration 0.
    static Population random(const CnfFormula& formula, std::size_t size, Rng& rng);
    /// One row of '0'/'1' characters per member; blank lines and '#' comments are skipped.
    static Population from_text(const CnfFormula& formula, std::istream& in);

    [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
    [[nodiscard]] const Individual& operator[](std::size_t i) const { return members_[i]; }
    [[nodiscard]] const std::vector<Individual>& members() const noexcept { return members_; }
    [[nodiscard]] const CnfFormula& formula() const noexcept { return *formula_; }

    /// Lowest birth iteration; the lower list index wins ties.
    [[nodiscard]] std::size_t oldest_index() const noexcept;
    [[nodiscard]] std::size_t best_false_count() const noexcept;

    [[nodiscard]] std::span<const std::uint32_t> true_counts() const noexcept { return true_counts_; }
    [[nodiscard]] std::uint64_t total_false() const noexcept { return total_false_; }

    /// Puts child in place of member `index` and returns the removed member.
    Individual replace(std::size_t index, Individual child);

    void write_text(std::ostream& out) const;

private:
    const CnfFormula* formula_;
    std::vector<Individual> members_;
    std::vector<std::uint32_t> true_counts_;
    std::uint64_t total_false_ = 0;
};

/// Mean over variables of the binary Shannon entropy (base 2) of the fraction of members
/// setting the variable true. Lies in [0, 1].
[[nodiscard]] double entropy(const Population& population);
[[nodiscard]] double mean_quality(const Population& population);
[[nodiscard]] CriterionSnapshot snapshot(const Population& population);

/// Binary entropy h(p) in bits with 0*log 0 = 0.
[[nodiscard]] double binary_entropy(double p) noexcept;

/// Two independent binary tournaments, each drawing two members with replacement and keeping
/// the lower false count (first draw on ties). Returns member indices.
[[nodiscard]] std::pair<std::size_t, std::size_t> tournament_select_pair(const Population& population, Rng& rng);

/// Removes the oldest member, inserts child born at current_iteration, returns the removed one.
Individual insert_replace_oldest(Population& population, Individual child, std::uint64_t current_iteration);

} // namespace aos
