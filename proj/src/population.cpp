#include "aos/population.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace aos {

Individual make_individual(const CnfFormula& formula, Assignment assignment, std::uint64_t birth_iteration) {
    const std::size_t false_count = count_false_clauses(formula, assignment);
    return Individual{std::move(assignment), false_count, birth_iteration};
}

Population::Population(const CnfFormula& formula, std::vector<Individual> members)
    : formula_(&formula), members_(std::move(members)), true_counts_(formula.num_variables(), 0) {
    if (members_.empty()) throw std::invalid_argument("population must not be empty");
    for (const Individual& ind : members_) {
        if (ind.assignment.size() != formula.num_variables())
            throw std::invalid_argument("member assignment length does not match variable count");
        for (std::size_t v = 0; v < ind.assignment.size(); ++v) true_counts_[v] += ind.assignment[v];
        total_false_ += ind.false_count;
    }
}

Population Population::random(const CnfFormula& formula, std::size_t size, Rng& rng) {
    std::vector<Individual> members;
    members.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        Assignment assignment(formula.num_variables());
        for (auto& bit : assignment) bit = coin_flip(rng) ? 1 : 0;
        members.push_back(make_individual(formula, std::move(assignment), 0));
    }
    return Population(formula, std::move(members));
}

Population Population::from_text(const CnfFormula& formula, std::istream& in) {
    std::vector<Individual> members;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::erase_if(line, [](char ch) { return ch == ' ' || ch == '\t' || ch == '\r'; });
        if (line.empty() || line.front() == '#') continue;
        if (line.size() != formula.num_variables())
            throw std::invalid_argument("population row " + std::to_string(line_no) + " has " +
                                        std::to_string(line.size()) + " values, expected " +
                                        std::to_string(formula.num_variables()));
        Assignment assignment(line.size());
        for (std::size_t v = 0; v < line.size(); ++v) {
            if (line[v] != '0' && line[v] != '1')
                throw std::invalid_argument("population row " + std::to_string(line_no) + " contains '" +
                                            std::string(1, line[v]) + "'");
            assignment[v] = line[v] == '1' ? 1 : 0;
        }
        members.push_back(make_individual(formula, std::move(assignment), 0));
    }
    return Population(formula, std::move(members));
}

std::size_t Population::oldest_index() const noexcept {
    std::size_t oldest = 0;
    for (std::size_t i = 1; i < members_.size(); ++i)
        if (members_[i].birth_iteration < members_[oldest].birth_iteration) oldest = i;
    return oldest;
}

std::size_t Population::best_false_count() const noexcept {
    std::size_t best = members_.front().false_count;
    for (const Individual& ind : members_) best = std::min(best, ind.false_count);
    return best;
}

Individual Population::replace(std::size_t index, Individual child) {
    if (child.assignment.size() != formula_->num_variables())
        throw std::invalid_argument("child assignment length does not match variable count");
    Individual& slot = members_[index];
    for (std::size_t v = 0; v < child.assignment.size(); ++v) {
        true_counts_[v] -= slot.assignment[v];
        true_counts_[v] += child.assignment[v];
    }
    total_false_ -= slot.false_count;
    total_false_ += child.false_count;
    std::swap(slot, child);
    return child;
}

void Population::write_text(std::ostream& out) const {
    for (const Individual& ind : members_) {
        for (auto bit : ind.assignment) out << (bit ? '1' : '0');
        out << '\n';
    }
}

double binary_entropy(double p) noexcept {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
}

double entropy(const Population& population) {
    const auto counts = population.true_counts();
    if (counts.empty()) return 0.0;
    const double size = static_cast<double>(population.size());
    double sum = 0.0;
    for (std::uint32_t ones : counts) sum += binary_entropy(static_cast<double>(ones) / size);
    return sum / static_cast<double>(counts.size());
}

double mean_quality(const Population& population) {
    return static_cast<double>(population.total_false()) / static_cast<double>(population.size());
}

CriterionSnapshot snapshot(const Population& population) {
    return {mean_quality(population), entropy(population)};
}

std::pair<std::size_t, std::size_t> tournament_select_pair(const Population& population, Rng& rng) {
    if (population.size() < 2) throw std::invalid_argument("tournament needs at least two members");
    auto tournament = [&] {
        const std::size_t first = uniform_index(population.size(), rng);
        const std::size_t second = uniform_index(population.size(), rng);
        return population[second].false_count < population[first].false_count ? second : first;
    };
    const std::size_t a = tournament();
    const std::size_t b = tournament();
    return {a, b};
}

Individual insert_replace_oldest(Population& population, Individual child, std::uint64_t current_iteration) {
    child.birth_iteration = current_iteration;
    return population.replace(population.oldest_index(), std::move(child));
}

} // namespace aos
