#pragma once

#include "luce/prob.hpp"
#include "luce/universe.hpp"

#include <utility>
#include <vector>

namespace luce {

/// p: each choice set A of a family gets a distribution over its members.
///
/// Rows are aligned with `family()[i].members()`. All entries share one
/// arithmetic mode. Exact rows must sum to one exactly; float rows within
/// tolerance * |A|.
class RandomChoiceRule {
public:
    using Row = std::vector<Prob>;

    RandomChoiceRule(Universe universe, ChoiceFamily family, std::vector<Row> rows,
                     double tolerance = kDefaultTolerance);
    /// Builds the family from the listed sets.
    RandomChoiceRule(Universe universe, std::vector<std::pair<ChoiceSet, Row>> entries,
                     double tolerance = kDefaultTolerance);

    const Universe& universe() const noexcept { return universe_; }
    const ChoiceFamily& family() const noexcept { return family_; }
    Arithmetic mode() const noexcept { return mode_; }
    /// Zero in exact mode.
    double tolerance() const noexcept { return mode_ == Arithmetic::exact ? 0.0 : tolerance_; }

    /// Copy with another float tolerance; exact rules are returned unchanged.
    RandomChoiceRule with_tolerance(double eps) const;
    /// Float-mode copy of an exact rule.
    RandomChoiceRule to_floating(double eps = kDefaultTolerance) const;

    const Row& row(std::size_t set_index) const { return rows_.at(set_index); }
    const Row& row(const ChoiceSet& A) const { return rows_[index(A)]; }
    std::size_t index(const ChoiceSet& A) const;

    /// p(a, A); zero when a is not a member of A.
    Prob prob(Alternative a, const ChoiceSet& A) const;
    Prob prob(Alternative a, std::size_t set_index) const;
    /// p(Y, A) for any set Y of alternatives given as a bit mask.
    Prob mass_mask(std::uint64_t y_mask, std::size_t set_index) const;
    /// p(Y, A) for any collection of alternatives.
    Prob mass(const ChoiceSet& Y, std::size_t set_index) const;
    Prob mass(const ChoiceSet& Y, const ChoiceSet& A) const { return mass(Y, index(A)); }
    /// p(a, b) = p(a, {a,b}).
    Prob pairwise(Alternative a, Alternative b) const;

    bool is_zero(const Prob& p) const { return luce::is_zero(p, tolerance()); }
    bool is_positive(const Prob& p) const { return luce::is_positive(p, tolerance()); }
    bool same(const Prob& a, const Prob& b) const { return approx_equal(a, b, tolerance()); }

    /// Same universe, family and entries; float rules also compare tolerance.
    friend bool operator==(const RandomChoiceRule& lhs, const RandomChoiceRule& rhs);

private:
    Arithmetic validate() const;

    Universe universe_;
    ChoiceFamily family_;
    std::vector<Row> rows_;
    Arithmetic mode_ = Arithmetic::exact;
    double tolerance_ = kDefaultTolerance;
};

/// Gamma: each choice set A of a family is mapped to a nonempty subset.
class ChoiceCorrespondence {
public:
    ChoiceCorrespondence(Universe universe, ChoiceFamily family, std::vector<ChoiceSet> images);
    ChoiceCorrespondence(Universe universe, std::vector<std::pair<ChoiceSet, ChoiceSet>> entries);

    /// Gamma(A) = A on every set of the family.
    static ChoiceCorrespondence identity(Universe universe, ChoiceFamily family);

    const Universe& universe() const noexcept { return universe_; }
    const ChoiceFamily& family() const noexcept { return family_; }
    const ChoiceSet& image(std::size_t set_index) const { return images_.at(set_index); }
    const ChoiceSet& image(const ChoiceSet& A) const;
    const std::vector<ChoiceSet>& images() const noexcept { return images_; }

    friend bool operator==(const ChoiceCorrespondence&, const ChoiceCorrespondence&) = default;

private:
    Universe universe_;
    ChoiceFamily family_;
    std::vector<ChoiceSet> images_;
};

/// Largest entrywise distance between two rules on the same family.
double sup_distance(const RandomChoiceRule& lhs, const RandomChoiceRule& rhs);

} // namespace luce
