#include "luce/rule.hpp"

#include "luce/errors.hpp"

#include <algorithm>
#include <cmath>

namespace luce {

namespace {

ChoiceFamily family_of(const Universe& universe, const auto& entries)
{
    std::vector<ChoiceSet> sets;
    sets.reserve(entries.size());
    for (const auto& e : entries) {
        sets.push_back(e.first);
    }
    return ChoiceFamily(universe, std::move(sets));
}

} // namespace

RandomChoiceRule::RandomChoiceRule(Universe universe, ChoiceFamily family, std::vector<Row> rows, double tolerance)
    : universe_(std::move(universe)), family_(std::move(family)), rows_(std::move(rows)), tolerance_(tolerance)
{
    mode_ = validate();
}

RandomChoiceRule::RandomChoiceRule(Universe universe, std::vector<std::pair<ChoiceSet, Row>> entries,
                                   double tolerance)
    : universe_(std::move(universe)), family_(family_of(universe_, entries)), tolerance_(tolerance)
{
    rows_.resize(entries.size());
    for (auto& [set, row] : entries) {
        rows_[*family_.index_of(set)] = std::move(row);
    }
    mode_ = validate();
}

Arithmetic RandomChoiceRule::validate() const
{
    if (family_.universe_size() != universe_.size()) {
        throw InvalidArgument("family built for a different universe");
    }
    if (family_.size() == 0) {
        throw InvalidArgument("a random choice rule needs at least one choice set");
    }
    if (rows_.size() != family_.size()) {
        throw InvalidArgument("rule has " + std::to_string(rows_.size()) + " rows for " +
                              std::to_string(family_.size()) + " choice sets");
    }
    if (!(tolerance_ >= 0.0) || !std::isfinite(tolerance_)) {
        throw InvalidArgument("tolerance must be finite and nonnegative");
    }
    const auto mode = rows_.front().empty() ? Arithmetic::exact : rows_.front().front().mode();
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const auto& A = family_[i];
        const auto& row = rows_[i];
        if (row.size() != A.size()) {
            throw InvalidArgument("row for " + universe_.format(A) + " has the wrong length");
        }
        Prob total = Prob::zero(mode);
        bool any_positive = false;
        for (const auto& p : row) {
            if (p.mode() != mode) {
                throw InvalidArgument("rule mixes exact and float probabilities");
            }
            if (!p.is_exact() && !std::isfinite(p.to_double())) {
                throw InvalidArgument("non-finite probability in " + universe_.format(A));
            }
            if (p.sign() < 0 && !luce::is_zero(p, mode == Arithmetic::exact ? 0.0 : tolerance_)) {
                throw InvalidArgument("negative probability in " + universe_.format(A));
            }
            total += p;
            any_positive = any_positive || luce::is_positive(p, mode == Arithmetic::exact ? 0.0 : tolerance_);
        }
        if (mode == Arithmetic::exact) {
            if (total.rational() != 1) {
                throw InvalidArgument("probabilities on " + universe_.format(A) + " sum to " + total.to_string());
            }
        } else if (std::abs(total.to_double() - 1.0) > tolerance_ * static_cast<double>(A.size())) {
            throw InvalidArgument("probabilities on " + universe_.format(A) + " sum to " + total.to_string());
        }
        if (!any_positive) {
            throw InvalidArgument("empty support on " + universe_.format(A));
        }
    }
    return mode;
}

RandomChoiceRule RandomChoiceRule::with_tolerance(double eps) const
{
    if (mode_ == Arithmetic::exact) {
        return *this;
    }
    return RandomChoiceRule(universe_, family_, rows_, eps);
}

RandomChoiceRule RandomChoiceRule::to_floating(double eps) const
{
    if (mode_ == Arithmetic::floating) {
        return with_tolerance(eps);
    }
    std::vector<Row> rows;
    rows.reserve(rows_.size());
    for (const auto& row : rows_) {
        Row r;
        r.reserve(row.size());
        for (const auto& p : row) {
            r.emplace_back(p.to_double());
        }
        rows.push_back(std::move(r));
    }
    return RandomChoiceRule(universe_, family_, std::move(rows), eps);
}

bool operator==(const RandomChoiceRule& lhs, const RandomChoiceRule& rhs)
{
    return lhs.mode_ == rhs.mode_ && lhs.tolerance() == rhs.tolerance() && lhs.universe_ == rhs.universe_ &&
           lhs.family_ == rhs.family_ && lhs.rows_ == rhs.rows_;
}

std::size_t RandomChoiceRule::index(const ChoiceSet& A) const
{
    if (auto i = family_.index_of(A)) {
        return *i;
    }
    throw UnknownChoiceSet("choice set " + universe_.format(A) + " is not in the rule's family");
}

Prob RandomChoiceRule::prob(Alternative a, const ChoiceSet& A) const { return prob(a, index(A)); }

Prob RandomChoiceRule::prob(Alternative a, std::size_t set_index) const
{
    const auto& A = family_[set_index];
    if (auto pos = A.position(a)) {
        return rows_[set_index][*pos];
    }
    return Prob::zero(mode_);
}

Prob RandomChoiceRule::mass_mask(std::uint64_t y_mask, std::size_t set_index) const
{
    const auto& A = family_[set_index];
    const auto& row = rows_[set_index];
    Prob total = Prob::zero(mode_);
    for (std::size_t k = 0; k < A.size(); ++k) {
        auto idx = A.members()[k].index;
        if (idx < 64 && (y_mask >> idx) & 1U) {
            total += row[k];
        }
    }
    return total;
}

Prob RandomChoiceRule::mass(const ChoiceSet& Y, std::size_t set_index) const
{
    const auto& A = family_[set_index];
    const auto& row = rows_[set_index];
    Prob total = Prob::zero(mode_);
    for (std::size_t k = 0; k < A.size(); ++k) {
        if (Y.contains(A.members()[k])) {
            total += row[k];
        }
    }
    return total;
}

Prob RandomChoiceRule::pairwise(Alternative a, Alternative b) const
{
    if (a == b) {
        return prob(a, ChoiceSet{a});
    }
    return prob(a, ChoiceSet{a, b});
}

ChoiceCorrespondence::ChoiceCorrespondence(Universe universe, ChoiceFamily family, std::vector<ChoiceSet> images)
    : universe_(std::move(universe)), family_(std::move(family)), images_(std::move(images))
{
    if (family_.universe_size() != universe_.size()) {
        throw InvalidArgument("family built for a different universe");
    }
    if (images_.size() != family_.size()) {
        throw InvalidArgument("correspondence needs one image per choice set");
    }
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (!images_[i].is_subset_of(family_[i])) {
            throw InvalidArgument("Gamma" + universe_.format(family_[i]) + " = " + universe_.format(images_[i]) +
                                  " is not a subset of the menu");
        }
    }
}

namespace {

std::vector<ChoiceSet> images_in_family_order(const ChoiceFamily& family,
                                              const std::vector<std::pair<ChoiceSet, ChoiceSet>>& entries)
{
    std::vector<ChoiceSet> images(family.sets());
    for (const auto& [set, image] : entries) {
        images[*family.index_of(set)] = image;
    }
    return images;
}

} // namespace

ChoiceCorrespondence::ChoiceCorrespondence(Universe universe, std::vector<std::pair<ChoiceSet, ChoiceSet>> entries)
    : universe_(std::move(universe)), family_(family_of(universe_, entries)),
      images_(images_in_family_order(family_, entries))
{
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (!images_[i].is_subset_of(family_[i])) {
            throw InvalidArgument("Gamma" + universe_.format(family_[i]) + " = " + universe_.format(images_[i]) +
                                  " is not a subset of the menu");
        }
    }
}

ChoiceCorrespondence ChoiceCorrespondence::identity(Universe universe, ChoiceFamily family)
{
    std::vector<ChoiceSet> images(family.sets());
    return ChoiceCorrespondence(std::move(universe), std::move(family), std::move(images));
}

const ChoiceSet& ChoiceCorrespondence::image(const ChoiceSet& A) const
{
    if (auto i = family_.index_of(A)) {
        return images_[*i];
    }
    throw UnknownChoiceSet("choice set " + universe_.format(A) + " is not in the correspondence's family");
}

double sup_distance(const RandomChoiceRule& lhs, const RandomChoiceRule& rhs)
{
    if (lhs.family() != rhs.family()) {
        throw InvalidArgument("sup distance needs rules on the same family");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < lhs.family().size(); ++i) {
        const auto& a = lhs.row(i);
        const auto& b = rhs.row(i);
        for (std::size_t k = 0; k < a.size(); ++k) {
            worst = std::max(worst, std::abs(a[k].to_double() - b[k].to_double()));
        }
    }
    return worst;
}

} // namespace luce
