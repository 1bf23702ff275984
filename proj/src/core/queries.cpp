#include "luce/core.hpp"

#include <algorithm>

namespace luce {

ChoiceSet support(const RandomChoiceRule& rule, const ChoiceSet& A)
{
    const auto i = rule.index(A);
    const auto& row = rule.row(i);
    std::vector<Alternative> members;
    for (std::size_t k = 0; k < A.size(); ++k) {
        if (rule.is_positive(row[k])) {
            members.push_back(A.members()[k]);
        }
    }
    return ChoiceSet(std::move(members));
}

ChoiceCorrespondence support_correspondence(const RandomChoiceRule& rule)
{
    std::vector<ChoiceSet> images;
    images.reserve(rule.family().size());
    for (const auto& A : rule.family()) {
        images.push_back(support(rule, A));
    }
    return ChoiceCorrespondence(rule.universe(), rule.family(), std::move(images));
}

ExtendedRatio odds(const RandomChoiceRule& rule, const ChoiceSet& A, const ChoiceSet& B, const ChoiceSet& C)
{
    if (!B.is_subset_of(A) || !C.is_subset_of(A)) {
        throw SubsetViolation("odds r_A(B, C) need B and C inside A = " + rule.universe().format(A));
    }
    const auto i = rule.index(A);
    return ExtendedRatio::of(rule.mass(B, i), rule.mass(C, i), rule.tolerance());
}

ExtendedRatio odds(const RandomChoiceRule& rule, Alternative b, Alternative c)
{
    if (b == c) {
        ChoiceSet s{b};
        return odds(rule, s, s, s);
    }
    ChoiceSet pair{b, c};
    return odds(rule, pair, ChoiceSet{b}, ChoiceSet{c});
}

ChoiceSet maximizers(const WeakOrder& order, const ChoiceSet& A)
{
    int best = order.rank(A.members().front());
    for (auto a : A) {
        best = std::min(best, order.rank(a));
    }
    std::vector<Alternative> out;
    for (auto a : A) {
        if (order.rank(a) == best) {
            out.push_back(a);
        }
    }
    return ChoiceSet(std::move(out));
}

ChoiceCorrespondence correspondence_from_order(const WeakOrder& order, const ChoiceFamily& family)
{
    std::vector<ChoiceSet> images;
    images.reserve(family.size());
    for (const auto& A : family) {
        images.push_back(maximizers(order, A));
    }
    return ChoiceCorrespondence(order.universe(), family, std::move(images));
}

std::vector<double> utility_from_order(const WeakOrder& order)
{
    std::vector<double> u(order.ranks().size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        u[i] = 0.0 - static_cast<double>(order.ranks()[i]);
    }
    return u;
}

ChoiceSet argmax(const std::vector<double>& u, const ChoiceSet& A)
{
    double best = u.at(A.members().front().index);
    for (auto a : A) {
        best = std::max(best, u.at(a.index));
    }
    std::vector<Alternative> out;
    for (auto a : A) {
        if (u[a.index] == best) {
            out.push_back(a);
        }
    }
    return ChoiceSet(std::move(out));
}

} // namespace luce
