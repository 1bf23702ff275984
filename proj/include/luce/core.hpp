#pragma once

#include "luce/errors.hpp"
#include "luce/prob.hpp"
#include "luce/rule.hpp"
#include "luce/universe.hpp"
#include "luce/weak_order.hpp"

#include <vector>

namespace luce {

/// {a in A : p(a, A) > 0}, zero judged with the rule's tolerance.
ChoiceSet support(const RandomChoiceRule& rule, const ChoiceSet& A);

ChoiceCorrespondence support_correspondence(const RandomChoiceRule& rule);

/// r_A(B, C) = p_A(B) / p_A(C). Requires B, C subsets of A.
ExtendedRatio odds(const RandomChoiceRule& rule, const ChoiceSet& A, const ChoiceSet& B, const ChoiceSet& C);
/// r(b, c), evaluated on {b, c}.
ExtendedRatio odds(const RandomChoiceRule& rule, Alternative b, Alternative c);

/// Rank-minimal members of A.
ChoiceSet maximizers(const WeakOrder& order, const ChoiceSet& A);

ChoiceCorrespondence correspondence_from_order(const WeakOrder& order, const ChoiceFamily& family);

/// u(x) = -rank(x), indexed by alternative.
std::vector<double> utility_from_order(const WeakOrder& order);

/// Members of A with maximal u (exact comparison).
ChoiceSet argmax(const std::vector<double>& u, const ChoiceSet& A);

} // namespace luce
