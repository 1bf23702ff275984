#pragma once

#include "luce/axioms.hpp"
#include "luce/core.hpp"

#include <optional>
#include <vector>

namespace luce {

/// The support correspondence is not rational, or the pairwise relation it
/// reveals is intransitive.
class NotRational : public Error {
public:
    NotRational(std::string what, std::optional<AxiomReport> report = std::nullopt);
    const std::optional<AxiomReport>& report() const noexcept { return report_; }

private:
    std::optional<AxiomReport> report_;
};

/// Some two-element set is missing from the rule's family.
class MissingPairs : public Error {
public:
    using Error::Error;
};

/// Within-class odds came out as 0 or infinity.
class DegenerateOdds : public Error {
public:
    using Error::Error;
};

/// decompose() was handed a rule that fails the Choice Axiom.
class ChoiceAxiomFails : public Error {
public:
    explicit ChoiceAxiomFails(AxiomReport report);
    const AxiomReport& report() const noexcept { return report_; }

private:
    AxiomReport report_;
};

/// Resynthesis did not reproduce the input rule.
class ReconstructionMismatch : public Error {
public:
    using Error::Error;
};

struct IndifferenceClass {
    ChoiceSet members;
    /// Smallest label of the class.
    Alternative representative;

    friend bool operator==(const IndifferenceClass&, const IndifferenceClass&) = default;
};

struct LuceDecomposition {
    ChoiceCorrespondence gamma;
    WeakOrder order;
    /// Best class first.
    std::vector<IndifferenceClass> classes;
    /// v(x) = r(x, representative of x's class); 1 on representatives.
    std::vector<Prob> v;
    /// ln v, as floats.
    std::vector<double> alpha;

    friend bool operator==(const LuceDecomposition&, const LuceDecomposition&) = default;
};

/// b is weakly preferred to a iff p(b, {a,b}) > 0, returned as rank levels.
WeakOrder revealed_order(const RandomChoiceRule& rule);

/// Within-class odds against the class representative.
std::vector<Prob> recover_v(const RandomChoiceRule& rule, const WeakOrder& order);

/// Recovers (Gamma, alpha) from a rule satisfying the Choice Axiom and checks
/// that they reproduce the rule on its own family.
LuceDecomposition decompose(const RandomChoiceRule& rule);

} // namespace luce
