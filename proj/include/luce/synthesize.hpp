#pragma once

#include "luce/axioms.hpp"
#include "luce/core.hpp"

#include <vector>

namespace luce {

/// Tie-breaking weights v = e^alpha, one per alternative.
///
/// Exact weights hold positive rationals v and keep every derived rule exact.
/// Float weights hold alpha and produce float rules.
class LuceWeights {
public:
    static LuceWeights exact(std::vector<Rational> v);
    static LuceWeights from_alpha(std::vector<double> alpha);
    /// Exact when every value is exact, float (alpha = ln v) otherwise.
    static LuceWeights from_values(const std::vector<Prob>& v);

    Arithmetic mode() const noexcept { return mode_; }
    std::size_t size() const noexcept { return mode_ == Arithmetic::exact ? v_.size() : alpha_.size(); }
    /// Exact weights only.
    const std::vector<Rational>& v() const;
    /// ln v; always available.
    std::vector<double> alpha() const;

    friend bool operator==(const LuceWeights&, const LuceWeights&) = default;

private:
    Arithmetic mode_ = Arithmetic::exact;
    std::vector<Rational> v_;
    std::vector<double> alpha_;
};

/// Strictly positive noise level lambda.
class NoiseLevel {
public:
    explicit NoiseLevel(double lambda);
    double value() const noexcept { return lambda_; }

private:
    double lambda_;
};

/// Raised when a correspondence handed to general_luce_rule is not rational.
class WarpViolation : public Error {
public:
    explicit WarpViolation(AxiomReport report);
    const AxiomReport& report() const noexcept { return report_; }

private:
    AxiomReport report_;
};

/// p(a, A) = v(a) / sum_{b in A} v(b).
RandomChoiceRule luce_rule(const Universe& universe, const LuceWeights& weights, const ChoiceFamily& family);

/// Softmax of the weights restricted to Gamma(A), zero elsewhere. Refuses
/// correspondences that fail WARP.
RandomChoiceRule general_luce_rule(const ChoiceCorrespondence& gamma, const LuceWeights& weights);

/// general_luce_rule with Gamma(A) = argmax of u over A.
RandomChoiceRule general_luce_rule_from_utility(const Universe& universe, const std::vector<double>& u,
                                                const LuceWeights& weights, const ChoiceFamily& family);

/// Multinomial logit with scores u/lambda + alpha; always float mode.
RandomChoiceRule lambda_smoothed_rule(const Universe& universe, const std::vector<double>& u,
                                      const LuceWeights& weights, NoiseLevel lambda, const ChoiceFamily& family);

struct LimitReport {
    std::vector<double> lambdas;
    /// Sup-norm distance to the lambda -> 0 target at each lambda.
    std::vector<double> distances;
    /// Each distance is below its predecessor (or both are exactly zero).
    bool decreasing = true;
};

/// Tracks how fast the smoothed rule approaches its vanishing-noise limit.
/// The schedule must be strictly decreasing and positive.
LimitReport limit_check(const Universe& universe, const std::vector<double>& u, const LuceWeights& weights,
                        const std::vector<double>& schedule, const ChoiceFamily& family);

} // namespace luce
