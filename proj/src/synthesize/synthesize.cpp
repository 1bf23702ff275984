#include "luce/synthesize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace luce {

namespace {

/// Softmax of the weights over image, zero on the rest of A.
RandomChoiceRule::Row tie_break_row(const ChoiceSet& A, const ChoiceSet& image, const LuceWeights& weights)
{
    RandomChoiceRule::Row row;
    row.reserve(A.size());
    if (weights.mode() == Arithmetic::exact) {
        const auto& v = weights.v();
        Rational total = 0;
        for (auto b : image) {
            total += v[b.index];
        }
        for (auto a : A) {
            row.emplace_back(image.contains(a) ? Rational(v[a.index] / total) : Rational(0));
        }
        return row;
    }
    const auto alpha = weights.alpha();
    double top = -std::numeric_limits<double>::infinity();
    for (auto b : image) {
        top = std::max(top, alpha[b.index]);
    }
    double total = 0.0;
    for (auto b : image) {
        total += std::exp(alpha[b.index] - top);
    }
    for (auto a : A) {
        row.emplace_back(image.contains(a) ? std::exp(alpha[a.index] - top) / total : 0.0);
    }
    return row;
}

void require_weights_for(const Universe& universe, const LuceWeights& weights)
{
    if (weights.size() != universe.size()) {
        throw InvalidArgument("weights must cover every alternative of the universe");
    }
}

void require_utility_for(const Universe& universe, const std::vector<double>& u)
{
    if (u.size() != universe.size()) {
        throw InvalidArgument("utility must cover every alternative of the universe");
    }
    for (double x : u) {
        if (!std::isfinite(x)) {
            throw InvalidArgument("utility values must be finite");
        }
    }
}

} // namespace

LuceWeights LuceWeights::exact(std::vector<Rational> v)
{
    for (const auto& x : v) {
        if (sgn(x) <= 0) {
            throw InvalidArgument("exact Luce weights must be positive");
        }
    }
    LuceWeights w;
    w.mode_ = Arithmetic::exact;
    w.v_ = std::move(v);
    return w;
}

LuceWeights LuceWeights::from_alpha(std::vector<double> alpha)
{
    for (double a : alpha) {
        if (!std::isfinite(a)) {
            throw InvalidArgument("alpha values must be finite");
        }
    }
    LuceWeights w;
    w.mode_ = Arithmetic::floating;
    w.alpha_ = std::move(alpha);
    return w;
}

LuceWeights LuceWeights::from_values(const std::vector<Prob>& v)
{
    const bool all_exact = std::all_of(v.begin(), v.end(), [](const Prob& p) { return p.is_exact(); });
    if (all_exact) {
        std::vector<Rational> q;
        q.reserve(v.size());
        for (const auto& p : v) {
            q.push_back(p.rational());
        }
        return exact(std::move(q));
    }
    std::vector<double> alpha;
    alpha.reserve(v.size());
    for (const auto& p : v) {
        if (!(p.to_double() > 0.0)) {
            throw InvalidArgument("Luce weights must be positive");
        }
        alpha.push_back(std::log(p.to_double()));
    }
    return from_alpha(std::move(alpha));
}

const std::vector<Rational>& LuceWeights::v() const
{
    if (mode_ != Arithmetic::exact) {
        throw std::logic_error("exact weights requested from float weights");
    }
    return v_;
}

std::vector<double> LuceWeights::alpha() const
{
    if (mode_ == Arithmetic::floating) {
        return alpha_;
    }
    std::vector<double> out;
    out.reserve(v_.size());
    for (const auto& q : v_) {
        // ln(n/d) computed as a difference so huge numerators stay finite.
        mpz_class n = q.get_num();
        mpz_class d = q.get_den();
        long en = 0;
        long ed = 0;
        double mn = mpz_get_d_2exp(&en, n.get_mpz_t());
        double md = mpz_get_d_2exp(&ed, d.get_mpz_t());
        out.push_back(std::log(mn) - std::log(md) + static_cast<double>(en - ed) * std::log(2.0));
    }
    return out;
}

NoiseLevel::NoiseLevel(double lambda) : lambda_(lambda)
{
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw InvalidArgument("noise level lambda must be finite and strictly positive");
    }
}

WarpViolation::WarpViolation(AxiomReport report)
    : Error("correspondence violates WARP; a general Luce model on it is outside the Choice Axiom class"),
      report_(std::move(report))
{
}

RandomChoiceRule luce_rule(const Universe& universe, const LuceWeights& weights, const ChoiceFamily& family)
{
    require_weights_for(universe, weights);
    std::vector<RandomChoiceRule::Row> rows;
    rows.reserve(family.size());
    for (const auto& A : family) {
        rows.push_back(tie_break_row(A, A, weights));
    }
    return RandomChoiceRule(universe, family, std::move(rows));
}

RandomChoiceRule general_luce_rule(const ChoiceCorrespondence& gamma, const LuceWeights& weights)
{
    require_weights_for(gamma.universe(), weights);
    auto warp = check_warp(gamma);
    if (!warp.holds) {
        throw WarpViolation(std::move(warp));
    }
    const auto& family = gamma.family();
    std::vector<RandomChoiceRule::Row> rows;
    rows.reserve(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
        rows.push_back(tie_break_row(family[i], gamma.image(i), weights));
    }
    return RandomChoiceRule(gamma.universe(), family, std::move(rows));
}

RandomChoiceRule general_luce_rule_from_utility(const Universe& universe, const std::vector<double>& u,
                                                const LuceWeights& weights, const ChoiceFamily& family)
{
    require_utility_for(universe, u);
    std::vector<ChoiceSet> images;
    images.reserve(family.size());
    for (const auto& A : family) {
        images.push_back(argmax(u, A));
    }
    return general_luce_rule(ChoiceCorrespondence(universe, family, std::move(images)), weights);
}

RandomChoiceRule lambda_smoothed_rule(const Universe& universe, const std::vector<double>& u,
                                      const LuceWeights& weights, NoiseLevel lambda, const ChoiceFamily& family)
{
    require_utility_for(universe, u);
    require_weights_for(universe, weights);
    const auto alpha = weights.alpha();
    std::vector<RandomChoiceRule::Row> rows;
    rows.reserve(family.size());
    std::vector<double> score;
    for (const auto& A : family) {
        // Utilities are measured from the best member so that maximizers score
        // exactly alpha and the rest fall to -inf as lambda shrinks.
        double best_u = -std::numeric_limits<double>::infinity();
        for (auto a : A) {
            best_u = std::max(best_u, u[a.index]);
        }
        score.clear();
        double top = -std::numeric_limits<double>::infinity();
        for (auto a : A) {
            score.push_back((u[a.index] - best_u) / lambda.value() + alpha[a.index]);
            top = std::max(top, score.back());
        }
        double total = 0.0;
        for (double s : score) {
            total += std::exp(s - top);
        }
        RandomChoiceRule::Row row;
        row.reserve(A.size());
        for (double s : score) {
            row.emplace_back(std::exp(s - top) / total);
        }
        rows.push_back(std::move(row));
    }
    return RandomChoiceRule(universe, family, std::move(rows));
}

LimitReport limit_check(const Universe& universe, const std::vector<double>& u, const LuceWeights& weights,
                        const std::vector<double>& schedule, const ChoiceFamily& family)
{
    if (schedule.empty()) {
        throw InvalidArgument("limit schedule is empty");
    }
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        NoiseLevel check_positive(schedule[i]);
        if (i > 0 && !(schedule[i] < schedule[i - 1])) {
            throw InvalidArgument("limit schedule must be strictly decreasing");
        }
    }
    const auto target = general_luce_rule_from_utility(universe, u, weights, family).to_floating();
    LimitReport report;
    for (double lambda : schedule) {
        const auto smoothed = lambda_smoothed_rule(universe, u, weights, NoiseLevel(lambda), family);
        const double d = sup_distance(smoothed, target);
        if (!report.distances.empty()) {
            const double prev = report.distances.back();
            const bool ok = d < prev || (prev == 0.0 && d == 0.0);
            report.decreasing = report.decreasing && ok;
        }
        report.lambdas.push_back(lambda);
        report.distances.push_back(d);
    }
    return report;
}

} // namespace luce
