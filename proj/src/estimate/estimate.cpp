#include "luce/estimate.hpp"

#include "luce/synthesize.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace luce {

namespace {

ChoiceFamily family_of(const Universe& universe, const std::vector<std::pair<ChoiceSet, ChoiceDataset::Counts>>& obs)
{
    std::vector<ChoiceSet> sets;
    sets.reserve(obs.size());
    for (const auto& o : obs) {
        sets.push_back(o.first);
    }
    return ChoiceFamily(universe, std::move(sets));
}

/// Counts of one observed set restricted to its Gamma image.
struct Term {
    std::vector<std::uint32_t> alts;
    std::vector<double> counts;
    double total = 0.0;
};

std::vector<Term> build_terms(const ChoiceDataset& data, const ChoiceCorrespondence& gamma, double pseudo_count)
{
    std::vector<Term> terms;
    const auto& family = data.family();
    terms.reserve(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
        const auto& A = family[i];
        const auto& image = gamma.image(A);
        const auto& counts = data.counts(i);
        Term t;
        for (std::size_t k = 0; k < A.size(); ++k) {
            const auto a = A.members()[k];
            if (!image.contains(a)) {
                if (counts[k] != 0) {
                    throw CountsOffSupport(data.universe().label(a) + " is chosen from " +
                                           data.universe().format(A) + " but lies outside Gamma(A)");
                }
                continue;
            }
            t.alts.push_back(a.index);
            t.counts.push_back(static_cast<double>(counts[k]) + pseudo_count);
            t.total += t.counts.back();
        }
        terms.push_back(std::move(t));
    }
    return terms;
}

/// Softmax of alpha over the term's alternatives; returns log-sum-exp.
double softmax(const Term& t, std::span<const double> alpha, std::vector<double>& p)
{
    double top = -std::numeric_limits<double>::infinity();
    for (auto a : t.alts) {
        top = std::max(top, alpha[a]);
    }
    p.resize(t.alts.size());
    double z = 0.0;
    for (std::size_t k = 0; k < t.alts.size(); ++k) {
        p[k] = std::exp(alpha[t.alts[k]] - top);
        z += p[k];
    }
    for (auto& x : p) {
        x /= z;
    }
    return top + std::log(z);
}

double ll_of_terms(const std::vector<Term>& terms, std::span<const double> alpha)
{
    double ll = 0.0;
    std::vector<double> p;
    for (const auto& t : terms) {
        const double lse = softmax(t, alpha, p);
        for (std::size_t k = 0; k < t.alts.size(); ++k) {
            if (t.counts[k] > 0.0) {
                ll += t.counts[k] * (alpha[t.alts[k]] - lse);
            }
        }
    }
    return ll;
}

void derivatives(const std::vector<Term>& terms, std::span<const double> alpha, Eigen::VectorXd& grad,
                 Eigen::MatrixXd* hess)
{
    const auto n = static_cast<Eigen::Index>(alpha.size());
    grad.setZero(n);
    if (hess) {
        hess->setZero(n, n);
    }
    std::vector<double> p;
    for (const auto& t : terms) {
        softmax(t, alpha, p);
        for (std::size_t k = 0; k < t.alts.size(); ++k) {
            grad[t.alts[k]] += t.counts[k] - t.total * p[k];
            if (!hess) {
                continue;
            }
            for (std::size_t j = 0; j < t.alts.size(); ++j) {
                const double d = (k == j ? p[k] : 0.0) - p[k] * p[j];
                (*hess)(t.alts[k], t.alts[j]) -= t.total * d;
            }
        }
    }
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x)
{
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

std::vector<ChoiceSet> co_occurrence_components(const ChoiceDataset& data, const ChoiceCorrespondence& gamma)
{
    const auto n = data.universe().size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& A : data.family()) {
        const auto& image = gamma.image(A);
        const auto first = find_root(parent, image.members().front().index);
        for (auto a : image) {
            auto r = find_root(parent, a.index);
            if (r != first) {
                parent[std::max(r, first)] = std::min(r, first);
            }
        }
    }
    std::vector<std::vector<Alternative>> groups(n);
    for (std::size_t x = 0; x < n; ++x) {
        groups[find_root(parent, x)].push_back(Alternative{static_cast<std::uint32_t>(x)});
    }
    std::vector<ChoiceSet> out;
    for (auto& g : groups) {
        if (!g.empty()) {
            out.emplace_back(std::move(g));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const ChoiceSet& a, const ChoiceSet& b) { return a.members().front() < b.members().front(); });
    return out;
}

} // namespace

ChoiceDataset::ChoiceDataset(Universe universe, std::vector<std::pair<ChoiceSet, Counts>> observations)
    : universe_(std::move(universe)), family_(family_of(universe_, observations))
{
    counts_.resize(family_.size());
    for (auto& [set, counts] : observations) {
        counts_[*family_.index_of(set)] = std::move(counts);
    }
    validate();
}

ChoiceDataset::ChoiceDataset(Universe universe, ChoiceFamily family, std::vector<Counts> counts)
    : universe_(std::move(universe)), family_(std::move(family)), counts_(std::move(counts))
{
    validate();
}

void ChoiceDataset::validate() const
{
    if (family_.universe_size() != universe_.size()) {
        throw InvalidArgument("dataset family built for a different universe");
    }
    if (counts_.size() != family_.size()) {
        throw InvalidArgument("dataset needs one count vector per observed set");
    }
    for (std::size_t i = 0; i < family_.size(); ++i) {
        if (counts_[i].size() != family_[i].size()) {
            throw InvalidArgument("counts for " + universe_.format(family_[i]) + " have the wrong length");
        }
        if (total(i) == 0) {
            throw InvalidArgument("set " + universe_.format(family_[i]) + " has no observations");
        }
    }
}

std::uint64_t ChoiceDataset::total(std::size_t set_index) const
{
    const auto& c = counts_.at(set_index);
    return std::accumulate(c.begin(), c.end(), std::uint64_t{0});
}

SupportEstimate support_from_counts(const ChoiceDataset& data)
{
    std::vector<ChoiceSet> images;
    const auto& family = data.family();
    images.reserve(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
        std::vector<Alternative> chosen;
        for (std::size_t k = 0; k < family[i].size(); ++k) {
            if (data.counts(i)[k] > 0) {
                chosen.push_back(family[i].members()[k]);
            }
        }
        images.emplace_back(std::move(chosen));
    }
    ChoiceCorrespondence gamma(data.universe(), family, std::move(images));
    auto warp = check_warp(gamma);
    return {std::move(gamma), std::move(warp)};
}

double log_likelihood(const ChoiceDataset& data, const ChoiceCorrespondence& gamma, std::span<const double> alpha,
                      double pseudo_count)
{
    if (alpha.size() != data.universe().size()) {
        throw InvalidArgument("alpha must cover every alternative");
    }
    return ll_of_terms(build_terms(data, gamma, pseudo_count), alpha);
}

std::vector<double> log_likelihood_gradient(const ChoiceDataset& data, const ChoiceCorrespondence& gamma,
                                            std::span<const double> alpha, double pseudo_count)
{
    if (alpha.size() != data.universe().size()) {
        throw InvalidArgument("alpha must cover every alternative");
    }
    Eigen::VectorXd g;
    derivatives(build_terms(data, gamma, pseudo_count), alpha, g, nullptr);
    return std::vector<double>(g.data(), g.data() + g.size());
}

FitResult fit_alpha_mle(const ChoiceDataset& data, const ChoiceCorrespondence& gamma, const FitOptions& options)
{
    if (options.pseudo_count < 0.0 || !(options.alpha_bound > 0.0)) {
        throw InvalidArgument("pseudo-count must be nonnegative and the alpha bound positive");
    }
    auto warp = check_warp(gamma);
    if (!warp.holds) {
        throw WarpViolation(std::move(warp));
    }
    const auto terms = build_terms(data, gamma, options.pseudo_count);
    const auto n = data.universe().size();

    FitResult result{.gamma_hat = gamma, .warp_report = std::move(warp)};
    result.components = co_occurrence_components(data, gamma);

    std::vector<Eigen::Index> free;
    for (const auto& comp : result.components) {
        for (std::size_t k = 1; k < comp.size(); ++k) {
            free.push_back(comp.members()[k].index);
        }
    }
    std::sort(free.begin(), free.end());
    const auto m = static_cast<Eigen::Index>(free.size());

    std::vector<double> alpha(n, 0.0);
    double ll = ll_of_terms(terms, alpha);
    result.trace.push_back(ll);

    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;
    const double bound = options.alpha_bound;
    for (int it = 0; it < options.max_iterations; ++it) {
        result.iterations = it + 1;
        derivatives(terms, alpha, grad, &hess);
        Eigen::VectorXd g(m);
        Eigen::MatrixXd h(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
            g[i] = grad[free[i]];
            for (Eigen::Index j = 0; j < m; ++j) {
                h(i, j) = -hess(free[i], free[j]);
            }
        }
        if (m == 0) {
            result.converged = true;
            break;
        }
        // Levenberg damping keeps the system solvable under separation.
        const double mu = 1e-10 * (1.0 + h.diagonal().cwiseAbs().maxCoeff());
        h.diagonal().array() += mu;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
        Eigen::VectorXd step = ldlt.solve(g);
        if (ldlt.info() != Eigen::Success || !step.allFinite()) {
            step = g;
        }
        // Under separation the gradient vanishes while Newton steps stay near
        // one, so a small gradient alone does not mean convergence.
        const double grad_norm = g.cwiseAbs().maxCoeff();
        if (grad_norm < 1e-8 && step.cwiseAbs().maxCoeff() < 1e-6) {
            result.converged = true;
            break;
        }

        bool accepted = false;
        std::vector<double> candidate(alpha);
        double next = ll;
        double t = 1.0;
        for (int halving = 0; halving < 60; ++halving, t *= 0.5) {
            for (Eigen::Index i = 0; i < m; ++i) {
                candidate[free[i]] = std::clamp(alpha[free[i]] + t * step[i], -bound, bound);
            }
            next = ll_of_terms(terms, candidate);
            if (std::isfinite(next) && next >= ll) {
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            result.converged = grad_norm < 1e-6;
            break;
        }
        double moved = 0.0;
        for (Eigen::Index i = 0; i < m; ++i) {
            moved = std::max(moved, std::abs(candidate[free[i]] - alpha[free[i]]));
        }
        const double improvement = next - ll;
        alpha = candidate;
        ll = next;
        result.trace.push_back(ll);
        if (moved == 0.0 || (improvement <= 1e-10 * std::max(1.0, std::abs(ll)) && moved < 1e-6)) {
            result.converged = true;
            break;
        }
    }

    for (double a : alpha) {
        if (std::abs(a) >= bound) {
            result.diverged = true;
        }
    }
    result.log_likelihood = ll;
    result.alpha_hat = std::move(alpha);
    return result;
}

FitResult fit(const ChoiceDataset& data, const FitOptions& options)
{
    auto estimate = support_from_counts(data);
    if (!estimate.warp.holds) {
        FitResult blocked{.gamma_hat = std::move(estimate.gamma), .warp_report = std::move(estimate.warp)};
        return blocked;
    }
    return fit_alpha_mle(data, estimate.gamma, options);
}

} // namespace luce
