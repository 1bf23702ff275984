#include "support/generators.hpp"

#include "luce/estimate.hpp"
#include "luce/rum.hpp"
#include "luce/synthesize.hpp"

#include <doctest.h>

#include <cmath>

using namespace luce;
using namespace luce::testing;

namespace {

ChoiceDataset single_set(const Universe& X, const ChoiceSet& A, ChoiceDataset::Counts counts)
{
    return ChoiceDataset(X, {{A, std::move(counts)}});
}

/// Counts exactly proportional to an exact rule: N = lcm of all denominators.
ChoiceDataset exact_counts(const RandomChoiceRule& rule)
{
    mpz_class n = 1;
    for (std::size_t i = 0; i < rule.family().size(); ++i) {
        for (const auto& p : rule.row(i)) {
            mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), p.rational().get_den_mpz_t());
        }
    }
    std::vector<ChoiceDataset::Counts> counts;
    for (std::size_t i = 0; i < rule.family().size(); ++i) {
        ChoiceDataset::Counts row;
        for (const auto& p : rule.row(i)) {
            const mpq_class c = p.rational() * n;
            row.push_back(mpz_class(c.get_num()).get_ui());
        }
        counts.push_back(std::move(row));
    }
    return ChoiceDataset(rule.universe(), rule.family(), std::move(counts));
}

RandomChoiceRule fitted_rule(const FitResult& r)
{
    return general_luce_rule(r.gamma_hat, LuceWeights::from_alpha(*r.alpha_hat));
}

} // namespace

TEST_CASE("datasets validate their counts")
{
    const auto X = letters(3);
    CHECK_THROWS_AS(single_set(X, X.full(), {0, 0, 0}), InvalidArgument);
    CHECK_THROWS_AS(single_set(X, X.full(), {1, 2}), InvalidArgument);
    const auto d = single_set(X, X.full(), {1, 2, 3});
    CHECK(d.total(0) == 6);
}

TEST_CASE("support from counts examples")
{
    const auto X = letters(3);
    const auto est = support_from_counts(single_set(X, X.full(), {10, 5, 0}));
    CHECK(est.gamma.image(X.full()) == X.set({"a", "b"}));
    CHECK(est.warp.holds);
    CHECK(support_from_counts(single_set(X, X.full(), {1, 5, 2})).gamma.image(X.full()) == X.full());
}

TEST_CASE("one set closed form")
{
    const auto X = letters(2);
    const auto data = single_set(X, X.full(), {20, 10});
    const auto r = fit_alpha_mle(data, support_from_counts(data).gamma);
    REQUIRE(r.alpha_hat);
    CHECK(r.converged);
    CHECK_FALSE(r.diverged);
    CHECK((*r.alpha_hat)[0] == 0.0);
    CHECK((*r.alpha_hat)[0] - (*r.alpha_hat)[1] == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    CHECK(r.log_likelihood == doctest::Approx(20 * std::log(2.0 / 3.0) + 10 * std::log(1.0 / 3.0)));
}

TEST_CASE("exact frequencies are a fixed point")
{
    TestRng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const auto c = random_ca_rule(4, rng);
        const auto data = exact_counts(c.rule);
        const auto r = fit(data);
        REQUIRE(r.alpha_hat);
        REQUIRE(r.converged);
        REQUIRE(r.gamma_hat == support_correspondence(c.rule));
        CHECK(sup_distance(fitted_rule(r), c.rule.to_floating()) <= 1e-8);
        const auto& a = *r.alpha_hat;
        for (const auto& comp : r.components) {
            const auto rep = comp.members().front();
            CHECK(a[rep.index] == 0.0);
            for (auto x : comp) {
                const double truth = std::log(Rational(c.v[x.index] / c.v[rep.index]).get_d());
                CHECK(a[x.index] == doctest::Approx(truth).epsilon(1e-8).scale(1.0));
            }
        }
    }
}

TEST_CASE("symmetric counts give constant weights per class")
{
    const auto X = letters(3);
    const auto all = ChoiceFamily::all_subsets(X);
    std::vector<ChoiceDataset::Counts> counts;
    for (const auto& A : all) {
        counts.emplace_back(A.size(), 40);
    }
    const auto r = fit(ChoiceDataset(X, all, counts));
    REQUIRE(r.alpha_hat);
    for (double a : *r.alpha_hat) {
        CHECK(std::abs(a) < 1e-12);
    }
}

TEST_CASE("counts outside gamma are rejected")
{
    const auto X = letters(2);
    const auto data = single_set(X, X.full(), {3, 1});
    const ChoiceCorrespondence gamma(X, {{X.full(), X.set({"a"})}});
    CHECK_THROWS_AS(fit_alpha_mle(data, gamma), CountsOffSupport);
}

TEST_CASE("non-rational gamma is refused")
{
    const auto X = letters(3);
    const auto data = ChoiceDataset(X, {{X.set({"a", "b"}), {4, 0}}, {X.full(), {0, 5, 0}}});
    const ChoiceCorrespondence gamma(X, {{X.set({"a", "b"}), X.set({"a"})}, {X.full(), X.set({"b"})}});
    CHECK_THROWS_AS(fit_alpha_mle(data, gamma), WarpViolation);
    const auto blocked = fit(data);
    CHECK_FALSE(blocked.alpha_hat.has_value());
    CHECK_FALSE(blocked.warp_report.holds);
}

TEST_CASE("revealed cycle blocks the fit")
{
    const auto X = letters(3);
    const auto data = ChoiceDataset(
        X, {{X.set({"a", "b"}), {9, 0}}, {X.set({"b", "c"}), {9, 0}}, {X.set({"a", "c"}), {0, 9}}, {X.full(), {3, 3, 3}}});
    const auto r = fit(data);
    CHECK_FALSE(r.alpha_hat.has_value());
    CHECK_FALSE(r.warp_report.holds);
    CHECK_FALSE(r.warp_report.witnesses.empty());
}

TEST_CASE("one observation per set")
{
    const auto X = letters(3);
    const auto all = ChoiceFamily::all_subsets(X);
    std::vector<ChoiceDataset::Counts> counts;
    for (const auto& A : all) {
        ChoiceDataset::Counts row(A.size(), 0);
        row[0] = 1;
        counts.push_back(std::move(row));
    }
    const auto r = fit(ChoiceDataset(X, all, counts));
    REQUIRE(r.alpha_hat);
    CHECK(r.converged);
    for (const auto& image : r.gamma_hat.images()) {
        CHECK(image.size() == 1);
    }
    CHECK(*r.alpha_hat == std::vector<double>(3, 0.0));
    CHECK(r.components.size() == 3);
}

TEST_CASE("separated data hits the bound and is flagged")
{
    const auto X = letters(2);
    const auto data = single_set(X, X.full(), {10, 0});
    const auto r = fit_alpha_mle(data, ChoiceCorrespondence(X, {{X.full(), X.full()}}));
    REQUIRE(r.alpha_hat);
    CHECK(r.diverged);
    CHECK((*r.alpha_hat)[1] == -30.0);
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
        CHECK(r.trace[i] >= r.trace[i - 1]);
    }
    // A pseudo-count restores a finite optimum: (10.5, 0.5) -> ln 21.
    FitOptions smooth;
    smooth.pseudo_count = 0.5;
    const auto s = fit_alpha_mle(data, ChoiceCorrespondence(X, {{X.full(), X.full()}}), smooth);
    CHECK_FALSE(s.diverged);
    CHECK((*s.alpha_hat)[0] - (*s.alpha_hat)[1] == doctest::Approx(std::log(21.0)).epsilon(1e-9));
}

TEST_CASE("analytic gradient matches central differences")
{
    TestRng rng(40);
    const auto c = random_ca_rule(4, rng);
    const auto gamma = support_correspondence(c.rule);
    // Counts on the support only, varied so the point is not an optimum.
    std::vector<ChoiceDataset::Counts> counts;
    for (std::size_t i = 0; i < c.rule.family().size(); ++i) {
        ChoiceDataset::Counts row;
        for (const auto& p : c.rule.row(i)) {
            row.push_back(p.sign() > 0 ? static_cast<std::uint64_t>(uniform_int(rng, 1, 50)) : 0);
        }
        counts.push_back(std::move(row));
    }
    const ChoiceDataset data(c.rule.universe(), c.rule.family(), counts);
    for (int point = 0; point < 10; ++point) {
        auto alpha = random_alpha(4, rng);
        const auto grad = log_likelihood_gradient(data, gamma, alpha);
        for (std::size_t k = 0; k < alpha.size(); ++k) {
            const double h = 1e-6;
            auto up = alpha;
            auto down = alpha;
            up[k] += h;
            down[k] -= h;
            const double fd = (log_likelihood(data, gamma, up) - log_likelihood(data, gamma, down)) / (2 * h);
            CHECK(std::abs(fd - grad[k]) <= 1e-5 * std::max(1.0, std::abs(grad[k])));
        }
        // A constant added within a component leaves the likelihood unchanged.
        auto shifted = alpha;
        for (auto& a : shifted) {
            a += 3.25;
        }
        CHECK(log_likelihood(data, gamma, shifted) ==
              doctest::Approx(log_likelihood(data, gamma, alpha)).epsilon(1e-12));
    }
}

TEST_CASE("recovery from simulated choices")
{
    const auto X = letters(4);
    const WeakOrder order(X, {0, 1, 0, 1});
    const std::vector<double> alpha{0.0, 0.4, -0.7, 0.9};
    const auto sampler = lex_sampler(order, gumbel_luce_sampler(X, LuceWeights::from_alpha(alpha), 2));
    const auto all = ChoiceFamily::all_subsets(X);
    auto emp = empirical_rule(sampler, all, 20000);
    const auto r = fit(ChoiceDataset(X, all, std::move(emp.counts)));
    REQUIRE(r.alpha_hat);
    CHECK(r.converged);
    CHECK(r.gamma_hat == correspondence_from_order(order, all));
    const auto& a = *r.alpha_hat;
    CHECK(std::abs((a[2] - a[0]) - (alpha[2] - alpha[0])) < 0.1);
    CHECK(std::abs((a[3] - a[1]) - (alpha[3] - alpha[1])) < 0.1);
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
        CHECK(r.trace[i] >= r.trace[i - 1]);
    }
    // Refitting the same data reproduces the estimate.
    auto emp2 = empirical_rule(sampler, all, 20000);
    CHECK(*fit(ChoiceDataset(X, all, std::move(emp2.counts))).alpha_hat == a);
}
