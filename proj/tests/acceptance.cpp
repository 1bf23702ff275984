// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "support/generators.hpp"
#include "support/oracle.hpp"

#include "luce/axioms.hpp"
#include "luce/decompose.hpp"
#include "luce/document.hpp"
#include "luce/estimate.hpp"
#include "luce/rum.hpp"
#include "luce/synthesize.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace luce;
using namespace luce::testing;

namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Corpus {
    std::vector<RandomChoiceRule> rules;
    std::vector<bool> synthesized;
};

Rational q(long n, long d = 1)
{
    Rational r(n, d);
    r.canonicalize();
    return r;
}

const Corpus& corpus()
{
    static const Corpus c = [] {
        Corpus out;
        TestRng rng(20240601);
        for (int i = 0; i < 1000; ++i) {
            const auto n = static_cast<std::size_t>(3 + i % 3);
            auto base = random_ca_rule(n, rng);
            const bool synth = i < 500;
            out.rules.push_back(synth ? std::move(base.rule) : perturb(base.rule, rng));
            out.synthesized.push_back(synth);
        }
        return out;
    }();
    return c;
}

Outcome criterion_1()
{
    const auto& c = corpus();
    std::size_t disagreements = 0;
    std::size_t oracle_mismatches = 0;
    std::size_t failing = 0;
    TestRng rng(11);
    for (const auto& rule : c.rules) {
        const bool ca = check_choice_axiom(rule).holds;
        const bool verdicts[] = {check_odds_independence(rule).holds, check_product_rule(rule).holds,
                                 check_set_choice_axiom(rule).holds, check_set_intersection_rule(rule).holds};
        for (bool v : verdicts) {
            disagreements += v != ca;
        }
        const auto t = table_of(rule);
        const bool oracle[] = {choice_axiom(t), odds_independence(t), product_rule(t), set_choice_axiom(t),
                               set_intersection_rule(t)};
        for (bool v : oracle) {
            oracle_mismatches += v != ca;
        }
        failing += !ca;
    }
    // Synthesized rules must match the brute-force evaluation of the general Luce form.
    for (int i = 0; i < 100; ++i) {
        const auto s = random_ca_rule(static_cast<std::size_t>(3 + i % 3), rng);
        const auto n = s.order.universe().size();
        oracle_mismatches += table_of(s.rule).p != general_luce_table(s.order.ranks(), s.v, all_masks(n)).p;
    }
    std::ostringstream d;
    d << c.rules.size() << " rules (" << failing << " failing the Choice Axiom), " << disagreements
      << " checker disagreements, " << oracle_mismatches << " oracle mismatches";
    return {disagreements == 0 && oracle_mismatches == 0 && failing > 0, d.str()};
}

Outcome criterion_2()
{
    TestRng rng(22);
    int failures = 0;
    for (int i = 0; i < 500; ++i) {
        const auto n = static_cast<std::size_t>(2 + i % 5);
        const auto X = letters(n);
        const auto all = ChoiceFamily::all_subsets(X);
        const auto order = random_order(X, rng);
        const auto v = random_weights(n, rng);
        const auto gamma = correspondence_from_order(order, all);
        const auto rule = general_luce_rule(gamma, LuceWeights::exact(v));
        if (!check_choice_axiom(rule).holds) {
            ++failures;
            continue;
        }
        const auto d = decompose(rule);
        bool ok = d.gamma == gamma && d.order == order;
        for (const auto& cls : d.classes) {
            for (auto x : cls.members) {
                ok = ok && d.v[x.index] == Prob(Rational(v[x.index] / v[cls.representative.index]));
            }
        }
        failures += !ok;
    }
    return {failures == 0, "500 instances, " + std::to_string(failures) + " failures"};
}

Outcome criterion_3()
{
    const auto& c = corpus();
    TestRng rng(33);
    int full_support_failures = 0;
    int full_support_cases = 0;
    auto check_full = [&](const RandomChoiceRule& rule) {
        ++full_support_cases;
        full_support_failures += !(check_positivity(rule).holds && check_full_support(rule).holds);
    };
    for (int i = 0; i < 100; ++i) {
        const auto n = static_cast<std::size_t>(3 + i % 3);
        const auto X = letters(n);
        const auto all = ChoiceFamily::all_subsets(X);
        check_full(general_luce_rule(ChoiceCorrespondence::identity(X, all), LuceWeights::exact(random_weights(n, rng))));
    }
    int iff_failures = 0;
    int ca_rules = 0;
    for (std::size_t i = 0; i < c.rules.size(); ++i) {
        const auto& rule = c.rules[i];
        if (c.synthesized[i] && support_correspondence(rule) ==
                                    ChoiceCorrespondence::identity(rule.universe(), rule.family())) {
            check_full(rule);
        }
        if (check_choice_axiom(rule).holds) {
            ++ca_rules;
            iff_failures += check_positivity(rule).holds != check_full_support(rule).holds;
        }
    }
    std::ostringstream d;
    d << full_support_cases << " full-support rules, " << full_support_failures << " failures; " << ca_rules
      << " Choice Axiom rules, " << iff_failures << " positivity/full-support mismatches";
    return {full_support_failures == 0 && iff_failures == 0, d.str()};
}

Outcome criterion_4()
{
    const auto& c = corpus();
    int disagreements = 0;
    for (const auto& rule : c.rules) {
        const bool ca = check_choice_axiom(rule).holds;
        const bool rhs = check_warp(support_correspondence(rule)).holds && check_renyi_conditioning(rule).holds;
        const auto t = table_of(rule);
        disagreements += ca != rhs;
        disagreements += ca != (warp_of_support(t) && renyi_conditioning(t));
    }
    return {disagreements == 0, std::to_string(c.rules.size()) + " rules, " + std::to_string(disagreements) +
                                    " disagreements"};
}

Outcome criterion_5()
{
    TestRng trng(55);
    Rng rng(56);
    int failures = 0;
    int subsets = 0;
    for (int i = 0; i < 100; ++i) {
        const auto n = static_cast<std::size_t>(3 + i % 3);
        const auto X = letters(n);
        const auto first = random_order(X, trng);
        const auto base = gumbel_luce_sampler(X, LuceWeights::from_alpha(random_alpha(n, trng)), 1).draw(rng);
        const auto composed = lex_compose(first, WeakOrder::from_ranking(X, base.best_first));
        for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
            const auto A = ChoiceSet::from_mask(m);
            const auto top = maximizers(composed, A);
            ++subsets;
            failures += !(top.size() == 1 && top.members().front() == base.top(maximizers(first, A)));
        }
    }
    return {failures == 0, "100 pairs, " + std::to_string(subsets) + " subsets, " + std::to_string(failures) +
                               " failures"};
}

/// Compares every empirical cell with its target within 4 standard errors.
std::pair<int, double> within_4se(const EmpiricalRule& emp, const RandomChoiceRule& target)
{
    int bad = 0;
    double worst = 0.0;
    const double n = static_cast<double>(emp.draws);
    for (std::size_t i = 0; i < emp.family.size(); ++i) {
        const auto& A = emp.family[i];
        for (std::size_t k = 0; k < A.size(); ++k) {
            const double p = target.prob(A.members()[k], A).to_double();
            const double hat = static_cast<double>(emp.counts[i][k]) / n;
            const double se = std::sqrt(p * (1.0 - p) / n);
            const double gap = std::abs(hat - p);
            bad += gap > 4.0 * se;
            worst = std::max(worst, se > 0 ? gap / se : (gap > 0 ? INFINITY : 0.0));
        }
    }
    return {bad, worst};
}

Outcome criterion_6()
{
    const auto X = letters(3);
    const auto all = ChoiceFamily::all_subsets(X);
    const auto w = LuceWeights::exact({q(1), q(2), q(3)});
    const auto alpha = LuceWeights::from_alpha({0.0, std::log(2.0), std::log(3.0)});
    const auto emp = empirical_rule(gumbel_luce_sampler(X, alpha, 6), all, 200000);
    const auto [bad, worst] = within_4se(emp, luce_rule(X, w, all));
    std::ostringstream d;
    d << "N=200000, " << bad << " cells outside 4 se, worst " << worst << " se";
    return {bad == 0, d.str()};
}

Outcome criterion_7()
{
    const auto X = letters(3);
    const auto all = ChoiceFamily::all_subsets(X);
    const std::vector<double> u{1, 1, 0};
    const auto emp = empirical_rule(
        independent_rum_sampler(X, u, LuceWeights::from_alpha({std::log(2.0), 0, 0}), 7), all, 200000);
    const auto target = general_luce_rule_from_utility(X, u, LuceWeights::exact({q(2), q(1), q(1)}), all);
    const auto [bad, worst] = within_4se(emp, target);
    const auto c_count = emp.counts[*all.index_of(X.full())][2];
    std::ostringstream d;
    d << "c chosen from {a,b,c} " << c_count << " times, " << bad << " cells outside 4 se, worst " << worst << " se";
    return {bad == 0 && c_count == 0, d.str()};
}

Outcome criterion_8()
{
    const auto X = letters(3);
    const auto all = ChoiceFamily::all_subsets(X);
    const std::vector<double> u{1, 1, 0};
    const auto w = LuceWeights::from_alpha({std::log(2.0), 0, 0});
    const double d005 = sup_distance(lambda_smoothed_rule(X, u, w, NoiseLevel(0.05), all),
                                     general_luce_rule_from_utility(X, u, w, all));
    const auto report = limit_check(X, u, w, {1, 0.5, 0.1, 0.05}, all);
    std::ostringstream d;
    d << "distance at 0.05 = " << d005 << ", schedule distances";
    for (double x : report.distances) {
        d << ' ' << x;
    }
    return {d005 <= 1e-6 && report.decreasing, d.str()};
}

Outcome criterion_9()
{
    const auto X = letters(4);
    const auto all = ChoiceFamily::all_subsets(X);
    const WeakOrder order(X, {0, 1, 0, 1});
    const std::vector<double> alpha{0.0, 0.4, -0.7, 0.9};
    const auto gamma0 = correspondence_from_order(order, all);
    const auto sampler = lex_sampler(order, gumbel_luce_sampler(X, LuceWeights::from_alpha(alpha), 9));
    auto emp = empirical_rule(sampler, all, 100000);
    const ChoiceDataset data(X, all, std::move(emp.counts));
    const auto r = fit(data);
    if (!r.alpha_hat) {
        return {false, "fit blocked by WARP"};
    }
    const auto& a = *r.alpha_hat;
    const double e1 = std::abs((a[2] - a[0]) - (alpha[2] - alpha[0]));
    const double e2 = std::abs((a[3] - a[1]) - (alpha[3] - alpha[1]));
    bool monotone = true;
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
        monotone = monotone && r.trace[i] >= r.trace[i - 1];
    }

    TestRng rng(99);
    double grad_err = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        auto point = random_alpha(4, rng, 1.5);
        const auto g = log_likelihood_gradient(data, gamma0, point);
        double scale = 1.0;
        for (double x : g) {
            scale = std::max(scale, std::abs(x));
        }
        const double h = 1e-4;
        for (std::size_t i = 0; i < point.size(); ++i) {
            auto up = point;
            auto down = point;
            up[i] += h;
            down[i] -= h;
            const double fd = (log_likelihood(data, gamma0, up) - log_likelihood(data, gamma0, down)) / (2 * h);
            grad_err = std::max(grad_err, std::abs(fd - g[i]) / scale);
        }
    }
    std::ostringstream d;
    d << "gamma recovered " << (r.gamma_hat == gamma0 ? "yes" : "no") << ", alpha errors " << e1 << ' ' << e2
      << ", log-likelihood " << (monotone ? "monotone" : "not monotone") << " over " << r.trace.size()
      << " steps, gradient relative error " << grad_err;
    return {r.gamma_hat == gamma0 && e1 <= 0.05 && e2 <= 0.05 && monotone && grad_err <= 1e-5, d.str()};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

int run_tool(const std::string& args)
{
    const std::string cmd = std::string("'") + LUCE_CLI_PATH + "' " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome criterion_10()
{
    const auto dir = fs::temp_directory_path() / ("luce-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto path = [&](const std::string& name) { return "'" + (dir / name).string() + "'"; };
    auto write = [&](const std::string& name, const io::json& doc) {
        std::ofstream(dir / name, std::ios::binary) << io::serialize(doc);
    };
    TestRng rng(1010);
    int failures = 0;
    int mismatches = 0;
    for (int i = 0; i < 100; ++i) {
        const auto n = static_cast<std::size_t>(3 + i % 4);
        const auto X = letters(n);
        const auto gamma = correspondence_from_order(random_order(X, rng), ChoiceFamily::all_subsets(X));
        const auto w = i % 2 ? LuceWeights::from_alpha(random_alpha(n, rng)) : LuceWeights::exact(random_weights(n, rng));
        write("g.json", io::to_json(gamma));
        write("w.json", io::weights_to_json(X, w));
        const auto synth = "synthesize --weights " + path("w.json") + " --correspondence " + path("g.json");
        if (run_tool(synth + " --out " + path("r.json")) != 0 || run_tool("check " + path("r.json")) != 0) {
            ++failures;
            continue;
        }
        if (i % 10 == 0) {
            const bool same_synth = run_tool(synth + " --out " + path("r2.json")) == 0 &&
                                    slurp(dir / "r.json") == slurp(dir / "r2.json");
            const auto sim = "simulate --seed 17 --draws 2000 --weights " + path("w.json") + " --out ";
            const bool same_sim = run_tool(sim + path("s1.json")) == 0 && run_tool(sim + path("s2.json")) == 0 &&
                                  slurp(dir / "s1.json") == slurp(dir / "s2.json");
            mismatches += !(same_synth && same_sim);
        }
    }
    fs::remove_all(dir);
    return {failures == 0 && mismatches == 0, "100 instances, " + std::to_string(failures) +
                                                  " check failures, " + std::to_string(mismatches) +
                                                  " non-reproducible outputs"};
}

} // namespace

int main()
{
    struct Entry {
        int id;
        double budget_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Entry> entries{
        {1, 60, criterion_1}, {2, 60, criterion_2}, {3, 60, criterion_3}, {4, 60, criterion_4},
        {5, 60, criterion_5}, {6, 30, criterion_6}, {7, 30, criterion_7}, {8, 1, criterion_8},
        {9, 30, criterion_9}, {10, 30, criterion_10},
    };
    // The corpus is shared by criteria 1, 3 and 4; build it outside the timings.
    corpus();
    int failed = 0;
    for (const auto& e : entries) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = e.run();
        } catch (const std::exception& ex) {
            o = {false, std::string("threw: ") + ex.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = seconds < e.budget_seconds;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("criterion %2d: %s  (%.2f s, budget %.0f s)  %s\n", e.id, pass ? "PASS" : "FAIL", seconds,
                    e.budget_seconds, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
