#include "luce/decompose.hpp"

#include "luce/synthesize.hpp"

#include <algorithm>
#include <cmath>

namespace luce {

NotRational::NotRational(std::string what, std::optional<AxiomReport> report)
    : Error(std::move(what)), report_(std::move(report))
{
}

ChoiceAxiomFails::ChoiceAxiomFails(AxiomReport report)
    : Error("rule fails the Choice Axiom (" + std::to_string(report.violations) + " violations)"),
      report_(std::move(report))
{
}

WeakOrder revealed_order(const RandomChoiceRule& rule)
{
    const auto& universe = rule.universe();
    const auto& family = rule.family();
    if (!family.has_all_pairs()) {
        throw MissingPairs("revealed order needs every two-element set in the family");
    }
    auto warp = check_warp(support_correspondence(rule));
    if (!warp.holds) {
        throw NotRational("support correspondence violates WARP", std::move(warp));
    }

    const auto n = universe.size();
    // weakly[b][a]: b is at least as good as a.
    std::vector<std::vector<bool>> weakly(n, std::vector<bool>(n, true));
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            Alternative a{i};
            Alternative b{j};
            weakly[i][j] = rule.is_positive(rule.pairwise(a, b));
            weakly[j][i] = rule.is_positive(rule.pairwise(b, a));
        }
    }
    // For a weak order, x is at least y iff x beats at least as many alternatives.
    std::vector<int> ranks(n);
    for (std::size_t x = 0; x < n; ++x) {
        ranks[x] = -static_cast<int>(std::count(weakly[x].begin(), weakly[x].end(), true));
    }
    WeakOrder order(universe, std::move(ranks));
    for (std::uint32_t x = 0; x < n; ++x) {
        for (std::uint32_t y = 0; y < n; ++y) {
            if (weakly[x][y] != order.at_least(Alternative{x}, Alternative{y})) {
                throw NotRational("pairwise supports are intransitive around " + universe.label(Alternative{x}) +
                                  " and " + universe.label(Alternative{y}));
            }
        }
    }
    return order;
}

std::vector<Prob> recover_v(const RandomChoiceRule& rule, const WeakOrder& order)
{
    const auto& universe = rule.universe();
    std::vector<Prob> v(universe.size(), Prob::one(rule.mode()));
    for (const auto& cls : order.classes()) {
        const auto rep = cls.members().front();
        for (auto x : cls) {
            if (x == rep) {
                continue;
            }
            auto r = odds(rule, x, rep);
            if (!r.is_finite() || rule.is_zero(r.value())) {
                throw DegenerateOdds("odds r(" + universe.label(x) + ", " + universe.label(rep) + ") = " +
                                     r.to_string() + " inside one indifference class");
            }
            v[x.index] = r.value();
        }
    }
    return v;
}

LuceDecomposition decompose(const RandomChoiceRule& rule)
{
    auto ca = check_choice_axiom(rule);
    if (!ca.holds) {
        throw ChoiceAxiomFails(std::move(ca));
    }
    auto gamma = support_correspondence(rule);
    auto order = revealed_order(rule);

    const auto& family = rule.family();
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (maximizers(order, family[i]) != gamma.image(i)) {
            throw ReconstructionMismatch("support of " + rule.universe().format(family[i]) +
                                         " differs from the maximizers of the revealed order");
        }
    }

    auto v = recover_v(rule, order);
    auto weights = LuceWeights::from_values(v);
    auto rebuilt = general_luce_rule(gamma, weights);
    if (rule.mode() == Arithmetic::exact) {
        if (!(rebuilt == rule)) {
            throw ReconstructionMismatch("resynthesized rule differs from the input");
        }
    } else {
        for (std::size_t i = 0; i < family.size(); ++i) {
            for (std::size_t k = 0; k < family[i].size(); ++k) {
                if (!rule.same(rebuilt.row(i)[k], rule.row(i)[k])) {
                    throw ReconstructionMismatch("resynthesized rule differs from the input on " +
                                                 rule.universe().format(family[i]));
                }
            }
        }
    }

    LuceDecomposition out{.gamma = std::move(gamma),
                          .order = order,
                          .classes = {},
                          .v = std::move(v),
                          .alpha = weights.alpha()};
    for (auto& cls : order.classes()) {
        auto rep = cls.members().front();
        out.classes.push_back({std::move(cls), rep});
    }
    return out;
}

} // namespace luce
