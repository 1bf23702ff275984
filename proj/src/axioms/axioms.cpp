#include "luce/axioms.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace luce {

namespace {

constexpr std::array<std::pair<Axiom, const char*>, 9> kNames{{
    {Axiom::ChoiceAxiom, "choice-axiom"},
    {Axiom::OddsIndependence, "odds-independence"},
    {Axiom::ProductRule, "product-rule"},
    {Axiom::SetChoiceAxiom, "set-choice-axiom"},
    {Axiom::SetIntersectionRule, "set-intersection-rule"},
    {Axiom::Positivity, "positivity"},
    {Axiom::FullSupport, "full-support"},
    {Axiom::WARP, "warp"},
    {Axiom::RenyiConditioning, "renyi-conditioning"},
}};

class ReportBuilder {
public:
    ReportBuilder(Axiom axiom, Completeness completeness)
    {
        report_.axiom = axiom;
        report_.completeness = completeness;
    }

    void checked(std::size_t n = 1) { report_.pairs_checked += n; }

    void violation(Witness w)
    {
        ++report_.violations;
        if (report_.witnesses.size() < kWitnessCap) {
            report_.witnesses.push_back(std::move(w));
        }
    }

    AxiomReport finish()
    {
        report_.holds = report_.violations == 0;
        return std::move(report_);
    }

private:
    AxiomReport report_;
};

/// Calls f(inner, outer) for every B subset of A in the family, outer-major.
template <class F>
void for_each_nested(const ChoiceFamily& family, F&& f)
{
    for (std::size_t outer = 0; outer < family.size(); ++outer) {
        // Canonical order puts every subset of family[outer] at or before it.
        for (std::size_t inner = 0; inner <= outer; ++inner) {
            if (family[inner].is_subset_of(family[outer])) {
                f(inner, outer);
            }
        }
    }
}

ExtendedRatio fin(Prob p) { return ExtendedRatio::finite(std::move(p)); }

ChoiceSet subset_by_positions(const ChoiceSet& B, std::uint64_t positions)
{
    std::vector<Alternative> out;
    for (std::size_t k = 0; k < B.size(); ++k) {
        if ((positions >> k) & 1U) {
            out.push_back(B.members()[k]);
        }
    }
    return ChoiceSet(std::move(out));
}

void require_enumerable(std::size_t n, const char* what)
{
    if (n > kMaxEnumerableUniverse) {
        throw SizeLimitError(std::string(what) + " enumerates 2^" + std::to_string(n) + " subsets (limit 2^" +
                             std::to_string(kMaxEnumerableUniverse) + ")");
    }
}

} // namespace

const char* to_string(Axiom axiom)
{
    for (const auto& [a, name] : kNames) {
        if (a == axiom) {
            return name;
        }
    }
    return "unknown";
}

std::optional<Axiom> parse_axiom(std::string_view name)
{
    for (const auto& [a, n] : kNames) {
        if (name == n) {
            return a;
        }
    }
    return std::nullopt;
}

const std::vector<Axiom>& all_axioms()
{
    static const std::vector<Axiom> axioms = [] {
        std::vector<Axiom> out;
        for (const auto& entry : kNames) {
            out.push_back(entry.first);
        }
        return out;
    }();
    return axioms;
}

std::string AxiomReport::describe(const Universe& universe, const Witness& w) const
{
    std::string out = to_string(axiom);
    if (w.alt_a) {
        out += " a=" + universe.label(*w.alt_a);
    }
    if (w.alt_b) {
        out += " b=" + universe.label(*w.alt_b);
    }
    if (w.set_y) {
        out += " Y=" + universe.format(*w.set_y);
    }
    if (w.set_b) {
        out += " B=" + universe.format(*w.set_b);
    }
    out += " A=" + universe.format(w.set_a);
    if (w.image_b) {
        out += " Gamma(B)=" + universe.format(*w.image_b);
    }
    if (w.image_a) {
        out += " Gamma(A)=" + universe.format(*w.image_a);
    }
    if (w.lhs && w.rhs) {
        out += ": " + w.lhs->to_string() + " != " + w.rhs->to_string();
    }
    return out;
}

AxiomReport check_choice_axiom(const RandomChoiceRule& rule)
{
    const auto& family = rule.family();
    ReportBuilder report(Axiom::ChoiceAxiom, family.completeness());
    for_each_nested(family, [&](std::size_t b, std::size_t a) {
        report.checked();
        const auto& B = family[b];
        const Prob p_b_in_a = rule.mass(B, a);
        for (std::size_t k = 0; k < B.size(); ++k) {
            const auto x = B.members()[k];
            Prob lhs = rule.prob(x, a);
            Prob rhs = rule.row(b)[k] * p_b_in_a;
            if (!rule.same(lhs, rhs)) {
                report.violation({.set_a = family[a], .set_b = B, .alt_a = x, .lhs = fin(lhs), .rhs = fin(rhs)});
            }
        }
    });
    return report.finish();
}

AxiomReport check_odds_independence(const RandomChoiceRule& rule)
{
    const auto& family = rule.family();
    const double eps = rule.tolerance();
    ReportBuilder report(Axiom::OddsIndependence, family.completeness());
    for (std::size_t a_idx = 0; a_idx < family.size(); ++a_idx) {
        const auto& A = family[a_idx];
        for (std::size_t i = 0; i < A.size(); ++i) {
            for (std::size_t j = i + 1; j < A.size(); ++j) {
                const auto x = A.members()[i];
                const auto y = A.members()[j];
                auto pair = family.index_of(ChoiceSet{x, y});
                if (!pair) {
                    continue;
                }
                report.checked();
                auto rhs = ExtendedRatio::of(rule.row(a_idx)[i], rule.row(a_idx)[j], eps);
                if (rhs.is_indeterminate()) {
                    continue;
                }
                auto lhs = ExtendedRatio::of(rule.row(*pair)[0], rule.row(*pair)[1], eps);
                if (!lhs.matches(rhs, eps)) {
                    report.violation({.set_a = A, .alt_a = x, .alt_b = y, .lhs = lhs, .rhs = rhs});
                }
            }
        }
    }
    return report.finish();
}

AxiomReport check_product_rule(const RandomChoiceRule& rule)
{
    const auto& family = rule.family();
    ReportBuilder report(Axiom::ProductRule, family.completeness());
    for_each_nested(family, [&](std::size_t b, std::size_t a) {
        report.checked();
        const auto& B = family[b];
        const auto& row_b = rule.row(b);
        for (std::size_t i = 0; i < B.size(); ++i) {
            for (std::size_t j = i + 1; j < B.size(); ++j) {
                const auto x = B.members()[i];
                const auto y = B.members()[j];
                Prob lhs = row_b[j] * rule.prob(x, a);
                Prob rhs = row_b[i] * rule.prob(y, a);
                if (!rule.same(lhs, rhs)) {
                    report.violation({.set_a = family[a],
                                      .set_b = B,
                                      .alt_a = x,
                                      .alt_b = y,
                                      .lhs = fin(lhs),
                                      .rhs = fin(rhs)});
                }
            }
        }
    });
    return report.finish();
}

AxiomReport check_set_choice_axiom(const RandomChoiceRule& rule)
{
    const auto& family = rule.family();
    for (const auto& s : family) {
        require_enumerable(s.size(), "set choice axiom");
    }
    const auto mode = rule.mode();
    ReportBuilder report(Axiom::SetChoiceAxiom, family.completeness());
    for_each_nested(family, [&](std::size_t b, std::size_t a) {
        report.checked();
        const auto& B = family[b];
        const auto& row_b = rule.row(b);
        std::vector<Prob> in_a(B.size());
        for (std::size_t k = 0; k < B.size(); ++k) {
            in_a[k] = rule.prob(B.members()[k], a);
        }
        Prob p_b_in_a = Prob::zero(mode);
        for (const auto& p : in_a) {
            p_b_in_a += p;
        }
        for (std::uint64_t c = 1; c < (std::uint64_t{1} << B.size()); ++c) {
            Prob lhs = Prob::zero(mode);
            Prob c_in_b = Prob::zero(mode);
            for (std::size_t k = 0; k < B.size(); ++k) {
                if ((c >> k) & 1U) {
                    lhs += in_a[k];
                    c_in_b += row_b[k];
                }
            }
            Prob rhs = c_in_b * p_b_in_a;
            if (!rule.same(lhs, rhs)) {
                report.violation({.set_a = family[a],
                                  .set_b = B,
                                  .set_y = subset_by_positions(B, c),
                                  .lhs = fin(lhs),
                                  .rhs = fin(rhs)});
            }
        }
    });
    return report.finish();
}

AxiomReport check_set_intersection_rule(const RandomChoiceRule& rule)
{
    const auto n = rule.universe().size();
    require_enumerable(n, "set intersection rule");
    const auto& family = rule.family();
    ReportBuilder report(Axiom::SetIntersectionRule, family.completeness());
    for_each_nested(family, [&](std::size_t b, std::size_t a) {
        report.checked();
        const auto& B = family[b];
        const auto b_mask = B.mask();
        const Prob p_b_in_a = rule.mass_mask(b_mask, a);
        for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) {
            Prob lhs = rule.mass_mask(y & b_mask, a);
            Prob rhs = rule.mass_mask(y, b) * p_b_in_a;
            if (!rule.same(lhs, rhs)) {
                Witness w{.set_a = family[a], .set_b = B, .lhs = fin(lhs), .rhs = fin(rhs)};
                if (y != 0) {
                    w.set_y = ChoiceSet::from_mask(y);
                }
                report.violation(std::move(w));
            }
        }
    });
    return report.finish();
}

AxiomReport check_positivity(const RandomChoiceRule& rule)
{
    const auto& family = rule.family();
    ReportBuilder report(Axiom::Positivity, family.completeness());
    for (std::size_t i = 0; i < family.size(); ++i) {
        const auto& A = family[i];
        if (A.size() != 2) {
            continue;
        }
        report.checked();
        for (std::size_t k = 0; k < 2; ++k) {
            const auto& p = rule.row(i)[k];
            if (!rule.is_positive(p)) {
                report.violation({.set_a = A,
                                  .alt_a = A.members()[k],
                                  .alt_b = A.members()[1 - k],
                                  .lhs = fin(p),
                                  .rhs = fin(Prob::zero(rule.mode()))});
            }
        }
    }
    return report.finish();
}

AxiomReport check_full_support(const RandomChoiceRule& rule)
{
    const auto& family = rule.family();
    ReportBuilder report(Axiom::FullSupport, family.completeness());
    for (std::size_t i = 0; i < family.size(); ++i) {
        report.checked();
        const auto& A = family[i];
        for (std::size_t k = 0; k < A.size(); ++k) {
            const auto& p = rule.row(i)[k];
            if (!rule.is_positive(p)) {
                report.violation(
                    {.set_a = A, .alt_a = A.members()[k], .lhs = fin(p), .rhs = fin(Prob::zero(rule.mode()))});
            }
        }
    }
    return report.finish();
}

AxiomReport check_warp(const ChoiceCorrespondence& corr)
{
    const auto& family = corr.family();
    ReportBuilder report(Axiom::WARP, family.completeness());
    for_each_nested(family, [&](std::size_t b, std::size_t a) {
        report.checked();
        auto meet = corr.image(a).intersect(family[b]);
        if (meet && *meet != corr.image(b)) {
            report.violation({.set_a = family[a],
                              .set_b = family[b],
                              .image_a = corr.image(a),
                              .image_b = corr.image(b)});
        }
    });
    return report.finish();
}

AxiomReport check_renyi_conditioning(const RandomChoiceRule& rule)
{
    const auto& family = rule.family();
    ReportBuilder report(Axiom::RenyiConditioning, family.completeness());
    for_each_nested(family, [&](std::size_t b, std::size_t a) {
        report.checked();
        const auto& B = family[b];
        const Prob p_b_in_a = rule.mass(B, a);
        for (std::size_t k = 0; k < B.size(); ++k) {
            const auto x = B.members()[k];
            Prob in_a = rule.prob(x, a);
            if (!rule.is_positive(in_a)) {
                continue;
            }
            Prob lhs = rule.row(b)[k];
            Prob rhs = in_a / p_b_in_a;
            if (!rule.same(lhs, rhs)) {
                report.violation({.set_a = family[a], .set_b = B, .alt_a = x, .lhs = fin(lhs), .rhs = fin(rhs)});
            }
        }
    });
    return report.finish();
}

AxiomReport check(const RandomChoiceRule& rule, Axiom axiom)
{
    switch (axiom) {
    case Axiom::ChoiceAxiom:
        return check_choice_axiom(rule);
    case Axiom::OddsIndependence:
        return check_odds_independence(rule);
    case Axiom::ProductRule:
        return check_product_rule(rule);
    case Axiom::SetChoiceAxiom:
        return check_set_choice_axiom(rule);
    case Axiom::SetIntersectionRule:
        return check_set_intersection_rule(rule);
    case Axiom::Positivity:
        return check_positivity(rule);
    case Axiom::FullSupport:
        return check_full_support(rule);
    case Axiom::WARP:
        return check_warp(support_correspondence(rule));
    case Axiom::RenyiConditioning:
        return check_renyi_conditioning(rule);
    }
    throw InvalidArgument("unknown axiom");
}

std::map<Axiom, AxiomReport> check_all(const RandomChoiceRule& rule)
{
    std::map<Axiom, AxiomReport> out;
    for (auto axiom : all_axioms()) {
        out.emplace(axiom, check(rule, axiom));
    }
    return out;
}

bool replay_witness(const RandomChoiceRule& rule, Axiom axiom, const Witness& w)
{
    const auto& A = w.set_a;
    if (!rule.family().contains(A) || (w.set_b && !rule.family().contains(*w.set_b))) {
        return false;
    }
    const auto mode = rule.mode();
    auto differs = [&](const Prob& x, const Prob& y) { return !rule.same(x, y); };
    switch (axiom) {
    case Axiom::ChoiceAxiom: {
        if (!w.set_b || !w.alt_a || !w.set_b->is_subset_of(A) || !w.set_b->contains(*w.alt_a)) {
            return false;
        }
        return differs(rule.prob(*w.alt_a, A), rule.prob(*w.alt_a, *w.set_b) * rule.mass(*w.set_b, A));
    }
    case Axiom::OddsIndependence: {
        if (!w.alt_a || !w.alt_b || !A.contains(*w.alt_a) || !A.contains(*w.alt_b)) {
            return false;
        }
        const double eps = rule.tolerance();
        auto menu = ExtendedRatio::of(rule.prob(*w.alt_a, A), rule.prob(*w.alt_b, A), eps);
        if (menu.is_indeterminate()) {
            return false;
        }
        ChoiceSet pair{*w.alt_a, *w.alt_b};
        auto binary = ExtendedRatio::of(rule.prob(*w.alt_a, pair), rule.prob(*w.alt_b, pair), eps);
        return !binary.matches(menu, eps);
    }
    case Axiom::ProductRule: {
        if (!w.set_b || !w.alt_a || !w.alt_b || !w.set_b->is_subset_of(A)) {
            return false;
        }
        const auto& B = *w.set_b;
        return differs(rule.prob(*w.alt_b, B) * rule.prob(*w.alt_a, A),
                       rule.prob(*w.alt_a, B) * rule.prob(*w.alt_b, A));
    }
    case Axiom::SetChoiceAxiom: {
        if (!w.set_b || !w.set_y || !w.set_y->is_subset_of(*w.set_b) || !w.set_b->is_subset_of(A)) {
            return false;
        }
        return differs(rule.mass(*w.set_y, A), rule.mass(*w.set_y, *w.set_b) * rule.mass(*w.set_b, A));
    }
    case Axiom::SetIntersectionRule: {
        if (!w.set_b || !w.set_b->is_subset_of(A)) {
            return false;
        }
        Prob lhs = Prob::zero(mode);
        Prob y_in_b = Prob::zero(mode);
        if (w.set_y) {
            if (auto meet = w.set_y->intersect(*w.set_b)) {
                lhs = rule.mass(*meet, A);
            }
            y_in_b = rule.mass(*w.set_y, *w.set_b);
        }
        return differs(lhs, y_in_b * rule.mass(*w.set_b, A));
    }
    case Axiom::Positivity:
        return w.alt_a && A.size() == 2 && A.contains(*w.alt_a) && !rule.is_positive(rule.prob(*w.alt_a, A));
    case Axiom::FullSupport:
        return w.alt_a && A.contains(*w.alt_a) && !rule.is_positive(rule.prob(*w.alt_a, A));
    case Axiom::WARP:
        return replay_witness(support_correspondence(rule), w);
    case Axiom::RenyiConditioning: {
        if (!w.set_b || !w.alt_a || !w.set_b->is_subset_of(A) || !w.set_b->contains(*w.alt_a)) {
            return false;
        }
        Prob in_a = rule.prob(*w.alt_a, A);
        if (!rule.is_positive(in_a)) {
            return false;
        }
        return differs(rule.prob(*w.alt_a, *w.set_b), in_a / rule.mass(*w.set_b, A));
    }
    }
    return false;
}

bool replay_witness(const ChoiceCorrespondence& corr, const Witness& w)
{
    if (!w.set_b || !w.set_b->is_subset_of(w.set_a)) {
        return false;
    }
    const auto& fam = corr.family();
    if (!fam.contains(w.set_a) || !fam.contains(*w.set_b)) {
        return false;
    }
    auto meet = corr.image(w.set_a).intersect(*w.set_b);
    return meet && *meet != corr.image(*w.set_b);
}

} // namespace luce
