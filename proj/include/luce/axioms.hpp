#pragma once

#include "luce/core.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

namespace luce {

enum class Axiom {
    ChoiceAxiom,
    OddsIndependence,
    ProductRule,
    SetChoiceAxiom,
    SetIntersectionRule,
    Positivity,
    FullSupport,
    WARP,
    RenyiConditioning,
};

/// Stable kebab-case name, e.g. "choice-axiom".
const char* to_string(Axiom axiom);
std::optional<Axiom> parse_axiom(std::string_view name);
/// Every axiom, in declaration order.
const std::vector<Axiom>& all_axioms();

/// One concrete violation. Which fields are set depends on the axiom:
///
///   ChoiceAxiom          a, B, A          p(a,A)          vs p(a,B) p(B,A)
///   OddsIndependence     a, b, A          p(a,b)/p(b,a)   vs p(a,A)/p(b,A)
///   ProductRule          a, b, B, A       p(b,B) p(a,A)   vs p(a,B) p(b,A)
///   SetChoiceAxiom       Y=C, B, A        p_A(C)          vs p_B(C) p_A(B)
///   SetIntersectionRule  Y, B, A          p(Y n B, A)     vs p(Y,B) p(B,A)
///   Positivity           a, b, A={a,b}    p(a,b)          vs 0
///   FullSupport          a, A             p(a,A)          vs 0
///   WARP                 B, A, Gamma(B), Gamma(A)
///   RenyiConditioning    a, B, A          p_B(a)          vs p_A(a)/p_A(B)
struct Witness {
    ChoiceSet set_a;
    std::optional<ChoiceSet> set_b = std::nullopt;
    std::optional<ChoiceSet> set_y = std::nullopt;
    std::optional<Alternative> alt_a = std::nullopt;
    std::optional<Alternative> alt_b = std::nullopt;
    std::optional<ChoiceSet> image_a = std::nullopt;
    std::optional<ChoiceSet> image_b = std::nullopt;
    std::optional<ExtendedRatio> lhs = std::nullopt;
    std::optional<ExtendedRatio> rhs = std::nullopt;

    friend bool operator==(const Witness&, const Witness&) = default;
};

/// Reports keep at most this many witnesses (the first ones found).
inline constexpr std::size_t kWitnessCap = 100;

struct AxiomReport {
    Axiom axiom = Axiom::ChoiceAxiom;
    bool holds = true;
    std::vector<Witness> witnesses;
    /// Total violations found; may exceed witnesses.size().
    std::size_t violations = 0;
    /// Number of (B, A) pairs, sets, or pairs of alternatives examined.
    std::size_t pairs_checked = 0;
    Completeness completeness = Completeness::partial;

    /// Renders one witness for humans.
    std::string describe(const Universe& universe, const Witness& w) const;
};

AxiomReport check_choice_axiom(const RandomChoiceRule& rule);
AxiomReport check_odds_independence(const RandomChoiceRule& rule);
AxiomReport check_product_rule(const RandomChoiceRule& rule);
/// Enumerates every nonempty C inside each B; refuses |B| > 16.
AxiomReport check_set_choice_axiom(const RandomChoiceRule& rule);
/// Enumerates every Y inside the universe; refuses |X| > 16.
AxiomReport check_set_intersection_rule(const RandomChoiceRule& rule);
AxiomReport check_positivity(const RandomChoiceRule& rule);
AxiomReport check_full_support(const RandomChoiceRule& rule);
AxiomReport check_warp(const ChoiceCorrespondence& corr);
AxiomReport check_renyi_conditioning(const RandomChoiceRule& rule);

/// Runs one checker; WARP is evaluated on the rule's support correspondence.
AxiomReport check(const RandomChoiceRule& rule, Axiom axiom);
std::map<Axiom, AxiomReport> check_all(const RandomChoiceRule& rule);

/// Re-evaluates a witness against the raw definition of the axiom; true when
/// the recorded violation is genuine.
bool replay_witness(const RandomChoiceRule& rule, Axiom axiom, const Witness& w);
bool replay_witness(const ChoiceCorrespondence& corr, const Witness& w);

} // namespace luce
