#include "support/generators.hpp"

#include "luce/decompose.hpp"
#include "luce/document.hpp"

#include <doctest.h>

#include <cmath>

using namespace luce;
using namespace luce::testing;
using io::json;

namespace {

template <class T, class Encode, class Decode>
T round_trip(const T& value, Encode&& encode, Decode&& decode, io::DocumentKind kind)
{
    const auto text = io::serialize(encode(value));
    return decode(io::parse_document(text, kind).body);
}

Rational q(long n, long d = 1)
{
    Rational r(n, d);
    r.canonicalize();
    return r;
}

} // namespace

TEST_CASE("rules round trip exactly")
{
    TestRng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto c = random_ca_rule(static_cast<std::size_t>(2 + trial % 3), rng);
        const auto rule = trial % 2 ? perturb(c.rule, rng) : c.rule;
        const auto back = round_trip(
            rule, [](const auto& r) { return io::to_json(r); }, io::rule_from_json, io::DocumentKind::rule);
        REQUIRE(back == rule);
    }
}

TEST_CASE("float rules round trip bit for bit")
{
    const auto X = letters(3);
    const auto rule = lambda_smoothed_rule(X, {0.1, 1.0 / 3.0, 0.7}, LuceWeights::from_alpha({0.3, -1e-7, 2.5}),
                                           NoiseLevel(0.37), ChoiceFamily::all_subsets(X))
                          .with_tolerance(1e-7);
    const auto back =
        round_trip(rule, [](const auto& r) { return io::to_json(r); }, io::rule_from_json, io::DocumentKind::rule);
    CHECK(back == rule);
    CHECK(back.tolerance() == 1e-7);
}

TEST_CASE("other documents round trip")
{
    TestRng rng(8);
    const auto X = letters(4);
    const auto all = ChoiceFamily::all_subsets(X);
    const auto gamma = correspondence_from_order(random_order(X, rng), all);
    CHECK(round_trip(gamma, [](const auto& g) { return io::to_json(g); }, io::correspondence_from_json,
                     io::DocumentKind::correspondence) == gamma);

    for (const auto& w : {LuceWeights::exact(random_weights(4, rng)), LuceWeights::from_alpha(random_alpha(4, rng))}) {
        const auto doc = io::parse_document(io::serialize(io::weights_to_json(X, w)), io::DocumentKind::weights);
        const auto [U, back] = io::weights_from_json(doc.body);
        CHECK(U == X);
        CHECK(back == w);
    }

    const std::vector<double> u{0.1, -2.5, 1e-300, 3.0};
    const auto [U, back_u] = io::utility_from_json(
        io::parse_document(io::serialize(io::utility_to_json(X, u)), io::DocumentKind::utility).body);
    CHECK(back_u == u);

    std::vector<ChoiceDataset::Counts> counts;
    for (const auto& A : all) {
        ChoiceDataset::Counts row;
        for (std::size_t k = 0; k < A.size(); ++k) {
            row.push_back(static_cast<std::uint64_t>(uniform_int(rng, 0, 9)) + (k == 0 ? 1 : 0));
        }
        counts.push_back(std::move(row));
    }
    const ChoiceDataset data(X, all, counts);
    CHECK(round_trip(data, [](const auto& d) { return io::to_json(d); }, io::dataset_from_json,
                     io::DocumentKind::dataset) == data);

    const auto c = random_ca_rule(4, rng);
    const auto d = decompose(c.rule);
    CHECK(round_trip(d, [](const auto& x) { return io::to_json(x); }, io::decomposition_from_json,
                     io::DocumentKind::decomposition) == d);

    const auto fam = io::family_from_json(X, json::parse(io::family_to_json(X, all).dump()));
    CHECK(fam == all);
}

TEST_CASE("axiom reports round trip")
{
    TestRng rng(6);
    const auto c = random_ca_rule(4, rng);
    for (const auto& rule : {perturb(c.rule, rng), perturb(c.rule, rng).to_floating()}) {
        for (auto axiom : all_axioms()) {
            const auto r = check(rule, axiom);
            const auto entry = io::report_entry(rule.universe(), rule.mode(), r);
            const auto back =
                io::report_entry_from_json(rule.universe(), rule.mode(), json::parse(entry.dump()));
            CHECK(back.axiom == r.axiom);
            CHECK(back.holds == r.holds);
            CHECK(back.violations == r.violations);
            CHECK(back.pairs_checked == r.pairs_checked);
            CHECK(back.completeness == r.completeness);
            CHECK(back.witnesses == r.witnesses);
        }
    }
}

TEST_CASE("exact values are written as fractions")
{
    const auto X = letters(2);
    const auto rule = luce_rule(X, LuceWeights::exact({q(1), q(2)}), ChoiceFamily::all_subsets(X));
    const auto j = io::to_json(rule);
    CHECK(j["kind"] == "rule");
    CHECK(j["version"] == 1);
    CHECK(j["mode"] == "exact");
    CHECK(j["entries"][2]["p"]["b"] == "2/3");
    CHECK_FALSE(j.contains("tolerance"));
}

TEST_CASE("bad documents are rejected")
{
    CHECK_THROWS_AS(io::parse_document("{\"kind\": \"rule\", \"version\": 1"), io::FormatError);
    CHECK_THROWS_AS(io::parse_document("{\"kind\": \"rule\", \"version\": 2}"), io::FormatError);
    CHECK_THROWS_AS(io::parse_document("{\"kind\": \"rule\", \"version\": \"1\"}"), io::FormatError);
    CHECK_THROWS_AS(io::parse_document("{\"kind\": \"chart\", \"version\": 1}"), io::FormatError);
    CHECK_THROWS_AS(io::parse_document("{\"version\": 1}"), io::FormatError);
    CHECK_THROWS_AS(io::parse_document("[1, 2]"), io::FormatError);
    CHECK_THROWS_AS(io::parse_document("{\"kind\": \"rule\", \"version\": 1}", io::DocumentKind::dataset),
                    io::FormatError);

    const auto X = letters(2);
    auto j = io::to_json(luce_rule(X, LuceWeights::exact({q(1), q(2)}), ChoiceFamily::all_subsets(X)));
    auto numeric = j;
    numeric["entries"][2]["p"]["a"] = 0.5;
    CHECK_THROWS_AS(io::rule_from_json(numeric), io::FormatError);
    auto missing = j;
    missing["entries"][2]["p"].erase("b");
    CHECK_THROWS_AS(io::rule_from_json(missing), io::FormatError);
    auto unnormalized = j;
    unnormalized["entries"][2]["p"]["a"] = "1/2";
    CHECK_THROWS_AS(io::rule_from_json(unnormalized), InvalidArgument);
    auto unknown_label = j;
    unknown_label["entries"][2]["set"] = json::array({"a", "z"});
    CHECK_THROWS_AS(io::rule_from_json(unknown_label), InvalidArgument);
    auto wrong_type = j;
    wrong_type["entries"] = 3;
    CHECK_THROWS_AS(io::rule_from_json(wrong_type), io::FormatError);
    auto bad_mode = j;
    bad_mode["mode"] = "approx";
    CHECK_THROWS_AS(io::rule_from_json(bad_mode), io::FormatError);
}
