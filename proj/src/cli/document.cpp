#include "luce/document.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace luce::io {

namespace {

constexpr std::array<std::pair<DocumentKind, const char*>, 7> kKinds{{
    {DocumentKind::rule, "rule"},
    {DocumentKind::correspondence, "correspondence"},
    {DocumentKind::weights, "weights"},
    {DocumentKind::utility, "utility"},
    {DocumentKind::dataset, "dataset"},
    {DocumentKind::report, "report"},
    {DocumentKind::decomposition, "decomposition"},
}};

[[noreturn]] void fail(const std::string& what) { throw FormatError(what); }

const json& field(const json& obj, const char* key)
{
    if (!obj.is_object()) {
        fail("expected a JSON object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail(std::string("missing field '") + key + "'");
    }
    return *it;
}

json header(DocumentKind kind)
{
    return json{{"kind", to_string(kind)}, {"version", kFormatVersion}};
}

/// Runs a decoder, turning JSON type errors into FormatError.
template <class F>
auto decode(F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed document: ") + e.what());
    }
}

json labels(const Universe& universe, const ChoiceSet& s)
{
    json out = json::array();
    for (auto a : s) {
        out.push_back(universe.label(a));
    }
    return out;
}

Universe universe_from(const json& doc)
{
    const auto& u = field(doc, "universe");
    if (!u.is_array()) {
        fail("'universe' must be an array of labels");
    }
    return Universe(u.get<std::vector<std::string>>());
}

ChoiceSet set_from(const Universe& universe, const json& j)
{
    if (!j.is_array()) {
        fail("a choice set must be an array of labels");
    }
    return universe.set(j.get<std::vector<std::string>>());
}

Arithmetic mode_from(const json& doc)
{
    const auto& m = field(doc, "mode").get_ref<const std::string&>();
    if (m == "exact") {
        return Arithmetic::exact;
    }
    if (m == "float") {
        return Arithmetic::floating;
    }
    fail("unknown mode '" + m + "'");
}

json prob_to_json(const Prob& p)
{
    if (p.is_exact()) {
        return p.to_string();
    }
    return p.to_double();
}

Prob prob_from(const json& j, Arithmetic mode)
{
    if (mode == Arithmetic::exact) {
        if (!j.is_string()) {
            fail("exact values must be strings of the form \"n/d\"");
        }
        return Prob(parse_rational(j.get_ref<const std::string&>()));
    }
    if (!j.is_number()) {
        fail("float values must be JSON numbers");
    }
    return Prob(j.get<double>());
}

json ratio_to_json(const ExtendedRatio& r)
{
    return r.to_string();
}

ExtendedRatio ratio_from(const json& j, Arithmetic mode)
{
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") {
        return ExtendedRatio::infinite();
    }
    if (s == "0/0") {
        return ExtendedRatio::indeterminate();
    }
    if (mode == Arithmetic::exact) {
        return ExtendedRatio::finite(Prob(parse_rational(s)));
    }
    try {
        std::size_t used = 0;
        double x = std::stod(s, &used);
        if (used != s.size()) {
            fail("malformed number '" + s + "'");
        }
        return ExtendedRatio::finite(Prob(x));
    } catch (const std::logic_error&) {
        fail("malformed number '" + s + "'");
    }
}

/// Object keyed by label -> value, for one set's members.
template <class F>
json per_member(const Universe& universe, const ChoiceSet& s, F&& value_of)
{
    json out = json::object();
    for (std::size_t k = 0; k < s.size(); ++k) {
        out[universe.label(s.members()[k])] = value_of(k);
    }
    return out;
}

/// Reads an object keyed by exactly the members of s, in member order.
std::vector<json> member_values(const Universe& universe, const ChoiceSet& s, const json& obj)
{
    if (!obj.is_object() || obj.size() != s.size()) {
        fail("expected one value per member of " + universe.format(s));
    }
    std::vector<json> out;
    out.reserve(s.size());
    for (auto a : s) {
        out.push_back(field(obj, universe.label(a).c_str()));
    }
    return out;
}

json per_alternative(const Universe& universe, auto&& value_of)
{
    return per_member(universe, universe.full(), value_of);
}

std::vector<json> alternative_values(const Universe& universe, const json& obj)
{
    return member_values(universe, universe.full(), obj);
}

json gamma_entries(const ChoiceCorrespondence& corr)
{
    json entries = json::array();
    const auto& u = corr.universe();
    for (std::size_t i = 0; i < corr.family().size(); ++i) {
        entries.push_back({{"set", labels(u, corr.family()[i])}, {"choice", labels(u, corr.image(i))}});
    }
    return entries;
}

ChoiceCorrespondence gamma_from(const Universe& universe, const json& entries)
{
    if (!entries.is_array()) {
        fail("correspondence entries must be an array");
    }
    std::vector<std::pair<ChoiceSet, ChoiceSet>> out;
    for (const auto& e : entries) {
        out.emplace_back(set_from(universe, field(e, "set")), set_from(universe, field(e, "choice")));
    }
    return ChoiceCorrespondence(universe, std::move(out));
}

} // namespace

const char* to_string(DocumentKind kind)
{
    for (const auto& [k, name] : kKinds) {
        if (k == kind) {
            return name;
        }
    }
    return "unknown";
}

Document parse_document(std::string_view text)
{
    json body;
    try {
        body = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("not valid JSON: ") + e.what());
    }
    return decode([&] {
        const auto& kind = field(body, "kind");
        const auto& version = field(body, "version");
        if (!kind.is_string()) {
            fail("'kind' must be a string");
        }
        if (!version.is_number_integer() || version.get<int>() != kFormatVersion) {
            fail("unsupported document version " + version.dump());
        }
        for (const auto& [k, name] : kKinds) {
            if (kind.get_ref<const std::string&>() == name) {
                return Document{k, kFormatVersion, std::move(body)};
            }
        }
        fail("unknown document kind '" + kind.get<std::string>() + "'");
    });
}

Document parse_document(std::string_view text, DocumentKind expected)
{
    auto doc = parse_document(text);
    if (doc.kind != expected) {
        throw FormatError(std::string("expected a ") + to_string(expected) + " document, got " +
                          to_string(doc.kind));
    }
    return doc;
}

std::string serialize(const json& document) { return document.dump(2) + "\n"; }

json family_to_json(const Universe& universe, const ChoiceFamily& family)
{
    json out = json::array();
    for (const auto& s : family) {
        out.push_back(labels(universe, s));
    }
    return out;
}

ChoiceFamily family_from_json(const Universe& universe, const json& sets)
{
    return decode([&] {
        if (!sets.is_array()) {
            fail("a family must be an array of label arrays");
        }
        std::vector<ChoiceSet> out;
        for (const auto& s : sets) {
            out.push_back(set_from(universe, s));
        }
        return ChoiceFamily(universe, std::move(out));
    });
}

json to_json(const RandomChoiceRule& rule)
{
    const auto& u = rule.universe();
    json doc = header(DocumentKind::rule);
    doc["mode"] = to_string(rule.mode());
    if (rule.mode() == Arithmetic::floating) {
        doc["tolerance"] = rule.tolerance();
    }
    doc["universe"] = u.labels();
    json entries = json::array();
    for (std::size_t i = 0; i < rule.family().size(); ++i) {
        const auto& A = rule.family()[i];
        entries.push_back({{"set", labels(u, A)},
                           {"p", per_member(u, A, [&](std::size_t k) { return prob_to_json(rule.row(i)[k]); })}});
    }
    doc["entries"] = std::move(entries);
    return doc;
}

RandomChoiceRule rule_from_json(const json& doc)
{
    return decode([&] {
        auto universe = universe_from(doc);
        const auto mode = mode_from(doc);
        double tolerance = kDefaultTolerance;
        if (mode == Arithmetic::floating && doc.contains("tolerance")) {
            tolerance = doc["tolerance"].get<double>();
        }
        const auto& entries = field(doc, "entries");
        if (!entries.is_array()) {
            fail("'entries' must be an array");
        }
        std::vector<std::pair<ChoiceSet, RandomChoiceRule::Row>> rows;
        for (const auto& e : entries) {
            auto A = set_from(universe, field(e, "set"));
            RandomChoiceRule::Row row;
            for (const auto& v : member_values(universe, A, field(e, "p"))) {
                row.push_back(prob_from(v, mode));
            }
            rows.emplace_back(std::move(A), std::move(row));
        }
        return RandomChoiceRule(std::move(universe), std::move(rows), tolerance);
    });
}

json to_json(const ChoiceCorrespondence& corr)
{
    json doc = header(DocumentKind::correspondence);
    doc["universe"] = corr.universe().labels();
    doc["entries"] = gamma_entries(corr);
    return doc;
}

ChoiceCorrespondence correspondence_from_json(const json& doc)
{
    return decode([&] { return gamma_from(universe_from(doc), field(doc, "entries")); });
}

json weights_to_json(const Universe& universe, const LuceWeights& weights)
{
    json doc = header(DocumentKind::weights);
    doc["universe"] = universe.labels();
    doc["mode"] = to_string(weights.mode());
    if (weights.mode() == Arithmetic::exact) {
        doc["v"] = per_alternative(universe, [&](std::size_t k) { return format_rational(weights.v()[k]); });
    } else {
        const auto alpha = weights.alpha();
        doc["alpha"] = per_alternative(universe, [&](std::size_t k) { return alpha[k]; });
    }
    return doc;
}

std::pair<Universe, LuceWeights> weights_from_json(const json& doc)
{
    return decode([&] {
        auto universe = universe_from(doc);
        if (mode_from(doc) == Arithmetic::exact) {
            std::vector<Rational> v;
            for (const auto& x : alternative_values(universe, field(doc, "v"))) {
                v.push_back(prob_from(x, Arithmetic::exact).rational());
            }
            return std::pair{std::move(universe), LuceWeights::exact(std::move(v))};
        }
        std::vector<double> alpha;
        for (const auto& x : alternative_values(universe, field(doc, "alpha"))) {
            alpha.push_back(x.get<double>());
        }
        return std::pair{std::move(universe), LuceWeights::from_alpha(std::move(alpha))};
    });
}

json utility_to_json(const Universe& universe, const std::vector<double>& u)
{
    json doc = header(DocumentKind::utility);
    doc["universe"] = universe.labels();
    doc["u"] = per_alternative(universe, [&](std::size_t k) { return u.at(k); });
    return doc;
}

std::pair<Universe, std::vector<double>> utility_from_json(const json& doc)
{
    return decode([&] {
        auto universe = universe_from(doc);
        std::vector<double> u;
        for (const auto& x : alternative_values(universe, field(doc, "u"))) {
            if (!x.is_number()) {
                fail("utility values must be numbers");
            }
            u.push_back(x.get<double>());
        }
        return std::pair{std::move(universe), std::move(u)};
    });
}

json to_json(const ChoiceDataset& data)
{
    const auto& u = data.universe();
    json doc = header(DocumentKind::dataset);
    doc["universe"] = u.labels();
    json obs = json::array();
    for (std::size_t i = 0; i < data.family().size(); ++i) {
        const auto& A = data.family()[i];
        obs.push_back({{"set", labels(u, A)},
                       {"counts", per_member(u, A, [&](std::size_t k) { return data.counts(i)[k]; })}});
    }
    doc["observations"] = std::move(obs);
    return doc;
}

ChoiceDataset dataset_from_json(const json& doc)
{
    return decode([&] {
        auto universe = universe_from(doc);
        const auto& obs = field(doc, "observations");
        if (!obs.is_array()) {
            fail("'observations' must be an array");
        }
        std::vector<std::pair<ChoiceSet, ChoiceDataset::Counts>> out;
        for (const auto& o : obs) {
            auto A = set_from(universe, field(o, "set"));
            ChoiceDataset::Counts counts;
            for (const auto& c : member_values(universe, A, field(o, "counts"))) {
                if (!c.is_number_unsigned() && !(c.is_number_integer() && c.get<long long>() >= 0)) {
                    fail("counts must be nonnegative integers");
                }
                counts.push_back(c.get<std::uint64_t>());
            }
            out.emplace_back(std::move(A), std::move(counts));
        }
        return ChoiceDataset(std::move(universe), std::move(out));
    });
}

json to_json(const LuceDecomposition& d, bool reconstruction_verified)
{
    const auto& u = d.gamma.universe();
    const auto mode = d.v.empty() ? Arithmetic::exact : d.v.front().mode();
    json doc = header(DocumentKind::decomposition);
    doc["universe"] = u.labels();
    doc["mode"] = to_string(mode);
    doc["gamma"] = gamma_entries(d.gamma);
    json classes = json::array();
    for (const auto& c : d.classes) {
        classes.push_back({{"members", labels(u, c.members)}, {"representative", u.label(c.representative)}});
    }
    doc["classes"] = std::move(classes);
    doc["v"] = per_alternative(u, [&](std::size_t k) { return prob_to_json(d.v[k]); });
    doc["alpha"] = per_alternative(u, [&](std::size_t k) { return d.alpha[k]; });
    doc["reconstruction_verified"] = reconstruction_verified;
    return doc;
}

LuceDecomposition decomposition_from_json(const json& doc)
{
    return decode([&] {
        auto universe = universe_from(doc);
        const auto mode = mode_from(doc);
        auto gamma = gamma_from(universe, field(doc, "gamma"));
        std::vector<IndifferenceClass> classes;
        std::vector<int> ranks(universe.size(), -1);
        const auto& cls = field(doc, "classes");
        if (!cls.is_array()) {
            fail("'classes' must be an array");
        }
        for (std::size_t level = 0; level < cls.size(); ++level) {
            auto members = set_from(universe, field(cls[level], "members"));
            auto rep = universe.at(field(cls[level], "representative").get<std::string>());
            if (!members.contains(rep)) {
                fail("class representative outside its class");
            }
            for (auto a : members) {
                if (ranks[a.index] != -1) {
                    fail("alternative listed in two classes");
                }
                ranks[a.index] = static_cast<int>(level);
            }
            classes.push_back({std::move(members), rep});
        }
        if (std::find(ranks.begin(), ranks.end(), -1) != ranks.end()) {
            fail("classes do not cover the universe");
        }
        WeakOrder order(universe, ranks);
        std::vector<Prob> v;
        for (const auto& x : alternative_values(universe, field(doc, "v"))) {
            v.push_back(prob_from(x, mode));
        }
        std::vector<double> alpha;
        for (const auto& x : alternative_values(universe, field(doc, "alpha"))) {
            alpha.push_back(x.get<double>());
        }
        return LuceDecomposition{.gamma = std::move(gamma),
                                 .order = std::move(order),
                                 .classes = std::move(classes),
                                 .v = std::move(v),
                                 .alpha = std::move(alpha)};
    });
}

json report_entry(const Universe& u, Arithmetic mode, const AxiomReport& report)
{
    json witnesses = json::array();
    for (const auto& w : report.witnesses) {
        json j{{"A", labels(u, w.set_a)}};
        if (w.set_b) {
            j["B"] = labels(u, *w.set_b);
        }
        if (w.set_y) {
            j["Y"] = labels(u, *w.set_y);
        }
        if (w.alt_a) {
            j["a"] = u.label(*w.alt_a);
        }
        if (w.alt_b) {
            j["b"] = u.label(*w.alt_b);
        }
        if (w.image_a) {
            j["gamma_A"] = labels(u, *w.image_a);
        }
        if (w.image_b) {
            j["gamma_B"] = labels(u, *w.image_b);
        }
        if (w.lhs) {
            j["lhs"] = ratio_to_json(*w.lhs);
        }
        if (w.rhs) {
            j["rhs"] = ratio_to_json(*w.rhs);
        }
        j["text"] = report.describe(u, w);
        witnesses.push_back(std::move(j));
    }
    (void)mode;
    return json{{"axiom", to_string(report.axiom)},
                {"verdict", report.holds ? "holds" : "fails"},
                {"violations", report.violations},
                {"pairs_checked", report.pairs_checked},
                {"completeness", to_string(report.completeness)},
                {"witnesses", std::move(witnesses)}};
}

AxiomReport report_entry_from_json(const Universe& u, Arithmetic mode, const json& entry)
{
    return decode([&] {
        AxiomReport r;
        auto axiom = parse_axiom(field(entry, "axiom").get<std::string>());
        if (!axiom) {
            fail("unknown axiom " + entry["axiom"].dump());
        }
        r.axiom = *axiom;
        const auto& verdict = field(entry, "verdict").get_ref<const std::string&>();
        if (verdict != "holds" && verdict != "fails") {
            fail("verdict must be 'holds' or 'fails'");
        }
        r.holds = verdict == "holds";
        r.violations = field(entry, "violations").get<std::size_t>();
        r.pairs_checked = field(entry, "pairs_checked").get<std::size_t>();
        const auto& comp = field(entry, "completeness").get_ref<const std::string&>();
        r.completeness = comp == "all-subsets" ? Completeness::all_subsets : Completeness::partial;
        for (const auto& j : field(entry, "witnesses")) {
            Witness w{.set_a = set_from(u, field(j, "A"))};
            if (j.contains("B")) {
                w.set_b = set_from(u, j["B"]);
            }
            if (j.contains("Y")) {
                w.set_y = set_from(u, j["Y"]);
            }
            if (j.contains("a")) {
                w.alt_a = u.at(j["a"].get<std::string>());
            }
            if (j.contains("b")) {
                w.alt_b = u.at(j["b"].get<std::string>());
            }
            if (j.contains("gamma_A")) {
                w.image_a = set_from(u, j["gamma_A"]);
            }
            if (j.contains("gamma_B")) {
                w.image_b = set_from(u, j["gamma_B"]);
            }
            if (j.contains("lhs")) {
                w.lhs = ratio_from(j["lhs"], mode);
            }
            if (j.contains("rhs")) {
                w.rhs = ratio_from(j["rhs"], mode);
            }
            r.witnesses.push_back(std::move(w));
        }
        return r;
    });
}

json check_report(const Universe& universe, Arithmetic mode, const std::vector<AxiomReport>& reports)
{
    json doc = header(DocumentKind::report);
    doc["subject"] = "check";
    doc["universe"] = universe.labels();
    doc["mode"] = to_string(mode);
    bool all_hold = true;
    json entries = json::array();
    for (const auto& r : reports) {
        all_hold = all_hold && r.holds;
        entries.push_back(report_entry(universe, mode, r));
    }
    doc["reports"] = std::move(entries);
    doc["verdict"] = all_hold ? "holds" : "fails";
    return doc;
}

json fit_report(const Universe& universe, const FitResult& result)
{
    json doc = header(DocumentKind::report);
    doc["subject"] = "fit";
    doc["universe"] = universe.labels();
    doc["gamma"] = gamma_entries(result.gamma_hat);
    doc["warp"] = report_entry(universe, Arithmetic::exact, result.warp_report);
    if (result.alpha_hat) {
        doc["alpha"] = per_alternative(universe, [&](std::size_t k) { return (*result.alpha_hat)[k]; });
    } else {
        doc["alpha"] = nullptr;
    }
    json comps = json::array();
    for (const auto& c : result.components) {
        comps.push_back(labels(universe, c));
    }
    doc["components"] = std::move(comps);
    doc["log_likelihood"] = result.log_likelihood;
    doc["converged"] = result.converged;
    doc["diverged"] = result.diverged;
    doc["iterations"] = result.iterations;
    doc["trace"] = result.trace;
    return doc;
}

json limit_report(const LimitReport& report)
{
    json doc = header(DocumentKind::report);
    doc["subject"] = "limit";
    doc["lambdas"] = report.lambdas;
    doc["distances"] = report.distances;
    doc["decreasing"] = report.decreasing;
    return doc;
}

json error_report(std::string_view code, std::string_view message, const Universe* universe,
                  const AxiomReport* report, Arithmetic mode)
{
    json doc = header(DocumentKind::report);
    doc["subject"] = "error";
    doc["error"] = code;
    doc["message"] = message;
    if (universe && report) {
        doc["universe"] = universe->labels();
        doc["report"] = report_entry(*universe, mode, *report);
    }
    return doc;
}

} // namespace luce::io
