#include "luce/cli.hpp"

#include "luce/decompose.hpp"
#include "luce/document.hpp"
#include "luce/estimate.hpp"
#include "luce/rum.hpp"
#include "luce/synthesize.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace luce::cli {

namespace {

/// Bad flags, unreadable files, or flag combinations that make no sense.
class UsageError : public Error {
public:
    using Error::Error;
};

struct Globals {
    std::optional<std::string> mode;
    std::uint64_t seed = 1;
    std::string out;
};

const std::vector<Axiom> kDefaultAxioms{
    Axiom::ChoiceAxiom,         Axiom::OddsIndependence, Axiom::ProductRule,        Axiom::SetChoiceAxiom,
    Axiom::SetIntersectionRule, Axiom::WARP,             Axiom::RenyiConditioning,
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

io::json load(const std::string& path, io::DocumentKind kind)
{
    return io::parse_document(read_file(path), kind).body;
}

void emit(const Globals& g, std::ostream& out, const io::json& doc)
{
    const auto text = io::serialize(doc);
    if (g.out.empty()) {
        out << text;
        out.flush();
        return;
    }
    std::ofstream file(g.out, std::ios::binary | std::ios::trunc);
    file << text;
    if (!file) {
        throw UsageError("cannot write '" + g.out + "'");
    }
}

std::optional<Arithmetic> requested_mode(const Globals& g)
{
    if (!g.mode) {
        return std::nullopt;
    }
    return *g.mode == "exact" ? Arithmetic::exact : Arithmetic::floating;
}

/// Applies --mode to a rule: exact rules may be demoted to float, never the reverse.
RandomChoiceRule in_mode(const RandomChoiceRule& rule, std::optional<Arithmetic> mode)
{
    if (!mode || *mode == rule.mode()) {
        return rule;
    }
    if (*mode == Arithmetic::floating) {
        return rule.to_floating();
    }
    throw UsageError("a float-mode input cannot be processed in exact mode");
}

ChoiceFamily family_from_option(const Universe& universe, const std::string& spec)
{
    if (spec == "all") {
        return ChoiceFamily::all_subsets(universe);
    }
    if (spec == "pairs") {
        return ChoiceFamily::pairs(universe);
    }
    io::json sets;
    try {
        sets = io::json::parse(read_file(spec));
    } catch (const io::json::parse_error& e) {
        throw io::FormatError("family file '" + spec + "' is not valid JSON: " + e.what());
    }
    return io::family_from_json(universe, sets);
}

void require_same_universe(const Universe& a, const Universe& b, const char* what)
{
    if (!(a == b)) {
        throw UsageError(std::string(what) + " is defined on a different universe than the weights");
    }
}

/// Weak order with x above y iff u(x) > u(y).
WeakOrder order_from_utility(const Universe& universe, const std::vector<double>& u)
{
    std::vector<int> ranks(u.size(), 0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (double other : u) {
            ranks[i] += other > u[i] ? 1 : 0;
        }
    }
    return WeakOrder(universe, std::move(ranks));
}

std::vector<Axiom> parse_axiom_list(const std::vector<std::string>& names)
{
    if (names.empty()) {
        return kDefaultAxioms;
    }
    std::vector<Axiom> out;
    for (const auto& name : names) {
        if (name == "all") {
            auto every = all_axioms();
            out.insert(out.end(), every.begin(), every.end());
            continue;
        }
        auto axiom = parse_axiom(name);
        if (!axiom) {
            throw UsageError("unknown axiom '" + name + "'");
        }
        out.push_back(*axiom);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct CheckArgs {
    std::string file;
    std::vector<std::string> axioms;
};

int cmd_check(const Globals& g, const CheckArgs& args, std::ostream& out)
{
    const auto rule = in_mode(io::rule_from_json(load(args.file, io::DocumentKind::rule)), requested_mode(g));
    std::vector<AxiomReport> reports;
    for (auto axiom : parse_axiom_list(args.axioms)) {
        reports.push_back(check(rule, axiom));
    }
    emit(g, out, io::check_report(rule.universe(), rule.mode(), reports));
    const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.holds; });
    return ok ? kExitOk : kExitFailure;
}

int cmd_decompose(const Globals& g, const std::string& file, std::ostream& out)
{
    const auto rule = in_mode(io::rule_from_json(load(file, io::DocumentKind::rule)), requested_mode(g));
    const auto& u = rule.universe();
    try {
        emit(g, out, io::to_json(decompose(rule), true));
        return kExitOk;
    } catch (const ChoiceAxiomFails& e) {
        // A non-rational support is the more basic obstruction; name it when present.
        auto warp = check(rule, Axiom::WARP);
        if (!warp.holds) {
            emit(g, out, io::error_report("not-rational", e.what(), &u, &warp, rule.mode()));
        } else {
            emit(g, out, io::error_report("choice-axiom-fails", e.what(), &u, &e.report(), rule.mode()));
        }
    } catch (const NotRational& e) {
        if (e.report()) {
            emit(g, out, io::error_report("not-rational", e.what(), &u, &*e.report(), rule.mode()));
        } else {
            emit(g, out, io::error_report("not-rational", e.what()));
        }
    } catch (const MissingPairs& e) {
        emit(g, out, io::error_report("missing-pairs", e.what()));
    } catch (const DegenerateOdds& e) {
        emit(g, out, io::error_report("degenerate-odds", e.what()));
    } catch (const ReconstructionMismatch& e) {
        emit(g, out, io::error_report("reconstruction-mismatch", e.what()));
    }
    return kExitFailure;
}

struct SynthesizeArgs {
    std::string weights;
    std::string utility;
    std::string correspondence;
    std::optional<double> lambda;
    std::string family = "all";
};

int cmd_synthesize(const Globals& g, const SynthesizeArgs& args, std::ostream& out)
{
    auto [universe, weights] = io::weights_from_json(load(args.weights, io::DocumentKind::weights));
    const auto mode = requested_mode(g);
    if (mode == Arithmetic::exact && weights.mode() != Arithmetic::exact) {
        throw UsageError("exact mode needs exact weights");
    }
    if (args.lambda && args.utility.empty()) {
        throw UsageError("--lambda needs --utility");
    }
    if (args.lambda && mode == Arithmetic::exact) {
        throw UsageError("lambda smoothing is float-only");
    }
    std::optional<RandomChoiceRule> rule;
    if (!args.correspondence.empty()) {
        const auto gamma = io::correspondence_from_json(load(args.correspondence, io::DocumentKind::correspondence));
        require_same_universe(gamma.universe(), universe, "the correspondence");
        try {
            rule = general_luce_rule(gamma, weights);
        } catch (const WarpViolation& e) {
            emit(g, out, io::error_report("not-rational", e.what(), &universe, &e.report()));
            return kExitFailure;
        }
    } else {
        const auto family = family_from_option(universe, args.family);
        if (!args.utility.empty()) {
            const auto [u_universe, u] = io::utility_from_json(load(args.utility, io::DocumentKind::utility));
            require_same_universe(u_universe, universe, "the utility");
            rule = args.lambda ? lambda_smoothed_rule(universe, u, weights, NoiseLevel(*args.lambda), family)
                               : general_luce_rule_from_utility(universe, u, weights, family);
        } else {
            rule = luce_rule(universe, weights, family);
        }
    }
    emit(g, out, io::to_json(in_mode(*rule, mode)));
    return kExitOk;
}

struct SimulateArgs {
    std::string weights;
    std::string utility;
    std::uint64_t draws = 0;
    std::string sampler;
    std::string family = "all";
};

int cmd_simulate(const Globals& g, const SimulateArgs& args, std::ostream& out)
{
    const auto [universe, weights] = io::weights_from_json(load(args.weights, io::DocumentKind::weights));
    std::optional<std::vector<double>> u;
    if (!args.utility.empty()) {
        auto [u_universe, values] = io::utility_from_json(load(args.utility, io::DocumentKind::utility));
        require_same_universe(u_universe, universe, "the utility");
        u = std::move(values);
    }
    const std::string kind = args.sampler.empty() ? (u ? "rum" : "gumbel") : args.sampler;
    if (kind != "gumbel" && !u) {
        throw UsageError("sampler '" + kind + "' needs --utility");
    }
    if (kind == "gumbel" && u) {
        throw UsageError("the gumbel sampler ignores utilities; use --sampler rum or lex");
    }
    if (args.draws == 0) {
        throw UsageError("--draws must be positive");
    }
    const auto family = family_from_option(universe, args.family);
    const auto sampler = [&] {
        if (kind == "rum") {
            return independent_rum_sampler(universe, *u, weights, g.seed);
        }
        auto base = gumbel_luce_sampler(universe, weights, g.seed);
        return kind == "lex" ? lex_sampler(order_from_utility(universe, *u), base) : base;
    }();
    auto empirical = empirical_rule(sampler, family, args.draws);
    emit(g, out, io::to_json(ChoiceDataset(universe, family, std::move(empirical.counts))));
    return kExitOk;
}

int cmd_fit(const Globals& g, const std::string& file, double pseudo_count, std::ostream& out)
{
    const auto data = io::dataset_from_json(load(file, io::DocumentKind::dataset));
    if (g.mode == "exact") {
        throw UsageError("fit is float-only");
    }
    FitOptions options;
    options.pseudo_count = pseudo_count;
    const auto result = fit(data, options);
    emit(g, out, io::fit_report(data.universe(), result));
    return result.alpha_hat ? kExitOk : kExitFailure;
}

struct LimitArgs {
    std::string weights;
    std::string utility;
    std::vector<double> schedule;
    std::string family = "all";
};

int cmd_limit(const Globals& g, const LimitArgs& args, std::ostream& out)
{
    const auto [universe, weights] = io::weights_from_json(load(args.weights, io::DocumentKind::weights));
    const auto [u_universe, u] = io::utility_from_json(load(args.utility, io::DocumentKind::utility));
    require_same_universe(u_universe, universe, "the utility");
    if (g.mode == "exact") {
        throw UsageError("limit is float-only");
    }
    const auto report = limit_check(universe, u, weights, args.schedule, family_from_option(universe, args.family));
    emit(g, out, io::limit_report(report));
    return report.decreasing ? kExitOk : kExitFailure;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Finite-universe stochastic choice: check, decompose, synthesize, simulate, fit."};
    app.name("luce");
    app.require_subcommand(1);

    Globals g;
    app.add_option("--mode", g.mode, "Arithmetic: exact or float")->check(CLI::IsMember({"exact", "float"}));
    app.add_option("--seed", g.seed, "Master seed for all randomness")->capture_default_str();
    app.add_option("--out", g.out, "Write the output document here instead of stdout");

    CheckArgs check_args;
    auto* check_cmd = app.add_subcommand("check", "Check axioms on a rule document");
    check_cmd->add_option("file", check_args.file, "Rule document")->required();
    check_cmd->add_option("--axioms", check_args.axioms, "Comma-separated axiom names, or 'all'")->delimiter(',');

    std::string decompose_file;
    auto* decompose_cmd = app.add_subcommand("decompose", "Recover support, order, and weights from a rule");
    decompose_cmd->add_option("file", decompose_file, "Rule document")->required();

    SynthesizeArgs synth;
    auto* synth_cmd = app.add_subcommand("synthesize", "Build a rule from weights");
    synth_cmd->add_option("--weights", synth.weights, "Weights document")->required();
    auto* synth_u = synth_cmd->add_option("--utility", synth.utility, "Utility document");
    auto* synth_c = synth_cmd->add_option("--correspondence", synth.correspondence, "Correspondence document");
    synth_u->excludes(synth_c);
    synth_cmd->add_option("--lambda", synth.lambda, "Noise level for the smoothed logit");
    auto* synth_f = synth_cmd->add_option("--family", synth.family, "all, pairs, or a family file");
    synth_f->excludes(synth_c);

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Draw choices from a random preference model");
    sim_cmd->add_option("--weights", sim.weights, "Weights document")->required();
    sim_cmd->add_option("--utility", sim.utility, "Utility document");
    sim_cmd->add_option("--draws", sim.draws, "Draws per choice set")->required();
    sim_cmd->add_option("--sampler", sim.sampler, "gumbel, rum, or lex")
        ->check(CLI::IsMember({"gumbel", "rum", "lex"}));
    sim_cmd->add_option("--family", sim.family, "all, pairs, or a family file");

    std::string fit_file;
    double pseudo_count = 0.0;
    auto* fit_cmd = app.add_subcommand("fit", "Estimate support and weights from a dataset");
    fit_cmd->add_option("file", fit_file, "Dataset document")->required();
    fit_cmd->add_option("--pseudo-count", pseudo_count, "Added to every supported count")
        ->check(CLI::NonNegativeNumber);

    LimitArgs lim;
    auto* lim_cmd = app.add_subcommand("limit", "Distance of the smoothed logit to its vanishing-noise limit");
    lim_cmd->add_option("--weights", lim.weights, "Weights document")->required();
    lim_cmd->add_option("--utility", lim.utility, "Utility document")->required();
    lim_cmd->add_option("--schedule", lim.schedule, "Comma-separated decreasing lambdas")
        ->required()
        ->delimiter(',');
    lim_cmd->add_option("--family", lim.family, "all, pairs, or a family file");

    for (auto* sub : app.get_subcommands({})) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (check_cmd->parsed()) {
            return cmd_check(g, check_args, out);
        }
        if (decompose_cmd->parsed()) {
            return cmd_decompose(g, decompose_file, out);
        }
        if (synth_cmd->parsed()) {
            return cmd_synthesize(g, synth, out);
        }
        if (sim_cmd->parsed()) {
            return cmd_simulate(g, sim, out);
        }
        if (fit_cmd->parsed()) {
            return cmd_fit(g, fit_file, pseudo_count, out);
        }
        if (lim_cmd->parsed()) {
            return cmd_limit(g, lim, out);
        }
    } catch (const UsageError& e) {
        err << "luce: " << e.what() << '\n';
        return kExitUsage;
    } catch (const io::FormatError& e) {
        err << "luce: malformed document: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SizeLimitError& e) {
        err << "luce: size limit: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        err << "luce: invalid input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "luce: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "luce: internal error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace luce::cli
