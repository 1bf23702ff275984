#include "luce/rum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace luce {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

PreferenceSampler from_scores(const Universe& universe, std::uint64_t seed,
                              std::function<void(Rng&, std::span<double>)> scores)
{
    const auto n = universe.size();
    return PreferenceSampler(universe, seed, [n, scores = std::move(scores)](Rng& rng, Ranking& out) {
        thread_local std::vector<double> buf;
        buf.resize(n);
        scores(rng, buf);
        out.assign_from_scores(buf);
    });
}

} // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream)
{
    return splitmix64(splitmix64(master) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
}

double uniform_open(Rng& rng)
{
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

double standard_gumbel(Rng& rng) { return -std::log(-std::log(uniform_open(rng))); }

Ranking Ranking::from_scores(std::span<const double> scores)
{
    Ranking r;
    r.assign_from_scores(scores);
    return r;
}

void Ranking::assign_from_scores(std::span<const double> scores)
{
    best_first.resize(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        best_first[i] = Alternative{static_cast<std::uint32_t>(i)};
    }
    std::stable_sort(best_first.begin(), best_first.end(),
                     [&](Alternative a, Alternative b) { return scores[a.index] > scores[b.index]; });
    position.resize(scores.size());
    for (std::size_t p = 0; p < best_first.size(); ++p) {
        position[best_first[p].index] = static_cast<std::uint32_t>(p);
    }
}

void Ranking::assign(std::vector<Alternative> order)
{
    best_first = std::move(order);
    position.resize(best_first.size());
    for (std::size_t p = 0; p < best_first.size(); ++p) {
        position[best_first[p].index] = static_cast<std::uint32_t>(p);
    }
}

Alternative Ranking::top(const ChoiceSet& A) const
{
    Alternative best = A.members().front();
    for (auto a : A) {
        if (position[a.index] < position[best.index]) {
            best = a;
        }
    }
    return best;
}

PreferenceSampler::PreferenceSampler(Universe universe, std::uint64_t seed, DrawFn draw)
    : universe_(std::move(universe)), seed_(seed), draw_(std::move(draw))
{
}

void GumbelScores::operator()(Rng& rng, std::span<double> out) const
{
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = alpha_[i] + standard_gumbel(rng);
    }
}

IndependentRumScores::IndependentRumScores(std::vector<double> u, std::vector<double> alpha)
    : u_(std::move(u)), alpha_(std::move(alpha))
{
    if (u_.size() != alpha_.size()) {
        throw InvalidArgument("utility and weights must cover the same alternatives");
    }
    std::vector<double> levels(u_);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    if (levels.size() > 1) {
        double gap = levels[1] - levels[0];
        for (std::size_t i = 2; i < levels.size(); ++i) {
            gap = std::min(gap, levels[i] - levels[i - 1]);
        }
        radius_ = gap / 3.0;
    }
}

void IndependentRumScores::operator()(Rng& rng, std::span<double> out) const
{
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double squashed = 2.0 / std::numbers::pi * std::atan(alpha_[i] + standard_gumbel(rng));
        out[i] = u_[i] + radius_ * squashed;
    }
}

PreferenceSampler gumbel_luce_sampler(const Universe& universe, const LuceWeights& weights, std::uint64_t seed)
{
    if (weights.size() != universe.size()) {
        throw InvalidArgument("weights must cover every alternative of the universe");
    }
    GumbelScores scores(weights.alpha());
    return from_scores(universe, seed, scores);
}

WeakOrder lex_compose(const WeakOrder& first, const WeakOrder& second)
{
    if (first.universe() != second.universe()) {
        throw InvalidArgument("lexicographic composition needs a shared universe");
    }
    const int width = static_cast<int>(second.class_count());
    std::vector<int> ranks(first.ranks().size());
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        ranks[i] = first.ranks()[i] * width + second.ranks()[i];
    }
    return WeakOrder(first.universe(), std::move(ranks));
}

PreferenceSampler lex_sampler(const WeakOrder& first, const PreferenceSampler& base)
{
    if (first.universe() != base.universe()) {
        throw InvalidArgument("lexicographic sampler needs a shared universe");
    }
    auto ranks = first.ranks();
    return PreferenceSampler(base.universe(), base.seed(), [ranks, base](Rng& rng, Ranking& out) {
        base.draw(rng, out);
        auto order = std::move(out.best_first);
        std::stable_sort(order.begin(), order.end(),
                         [&](Alternative a, Alternative b) { return ranks[a.index] < ranks[b.index]; });
        out.assign(std::move(order));
    });
}

PreferenceSampler independent_rum_sampler(const Universe& universe, const std::vector<double>& u,
                                          const LuceWeights& weights, std::uint64_t seed)
{
    if (u.size() != universe.size() || weights.size() != universe.size()) {
        throw InvalidArgument("utility and weights must cover every alternative of the universe");
    }
    IndependentRumScores scores(u, weights.alpha());
    return from_scores(universe, seed, scores);
}

RandomChoiceRule EmpiricalRule::rule(double tolerance) const
{
    std::vector<RandomChoiceRule::Row> rows;
    rows.reserve(counts.size());
    for (const auto& row : counts) {
        RandomChoiceRule::Row r;
        r.reserve(row.size());
        for (auto c : row) {
            r.emplace_back(static_cast<double>(c) / static_cast<double>(draws));
        }
        rows.push_back(std::move(r));
    }
    return RandomChoiceRule(universe, family, std::move(rows), tolerance);
}

EmpiricalRule empirical_rule(const PreferenceSampler& sampler, const ChoiceFamily& family, std::uint64_t draws)
{
    if (draws == 0) {
        throw InvalidArgument("empirical rule needs at least one draw");
    }
    if (family.universe_size() != sampler.universe().size()) {
        throw InvalidArgument("family and sampler disagree on the universe");
    }
    EmpiricalRule out{.universe = sampler.universe(), .family = family, .counts = {}, .draws = draws};
    out.counts.reserve(family.size());
    Ranking ranking;
    for (std::size_t i = 0; i < family.size(); ++i) {
        const auto& A = family[i];
        std::vector<std::uint64_t> tally(A.size(), 0);
        auto rng = sampler.stream(i);
        for (std::uint64_t d = 0; d < draws; ++d) {
            sampler.draw(rng, ranking);
            ++tally[*A.position(ranking.top(A))];
        }
        out.counts.push_back(std::move(tally));
    }
    return out;
}

} // namespace luce
