#pragma once

#include "luce/core.hpp"
#include "luce/synthesize.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace luce {

using Rng = std::mt19937_64;

/// Seed of substream `stream` under `master` (SplitMix64 mixing).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);
/// Uniform on the open interval (0, 1), built from 53 random bits.
double uniform_open(Rng& rng);
/// Gumbel with location 0 and scale 1.
double standard_gumbel(Rng& rng);

/// A strict ranking of the whole universe.
struct Ranking {
    std::vector<Alternative> best_first;
    /// position[x] = place of alternative x in best_first.
    std::vector<std::uint32_t> position;

    /// Orders by descending score; exact ties go to the smaller index.
    static Ranking from_scores(std::span<const double> scores);
    void assign_from_scores(std::span<const double> scores);
    void assign(std::vector<Alternative> order);

    /// Highest-ranked member of A.
    Alternative top(const ChoiceSet& A) const;
};

/// Seeded source of random strict rankings. Draws are a pure function of the
/// generator state, so a given substream always replays the same sequence.
class PreferenceSampler {
public:
    using DrawFn = std::function<void(Rng&, Ranking&)>;

    PreferenceSampler(Universe universe, std::uint64_t seed, DrawFn draw);

    const Universe& universe() const noexcept { return universe_; }
    std::uint64_t seed() const noexcept { return seed_; }

    /// Independent generator for substream `id`.
    Rng stream(std::uint64_t id) const { return Rng(derive_seed(seed_, id)); }

    void draw(Rng& rng, Ranking& out) const { draw_(rng, out); }
    Ranking draw(Rng& rng) const
    {
        Ranking r;
        draw_(rng, r);
        return r;
    }

private:
    Universe universe_;
    std::uint64_t seed_;
    DrawFn draw_;
};

/// Scores alpha(x) + G_x with independent standard Gumbel G_x.
class GumbelScores {
public:
    explicit GumbelScores(std::vector<double> alpha) : alpha_(std::move(alpha)) {}
    void operator()(Rng& rng, std::span<double> out) const;

private:
    std::vector<double> alpha_;
};

/// U_x = u(x) + r * V_x with V_x = (2/pi) atan(alpha(x) + G_x) in (-1, 1) and
/// r = (smallest gap between distinct utility levels) / 3, or 1 when u is
/// constant. Levels of u are therefore never crossed.
class IndependentRumScores {
public:
    IndependentRumScores(std::vector<double> u, std::vector<double> alpha);
    double radius() const noexcept { return radius_; }
    void operator()(Rng& rng, std::span<double> out) const;

private:
    std::vector<double> u_;
    std::vector<double> alpha_;
    double radius_ = 1.0;
};

PreferenceSampler gumbel_luce_sampler(const Universe& universe, const LuceWeights& weights, std::uint64_t seed);

/// a beats b iff first prefers a, or first is indifferent and second prefers a.
WeakOrder lex_compose(const WeakOrder& first, const WeakOrder& second);

/// Each draw ranks by `first`, breaking its ties with the base draw.
PreferenceSampler lex_sampler(const WeakOrder& first, const PreferenceSampler& base);

PreferenceSampler independent_rum_sampler(const Universe& universe, const std::vector<double>& u,
                                          const LuceWeights& weights, std::uint64_t seed);

/// Tallies of the top-ranked member of each set over independent draws.
struct EmpiricalRule {
    Universe universe;
    ChoiceFamily family;
    /// Aligned with family[i].members().
    std::vector<std::vector<std::uint64_t>> counts;
    std::uint64_t draws = 0;

    /// count / draws, float mode.
    RandomChoiceRule rule(double tolerance = kDefaultTolerance) const;
};

/// Set i of the family uses substream i of the sampler's seed.
EmpiricalRule empirical_rule(const PreferenceSampler& sampler, const ChoiceFamily& family, std::uint64_t draws);

} // namespace luce
