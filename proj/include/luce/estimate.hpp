#pragma once

#include "luce/axioms.hpp"
#include "luce/core.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace luce {

/// Observed choice counts per offered set.
class ChoiceDataset {
public:
    using Counts = std::vector<std::uint64_t>;

    /// Counts are aligned with the members of each set; every set needs at
    /// least one observation.
    ChoiceDataset(Universe universe, std::vector<std::pair<ChoiceSet, Counts>> observations);
    ChoiceDataset(Universe universe, ChoiceFamily family, std::vector<Counts> counts);

    const Universe& universe() const noexcept { return universe_; }
    const ChoiceFamily& family() const noexcept { return family_; }
    const Counts& counts(std::size_t set_index) const { return counts_.at(set_index); }
    std::uint64_t total(std::size_t set_index) const;

    friend bool operator==(const ChoiceDataset&, const ChoiceDataset&) = default;

private:
    void validate() const;

    Universe universe_;
    ChoiceFamily family_;
    std::vector<Counts> counts_;
};

class CountsOffSupport : public Error {
public:
    using Error::Error;
};

struct SupportEstimate {
    ChoiceCorrespondence gamma;
    AxiomReport warp;
};

/// Gamma-hat(A) = alternatives chosen at least once from A, with its WARP report.
SupportEstimate support_from_counts(const ChoiceDataset& data);

struct FitOptions {
    /// Added to every count inside Gamma(A) before fitting.
    double pseudo_count = 0.0;
    int max_iterations = 500;
    /// Bound on |alpha-hat| relative to the component representative.
    double alpha_bound = 30.0;
};

struct FitResult {
    ChoiceCorrespondence gamma_hat;
    /// Empty when Gamma-hat fails WARP.
    std::optional<std::vector<double>> alpha_hat = std::nullopt;
    double log_likelihood = 0.0;
    bool converged = false;
    /// Some estimate sits at the alpha bound (separated data).
    bool diverged = false;
    AxiomReport warp_report;
    /// Groups of alternatives linked by co-occurring in some Gamma(A); alpha
    /// differences are identified only inside a group. Representatives (the
    /// first member) have alpha-hat = 0.
    std::vector<ChoiceSet> components = {};
    /// Log-likelihood after each accepted step, starting at the initial point.
    std::vector<double> trace = {};
    int iterations = 0;
};

/// Sum over observed A and a in Gamma(A) of count(a,A) log softmax_Gamma(A)(alpha)(a).
double log_likelihood(const ChoiceDataset& data, const ChoiceCorrespondence& gamma, std::span<const double> alpha,
                      double pseudo_count = 0.0);
std::vector<double> log_likelihood_gradient(const ChoiceDataset& data, const ChoiceCorrespondence& gamma,
                                            std::span<const double> alpha, double pseudo_count = 0.0);

/// Maximum-likelihood alpha on the given supports.
FitResult fit_alpha_mle(const ChoiceDataset& data, const ChoiceCorrespondence& gamma, const FitOptions& options = {});

/// support_from_counts followed by fit_alpha_mle; stops after the WARP report
/// when Gamma-hat is not rational.
FitResult fit(const ChoiceDataset& data, const FitOptions& options = {});

} // namespace luce
