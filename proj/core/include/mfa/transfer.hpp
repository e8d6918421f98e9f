#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "mfa/corpus.hpp"
#include "mfa/mat.hpp"
#include "mfa/random_forest.hpp"
#include "mfa/rng.hpp"

namespace mfa {

struct SpearmanResult {
    double rho = 0.0;
    double p = 1.0;
};

// Rank correlation with average ranks for ties. p is the two-sided
// t-approximation; with exact=true and n <= 10 it is instead computed by
// enumerating all n! rank assignments.
SpearmanResult spearman(std::span<const double> x, std::span<const double> y, bool exact = false);

// Entry (i, t) = spearman rho between feature column i and flavor column t.
Mat correlation_profile(const CorpusTable& corpus);

// Per flavor: Spearman between column t of the two profiles.
std::array<SpearmanResult, 5> correlation_transfer(const Mat& profile_a, const Mat& profile_b);

struct SignAgreement {
    std::size_t agree = 0;
    std::size_t total = 0;
};

// Per flavor, the top_k features by |rho| in profile_a; counts how many of
// those associations keep their sign in profile_b.
SignAgreement sign_agreement(const Mat& profile_a, const Mat& profile_b, std::size_t top_k = 5);

struct BootImportanceConfig {
    std::size_t n_boot = 30;
    ForestConfig forest{30, 8, 2, 0};
    // Rows are subsampled without replacement to this many, fresh per
    // bootstrap iteration, when the corpus is larger. 0 disables.
    std::size_t subsample = 5000;
};

// Mean over bootstrap iterations of per-forest MDI importances; the result
// is non-negative and sums to 1. Constant targets are rejected.
std::vector<double> rf_importance(const Mat& features, const std::vector<double>& target,
                                  const BootImportanceConfig& cfg, const Rng& rng);

SpearmanResult importance_transfer(const std::vector<double>& imp_a, const std::vector<double>& imp_b);

// Horn's factor-retention rule: count how many leading eigenvalues of the
// data correlation matrix exceed the given percentile of eigenvalues from
// standard-normal data of identical shape, stopping at the first failure.
std::size_t parallel_analysis(const Mat& data, std::size_t n_reps, double percentile_pct,
                              const Rng& rng);

struct CcaResult {
    double first_corr = 0.0;
    // Set when a block covariance stays near-singular after the ridge; the
    // correlation is then numerically untrustworthy.
    bool rank_deficient = false;
};

// First canonical correlation via SVD of the whitened cross-covariance.
// Columns are standardized internally; both covariance blocks get a ridge.
CcaResult cca_first(const Mat& x, const Mat& y, double ridge = 1e-8);

struct TransferConfig {
    BootImportanceConfig importance;
    std::size_t sign_top_k = 5;
    std::size_t pa_reps = 1000;
    double pa_percentile = 95.0;
    double cca_ridge = 1e-8;
};

struct TransferReport {
    std::vector<std::string> feature_names;
    Mat profile_a;  // p x 5 rhos
    Mat profile_b;
    std::array<SpearmanResult, 5> correlation_transfer;
    Mat importance_a;  // p x 5, column per flavor
    Mat importance_b;
    std::array<SpearmanResult, 5> importance_transfer;
    SignAgreement sign_agreement;
    CcaResult cca_a;
    CcaResult cca_b;
    std::size_t pa_factors_a = 0;
    std::size_t pa_factors_b = 0;
};

// Full cross-corpus diagnostic battery. Requires matching feature manifests.
TransferReport run_transfer(const CorpusTable& a, const CorpusTable& b, const TransferConfig& cfg,
                            const Rng& rng);

}  // namespace mfa
