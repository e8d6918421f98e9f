#include "mfa/transfer.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "mfa/errors.hpp"
#include "mfa/parallel.hpp"
#include "mfa/stats_util.hpp"

namespace mfa {

namespace {

using EigenRowMat =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EigenRowMat> eigen_view(const Mat& m) {
    return {m.data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols())};
}

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

// Column-standardized copy (mean 0, population sd 1); constant columns
// become zeros and are reported through *constant when given.
Eigen::MatrixXd standardize_columns(const Eigen::MatrixXd& m, bool* constant = nullptr) {
    const auto n = m.rows();
    Eigen::MatrixXd z = m.rowwise() - m.colwise().mean();
    if (constant != nullptr) *constant = false;
    for (Eigen::Index j = 0; j < z.cols(); ++j) {
        const double sd = std::sqrt(z.col(j).squaredNorm() / static_cast<double>(n));
        if (sd > 0.0) {
            z.col(j) /= sd;
        } else {
            z.col(j).setZero();
            if (constant != nullptr) *constant = true;
        }
    }
    return z;
}

// Descending eigenvalues of the correlation matrix of the columns of z
// (z already standardized, so this is Z^T Z / n).
std::vector<double> correlation_eigenvalues(const Eigen::MatrixXd& z) {
    const Eigen::MatrixXd corr = z.transpose() * z / static_cast<double>(z.rows());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(corr);
    if (solver.info() != Eigen::Success)
        throw DegeneracyError("parallel analysis: eigendecomposition failed");
    std::vector<double> eig(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(eig.begin(), eig.end(), std::greater<>());
    return eig;
}

}  // namespace

SpearmanResult spearman(std::span<const double> x, std::span<const double> y, bool exact) {
    if (x.size() != y.size()) throw ValidationError("spearman: length mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw ValidationError("spearman: need at least 2 observations");

    const std::vector<double> rx = average_ranks(x);
    const std::vector<double> ry = average_ranks(y);
    SpearmanResult result;
    result.rho = pearson(rx, ry);

    if (exact && n <= 10) {
        // Null distribution over all n! assignments of y-ranks to x-ranks.
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<double> permuted(n);
        const double threshold = std::abs(result.rho) - 1e-12;
        std::size_t hits = 0;
        std::size_t count = 0;
        do {
            for (std::size_t i = 0; i < n; ++i) permuted[i] = ry[perm[i]];
            if (std::abs(pearson(rx, permuted)) >= threshold) ++hits;
            ++count;
        } while (std::next_permutation(perm.begin(), perm.end()));
        result.p = static_cast<double>(hits) / static_cast<double>(count);
        return result;
    }

    if (n < 3) {
        result.p = 1.0;
        return result;
    }
    const double denom = 1.0 - result.rho * result.rho;
    if (denom <= 0.0) {
        result.p = 0.0;
        return result;
    }
    const double t = result.rho * std::sqrt(static_cast<double>(n - 2) / denom);
    result.p = student_t_p_two_sided(t, static_cast<double>(n - 2));
    return result;
}

Mat correlation_profile(const CorpusTable& corpus) {
    const std::size_t p = corpus.features.cols();
    if (corpus.size() < 2) throw ValidationError("correlation_profile: need at least 2 rows");
    std::array<std::vector<double>, 5> flavor_cols;
    for (std::size_t t = 0; t < 5; ++t) flavor_cols[t] = corpus.flavors.col(t);

    Mat profile(p, 5);
    parallel_for(p, [&](std::size_t i) {
        const std::vector<double> feature = corpus.features.col(i);
        for (std::size_t t = 0; t < 5; ++t)
            profile(i, t) = spearman(feature, flavor_cols[t]).rho;
    });
    return profile;
}

std::array<SpearmanResult, 5> correlation_transfer(const Mat& profile_a, const Mat& profile_b) {
    if (profile_a.rows() != profile_b.rows() || profile_a.cols() != 5 || profile_b.cols() != 5)
        throw ValidationError("correlation_transfer: profiles must share a p x 5 shape");
    std::array<SpearmanResult, 5> out;
    for (std::size_t t = 0; t < 5; ++t)
        out[t] = spearman(profile_a.col(t), profile_b.col(t));
    return out;
}

SignAgreement sign_agreement(const Mat& profile_a, const Mat& profile_b, std::size_t top_k) {
    if (profile_a.rows() != profile_b.rows() || profile_a.cols() != profile_b.cols())
        throw ValidationError("sign_agreement: profile shape mismatch");
    if (top_k == 0 || top_k > profile_a.rows())
        throw ValidationError("sign_agreement: top_k out of range");

    SignAgreement result;
    for (std::size_t t = 0; t < profile_a.cols(); ++t) {
        std::vector<std::size_t> order(profile_a.rows());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
            return std::abs(profile_a(i, t)) > std::abs(profile_a(j, t));
        });
        for (std::size_t r = 0; r < top_k; ++r) {
            const std::size_t i = order[r];
            result.agree +=
                static_cast<std::size_t>(sign_of(profile_a(i, t)) == sign_of(profile_b(i, t)));
            ++result.total;
        }
    }
    return result;
}

std::vector<double> rf_importance(const Mat& features, const std::vector<double>& target,
                                  const BootImportanceConfig& cfg, const Rng& rng) {
    if (features.rows() != target.size())
        throw ValidationError("rf_importance: target length does not match rows");
    if (cfg.n_boot == 0) throw ValidationError("rf_importance: need at least one iteration");
    const auto [lo, hi] = std::minmax_element(target.begin(), target.end());
    if (*lo == *hi) throw ValidationError("rf_importance: constant target");

    const std::size_t n = features.rows();
    const std::size_t p = features.cols();
    const bool subsampled = cfg.subsample > 0 && n > cfg.subsample;

    std::vector<std::vector<double>> per_boot(cfg.n_boot);
    parallel_for(cfg.n_boot, [&](std::size_t b) {
        Rng boot_rng = rng.derive("boot", b);
        RandomForest forest;
        if (subsampled) {
            const std::vector<std::size_t> rows =
                boot_rng.sample_without_replacement(n, cfg.subsample);
            Mat sub(cfg.subsample, p);
            std::vector<double> sub_target(cfg.subsample);
            for (std::size_t i = 0; i < cfg.subsample; ++i) {
                std::copy_n(features.row(rows[i]).data(), p, sub.row(i).data());
                sub_target[i] = target[rows[i]];
            }
            forest.fit(sub, sub_target, cfg.forest, boot_rng);
        } else {
            forest.fit(features, target, cfg.forest, boot_rng);
        }
        per_boot[b] = forest.feature_importances();
    });

    std::vector<double> importance(p, 0.0);
    for (const auto& imp : per_boot)
        for (std::size_t j = 0; j < p; ++j) importance[j] += imp[j];
    double total = std::accumulate(importance.begin(), importance.end(), 0.0);
    if (total > 0.0)
        for (double& v : importance) v /= total;
    return importance;
}

SpearmanResult importance_transfer(const std::vector<double>& imp_a,
                                   const std::vector<double>& imp_b) {
    return spearman(imp_a, imp_b);
}

std::size_t parallel_analysis(const Mat& data, std::size_t n_reps, double percentile_pct,
                              const Rng& rng) {
    if (data.rows() < 3) throw ValidationError("parallel analysis: need at least 3 rows");
    if (data.cols() == 0) throw ValidationError("parallel analysis: empty data");
    if (n_reps == 0) throw ValidationError("parallel analysis: need at least one replicate");

    const auto n = static_cast<Eigen::Index>(data.rows());
    const auto p = static_cast<Eigen::Index>(data.cols());

    bool constant = false;
    const Eigen::MatrixXd z = standardize_columns(eigen_view(data), &constant);
    if (constant) throw DegeneracyError("parallel analysis: constant column");
    const std::vector<double> observed = correlation_eigenvalues(z);

    std::vector<std::vector<double>> rep_eigs(n_reps);
    parallel_for(n_reps, [&](std::size_t r) {
        Rng rep_rng = rng.derive("pa", r);
        Eigen::MatrixXd noise(n, p);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < p; ++j) noise(i, j) = rep_rng.next_normal();
        rep_eigs[r] = correlation_eigenvalues(standardize_columns(noise));
    });

    std::size_t retained = 0;
    std::vector<double> component(n_reps);
    for (std::size_t j = 0; j < static_cast<std::size_t>(p); ++j) {
        for (std::size_t r = 0; r < n_reps; ++r) component[r] = rep_eigs[r][j];
        if (observed[j] <= percentile(component, percentile_pct)) break;
        ++retained;
    }
    return retained;
}

CcaResult cca_first(const Mat& x, const Mat& y, double ridge) {
    if (x.rows() != y.rows()) throw ValidationError("cca_first: row count mismatch");
    if (x.cols() == 0 || y.cols() == 0) throw ValidationError("cca_first: empty block");
    const std::size_t n = x.rows();
    if (n <= std::max(x.cols(), y.cols()))
        throw ValidationError("cca_first: need more rows than columns in either block");

    const Eigen::MatrixXd zx = standardize_columns(eigen_view(x));
    const Eigen::MatrixXd zy = standardize_columns(eigen_view(y));
    const double dn = static_cast<double>(n);

    Eigen::MatrixXd sxx = zx.transpose() * zx / dn;
    Eigen::MatrixXd syy = zy.transpose() * zy / dn;
    const Eigen::MatrixXd sxy = zx.transpose() * zy / dn;

    CcaResult result;
    auto inv_sqrt = [&](Eigen::MatrixXd& s) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s);
        if (solver.info() != Eigen::Success)
            throw DegeneracyError("cca_first: eigendecomposition failed");
        if (solver.eigenvalues().minCoeff() <= ridge) result.rank_deficient = true;
        Eigen::VectorXd d = solver.eigenvalues().array() + ridge;
        return Eigen::MatrixXd(solver.eigenvectors() * d.cwiseSqrt().cwiseInverse().asDiagonal() *
                               solver.eigenvectors().transpose());
    };

    const Eigen::MatrixXd whitened = inv_sqrt(sxx) * sxy * inv_sqrt(syy);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(whitened);
    result.first_corr = std::clamp(svd.singularValues()(0), 0.0, 1.0);
    return result;
}

TransferReport run_transfer(const CorpusTable& a, const CorpusTable& b, const TransferConfig& cfg,
                            const Rng& rng) {
    require_matching_manifests(a, b);
    const std::size_t p = a.features.cols();

    TransferReport report;
    report.feature_names = a.feature_names;
    report.profile_a = correlation_profile(a);
    report.profile_b = correlation_profile(b);
    report.correlation_transfer = correlation_transfer(report.profile_a, report.profile_b);
    report.sign_agreement =
        sign_agreement(report.profile_a, report.profile_b, std::min(cfg.sign_top_k, p));

    report.importance_a = Mat(p, 5);
    report.importance_b = Mat(p, 5);
    for (std::size_t t = 0; t < 5; ++t) {
        const std::vector<double> imp_a =
            rf_importance(a.features, a.flavors.col(t), cfg.importance, rng.derive("importance/a", t));
        const std::vector<double> imp_b =
            rf_importance(b.features, b.flavors.col(t), cfg.importance, rng.derive("importance/b", t));
        for (std::size_t i = 0; i < p; ++i) {
            report.importance_a(i, t) = imp_a[i];
            report.importance_b(i, t) = imp_b[i];
        }
        report.importance_transfer[t] = importance_transfer(imp_a, imp_b);
    }

    report.cca_a = cca_first(a.features, a.flavors, cfg.cca_ridge);
    report.cca_b = cca_first(b.features, b.flavors, cfg.cca_ridge);

    auto joint = [](const CorpusTable& c) {
        Mat m(c.size(), c.features.cols() + 5);
        for (std::size_t i = 0; i < c.size(); ++i) {
            std::copy_n(c.features.row(i).data(), c.features.cols(), m.row(i).data());
            for (std::size_t t = 0; t < 5; ++t) m(i, c.features.cols() + t) = c.flavors(i, t);
        }
        return m;
    };
    report.pa_factors_a =
        parallel_analysis(joint(a), cfg.pa_reps, cfg.pa_percentile, rng.derive("pa/a"));
    report.pa_factors_b =
        parallel_analysis(joint(b), cfg.pa_reps, cfg.pa_percentile, rng.derive("pa/b"));
    return report;
}

}  // namespace mfa
