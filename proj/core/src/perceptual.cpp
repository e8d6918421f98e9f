#include "mfa/perceptual.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>

#include "mfa/csv.hpp"
#include "mfa/errors.hpp"
#include "mfa/parallel.hpp"
#include "mfa/stats_util.hpp"

namespace mfa {

namespace {

constexpr std::size_t kPermBatch = 2048;

double parse_number(const std::string& s, const std::string& context, std::size_t line,
                    const std::string& column) {
    double v = 0.0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v))
        throw ValidationError(context + ": line " + std::to_string(line) + ", column '" + column +
                              "': cannot parse number from '" + s + "'");
    return v;
}

bool parse_flag(const std::string& s) { return s == "1" || s == "true" || s == "yes"; }

// Splits n_perm into fixed-size batches, runs body(batch_rng, count, slot)
// in parallel, and leaves per-batch results in slots for an order-free merge.
struct BatchMoments {
    std::size_t hits = 0;
    double sum = 0.0;
    double sumsq = 0.0;
};

template <typename Body>
std::vector<BatchMoments> run_permutation_batches(std::size_t n_perm, const Rng& rng,
                                                  const char* stream, Body body) {
    const std::size_t n_batches = (n_perm + kPermBatch - 1) / kPermBatch;
    std::vector<BatchMoments> batches(n_batches);
    parallel_for(n_batches, [&](std::size_t b) {
        Rng batch_rng = rng.derive(stream, b);
        const std::size_t count = std::min(kPermBatch, n_perm - b * kPermBatch);
        body(batch_rng, count, batches[b]);
    });
    return batches;
}

void check_distance_matrix(const Mat& m, const char* name) {
    if (m.rows() != m.cols()) throw ValidationError(std::string("mantel: ") + name + " is not square");
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (std::abs(m(i, i)) > 1e-12)
            throw ValidationError(std::string("mantel: ") + name + " has a nonzero diagonal");
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (std::abs(m(i, j) - m(j, i)) > 1e-9 * std::max(1.0, std::abs(m(i, j))))
                throw ValidationError(std::string("mantel: ") + name + " is not symmetric");
    }
}

// Strict upper triangle in (i, j), i < j order.
std::vector<double> upper_triangle(const Mat& m) {
    std::vector<double> out;
    out.reserve(m.rows() * (m.rows() - 1) / 2);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j) out.push_back(m(i, j));
    return out;
}

// Writes the average ranks of the strict upper triangle back symmetrically.
Mat rank_transform_distances(const Mat& m) {
    const std::vector<double> ranks = average_ranks(upper_triangle(m));
    Mat out(m.rows(), m.cols(), 0.0);
    std::size_t k = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j) {
            out(i, j) = ranks[k];
            out(j, i) = ranks[k];
            ++k;
        }
    return out;
}

double row_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        acc += d * d;
    }
    return std::sqrt(acc);
}

// Centered, unit-Frobenius-norm copy for Procrustes.
Eigen::MatrixXd standardize_configuration(const Mat& m, const char* name) {
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> view(
        m.data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    Eigen::MatrixXd centered = view.rowwise() - view.colwise().mean();
    const double norm = centered.norm();
    if (norm <= 0.0)
        throw DegeneracyError(std::string("procrustes: ") + name + " is a rank-0 configuration");
    return centered / norm;
}

double procrustes_m2(const Eigen::MatrixXd& xc, const Eigen::MatrixXd& yc) {
    const Eigen::MatrixXd cross = xc.transpose() * yc;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(cross);
    const double trace = svd.singularValues().sum();
    return std::clamp(1.0 - trace * trace, 0.0, 1.0);
}

}  // namespace

std::vector<RatingRecord> read_ratings(const std::filesystem::path& path) {
    const std::string context = path.filename().string();
    const CsvTable table = read_csv(path);
    const std::size_t subject_col = table.column("subject_id", context);
    const std::size_t track_col = table.column("track_id", context);
    std::array<std::size_t, 5> taste_cols{};
    for (std::size_t t = 0; t < 5; ++t) taste_cols[t] = table.column(kTasteNames[t], context);
    const bool has_device = table.has_column("device");
    const bool has_hearing = table.has_column("hearing_impaired");
    const bool has_taste_flag = table.has_column("taste_impaired");
    const std::size_t device_col = has_device ? table.column("device", context) : 0;
    const std::size_t hearing_col = has_hearing ? table.column("hearing_impaired", context) : 0;
    const std::size_t taste_flag_col = has_taste_flag ? table.column("taste_impaired", context) : 0;

    std::vector<RatingRecord> out;
    out.reserve(table.rows.size());
    for (const CsvRecord& row : table.rows) {
        RatingRecord r;
        r.subject_id = row.fields[subject_col];
        r.track_id = row.fields[track_col];
        if (r.subject_id.empty() || r.track_id.empty())
            throw ValidationError(context + ": line " + std::to_string(row.line) + ": empty id");
        for (std::size_t t = 0; t < 5; ++t) {
            const double v = parse_number(row.fields[taste_cols[t]], context, row.line, kTasteNames[t]);
            if (v < 1.0 || v > 7.0 || v != std::floor(v))
                throw ValidationError(context + ": line " + std::to_string(row.line) + ", column '" +
                                      kTasteNames[t] + "': rating must be an integer in [1, 7]");
            r.ratings[t] = v;
        }
        if (has_device) r.device = row.fields[device_col];
        if (has_hearing) r.hearing_impaired = parse_flag(row.fields[hearing_col]);
        if (has_taste_flag) r.taste_impaired = parse_flag(row.fields[taste_flag_col]);
        out.push_back(std::move(r));
    }
    if (out.empty()) throw ValidationError(context + ": no rating rows");
    return out;
}

std::vector<TargetRecord> read_targets(const std::filesystem::path& path) {
    const std::string context = path.filename().string();
    const CsvTable table = read_csv(path);
    const std::size_t id_col = table.column("target_id", context);
    const std::size_t track_col = table.column("track_id", context);
    std::array<std::size_t, 5> taste_cols{};
    for (std::size_t t = 0; t < 5; ++t) taste_cols[t] = table.column(kTasteNames[t], context);

    std::vector<TargetRecord> out;
    std::map<std::string, std::size_t> seen;
    out.reserve(table.rows.size());
    for (const CsvRecord& row : table.rows) {
        TargetRecord r;
        r.target_id = row.fields[id_col];
        r.track_id = row.fields[track_col];
        if (r.target_id.empty())
            throw ValidationError(context + ": line " + std::to_string(row.line) + ": empty target_id");
        if (const auto [it, inserted] = seen.emplace(r.target_id, row.line); !inserted)
            throw ValidationError(context + ": line " + std::to_string(row.line) +
                                  ": duplicate target_id '" + r.target_id + "'");
        for (std::size_t t = 0; t < 5; ++t)
            r.taste[t] = parse_number(row.fields[taste_cols[t]], context, row.line, kTasteNames[t]);
        out.push_back(std::move(r));
    }
    if (out.empty()) throw ValidationError(context + ": no target rows");
    return out;
}

bool ZscoreResult::any_constant() const {
    return std::any_of(constant_columns.begin(), constant_columns.end(),
                       [](std::uint8_t c) { return c != 0; });
}

ZscoreResult zscore_columns(const Mat& m) {
    if (m.rows() == 0) throw ValidationError("zscore_columns: empty matrix");
    ZscoreResult result;
    result.data = Mat(m.rows(), m.cols());
    result.constant_columns.assign(m.cols(), 0);
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const std::vector<double> col = m.col(j);
        const double mu = mean(col);
        const double sd = stddev_population(col);
        if (sd > 0.0) {
            for (std::size_t i = 0; i < m.rows(); ++i) result.data(i, j) = (m(i, j) - mu) / sd;
        } else {
            result.constant_columns[j] = 1;
        }
    }
    return result;
}

PerceptMatrix mean_percepts(const std::vector<RatingRecord>& ratings, bool include_impaired) {
    std::vector<const RatingRecord*> retained;
    retained.reserve(ratings.size());
    for (const RatingRecord& r : ratings)
        if (include_impaired || (!r.hearing_impaired && !r.taste_impaired)) retained.push_back(&r);
    if (retained.empty()) throw ValidationError("mean_percepts: no ratings retained");

    Mat raw(retained.size(), 5);
    for (std::size_t i = 0; i < retained.size(); ++i)
        for (std::size_t t = 0; t < 5; ++t) raw(i, t) = retained[i]->ratings[t];
    ZscoreResult z = zscore_columns(raw);

    std::map<std::string, std::vector<std::size_t>> by_track;
    for (std::size_t i = 0; i < retained.size(); ++i)
        by_track[retained[i]->track_id].push_back(i);

    PerceptMatrix out;
    out.percepts = Mat(by_track.size(), 5);
    out.constant_rating_columns = z.constant_columns;
    std::size_t row = 0;
    for (const auto& [track, rows] : by_track) {
        out.track_ids.push_back(track);
        out.counts.push_back(rows.size());
        for (std::size_t t = 0; t < 5; ++t) {
            double acc = 0.0;
            for (std::size_t i : rows) acc += z.data(i, t);
            out.percepts(row, t) = acc / static_cast<double>(rows.size());
        }
        ++row;
    }
    return out;
}

PermutationAlignment permutation_alignment(const Mat& targets, const Mat& percepts,
                                           std::size_t n_perm, const Rng& rng) {
    if (targets.rows() != percepts.rows() || targets.cols() != percepts.cols())
        throw ValidationError("permutation_alignment: shape mismatch");
    const std::size_t n = targets.rows();
    if (n < 3) throw ValidationError("permutation_alignment: need at least 3 rows");
    if (n_perm == 0) throw ValidationError("permutation_alignment: n_perm must be positive");

    // cross(i, j) = distance(target i, percept j); every permuted statistic
    // is a mean over one entry per row.
    Mat cross = distance_matrix(targets, percepts);
    PermutationAlignment result;
    result.low_n_perm = n_perm < 100;

    double observed = 0.0;
    for (std::size_t i = 0; i < n; ++i) observed += cross(i, i);
    observed /= static_cast<double>(n);
    result.d = observed;

    const auto batches = run_permutation_batches(
        n_perm, rng, "alignment", [&](Rng& batch_rng, std::size_t count, BatchMoments& m) {
            for (std::size_t it = 0; it < count; ++it) {
                const std::vector<std::size_t> perm = batch_rng.permutation(n);
                double d = 0.0;
                for (std::size_t i = 0; i < n; ++i) d += cross(i, perm[i]);
                d /= static_cast<double>(n);
                if (d <= observed) ++m.hits;
                m.sum += d;
                m.sumsq += d * d;
            }
        });

    std::size_t hits = 0;
    double sum = 0.0;
    double sumsq = 0.0;
    for (const BatchMoments& m : batches) {
        hits += m.hits;
        sum += m.sum;
        sumsq += m.sumsq;
    }
    const double dn = static_cast<double>(n_perm);
    result.permuted_mean = sum / dn;
    result.permuted_sd = std::sqrt(std::max(0.0, sumsq / dn - result.permuted_mean * result.permuted_mean));
    result.p = (1.0 + static_cast<double>(hits)) / (dn + 1.0);
    if (result.permuted_sd > 0.0) {
        result.z = (result.permuted_mean - observed) / result.permuted_sd;
    } else {
        result.degenerate_null = true;
    }
    return result;
}

MantelResult mantel(const Mat& da, const Mat& db, std::size_t n_perm, const Rng& rng,
                    bool spearman_ranks) {
    check_distance_matrix(da, "first matrix");
    check_distance_matrix(db, "second matrix");
    if (da.rows() != db.rows()) throw ValidationError("mantel: size mismatch");
    const std::size_t n = da.rows();
    if (n < 3) throw ValidationError("mantel: need at least 3 points");
    if (n_perm == 0) throw ValidationError("mantel: n_perm must be positive");

    const Mat a = spearman_ranks ? rank_transform_distances(da) : da;
    const Mat b = spearman_ranks ? rank_transform_distances(db) : db;
    const std::vector<double> va = upper_triangle(a);
    const std::vector<double> vb = upper_triangle(b);
    const std::size_t m = va.size();

    // Permuting rows/columns only permutes the triangle entries, so the
    // means and deviations of both sides are permutation-invariant and the
    // statistic reduces to a dot product.
    const double mean_a = mean(va);
    const double mean_b = mean(vb);
    const double sd_a = stddev_population(va);
    const double sd_b = stddev_population(vb);
    if (sd_a <= 0.0 || sd_b <= 0.0) throw DegeneracyError("mantel: constant distance matrix");

    auto correlation_of = [&](const std::vector<double>& bv) {
        double dot = 0.0;
        for (std::size_t k = 0; k < m; ++k) dot += va[k] * bv[k];
        return (dot / static_cast<double>(m) - mean_a * mean_b) / (sd_a * sd_b);
    };

    MantelResult result;
    result.r = std::clamp(correlation_of(vb), -1.0, 1.0);

    const auto batches = run_permutation_batches(
        n_perm, rng, "mantel", [&](Rng& batch_rng, std::size_t count, BatchMoments& mom) {
            std::vector<double> permuted(m);
            for (std::size_t it = 0; it < count; ++it) {
                const std::vector<std::size_t> perm = batch_rng.permutation(n);
                std::size_t k = 0;
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = i + 1; j < n; ++j) permuted[k++] = b(perm[i], perm[j]);
                if (correlation_of(permuted) >= result.r) ++mom.hits;
            }
        });

    std::size_t hits = 0;
    for (const BatchMoments& mom : batches) hits += mom.hits;
    result.p = (1.0 + static_cast<double>(hits)) / (static_cast<double>(n_perm) + 1.0);
    return result;
}

ProcrustesResult procrustes(const Mat& x, const Mat& y, std::size_t n_perm, const Rng& rng) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw ValidationError("procrustes: shape mismatch");
    if (x.rows() < 3) throw ValidationError("procrustes: need at least 3 rows");
    if (n_perm == 0) throw ValidationError("procrustes: n_perm must be positive");

    const Eigen::MatrixXd xc = standardize_configuration(x, "first configuration");
    const Eigen::MatrixXd yc = standardize_configuration(y, "second configuration");

    ProcrustesResult result;
    result.m2 = procrustes_m2(xc, yc);

    const std::size_t n = x.rows();
    const auto batches = run_permutation_batches(
        n_perm, rng, "protest", [&](Rng& batch_rng, std::size_t count, BatchMoments& mom) {
            Eigen::MatrixXd permuted(yc.rows(), yc.cols());
            for (std::size_t it = 0; it < count; ++it) {
                const std::vector<std::size_t> perm = batch_rng.permutation(n);
                for (std::size_t i = 0; i < n; ++i)
                    permuted.row(static_cast<Eigen::Index>(i)) =
                        yc.row(static_cast<Eigen::Index>(perm[i]));
                if (procrustes_m2(xc, permuted) <= result.m2) ++mom.hits;
            }
        });

    std::size_t hits = 0;
    for (const BatchMoments& mom : batches) hits += mom.hits;
    result.p = (1.0 + static_cast<double>(hits)) / (static_cast<double>(n_perm) + 1.0);
    return result;
}

Mat distance_matrix(const Mat& percepts, const Mat& targets) {
    if (percepts.cols() != targets.cols()) throw ValidationError("distance_matrix: column mismatch");
    Mat out(percepts.rows(), targets.rows());
    for (std::size_t i = 0; i < percepts.rows(); ++i)
        for (std::size_t j = 0; j < targets.rows(); ++j)
            out(i, j) = row_distance(percepts.row(i), targets.row(j));
    return out;
}

Mat pairwise_distances(const Mat& points) {
    Mat out(points.rows(), points.rows(), 0.0);
    for (std::size_t i = 0; i < points.rows(); ++i)
        for (std::size_t j = i + 1; j < points.rows(); ++j) {
            const double d = row_distance(points.row(i), points.row(j));
            out(i, j) = d;
            out(j, i) = d;
        }
    return out;
}

AlignmentReport run_alignment(const Mat& targets, const Mat& percepts,
                              const std::vector<std::string>& ids, const AlignmentConfig& cfg,
                              const Rng& rng) {
    if (targets.rows() != percepts.rows() || targets.cols() != percepts.cols())
        throw ValidationError("run_alignment: shape mismatch");
    if (ids.size() != targets.rows()) throw ValidationError("run_alignment: id count mismatch");

    AlignmentReport report;
    report.ids = ids;

    ZscoreResult tz = zscore_columns(targets);
    report.targets_constant_column = tz.any_constant();

    report.alignment =
        permutation_alignment(tz.data, percepts, cfg.n_perm_alignment, rng.derive("alignment"));
    report.mantel = mantel(pairwise_distances(tz.data), pairwise_distances(percepts),
                           cfg.n_perm_mantel, rng.derive("mantel"), cfg.mantel_spearman);
    report.procrustes = procrustes(tz.data, percepts, cfg.n_perm_procrustes, rng.derive("protest"));
    report.distances = distance_matrix(percepts, tz.data);
    return report;
}

}  // namespace mfa
