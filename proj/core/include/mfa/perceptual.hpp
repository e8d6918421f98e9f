#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "mfa/mat.hpp"
#include "mfa/rng.hpp"
#include "mfa/taste.hpp"

namespace mfa {

struct RatingRecord {
    std::string subject_id;
    std::string track_id;
    std::array<double, 5> ratings;  // 7-point Likert responses, canonical taste order
    std::string device;
    bool hearing_impaired = false;
    bool taste_impaired = false;
};

// subject_id, track_id and the five taste columns are required; device and
// the impairment flags are optional. Ratings must be integers in [1, 7].
std::vector<RatingRecord> read_ratings(const std::filesystem::path& path);

struct TargetRecord {
    std::string target_id;
    std::string track_id;  // stimulus the target was rendered with
    TasteVector taste;
};

std::vector<TargetRecord> read_targets(const std::filesystem::path& path);

struct ZscoreResult {
    Mat data;
    std::vector<std::uint8_t> constant_columns;  // zeroed instead of divided by sd 0

    bool any_constant() const;
};

// Column-wise (x - mean) / population sd.
ZscoreResult zscore_columns(const Mat& m);

struct PerceptMatrix {
    std::vector<std::string> track_ids;  // ascending
    Mat percepts;                        // m x 5 means of z-scored ratings
    std::vector<std::size_t> counts;     // ratings per track
    std::vector<std::uint8_t> constant_rating_columns;
};

// Ratings are z-scored per dimension over all retained records, then
// averaged per track. include_impaired=false drops flagged participants.
PerceptMatrix mean_percepts(const std::vector<RatingRecord>& ratings, bool include_impaired = true);

struct PermutationAlignment {
    double d = 0.0;
    double permuted_mean = 0.0;
    double permuted_sd = 0.0;
    double z = 0.0;
    double p = 1.0;
    bool low_n_perm = false;     // fewer than 100 permutations requested
    bool degenerate_null = false;  // permuted sd was 0; z forced to 0
};

// Mean row-wise distance between aligned matrices against the null of
// shuffled row assignment. p = (1 + #{permuted <= observed}) / (n_perm + 1).
PermutationAlignment permutation_alignment(const Mat& targets, const Mat& percepts,
                                           std::size_t n_perm, const Rng& rng);

struct MantelResult {
    double r = 0.0;
    double p = 1.0;
};

// Pearson correlation of strict upper triangles with significance from
// simultaneous row/column permutation of db, one-sided greater.
// spearman_ranks=true rank-transforms both triangles first.
MantelResult mantel(const Mat& da, const Mat& db, std::size_t n_perm, const Rng& rng,
                    bool spearman_ranks = false);

struct ProcrustesResult {
    double m2 = 0.0;
    double p = 1.0;
};

// Both configurations are centered and scaled to unit Frobenius norm;
// m^2 = 1 - (sum of singular values of X'Y)^2. Significance by row
// permutation of y, one-sided on 1 - m^2.
ProcrustesResult procrustes(const Mat& x, const Mat& y, std::size_t n_perm, const Rng& rng);

// Entry (i, j) = Euclidean distance between percept row i and target row j.
Mat distance_matrix(const Mat& percepts, const Mat& targets);

// Symmetric zero-diagonal Euclidean distances between rows.
Mat pairwise_distances(const Mat& points);

struct AlignmentConfig {
    std::size_t n_perm_alignment = 10000;
    std::size_t n_perm_mantel = 9999;
    std::size_t n_perm_procrustes = 9999;
    bool mantel_spearman = false;
};

struct AlignmentReport {
    std::vector<std::string> ids;  // row labels shared by targets and percepts
    PermutationAlignment alignment;
    MantelResult mantel;
    ProcrustesResult procrustes;
    Mat distances;  // percept rows x target columns
    bool targets_constant_column = false;
};

// Full alignment battery on row-aligned (target, percept) matrices. The
// target side is column-standardized here so both spaces are compared on
// the z-scale the percepts already live on.
AlignmentReport run_alignment(const Mat& targets, const Mat& percepts,
                              const std::vector<std::string>& ids, const AlignmentConfig& cfg,
                              const Rng& rng);

}  // namespace mfa
