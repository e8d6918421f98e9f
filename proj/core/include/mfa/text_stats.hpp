#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mfa/corpus.hpp"
#include "mfa/mat.hpp"
#include "mfa/rng.hpp"

namespace mfa {

struct KwResult {
    double h = 0.0;
    double p = 1.0;
};

// Rank-based H with tie correction; p from chi-squared with k - 1 df.
// A fully tied pooled sample yields H = 0, p = 1.
KwResult kruskal_wallis(const std::vector<std::vector<double>>& groups);

struct DunnResult {
    std::size_t i = 0;  // group indices, i < j
    std::size_t j = 0;
    double z = 0.0;
    double p_adj = 1.0;  // Bonferroni over all k(k-1)/2 pairs
    bool significant = false;
};

std::vector<DunnResult> dunn_posthoc(const std::vector<std::vector<double>>& groups,
                                     double alpha = 0.05);

// (mean_a - mean_b) / Bessel-pooled sd; 0 when both samples are constant.
double cohens_d(const std::vector<double>& a, const std::vector<double>& b);

struct TfidfMatrix {
    std::vector<std::string> vocabulary;  // sorted; terms with df >= min_df
    // Per document: (term index, weight), L2-normalized, ascending index.
    std::vector<std::vector<std::pair<std::size_t, double>>> rows;

    Mat dense() const;
};

// Lowercase alphanumeric word tokens; tf * (ln((1+N)/(1+df)) + 1).
TfidfMatrix tfidf(const std::vector<std::string>& documents, std::size_t min_df = 2);

struct KmeansResult {
    std::vector<std::size_t> assignments;
    Mat centroids;  // k x dims
    double inertia = 0.0;
};

// k-means++ seeding, Lloyd iterations to a relative inertia tolerance,
// best of n_init seeded restarts.
KmeansResult kmeans(const Mat& points, std::size_t k, const Rng& rng, std::size_t n_init = 10,
                    std::size_t max_iter = 300, double tol = 1e-4);

// Mean over points of (b - a) / max(a, b); points in singleton clusters and
// zero-distance cases contribute 0.
double silhouette(const Mat& points, const std::vector<std::size_t>& assignments);

struct GenreFlavorTable {
    std::vector<std::string> genres;  // ascending
    Mat means;                        // genre x 5 flavor means
    std::vector<std::size_t> counts;
};

GenreFlavorTable genre_flavor_means(const CorpusTable& corpus);

struct GenreTestReport {
    std::vector<std::string> genres;
    std::vector<KwResult> per_flavor;             // canonical taste order
    std::vector<std::vector<DunnResult>> dunn;    // per flavor, pair indices into genres
};

GenreTestReport genre_tests(const CorpusTable& corpus, double alpha = 0.05);

struct MoodEffect {
    std::string mood;
    std::size_t flavor = 0;
    double d = 0.0;
    std::size_t n_tagged = 0;
    std::size_t n_untagged = 0;
};

// Cohen's d of tagged tracks against all untagged tracks, per flavor, for
// every mood with at least min_occurrences tracks.
std::vector<MoodEffect> mood_effects(const CorpusTable& corpus, std::size_t min_occurrences = 100);

struct Dendrogram {
    struct Merge {
        std::size_t a = 0;  // cluster ids; leaves are 0..n-1, merge r creates n+r
        std::size_t b = 0;
        double height = 0.0;
        std::size_t size = 0;
    };
    std::vector<Merge> merges;
    std::vector<std::size_t> leaf_order;  // left-to-right traversal of the tree
};

// Average-linkage agglomeration of the rows under Euclidean distance.
Dendrogram average_linkage(const Mat& points);

struct TextClusterReport {
    std::size_t k = 0;
    std::vector<std::size_t> assignments;    // aligned with document_rows
    std::vector<std::size_t> document_rows;  // corpus rows with non-empty text
    std::vector<std::vector<std::string>> top_terms;  // per cluster
    double silhouette = 0.0;
};

TextClusterReport cluster_texts(const CorpusTable& corpus, std::size_t k, const Rng& rng,
                                std::size_t min_df = 2, std::size_t top_terms = 10,
                                std::size_t n_init = 10);

}  // namespace mfa
