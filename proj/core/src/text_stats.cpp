#include "mfa/text_stats.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "mfa/errors.hpp"
#include "mfa/parallel.hpp"
#include "mfa/stats_util.hpp"

namespace mfa {

namespace {

struct PooledRanks {
    std::vector<double> ranks;          // pooled sample ranks, group order preserved
    std::vector<std::size_t> offsets;   // start of each group in the pooled vector
    std::size_t n = 0;
    double tie_cubes = 0.0;             // sum over tied values of (t^3 - t)
};

PooledRanks pool_and_rank(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2) throw ValidationError("rank test: need at least 2 groups");
    PooledRanks out;
    std::vector<double> pooled;
    for (const auto& g : groups) {
        if (g.empty()) throw ValidationError("rank test: empty group");
        out.offsets.push_back(pooled.size());
        pooled.insert(pooled.end(), g.begin(), g.end());
    }
    out.n = pooled.size();
    out.ranks = average_ranks(pooled);

    std::map<double, std::size_t> tally;
    for (double v : pooled) ++tally[v];
    for (const auto& [value, t] : tally) {
        (void)value;
        if (t > 1) out.tie_cubes += static_cast<double>(t) * t * t - static_cast<double>(t);
    }
    return out;
}

double group_rank_mean(const PooledRanks& pooled, const std::vector<std::vector<double>>& groups,
                       std::size_t g) {
    const std::size_t begin = pooled.offsets[g];
    const std::size_t count = groups[g].size();
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) acc += pooled.ranks[begin + i];
    return acc / static_cast<double>(count);
}

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char raw : text) {
        const auto c = static_cast<unsigned char>(raw);
        if (std::isalnum(c)) {
            cur += static_cast<char>(std::tolower(c));
        } else if (!cur.empty()) {
            tokens.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(cur);
    return tokens;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        acc += d * d;
    }
    return acc;
}

struct LloydRun {
    std::vector<std::size_t> assignments;
    Mat centroids;
    double inertia = std::numeric_limits<double>::infinity();
};

LloydRun lloyd_once(const Mat& points, std::size_t k, Rng rng, std::size_t max_iter, double tol) {
    const std::size_t n = points.rows();
    const std::size_t dims = points.cols();

    // k-means++ seeding.
    Mat centroids(k, dims);
    std::vector<double> d2(n, std::numeric_limits<double>::infinity());
    std::size_t first = static_cast<std::size_t>(rng.next_below(n));
    std::copy_n(points.row(first).data(), dims, centroids.row(0).data());
    for (std::size_t c = 1; c < k; ++c) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], squared_distance(points.row(i), centroids.row(c - 1)));
            total += d2[i];
        }
        std::size_t pick = 0;
        if (total > 0.0) {
            const double r = rng.next_double() * total;
            double acc = 0.0;
            pick = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc > r) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = static_cast<std::size_t>(rng.next_below(n));
        }
        std::copy_n(points.row(pick).data(), dims, centroids.row(c).data());
    }

    LloydRun run;
    run.assignments.assign(n, 0);
    std::vector<double> nearest(n, 0.0);
    double prev_inertia = std::numeric_limits<double>::infinity();

    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        double inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_c = 0;
            for (std::size_t c = 0; c < k; ++c) {
                const double d = squared_distance(points.row(i), centroids.row(c));
                if (d < best) {
                    best = d;
                    best_c = c;
                }
            }
            run.assignments[i] = best_c;
            nearest[i] = best;
            inertia += best;
        }
        run.inertia = inertia;
        if (std::isfinite(prev_inertia) && prev_inertia - inertia <= tol * prev_inertia) break;
        prev_inertia = inertia;

        std::vector<std::size_t> counts(k, 0);
        Mat next(k, dims, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t c = run.assignments[i];
            ++counts[c];
            for (std::size_t d = 0; d < dims; ++d) next(c, d) += points(i, d);
        }
        std::vector<std::size_t> taken;  // points relocated into empty clusters
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] > 0) {
                for (std::size_t d = 0; d < dims; ++d) next(c, d) /= static_cast<double>(counts[c]);
                continue;
            }
            // Empty cluster: reseed on the point farthest from its centroid.
            std::size_t far = 0;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (std::find(taken.begin(), taken.end(), i) != taken.end()) continue;
                if (nearest[i] > far_d) {
                    far_d = nearest[i];
                    far = i;
                }
            }
            taken.push_back(far);
            std::copy_n(points.row(far).data(), dims, next.row(c).data());
        }
        centroids = std::move(next);
    }
    run.centroids = std::move(centroids);
    return run;
}

}  // namespace

KwResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
    const PooledRanks pooled = pool_and_rank(groups);
    const double n = static_cast<double>(pooled.n);
    if (pooled.n <= groups.size())
        throw ValidationError("kruskal_wallis: need more observations than groups");

    double h = 0.0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const double rbar = group_rank_mean(pooled, groups, g);
        h += static_cast<double>(groups[g].size()) * rbar * rbar;
    }
    h = 12.0 / (n * (n + 1.0)) * h - 3.0 * (n + 1.0);

    const double correction = 1.0 - pooled.tie_cubes / (n * n * n - n);
    if (correction <= 0.0) return {0.0, 1.0};  // every observation tied
    h = std::max(0.0, h / correction);
    return {h, chi_squared_sf(h, static_cast<double>(groups.size() - 1))};
}

std::vector<DunnResult> dunn_posthoc(const std::vector<std::vector<double>>& groups, double alpha) {
    const PooledRanks pooled = pool_and_rank(groups);
    const double n = static_cast<double>(pooled.n);
    const std::size_t k = groups.size();
    const double tie_term = pooled.tie_cubes / (12.0 * (n - 1.0));
    const double base_var = n * (n + 1.0) / 12.0 - tie_term;
    const double m = static_cast<double>(k * (k - 1) / 2);

    std::vector<double> rank_means(k);
    for (std::size_t g = 0; g < k; ++g) rank_means[g] = group_rank_mean(pooled, groups, g);

    std::vector<DunnResult> out;
    out.reserve(static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            DunnResult r;
            r.i = i;
            r.j = j;
            const double var = base_var * (1.0 / static_cast<double>(groups[i].size()) +
                                           1.0 / static_cast<double>(groups[j].size()));
            r.z = var > 0.0 ? (rank_means[i] - rank_means[j]) / std::sqrt(var) : 0.0;
            const double p = 2.0 * normal_sf(std::abs(r.z));
            r.p_adj = std::min(1.0, p * m);
            r.significant = r.p_adj < alpha;
            out.push_back(r);
        }
    }
    return out;
}

double cohens_d(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() < 2 || b.size() < 2) throw ValidationError("cohens_d: need at least 2 per group");
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double pooled_var =
        ((na - 1.0) * variance_sample(a) + (nb - 1.0) * variance_sample(b)) / (na + nb - 2.0);
    if (pooled_var <= 0.0) return 0.0;
    return (mean(a) - mean(b)) / std::sqrt(pooled_var);
}

Mat TfidfMatrix::dense() const {
    Mat out(rows.size(), vocabulary.size(), 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [term, weight] : rows[i]) out(i, term) = weight;
    return out;
}

TfidfMatrix tfidf(const std::vector<std::string>& documents, std::size_t min_df) {
    const std::size_t n = documents.size();
    std::vector<std::map<std::string, std::size_t>> counts(n);
    std::map<std::string, std::size_t> df;
    for (std::size_t i = 0; i < n; ++i) {
        for (const std::string& token : tokenize(documents[i])) ++counts[i][token];
        for (const auto& [term, c] : counts[i]) {
            (void)c;
            ++df[term];
        }
    }

    TfidfMatrix out;
    std::map<std::string, std::size_t> index;
    std::vector<double> idf;
    for (const auto& [term, freq] : df) {
        if (freq < min_df) continue;
        index.emplace(term, out.vocabulary.size());
        out.vocabulary.push_back(term);
        idf.push_back(std::log((1.0 + static_cast<double>(n)) / (1.0 + static_cast<double>(freq))) +
                      1.0);
    }

    out.rows.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double norm = 0.0;
        for (const auto& [term, c] : counts[i]) {
            const auto it = index.find(term);
            if (it == index.end()) continue;
            const double w = static_cast<double>(c) * idf[it->second];
            out.rows[i].emplace_back(it->second, w);
            norm += w * w;
        }
        std::sort(out.rows[i].begin(), out.rows[i].end());
        if (norm > 0.0) {
            const double scale = 1.0 / std::sqrt(norm);
            for (auto& [term, w] : out.rows[i]) w *= scale;
        }
    }
    return out;
}

KmeansResult kmeans(const Mat& points, std::size_t k, const Rng& rng, std::size_t n_init,
                    std::size_t max_iter, double tol) {
    if (k == 0 || k > points.rows()) throw ValidationError("kmeans: k out of range");
    if (points.cols() == 0) throw ValidationError("kmeans: no dimensions");
    if (n_init == 0) throw ValidationError("kmeans: n_init must be positive");

    std::vector<LloydRun> runs(n_init);
    parallel_for(n_init, [&](std::size_t i) {
        runs[i] = lloyd_once(points, k, rng.derive("init", i), max_iter, tol);
    });

    std::size_t best = 0;
    for (std::size_t i = 1; i < n_init; ++i)
        if (runs[i].inertia < runs[best].inertia) best = i;

    KmeansResult result;
    result.assignments = std::move(runs[best].assignments);
    result.centroids = std::move(runs[best].centroids);
    result.inertia = runs[best].inertia;
    return result;
}

double silhouette(const Mat& points, const std::vector<std::size_t>& assignments) {
    const std::size_t n = points.rows();
    if (assignments.size() != n) throw ValidationError("silhouette: assignment length mismatch");
    if (n == 0) throw ValidationError("silhouette: no points");

    const std::size_t k = *std::max_element(assignments.begin(), assignments.end()) + 1;
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t c : assignments) ++sizes[c];
    if (std::count_if(sizes.begin(), sizes.end(), [](std::size_t s) { return s > 0; }) < 2)
        throw ValidationError("silhouette: need at least 2 populated clusters");

    std::vector<double> scores(n, 0.0);
    parallel_for(n, [&](std::size_t i) {
        if (sizes[assignments[i]] <= 1) return;  // singleton contributes 0
        std::vector<double> sum(k, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            sum[assignments[j]] += std::sqrt(squared_distance(points.row(i), points.row(j)));
        }
        const std::size_t own = assignments[i];
        const double a = sum[own] / static_cast<double>(sizes[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
            if (c == own || sizes[c] == 0) continue;
            b = std::min(b, sum[c] / static_cast<double>(sizes[c]));
        }
        const double denom = std::max(a, b);
        scores[i] = denom > 0.0 ? (b - a) / denom : 0.0;
    });
    return mean(scores);
}

GenreFlavorTable genre_flavor_means(const CorpusTable& corpus) {
    std::map<std::string, std::vector<std::size_t>> by_genre;
    for (std::size_t i = 0; i < corpus.size(); ++i)
        if (!corpus.meta[i].genre.empty()) by_genre[corpus.meta[i].genre].push_back(i);
    if (by_genre.empty()) throw ValidationError("genre_flavor_means: no genre labels");

    GenreFlavorTable out;
    out.means = Mat(by_genre.size(), 5, 0.0);
    std::size_t row = 0;
    for (const auto& [genre, rows] : by_genre) {
        out.genres.push_back(genre);
        out.counts.push_back(rows.size());
        for (std::size_t t = 0; t < 5; ++t) {
            double acc = 0.0;
            for (std::size_t i : rows) acc += corpus.flavors(i, t);
            out.means(row, t) = acc / static_cast<double>(rows.size());
        }
        ++row;
    }
    return out;
}

GenreTestReport genre_tests(const CorpusTable& corpus, double alpha) {
    std::map<std::string, std::vector<std::size_t>> by_genre;
    for (std::size_t i = 0; i < corpus.size(); ++i)
        if (!corpus.meta[i].genre.empty()) by_genre[corpus.meta[i].genre].push_back(i);
    if (by_genre.size() < 2) throw ValidationError("genre_tests: need at least 2 genres");

    GenreTestReport report;
    for (const auto& [genre, rows] : by_genre) {
        (void)rows;
        report.genres.push_back(genre);
    }

    report.per_flavor.resize(5);
    report.dunn.resize(5);
    for (std::size_t t = 0; t < 5; ++t) {
        std::vector<std::vector<double>> groups;
        groups.reserve(by_genre.size());
        for (const auto& [genre, rows] : by_genre) {
            (void)genre;
            std::vector<double> values;
            values.reserve(rows.size());
            for (std::size_t i : rows) values.push_back(corpus.flavors(i, t));
            groups.push_back(std::move(values));
        }
        report.per_flavor[t] = kruskal_wallis(groups);
        report.dunn[t] = dunn_posthoc(groups, alpha);
    }
    return report;
}

std::vector<MoodEffect> mood_effects(const CorpusTable& corpus, std::size_t min_occurrences) {
    std::map<std::string, std::set<std::size_t>> tagged;
    for (std::size_t i = 0; i < corpus.size(); ++i)
        for (const std::string& mood : corpus.meta[i].moods) tagged[mood].insert(i);

    std::vector<MoodEffect> out;
    for (const auto& [mood, rows] : tagged) {
        if (rows.size() < min_occurrences) continue;
        if (corpus.size() - rows.size() < 2 || rows.size() < 2) continue;
        for (std::size_t t = 0; t < 5; ++t) {
            std::vector<double> with_tag;
            std::vector<double> without;
            with_tag.reserve(rows.size());
            without.reserve(corpus.size() - rows.size());
            for (std::size_t i = 0; i < corpus.size(); ++i)
                (rows.count(i) ? with_tag : without).push_back(corpus.flavors(i, t));
            MoodEffect effect;
            effect.mood = mood;
            effect.flavor = t;
            effect.d = cohens_d(with_tag, without);
            effect.n_tagged = with_tag.size();
            effect.n_untagged = without.size();
            out.push_back(std::move(effect));
        }
    }
    return out;
}

Dendrogram average_linkage(const Mat& points) {
    const std::size_t n = points.rows();
    if (n < 2) throw ValidationError("average_linkage: need at least 2 points");

    const std::size_t total = 2 * n - 1;
    Mat dist(total, total, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = std::sqrt(squared_distance(points.row(i), points.row(j)));
            dist(i, j) = d;
            dist(j, i) = d;
        }

    std::vector<std::size_t> active;
    std::vector<std::size_t> sizes(total, 0);
    std::vector<std::pair<std::size_t, std::size_t>> children(total, {0, 0});
    for (std::size_t i = 0; i < n; ++i) {
        active.push_back(i);
        sizes[i] = 1;
    }

    Dendrogram out;
    for (std::size_t step = 0; step < n - 1; ++step) {
        std::size_t best_a = 0;
        std::size_t best_b = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t x = 0; x < active.size(); ++x)
            for (std::size_t y = x + 1; y < active.size(); ++y) {
                const double d = dist(active[x], active[y]);
                if (d < best_d) {
                    best_d = d;
                    best_a = active[x];
                    best_b = active[y];
                }
            }

        const std::size_t merged = n + step;
        sizes[merged] = sizes[best_a] + sizes[best_b];
        children[merged] = {best_a, best_b};
        out.merges.push_back({best_a, best_b, best_d, sizes[merged]});

        // Lance-Williams update for average linkage.
        for (std::size_t id : active) {
            if (id == best_a || id == best_b) continue;
            const double d = (static_cast<double>(sizes[best_a]) * dist(best_a, id) +
                              static_cast<double>(sizes[best_b]) * dist(best_b, id)) /
                             static_cast<double>(sizes[merged]);
            dist(merged, id) = d;
            dist(id, merged) = d;
        }
        std::erase(active, best_a);
        std::erase(active, best_b);
        active.push_back(merged);
    }

    // Left-to-right leaf traversal from the final cluster.
    std::vector<std::size_t> stack{total - 1};
    while (!stack.empty()) {
        const std::size_t id = stack.back();
        stack.pop_back();
        if (id < n) {
            out.leaf_order.push_back(id);
        } else {
            stack.push_back(children[id].second);
            stack.push_back(children[id].first);
        }
    }
    return out;
}

TextClusterReport cluster_texts(const CorpusTable& corpus, std::size_t k, const Rng& rng,
                                std::size_t min_df, std::size_t top_terms, std::size_t n_init) {
    TextClusterReport report;
    report.k = k;
    std::vector<std::string> documents;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (corpus.meta[i].text.empty()) continue;
        report.document_rows.push_back(i);
        documents.push_back(corpus.meta[i].text);
    }
    if (documents.size() < k) throw ValidationError("cluster_texts: fewer documents than clusters");

    const TfidfMatrix matrix = tfidf(documents, min_df);
    if (matrix.vocabulary.empty())
        throw ValidationError("cluster_texts: vocabulary is empty after the min_df filter");
    const Mat dense = matrix.dense();

    const KmeansResult clusters = kmeans(dense, k, rng.derive("kmeans"), n_init);
    report.assignments = clusters.assignments;
    report.silhouette = k >= 2 ? silhouette(dense, clusters.assignments) : 0.0;

    report.top_terms.resize(k);
    for (std::size_t c = 0; c < k; ++c) {
        std::vector<double> weight(matrix.vocabulary.size(), 0.0);
        for (std::size_t i = 0; i < documents.size(); ++i) {
            if (clusters.assignments[i] != c) continue;
            for (const auto& [term, w] : matrix.rows[i]) weight[term] += w;
        }
        std::vector<std::size_t> order(weight.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return weight[a] > weight[b]; });
        for (std::size_t r = 0; r < std::min(top_terms, order.size()); ++r) {
            if (weight[order[r]] <= 0.0) break;
            report.top_terms[c].push_back(matrix.vocabulary[order[r]]);
        }
    }
    return report;
}

}  // namespace mfa
