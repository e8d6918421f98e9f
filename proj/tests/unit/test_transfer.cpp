#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mfa/corpus.hpp"
#include "mfa/errors.hpp"
#include "mfa/rng.hpp"
#include "mfa/stats_util.hpp"
#include "mfa/transfer.hpp"

using namespace mfa;

namespace {

// Independent rank computation: sort indices, assign average positions to
// equal runs, one-based.
std::vector<double> reference_ranks(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

double reference_pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

double reference_spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
    return reference_pearson(reference_ranks(x), reference_ranks(y));
}

CorpusTable tiny_corpus(Rng& rng, std::size_t n, std::size_t p) {
    CorpusTable corpus;
    corpus.features = Mat(n, p);
    corpus.flavors = Mat(n, 5);
    corpus.meta.resize(n);
    for (std::size_t j = 0; j < p; ++j) corpus.feature_names.push_back("f" + std::to_string(j));
    for (std::size_t i = 0; i < n; ++i) {
        corpus.meta[i].id = "t" + std::to_string(i);
        for (std::size_t j = 0; j < p; ++j) corpus.features(i, j) = rng.next_double();
        double total = 0.0;
        for (std::size_t t = 0; t < 5; ++t) total += (corpus.flavors(i, t) = rng.next_double() + 1e-9);
        for (std::size_t t = 0; t < 5; ++t) corpus.flavors(i, t) /= total;
    }
    return corpus;
}

}  // namespace

TEST_CASE("spearman rho matches the rank-then-pearson oracle, ties included") {
    Rng rng(314);
    for (int trial = 0; trial < 60; ++trial) {
        auto trial_rng = rng.derive("sp", static_cast<std::uint64_t>(trial));
        const std::size_t n = 3 + trial_rng.next_below(10);  // up to 12
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            // coarse grid forces ties in roughly half the trials
            x[i] = (trial % 2 == 0) ? static_cast<double>(trial_rng.next_below(4))
                                    : trial_rng.next_double();
            y[i] = (trial % 3 == 0) ? static_cast<double>(trial_rng.next_below(3))
                                    : trial_rng.next_double();
        }
        const SpearmanResult got = spearman(x, y);
        const double want = reference_spearman_rho(x, y);
        CHECK(got.rho == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("spearman is invariant under strictly monotone transforms") {
    Rng rng(99);
    std::vector<double> x(20), y(20);
    for (std::size_t i = 0; i < 20; ++i) {
        x[i] = rng.next_double();
        y[i] = rng.next_double();
    }
    const double base = spearman(x, y).rho;

    std::vector<double> ex(20), cy(20);
    for (std::size_t i = 0; i < 20; ++i) {
        ex[i] = std::exp(3.0 * x[i]);           // strictly increasing
        cy[i] = y[i] * y[i] * y[i] + 2.0 * y[i];  // strictly increasing
    }
    CHECK(spearman(ex, cy).rho == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("perfect monotone association gives rho one and tiny exact p") {
    std::vector<double> x = {1, 2, 3, 4, 5, 6, 7};
    std::vector<double> y = {2, 4, 8, 16, 32, 64, 128};
    const SpearmanResult r = spearman(x, y, true);
    CHECK(r.rho == doctest::Approx(1.0).epsilon(1e-12));
    // only the two perfectly monotone orderings of 7! = 5040 reach |rho| = 1
    CHECK(r.p == doctest::Approx(2.0 / 5040.0).epsilon(1e-9));
}

TEST_CASE("exact permutation p agrees with full enumeration on a small case") {
    const std::vector<double> x = {0.2, 1.4, 0.9, 2.2, 1.7};
    const std::vector<double> y = {3.0, 1.0, 2.5, 0.5, 2.0};
    const SpearmanResult got = spearman(x, y, true);

    // oracle: enumerate every assignment of y-ranks against fixed x-ranks
    const std::vector<double> rx = reference_ranks(x);
    std::vector<double> ry = reference_ranks(y);
    std::sort(ry.begin(), ry.end());
    const double observed = std::abs(reference_pearson(rx, reference_ranks(y)));
    std::size_t hits = 0, total = 0;
    do {
        ++total;
        if (std::abs(reference_pearson(rx, ry)) >= observed - 1e-12) ++hits;
    } while (std::next_permutation(ry.begin(), ry.end()));
    CHECK(total == 120);
    CHECK(got.p == doctest::Approx(static_cast<double>(hits) / 120.0).epsilon(1e-12));
}

TEST_CASE("correlation profile holds the per-feature per-flavor rank correlations") {
    Rng rng(41);
    CorpusTable corpus = tiny_corpus(rng, 18, 3);
    // plant feature 0 as a strictly increasing image of flavor 2
    for (std::size_t i = 0; i < corpus.size(); ++i)
        corpus.features(i, 0) = std::exp(corpus.flavors(i, 2));

    const Mat profile = correlation_profile(corpus);
    REQUIRE(profile.rows() == 3);
    REQUIRE(profile.cols() == 5);
    CHECK(profile(0, 2) == doctest::Approx(1.0).epsilon(1e-12));

    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t t = 0; t < 5; ++t) {
            std::vector<double> feat(corpus.size()), fl(corpus.size());
            for (std::size_t i = 0; i < corpus.size(); ++i) {
                feat[i] = corpus.features(i, j);
                fl[i] = corpus.flavors(i, t);
            }
            CHECK(profile(j, t) ==
                  doctest::Approx(reference_spearman_rho(feat, fl)).epsilon(1e-9));
        }
}

TEST_CASE("correlation transfer of a corpus against itself is exactly one") {
    Rng rng(77);
    const CorpusTable corpus = tiny_corpus(rng, 25, 6);
    const Mat profile = correlation_profile(corpus);
    const auto transfer = correlation_transfer(profile, profile);
    for (const SpearmanResult& r : transfer) CHECK(r.rho == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sign agreement counts kept signs among the anchor corpus top features") {
    // profile_a column 0: |rho| ranking picks rows 4, 0, 3 (top 3)
    Mat a(5, 5), b(5, 5);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t t = 0; t < 5; ++t) {
            a(i, t) = 0.0;
            b(i, t) = 0.0;
        }
    a(4, 0) = 0.9;
    a(0, 0) = -0.8;
    a(3, 0) = 0.5;
    a(1, 0) = 0.1;
    b(4, 0) = 0.2;   // keeps sign
    b(0, 0) = 0.3;   // flips
    b(3, 0) = -0.4;  // flips
    const SignAgreement s = sign_agreement(a, b, 3);
    CHECK(s.total == 15);  // 3 per flavor, 5 flavors
    // columns 1..4 are all zero on both sides: sign(0) == sign(0) counts as kept
    CHECK(s.agree == 1 + 12);
}

TEST_CASE("rf importance finds a planted signal and sums to one") {
    Rng data_rng(8);
    const std::size_t n = 300, p = 6;
    Mat x(n, p);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) x(i, j) = data_rng.next_double();
        y[i] = 3.0 * x(i, 2) + 0.05 * data_rng.next_normal();  // feature 2 carries the target
    }

    BootImportanceConfig cfg;
    cfg.n_boot = 10;
    cfg.forest.n_trees = 15;
    const Rng rng(123);
    const std::vector<double> imp = rf_importance(x, y, cfg, rng);
    REQUIRE(imp.size() == p);

    double total = 0.0;
    for (double v : imp) {
        CHECK(v >= 0.0);
        total += v;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));

    double best_other = 0.0;
    for (std::size_t j = 0; j < p; ++j)
        if (j != 2) best_other = std::max(best_other, imp[j]);
    CHECK(imp[2] >= 5.0 * best_other);

    // bit-for-bit reproducible from an equal seed
    const std::vector<double> again = rf_importance(x, y, cfg, Rng(123));
    CHECK(imp == again);
}

TEST_CASE("rf importance rejects a constant target") {
    Rng rng(9);
    Mat x(40, 3);
    for (std::size_t i = 0; i < 40; ++i)
        for (std::size_t j = 0; j < 3; ++j) x(i, j) = rng.next_double();
    const std::vector<double> y(40, 2.5);
    CHECK_THROWS_AS(rf_importance(x, y, BootImportanceConfig{}, Rng(1)), ValidationError);
}

TEST_CASE("parallel analysis retains planted factors and ignores white noise") {
    Rng rng(2718);
    const std::size_t n = 200, p = 8;

    Mat noise(n, p);
    {
        Rng g = rng.derive("noise");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < p; ++j) noise(i, j) = g.next_normal();
    }
    const std::size_t k_noise = parallel_analysis(noise, 300, 95.0, Rng(31));
    CHECK(k_noise <= 1);

    // two strong independent latent factors, each loading on four columns
    Mat planted(n, p);
    {
        Rng g = rng.derive("planted");
        for (std::size_t i = 0; i < n; ++i) {
            const double f1 = g.next_normal();
            const double f2 = g.next_normal();
            for (std::size_t j = 0; j < p; ++j) {
                const double latent = (j < 4) ? f1 : f2;
                planted(i, j) = 2.0 * latent + 0.3 * g.next_normal();
            }
        }
    }
    const std::size_t k_planted = parallel_analysis(planted, 300, 95.0, Rng(32));
    CHECK(k_planted == 2);
}

TEST_CASE("first canonical correlation is one for exact linear maps") {
    Rng rng(512);
    const std::size_t n = 120, p = 4, q = 3;
    Mat x(n, p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) x(i, j) = rng.next_normal();
    // y = x * A with a full-rank A
    const double a[4][3] = {{1.0, 0.2, -0.5}, {0.3, -1.1, 0.7}, {-0.6, 0.4, 1.2}, {0.8, 0.1, 0.3}};
    Mat y(n, q);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < q; ++j) {
            double acc = 0.0;
            for (std::size_t l = 0; l < p; ++l) acc += x(i, l) * a[l][j];
            y(i, j) = acc;
        }
    const CcaResult r = cca_first(x, y);
    CHECK(r.first_corr == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.first_corr <= 1.0);
}

TEST_CASE("first canonical correlation is affine-invariant") {
    Rng rng(513);
    const std::size_t n = 150;
    Mat x(n, 3), y(n, 3);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            x(i, j) = rng.next_normal();
            y(i, j) = 0.5 * x(i, j) + rng.next_normal();
        }
    const double base = cca_first(x, y).first_corr;

    Mat xs(n, 3), ys(n, 3);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            xs(i, j) = 40.0 * x(i, j) - 7.0;  // per-column affine change
            ys(i, j) = -2.5 * y(i, j) + 100.0;
        }
    CHECK(cca_first(xs, ys).first_corr == doctest::Approx(base).epsilon(1e-6));
}

TEST_CASE("independent blocks give a small first canonical correlation") {
    Rng rng(2001);
    const std::size_t n = 2000, p = 5;
    Mat x(n, p), y(n, p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            x(i, j) = rng.next_normal();
            y(i, j) = rng.next_normal();
        }
    const CcaResult r = cca_first(x, y);
    CHECK(r.first_corr < 0.15);
    CHECK(r.first_corr >= 0.0);
}

TEST_CASE("cca rejects degenerate shapes") {
    Mat x(3, 5), y(3, 4);  // n <= max(p, q)
    CHECK_THROWS_AS(cca_first(x, y), ValidationError);
}

TEST_CASE("full transfer battery runs and keeps its invariants on toy corpora") {
    Rng rng(606);
    CorpusTable a = tiny_corpus(rng, 40, 4);
    CorpusTable b = tiny_corpus(rng, 35, 4);

    TransferConfig cfg;
    cfg.importance.n_boot = 4;
    cfg.importance.forest.n_trees = 8;
    cfg.pa_reps = 50;

    const TransferReport report = run_transfer(a, b, cfg, Rng(99).derive("transfer"));
    CHECK(report.feature_names == a.feature_names);
    CHECK(report.profile_a.rows() == 4);
    CHECK(report.sign_agreement.total == 4 * 5);  // top_k capped at p

    for (std::size_t t = 0; t < 5; ++t) {
        double sum_a = 0.0, sum_b = 0.0;
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(report.importance_a(j, t) >= 0.0);
            sum_a += report.importance_a(j, t);
            sum_b += report.importance_b(j, t);
        }
        CHECK(sum_a == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(sum_b == doctest::Approx(1.0).epsilon(1e-9));
    }

    // identical run, identical numbers
    const TransferReport again = run_transfer(a, b, cfg, Rng(99).derive("transfer"));
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t t = 0; t < 5; ++t) {
            CHECK(report.profile_a(j, t) == again.profile_a(j, t));
            CHECK(report.importance_a(j, t) == again.importance_a(j, t));
        }
    CHECK(report.cca_a.first_corr == again.cca_a.first_corr);

    // mismatched manifests are refused
    CorpusTable c = tiny_corpus(rng, 20, 3);
    CHECK_THROWS_AS(run_transfer(a, c, cfg, Rng(1)), ValidationError);
}
