#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mfa/corpus.hpp"
#include "mfa/errors.hpp"
#include "mfa/matching.hpp"
#include "mfa/rng.hpp"

using namespace mfa;

namespace {

TasteVector random_simplex(Rng& rng) {
    TasteVector v;
    double total = 0.0;
    for (int i = 0; i < 5; ++i) total += (v[static_cast<std::size_t>(i)] = rng.next_double() + 1e-9);
    for (int i = 0; i < 5; ++i) v[static_cast<std::size_t>(i)] /= total;
    return v;
}

CorpusTable random_corpus(Rng& rng, std::size_t n) {
    CorpusTable corpus;
    corpus.feature_names = {"f0"};
    corpus.features = Mat(n, 1);
    corpus.flavors = Mat(n, 5);
    corpus.meta.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        char id[16];
        std::snprintf(id, sizeof id, "tr%04zu", i);
        corpus.meta[i].id = id;
        const TasteVector f = random_simplex(rng);
        for (std::size_t t = 0; t < 5; ++t) corpus.flavors(i, t) = f[t];
        corpus.features(i, 0) = rng.next_double();
    }
    return corpus;
}

}  // namespace

TEST_CASE("euclidean distance is the plain five-dimensional norm") {
    TasteVector a, b;
    a.v = {1.0, 0.0, 0.0, 0.0, 0.0};
    b.v = {0.0, 1.0, 0.0, 0.0, 0.0};
    CHECK(euclidean_distance(a, b) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(euclidean_distance(a, a) == 0.0);
}

TEST_CASE("compatibility maps the distance range onto [0, 100] exactly") {
    const double d_max = std::sqrt(5.0);
    CHECK(compatibility(0.0, d_max) == 100.0);
    CHECK(compatibility(d_max, d_max) == 0.0);
    CHECK(compatibility(0.5 * d_max, d_max) == doctest::Approx(50.0).epsilon(1e-12));
    CHECK_THROWS_AS(compatibility(0.1, 0.0), ValidationError);
    CHECK_THROWS_AS(compatibility(-0.1, d_max), ValidationError);
    CHECK_THROWS_AS(compatibility(2.0 * d_max, d_max), ValidationError);
}

TEST_CASE("match results agree with an exhaustive scan on random instances") {
    Rng rng(2026);
    for (int trial = 0; trial < 100; ++trial) {
        auto trial_rng = rng.derive("match", static_cast<std::uint64_t>(trial));
        const std::size_t n = 2 + trial_rng.next_below(40);
        const CorpusTable corpus = random_corpus(trial_rng, n);
        const TasteVector target = random_simplex(trial_rng);
        const std::size_t k = 1 + trial_rng.next_below(3);

        MatchOptions opts;
        opts.k = k;
        const auto got = match_target(target, "t", corpus, opts);

        // oracle: full scored list, sorted by (distance, id)
        std::vector<std::pair<double, std::string>> all;
        for (std::size_t i = 0; i < n; ++i) {
            double sq = 0.0;
            for (std::size_t t = 0; t < 5; ++t) {
                const double d = corpus.flavors(i, t) - target[t];
                sq += d * d;
            }
            all.emplace_back(std::sqrt(sq), corpus.meta[i].id);
        }
        std::sort(all.begin(), all.end());

        REQUIRE(got.size() == std::min(k, n));
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].track_id == all[i].second);
            CHECK(got[i].distance == doctest::Approx(all[i].first).epsilon(1e-12));
            const double expect_pct = (1.0 - all[i].first / opts.d_max) * 100.0;
            CHECK(got[i].compatibility_pct == doctest::Approx(expect_pct).epsilon(1e-9));
        }
    }
}

TEST_CASE("distance ties break toward the smaller track id") {
    CorpusTable corpus;
    corpus.feature_names = {"f0"};
    corpus.features = Mat(3, 1);
    corpus.flavors = Mat(3, 5);
    corpus.meta.resize(3);
    // two tracks with identical flavors, one farther away
    const double same[5] = {0.4, 0.2, 0.2, 0.1, 0.1};
    const double far_away[5] = {0.1, 0.1, 0.2, 0.2, 0.4};
    corpus.meta[0].id = "zzz";
    corpus.meta[1].id = "aaa";
    corpus.meta[2].id = "mmm";
    for (std::size_t t = 0; t < 5; ++t) {
        corpus.flavors(0, t) = same[t];
        corpus.flavors(1, t) = same[t];
        corpus.flavors(2, t) = far_away[t];
    }
    TasteVector target;
    target.v = {0.4, 0.2, 0.2, 0.1, 0.1};

    MatchOptions opts;
    opts.k = 2;
    const auto got = match_target(target, "t", corpus, opts);
    REQUIRE(got.size() == 2);
    CHECK(got[0].track_id == "aaa");
    CHECK(got[1].track_id == "zzz");
    CHECK(got[0].distance == got[1].distance);
}

TEST_CASE("unnormalized vectors raise the scheme warning") {
    Rng rng(5);
    CorpusTable corpus = random_corpus(rng, 4);
    TasteVector target;
    target.v = {2.0, 1.0, 0.5, 0.5, 1.0};  // sums to 5, clearly not L1
    bool warn = false;
    const auto got = match_target(target, "t", corpus, MatchOptions{}, &warn);
    CHECK(warn);
    REQUIRE(got.size() == 1);

    warn = false;
    (void)match_target(random_simplex(rng), "t", corpus, MatchOptions{}, &warn);
    CHECK_FALSE(warn);
}

TEST_CASE("empty corpus and zero k are rejected") {
    CorpusTable empty;
    TasteVector t;
    t.v = {1.0, 0.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(match_target(t, "x", empty, MatchOptions{}), ValidationError);

    Rng rng(6);
    const CorpusTable corpus = random_corpus(rng, 3);
    MatchOptions opts;
    opts.k = 0;
    CHECK_THROWS_AS(match_target(t, "x", corpus, opts), ValidationError);
}
