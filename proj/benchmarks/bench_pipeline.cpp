// Microbenchmarks for the hot paths: feature extraction, the matching scan,
// bootstrap forest importance, and the permutation alignment test.

#include <benchmark/benchmark.h>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "mfa/audio.hpp"
#include "mfa/corpus.hpp"
#include "mfa/matching.hpp"
#include "mfa/perceptual.hpp"
#include "mfa/rng.hpp"
#include "mfa/transfer.hpp"

namespace {

using namespace mfa;

AudioSegment synthetic_audio(double seconds) {
    Rng rng(4242);
    AudioSegment seg;
    seg.sample_rate_hz = 22050;
    seg.samples.resize(static_cast<std::size_t>(seconds * 22050.0));
    for (std::size_t i = 0; i < seg.samples.size(); ++i) {
        const double t = static_cast<double>(i) / 22050.0;
        seg.samples[i] = 0.4 * std::sin(2.0 * M_PI * 440.0 * t) +
                         0.2 * std::sin(2.0 * M_PI * 1318.5 * t) +
                         0.1 * (rng.next_double() - 0.5);
    }
    return seg;
}

TasteVector random_simplex(Rng& rng) {
    TasteVector t;
    double sum = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
        t[i] = rng.next_double() + 1e-3;
        sum += t[i];
    }
    for (std::size_t i = 0; i < 5; ++i) t[i] /= sum;
    return t;
}

CorpusTable synthetic_corpus(std::size_t n) {
    Rng rng(99);
    CorpusTable c;
    c.feature_names = {"f0"};
    c.features = Mat(n, 1);
    c.flavors = Mat(n, 5);
    c.meta.resize(n);
    char buf[32];
    for (std::size_t i = 0; i < n; ++i) {
        const TasteVector t = random_simplex(rng);
        for (std::size_t j = 0; j < 5; ++j) c.flavors(i, j) = t[j];
        c.features(i, 0) = rng.next_double();
        std::snprintf(buf, sizeof buf, "t%06zu", i);
        c.meta[i].id = buf;
    }
    return c;
}

void bm_feature_extraction(benchmark::State& state) {
    const AudioSegment seg = synthetic_audio(static_cast<double>(state.range(0)));
    const StftConfig cfg{};
    const FeatureManifest manifest = FeatureManifest::canonical();
    for (auto _ : state) {
        FeatureVector fv = extract_features(seg, cfg, manifest);
        benchmark::DoNotOptimize(fv.values.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(seg.samples.size()));
}

void bm_match_scan(benchmark::State& state) {
    const CorpusTable corpus = synthetic_corpus(static_cast<std::size_t>(state.range(0)));
    Rng rng(7);
    const TasteVector target = random_simplex(rng);
    for (auto _ : state) {
        auto results = match_target(target, "bench", corpus);
        benchmark::DoNotOptimize(results.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}

void bm_rf_importance(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const std::size_t p = 20;
    Rng rng(11);
    Mat x(n, p);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) x(i, j) = rng.next_double();
        y[i] = 3.0 * x(i, 2) + 0.1 * rng.next_double();
    }
    BootImportanceConfig cfg;
    cfg.n_boot = 5;
    cfg.forest = ForestConfig{10, 8, 2, 0};
    cfg.subsample = 0;
    for (auto _ : state) {
        auto imp = rf_importance(x, y, cfg, Rng(123));
        benchmark::DoNotOptimize(imp.data());
    }
}

void bm_permutation_alignment(benchmark::State& state) {
    const std::size_t n = 50;
    Rng rng(21);
    Mat targets(n, 5), percepts(n, 5);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            targets(i, j) = rng.next_normal();
            percepts(i, j) = 0.7 * targets(i, j) + 0.3 * rng.next_normal();
        }
    const std::size_t n_perm = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto res = permutation_alignment(targets, percepts, n_perm, Rng(5));
        benchmark::DoNotOptimize(&res);
    }
}

BENCHMARK(bm_feature_extraction)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_match_scan)->Arg(1000)->Arg(10000)->Arg(50000)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_rf_importance)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_permutation_alignment)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
