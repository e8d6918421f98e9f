#include "mfa/matching.hpp"

#include <algorithm>
#include <cmath>

#include "mfa/errors.hpp"

namespace mfa {

namespace {

constexpr double kSchemeTolerance = 1e-6;

bool looks_normalized(const TasteVector& v, NormScheme scheme) {
    double measure = 0.0;
    switch (scheme) {
        case NormScheme::L1:
            measure = v.sum();
            break;
        case NormScheme::L2: {
            double acc = 0.0;
            for (double x : v.v) acc += x * x;
            measure = std::sqrt(acc);
            break;
        }
        case NormScheme::Max:
            for (double x : v.v) measure = std::max(measure, x);
            break;
    }
    return std::abs(measure - 1.0) <= kSchemeTolerance;
}

}  // namespace

double euclidean_distance(const TasteVector& a, const TasteVector& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

double compatibility(double distance, double d_max) {
    if (d_max <= 0.0) throw ValidationError("compatibility: d_max must be positive");
    if (distance < 0.0) throw ValidationError("compatibility: negative distance");
    if (distance > d_max * (1.0 + 1e-12))
        throw ValidationError("compatibility: distance exceeds d_max (normalization scheme mismatch?)");
    return (1.0 - std::min(distance, d_max) / d_max) * 100.0;
}

std::vector<MatchResult> match_target(const TasteVector& target, const std::string& target_id,
                                      const CorpusTable& corpus, const MatchOptions& opts,
                                      bool* scheme_warning) {
    if (corpus.size() == 0) throw ValidationError("match_target: empty corpus");
    if (opts.k == 0) throw ValidationError("match_target: k must be positive");

    bool warn = !looks_normalized(target, opts.scheme);

    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const TasteVector v = corpus.flavor_vector(i);
        if (!warn && !looks_normalized(v, opts.scheme)) warn = true;
        scored.emplace_back(euclidean_distance(target, v), i);
    }

    const std::size_t k = std::min(opts.k, scored.size());
    auto cmp = [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return corpus.meta[a.second].id < corpus.meta[b.second].id;
    };
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(k), scored.end(), cmp);

    std::vector<MatchResult> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        MatchResult r;
        r.target_id = target_id;
        r.track_id = corpus.meta[scored[i].second].id;
        r.distance = scored[i].first;
        r.d_max = opts.d_max;
        r.compatibility_pct = compatibility(scored[i].first, opts.d_max);
        out.push_back(std::move(r));
    }
    if (scheme_warning != nullptr) *scheme_warning = warn;
    return out;
}

}  // namespace mfa
