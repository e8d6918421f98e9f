#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "mfa/corpus.hpp"
#include "mfa/taste.hpp"

namespace mfa {

// Diameter of the unit hypercube in five dimensions; the default maximum
// distance used by the compatibility score. Configurable because the true
// diameter depends on the normalization scheme in use.
inline const double kDefaultDMax = std::sqrt(5.0);

struct MatchResult {
    std::string target_id;
    std::string track_id;
    double distance = 0.0;
    double d_max = kDefaultDMax;
    double compatibility_pct = 0.0;
};

struct MatchOptions {
    std::size_t k = 1;
    double d_max = kDefaultDMax;
    NormScheme scheme = NormScheme::L1;  // scheme both sides are expected to follow
};

double euclidean_distance(const TasteVector& a, const TasteVector& b);

// Linear map of distance onto [0, 100]: 0 -> 100, d_max -> 0. A distance
// beyond d_max signals a normalization-scheme mismatch and is rejected.
double compatibility(double distance, double d_max);

// Exhaustive nearest-neighbor scan over the corpus flavors. Results are
// sorted by ascending distance, ties by ascending track id; k = 1 is the
// stimulus selection rule. Sets *scheme_warning when either side does not
// look normalized under the expected scheme.
std::vector<MatchResult> match_target(const TasteVector& target, const std::string& target_id,
                                      const CorpusTable& corpus, const MatchOptions& opts = {},
                                      bool* scheme_warning = nullptr);

}  // namespace mfa
