#include "mfa/taste.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "mfa/errors.hpp"
#include "mfa/parallel.hpp"
#include "mfa/stats_util.hpp"

namespace mfa {

std::optional<Taste6> parse_taste6(const std::string& name) {
    for (std::size_t i = 0; i < kTaste6Names.size(); ++i) {
        if (name == kTaste6Names[i]) return static_cast<Taste6>(i);
    }
    return std::nullopt;
}

std::optional<NormScheme> parse_norm_scheme(const std::string& name) {
    if (name == "l1") return NormScheme::L1;
    if (name == "l2") return NormScheme::L2;
    if (name == "max") return NormScheme::Max;
    return std::nullopt;
}

const char* norm_scheme_name(NormScheme s) {
    switch (s) {
        case NormScheme::L1: return "l1";
        case NormScheme::L2: return "l2";
        case NormScheme::Max: return "max";
    }
    return "l1";
}

double TasteVector::sum() const { return std::accumulate(v.begin(), v.end(), 0.0); }

namespace {

void check_finite_nonneg(double x, const char* what) {
    if (!std::isfinite(x)) throw ValidationError(std::string(what) + " is not finite");
    if (x < 0.0) throw ValidationError(std::string(what) + " is negative");
}

}  // namespace

RawTasteVector6 aggregate_food_vector(std::span<const CompoundRecord> compounds,
                                      std::span<const NutrientRecord> nutrients,
                                      const WeightConfig& w) {
    check_finite_nonneg(w.alpha, "alpha");
    check_finite_nonneg(w.beta, "beta");
    if (w.alpha == 0.0 && w.beta == 0.0) throw ValidationError("alpha and beta cannot both be zero");

    const std::string* food_id = nullptr;
    auto check_food = [&](const std::string& id) {
        if (food_id == nullptr) food_id = &id;
        else if (*food_id != id)
            throw ValidationError("aggregate_food_vector: mixed food_ids '" + *food_id + "' and '" + id + "'");
    };

    RawTasteVector6 out;
    for (const auto& c : compounds) {
        check_food(c.food_id);
        check_finite_nonneg(c.concentration_mg_per_100g, "concentration");
        const double lw = std::log1p(c.concentration_mg_per_100g);
        for (std::size_t t = 0; t < 6; ++t) {
            const double p = c.taste_probs[t];
            if (!std::isfinite(p) || p < 0.0 || p > 1.0)
                throw ValidationError("taste probability outside [0,1] for compound '" + c.compound_id + "'");
            out[t] += w.alpha * lw * p;
        }
    }
    for (const auto& n : nutrients) {
        check_food(n.food_id);
        check_finite_nonneg(n.amount, "nutrient amount");
        if (!n.mapped_taste) continue;
        out[*n.mapped_taste] += w.beta * std::log1p(n.amount);
    }
    return out;
}

TasteVector merge_umami(const RawTasteVector6& v) {
    for (double x : v.v) {
        if (!std::isfinite(x) || x < 0.0) throw ValidationError("merge_umami: invalid component");
    }
    TasteVector out;
    out[Taste::Sweet] = v[Taste6::Sweet];
    out[Taste::Bitter] = v[Taste6::Bitter];
    out[Taste::Sour] = v[Taste6::Sour];
    out[Taste::Salty] = v[Taste6::Salty] + v[Taste6::Umami];
    out[Taste::Spicy] = v[Taste6::Spicy];
    return out;
}

NormalizeResult normalize(const TasteVector& v, NormScheme scheme) {
    double denom = 0.0;
    for (double x : v.v) {
        if (!std::isfinite(x)) throw ValidationError("normalize: component is not finite");
        if (x < 0.0) throw ValidationError("normalize: negative component");
        switch (scheme) {
            case NormScheme::L1: denom += x; break;
            case NormScheme::L2: denom += x * x; break;
            case NormScheme::Max: denom = std::max(denom, x); break;
        }
    }
    if (scheme == NormScheme::L2) denom = std::sqrt(denom);
    if (denom == 0.0) return {v, true};
    TasteVector out = v;
    for (double& x : out.v) x /= denom;
    return {out, false};
}

TasteVector blend_dish(std::span<const TasteVector> ingredients, NormScheme scheme) {
    if (ingredients.empty()) throw ValidationError("blend_dish: empty ingredient list");
    TasteVector acc;
    for (const auto& ing : ingredients) {
        for (std::size_t i = 0; i < 5; ++i) acc[i] += ing[i];
    }
    for (std::size_t i = 0; i < 5; ++i) acc[i] /= static_cast<double>(ingredients.size());
    return normalize(acc, scheme).vector;
}

ChResult calinski_harabasz(std::span<const TasteVector> points, std::span<const std::string> groups) {
    if (points.size() != groups.size()) throw ValidationError("calinski_harabasz: points/groups length mismatch");
    const std::size_t n = points.size();

    std::map<std::string, std::vector<std::size_t>> by_group;
    for (std::size_t i = 0; i < n; ++i) by_group[groups[i]].push_back(i);
    const std::size_t k = by_group.size();
    if (k < 2) throw ValidationError("calinski_harabasz: need at least 2 groups");
    if (n <= k) throw ValidationError("calinski_harabasz: need n > k");

    std::array<double, 5> grand{};
    for (const auto& p : points) {
        for (std::size_t d = 0; d < 5; ++d) grand[d] += p[d];
    }
    for (double& g : grand) g /= static_cast<double>(n);

    double between = 0.0, within = 0.0;
    for (const auto& [label, idx] : by_group) {
        std::array<double, 5> centroid{};
        for (std::size_t i : idx) {
            for (std::size_t d = 0; d < 5; ++d) centroid[d] += points[i][d];
        }
        for (double& c : centroid) c /= static_cast<double>(idx.size());
        for (std::size_t d = 0; d < 5; ++d) {
            const double diff = centroid[d] - grand[d];
            between += static_cast<double>(idx.size()) * diff * diff;
        }
        for (std::size_t i : idx) {
            for (std::size_t d = 0; d < 5; ++d) {
                const double diff = points[i][d] - centroid[d];
                within += diff * diff;
            }
        }
    }

    const double b_term = between / static_cast<double>(k - 1);
    const double w_term = within / static_cast<double>(n - k);
    if (w_term == 0.0) {
        if (b_term == 0.0) return {0.0, false};  // all points coincide
        return {std::numeric_limits<double>::infinity(), true};
    }
    return {b_term / w_term, false};
}

double mean_taste_spread(std::span<const TasteVector> points) {
    if (points.size() < 2) throw ValidationError("mean_taste_spread: need at least 2 points");
    double acc = 0.0;
    std::vector<double> dim(points.size());
    for (std::size_t d = 0; d < 5; ++d) {
        for (std::size_t i = 0; i < points.size(); ++i) dim[i] = points[i][d];
        acc += stddev_population(dim);
    }
    return acc / 5.0;
}

std::vector<FoodProfile> build_food_profiles(const FoodBank& bank, const WeightConfig& w, NormScheme scheme) {
    std::vector<FoodProfile> out(bank.foods.size());
    parallel_for(bank.foods.size(), [&](std::size_t i) {
        const FoodEntry& food = bank.foods[i];
        const RawTasteVector6 raw = aggregate_food_vector(food.compounds, food.nutrients, w);
        const NormalizeResult norm = normalize(merge_umami(raw), scheme);
        out[i] = FoodProfile{food.food_id, food.food_group, norm.vector, norm.zero_flagged};
    });
    return out;
}

std::vector<double> default_sweep_grid() {
    std::vector<double> grid(16);
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 3.0 * static_cast<double>(i) / 15.0;
    return grid;
}

SweepResult sweep_weights(const FoodBank& bank, double lambda_spread, std::span<const double> grid,
                          NormScheme scheme) {
    if (grid.empty()) throw ValidationError("sweep_weights: empty grid");
    if (bank.foods.size() < 2) throw ValidationError("sweep_weights: degenerate bank (fewer than 2 foods)");
    check_finite_nonneg(lambda_spread, "lambda");

    SweepResult result;
    result.grid.resize(grid.size());
    parallel_for(grid.size(), [&](std::size_t g) {
        const double ratio = grid[g];
        const WeightConfig w{ratio, 1.0, lambda_spread};
        const auto profiles = build_food_profiles(bank, w, scheme);

        std::vector<TasteVector> points;
        std::vector<std::string> labels;
        points.reserve(profiles.size());
        for (const auto& p : profiles) {
            if (p.zero_flagged) continue;
            points.push_back(p.vector);
            labels.push_back(p.food_group);
        }
        if (points.size() < 2) throw DegeneracyError("sweep_weights: all foods zero-flagged at ratio " +
                                                     std::to_string(ratio));
        const ChResult ch = calinski_harabasz(points, labels);
        const double spread = mean_taste_spread(points);
        SweepPoint pt;
        pt.ratio = ratio;
        pt.ch_index = ch.value;
        pt.ch_infinite = ch.infinite;
        pt.mean_spread = spread;
        pt.objective = ch.value + lambda_spread * spread;
        result.grid[g] = pt;
    });

    std::size_t best = 0;
    for (std::size_t g = 1; g < result.grid.size(); ++g) {
        const SweepPoint& cand = result.grid[g];
        const SweepPoint& cur = result.grid[best];
        if (cand.objective > cur.objective ||
            (cand.objective == cur.objective && cand.ratio < cur.ratio)) {
            best = g;
        }
    }
    result.best_ratio = result.grid[best].ratio;
    return result;
}

}  // namespace mfa
