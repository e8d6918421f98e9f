#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mfa {

// Canonical order of the five-dimensional taste space. All vectors, CSV
// columns and reports follow this order.
enum class Taste : int { Sweet = 0, Bitter = 1, Sour = 2, Salty = 3, Spicy = 4 };

// The six-taste space used by raw chemistry tables before umami folding.
enum class Taste6 : int { Sweet = 0, Bitter = 1, Sour = 2, Salty = 3, Spicy = 4, Umami = 5 };

inline constexpr std::array<const char*, 5> kTasteNames = {"sweet", "bitter", "sour", "salty", "spicy"};
inline constexpr std::array<const char*, 6> kTaste6Names = {"sweet", "bitter", "sour",
                                                            "salty", "spicy",  "umami"};

std::optional<Taste6> parse_taste6(const std::string& name);

// Five non-negative intensities; the shared coordinate system of both the
// chemistry-derived targets and the music annotations.
struct TasteVector {
    std::array<double, 5> v{};

    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }
    double& operator[](Taste t) { return v[static_cast<std::size_t>(t)]; }
    double operator[](Taste t) const { return v[static_cast<std::size_t>(t)]; }
    double sum() const;
    bool operator==(const TasteVector&) const = default;
};

// Pre-merge intensities: the five canonical tastes plus umami.
struct RawTasteVector6 {
    std::array<double, 6> v{};

    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }
    double& operator[](Taste6 t) { return v[static_cast<std::size_t>(t)]; }
    double operator[](Taste6 t) const { return v[static_cast<std::size_t>(t)]; }
};

// One compound row of a food: concentration in mg/100 g and the predicted
// probability of each of the six raw tastes.
struct CompoundRecord {
    std::string food_id;
    std::string compound_id;
    double concentration_mg_per_100g = 0.0;
    std::array<double, 6> taste_probs{};
};

// One nutrient row of a food; mapped_taste comes from the curated
// nutrient-to-taste table and may be absent (unmapped nutrients
// contribute nothing).
struct NutrientRecord {
    std::string food_id;
    std::string nutrient_id;
    double amount = 0.0;
    std::optional<Taste6> mapped_taste;
};

struct WeightConfig {
    double alpha = 0.4;        // compound contribution
    double beta = 1.0;         // nutrient contribution
    double lambda_spread = 10.0;  // spread weight in the sweep objective
};

enum class NormScheme { L1, L2, Max };
std::optional<NormScheme> parse_norm_scheme(const std::string& name);
const char* norm_scheme_name(NormScheme s);

struct NormalizeResult {
    TasteVector vector;
    bool zero_flagged = false;  // all-zero input, returned unchanged
};

struct FoodProfile {
    std::string food_id;
    std::string food_group;
    TasteVector vector;
    bool zero_flagged = false;
};

// Log-weighted aggregation of compound and nutrient contributions into the
// six-taste space: per taste t,
//   alpha * sum_i ln(1+c_i) * P(t|i)  +  beta * sum_j ln(1+n_j) * [tau_j == t].
RawTasteVector6 aggregate_food_vector(std::span<const CompoundRecord> compounds,
                                      std::span<const NutrientRecord> nutrients,
                                      const WeightConfig& w);

// Folds umami into salty; the other four components pass through.
TasteVector merge_umami(const RawTasteVector6& v);

// Rescales to the scheme's unit (L1: sum 1, L2: norm 1, Max: peak 1).
// An all-zero vector is returned unchanged with zero_flagged set.
NormalizeResult normalize(const TasteVector& v, NormScheme scheme = NormScheme::L1);

// Component-wise mean of the ingredient vectors followed by normalization.
TasteVector blend_dish(std::span<const TasteVector> ingredients, NormScheme scheme = NormScheme::L1);

struct ChResult {
    double value = 0.0;
    bool infinite = false;  // zero within-group scatter with nonzero between
};

// Calinski-Harabasz index: [tr(B)/(k-1)] / [tr(W)/(n-k)] over the 5-dim
// taste coordinates, with groups given as labels aligned with points.
ChResult calinski_harabasz(std::span<const TasteVector> points, std::span<const std::string> groups);

// Mean over the five dimensions of the per-dimension population standard
// deviation across points.
double mean_taste_spread(std::span<const TasteVector> points);

// One food of a chemistry bank: its rows plus its group label.
struct FoodEntry {
    std::string food_id;
    std::string food_group;
    std::vector<CompoundRecord> compounds;
    std::vector<NutrientRecord> nutrients;
};

// Foods sorted by id; the unit of aggregation and sweeping.
struct FoodBank {
    std::vector<FoodEntry> foods;
};

// Builds normalized per-food profiles (aggregate, merge, normalize).
std::vector<FoodProfile> build_food_profiles(const FoodBank& bank, const WeightConfig& w,
                                             NormScheme scheme = NormScheme::L1);

struct SweepPoint {
    double ratio = 0.0;      // alpha with beta fixed at 1
    double objective = 0.0;  // ch + lambda * spread
    double ch_index = 0.0;
    bool ch_infinite = false;
    double mean_spread = 0.0;
};

struct SweepResult {
    std::vector<SweepPoint> grid;
    double best_ratio = 0.0;
};

// The default alpha/beta grid: 16 equally spaced ratios over [0, 3].
std::vector<double> default_sweep_grid();

// Evaluates the composite objective (CH of food-group clusters plus
// lambda * mean per-taste spread) at every grid ratio with beta = 1 and
// returns the trace plus the argmax; ties break toward the smaller ratio.
// Zero-flagged foods are excluded from the objective.
SweepResult sweep_weights(const FoodBank& bank, double lambda_spread, std::span<const double> grid,
                          NormScheme scheme = NormScheme::L1);

}  // namespace mfa
