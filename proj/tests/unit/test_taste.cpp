#include <doctest.h>

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "mfa/errors.hpp"
#include "mfa/rng.hpp"
#include "mfa/taste.hpp"

using namespace mfa;

namespace {

// Direct, index-by-index evaluation of the aggregation rule, written
// independently of the library implementation.
std::array<double, 6> reference_aggregate(const std::vector<CompoundRecord>& compounds,
                                          const std::vector<NutrientRecord>& nutrients,
                                          double alpha, double beta) {
    std::array<double, 6> out{};
    for (int t = 0; t < 6; ++t) {
        double compound_term = 0.0;
        for (const auto& c : compounds)
            compound_term += std::log1p(c.concentration_mg_per_100g) * c.taste_probs[static_cast<std::size_t>(t)];
        double nutrient_term = 0.0;
        for (const auto& n : nutrients)
            if (n.mapped_taste && static_cast<int>(*n.mapped_taste) == t)
                nutrient_term += std::log1p(n.amount);
        out[static_cast<std::size_t>(t)] = alpha * compound_term + beta * nutrient_term;
    }
    return out;
}

CompoundRecord make_compound(Rng& rng) {
    CompoundRecord c;
    c.concentration_mg_per_100g = rng.next_double() * 500.0;
    double total = 0.0;
    for (double& p : c.taste_probs) total += (p = rng.next_double());
    for (double& p : c.taste_probs) p /= total;
    return c;
}

NutrientRecord make_nutrient(Rng& rng) {
    NutrientRecord n;
    n.amount = rng.next_double() * 80.0;
    const auto pick = rng.next_below(8);
    if (pick < 6) n.mapped_taste = static_cast<Taste6>(pick);
    return n;
}

}  // namespace

TEST_CASE("taste aggregation matches a direct evaluation on random banks") {
    Rng rng(4242);
    for (int trial = 0; trial < 25; ++trial) {
        auto trial_rng = rng.derive("trial", static_cast<std::uint64_t>(trial));
        std::vector<CompoundRecord> compounds;
        std::vector<NutrientRecord> nutrients;
        const auto nc = 1 + trial_rng.next_below(6);
        const auto nn = trial_rng.next_below(8);
        for (std::uint64_t i = 0; i < nc; ++i) compounds.push_back(make_compound(trial_rng));
        for (std::uint64_t i = 0; i < nn; ++i) nutrients.push_back(make_nutrient(trial_rng));
        WeightConfig w;
        w.alpha = trial_rng.next_double() * 3.0;
        w.beta = 0.25 + trial_rng.next_double();

        const RawTasteVector6 got = aggregate_food_vector(compounds, nutrients, w);
        const auto want = reference_aggregate(compounds, nutrients, w.alpha, w.beta);
        for (int t = 0; t < 6; ++t)
            CHECK(got[static_cast<std::size_t>(t)] ==
                  doctest::Approx(want[static_cast<std::size_t>(t)]).epsilon(1e-12));
    }
}

TEST_CASE("umami folds into salty and nothing else") {
    RawTasteVector6 raw;
    raw.v = {1.0, 2.0, 3.0, 4.0, 5.0, 7.0};
    const TasteVector merged = merge_umami(raw);
    CHECK(merged[Taste::Sweet] == 1.0);
    CHECK(merged[Taste::Bitter] == 2.0);
    CHECK(merged[Taste::Sour] == 3.0);
    CHECK(merged[Taste::Salty] == 11.0);
    CHECK(merged[Taste::Spicy] == 5.0);
}

TEST_CASE("normalization schemes hit their unit and flag zero vectors") {
    TasteVector v;
    v.v = {0.5, 1.0, 0.0, 2.0, 0.5};

    const auto l1 = normalize(v, NormScheme::L1);
    CHECK_FALSE(l1.zero_flagged);
    CHECK(l1.vector.sum() == doctest::Approx(1.0).epsilon(1e-15));

    const auto l2 = normalize(v, NormScheme::L2);
    double sq = 0.0;
    for (int i = 0; i < 5; ++i) sq += l2.vector[static_cast<std::size_t>(i)] * l2.vector[static_cast<std::size_t>(i)];
    CHECK(std::sqrt(sq) == doctest::Approx(1.0).epsilon(1e-15));

    const auto mx = normalize(v, NormScheme::Max);
    double peak = 0.0;
    for (int i = 0; i < 5; ++i) peak = std::max(peak, mx.vector[static_cast<std::size_t>(i)]);
    CHECK(peak == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mx.vector[Taste::Salty] == doctest::Approx(1.0));

    TasteVector zero;
    const auto z = normalize(zero, NormScheme::L1);
    CHECK(z.zero_flagged);
    CHECK(z.vector == zero);
}

TEST_CASE("dish blending averages then renormalizes") {
    TasteVector a, b;
    a.v = {1.0, 0.0, 0.0, 0.0, 0.0};
    b.v = {0.0, 1.0, 0.0, 0.0, 0.0};
    const std::vector<TasteVector> parts = {a, b};
    const TasteVector dish = blend_dish(parts);
    CHECK(dish[Taste::Sweet] == doctest::Approx(0.5));
    CHECK(dish[Taste::Bitter] == doctest::Approx(0.5));
    CHECK(dish.sum() == doctest::Approx(1.0));

    // means that need renormalization: components (0.6, 0.2) sum to 0.8
    TasteVector c, d;
    c.v = {1.0, 0.4, 0.0, 0.0, 0.0};
    d.v = {0.2, 0.0, 0.0, 0.0, 0.0};
    const std::vector<TasteVector> parts2 = {c, d};
    const TasteVector dish2 = blend_dish(parts2);
    CHECK(dish2[Taste::Sweet] == doctest::Approx(0.75));
    CHECK(dish2[Taste::Bitter] == doctest::Approx(0.25));
}

TEST_CASE("calinski-harabasz agrees with a hand-computed two-group layout") {
    // Two groups of two points on the sweet axis: group means at 0.1 and 0.5,
    // grand mean 0.3; tr(B) = 4*0.04 = 0.16, tr(W) = 4*0.0 + ... each point
    // 0.1 off its mean -> tr(W) = 4*0.01 = 0.04; CH = (0.16/1)/(0.04/2) = 8.
    std::vector<TasteVector> pts(4);
    pts[0].v = {0.0, 0.0, 0.0, 0.0, 0.0};
    pts[1].v = {0.2, 0.0, 0.0, 0.0, 0.0};
    pts[2].v = {0.4, 0.0, 0.0, 0.0, 0.0};
    pts[3].v = {0.6, 0.0, 0.0, 0.0, 0.0};
    const std::vector<std::string> groups = {"lo", "lo", "hi", "hi"};
    const ChResult ch = calinski_harabasz(pts, groups);
    CHECK_FALSE(ch.infinite);
    CHECK(ch.value == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("calinski-harabasz flags zero within-group scatter as infinite") {
    std::vector<TasteVector> pts(4);
    pts[0].v = {0.0, 0.0, 0.0, 0.0, 0.0};
    pts[1].v = {0.0, 0.0, 0.0, 0.0, 0.0};
    pts[2].v = {1.0, 0.0, 0.0, 0.0, 0.0};
    pts[3].v = {1.0, 0.0, 0.0, 0.0, 0.0};
    const std::vector<std::string> groups = {"a", "a", "b", "b"};
    CHECK(calinski_harabasz(pts, groups).infinite);
}

TEST_CASE("mean taste spread is the mean per-dimension population sd") {
    std::vector<TasteVector> pts(2);
    pts[0].v = {0.0, 0.0, 0.0, 0.0, 0.0};
    pts[1].v = {1.0, 0.0, 0.0, 0.0, 0.0};
    // dimension 0 has sd 0.5, others 0 -> mean 0.1
    CHECK(mean_taste_spread(pts) == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("default sweep grid is sixteen equal steps over [0, 3]") {
    const std::vector<double> grid = default_sweep_grid();
    REQUIRE(grid.size() == 16);
    for (std::size_t i = 0; i < 16; ++i)
        CHECK(grid[i] == doctest::Approx(3.0 * static_cast<double>(i) / 15.0).epsilon(1e-15));
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == 3.0);
}

namespace {

FoodBank two_group_bank() {
    // Compounds separate the groups; nutrients are identical everywhere, so
    // the compound weight has to matter.
    FoodBank bank;
    const struct {
        const char* id;
        const char* group;
        std::array<double, 6> probs;
    } rows[] = {
        {"f1", "ga", {0.8, 0.05, 0.05, 0.05, 0.025, 0.025}},
        {"f2", "ga", {0.7, 0.10, 0.10, 0.05, 0.025, 0.025}},
        {"f3", "gb", {0.05, 0.05, 0.05, 0.05, 0.75, 0.05}},
        {"f4", "gb", {0.10, 0.05, 0.05, 0.05, 0.70, 0.05}},
    };
    for (const auto& r : rows) {
        FoodEntry e;
        e.food_id = r.id;
        e.food_group = r.group;
        CompoundRecord c;
        c.food_id = r.id;
        c.compound_id = std::string(r.id) + "_c";
        c.concentration_mg_per_100g = 120.0;
        c.taste_probs = r.probs;
        e.compounds.push_back(c);
        NutrientRecord n;
        n.food_id = r.id;
        n.nutrient_id = "base";
        n.amount = 10.0;
        n.mapped_taste = Taste6::Sour;
        e.nutrients.push_back(n);
        bank.foods.push_back(std::move(e));
    }
    return bank;
}

}  // namespace

TEST_CASE("sweep picks a positive compound weight when compounds carry the signal") {
    const FoodBank bank = two_group_bank();
    const SweepResult sweep = sweep_weights(bank, 10.0, default_sweep_grid());
    REQUIRE(sweep.grid.size() == 16);
    CHECK(sweep.best_ratio > 0.0);
    const SweepPoint& zero = sweep.grid.front();
    double best_obj = zero.objective;
    for (const SweepPoint& p : sweep.grid)
        if (p.ratio == sweep.best_ratio) best_obj = p.objective;
    CHECK(zero.objective < best_obj);
}

TEST_CASE("sweep ties break toward the smaller ratio") {
    // A bank whose foods have no compounds at all: every ratio yields the
    // same profiles, so the whole grid ties and ratio 0 must win.
    FoodBank bank;
    for (const char* id : {"n1", "n2", "n3"}) {
        FoodEntry e;
        e.food_id = id;
        e.food_group = (id[1] == '1') ? "x" : "y";
        NutrientRecord n;
        n.food_id = id;
        n.nutrient_id = "salt";
        n.amount = id[1] == '2' ? 30.0 : 5.0;
        n.mapped_taste = Taste6::Salty;
        e.nutrients.push_back(n);
        NutrientRecord n2 = n;
        n2.nutrient_id = "sugar";
        n2.amount = id[1] == '3' ? 44.0 : 2.0;
        n2.mapped_taste = Taste6::Sweet;
        e.nutrients.push_back(n2);
        bank.foods.push_back(std::move(e));
    }
    const SweepResult sweep = sweep_weights(bank, 10.0, default_sweep_grid());
    CHECK(sweep.best_ratio == 0.0);
}

TEST_CASE("zero-flagged foods are excluded from the sweep objective") {
    FoodBank bank = two_group_bank();
    FoodEntry empty;
    empty.food_id = "zz_empty";
    empty.food_group = "ga";
    bank.foods.push_back(empty);

    const SweepResult with_empty = sweep_weights(bank, 10.0, default_sweep_grid());
    const SweepResult without = sweep_weights(two_group_bank(), 10.0, default_sweep_grid());
    REQUIRE(with_empty.grid.size() == without.grid.size());
    for (std::size_t i = 0; i < without.grid.size(); ++i)
        CHECK(with_empty.grid[i].objective ==
              doctest::Approx(without.grid[i].objective).epsilon(1e-12));
}

TEST_CASE("build_food_profiles normalizes and flags empty foods") {
    FoodBank bank = two_group_bank();
    FoodEntry empty;
    empty.food_id = "aa_empty";
    empty.food_group = "ga";
    bank.foods.push_back(empty);

    const auto profiles = build_food_profiles(bank, WeightConfig{});
    REQUIRE(profiles.size() == 5);
    for (const FoodProfile& p : profiles) {
        if (p.food_id == "aa_empty") {
            CHECK(p.zero_flagged);
        } else {
            CHECK_FALSE(p.zero_flagged);
            CHECK(p.vector.sum() == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("taste names parse in canonical order") {
    CHECK(parse_taste6("sweet") == Taste6::Sweet);
    CHECK(parse_taste6("umami") == Taste6::Umami);
    CHECK_FALSE(parse_taste6("savory").has_value());
    CHECK(parse_norm_scheme("l1") == NormScheme::L1);
    CHECK(parse_norm_scheme("max") == NormScheme::Max);
    CHECK_FALSE(parse_norm_scheme("zscore").has_value());
}
