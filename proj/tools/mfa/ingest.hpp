#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "mfa/taste.hpp"

namespace mfa::cli {

// Chemistry bank from four tables: foods (food_id, food_group), compounds
// (food_id, compound_id, concentration_mg_per_100g, p_<taste> x6),
// nutrients (food_id, nutrient_id, amount) and the curated nutrient-taste
// map (nutrient_id, taste). Rows referencing unknown foods are rejected.
FoodBank read_food_bank(const std::filesystem::path& foods,
                        const std::filesystem::path& compounds,
                        const std::filesystem::path& nutrients,
                        const std::filesystem::path& nutrient_map);

struct DishSpec {
    std::string dish_id;
    std::vector<std::string> food_ids;
};

// dishes.csv: dish_id, food_ids separated by '|'.
std::vector<DishSpec> read_dishes(const std::filesystem::path& path);

// Generic (id, taste vector) table: the id column is target_id, dish_id or
// food_id — whichever the header carries — plus the five taste columns.
std::vector<std::pair<std::string, TasteVector>> read_taste_table(
    const std::filesystem::path& path);

}  // namespace mfa::cli
