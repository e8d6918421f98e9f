#include "ingest.hpp"

#include <charconv>
#include <cmath>
#include <map>

#include "mfa/csv.hpp"
#include "mfa/errors.hpp"

namespace mfa::cli {

namespace {

double parse_number(const std::string& s, const std::string& context, std::size_t line,
                    const std::string& column) {
    double v = 0.0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v))
        throw ValidationError(context + ": line " + std::to_string(line) + ", column '" + column +
                              "': cannot parse number from '" + s + "'");
    return v;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == '|') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace

FoodBank read_food_bank(const std::filesystem::path& foods, const std::filesystem::path& compounds,
                        const std::filesystem::path& nutrients,
                        const std::filesystem::path& nutrient_map) {
    std::map<std::string, FoodEntry> entries;
    {
        const std::string context = foods.filename().string();
        const CsvTable table = read_csv(foods);
        const std::size_t id_col = table.column("food_id", context);
        const std::size_t group_col = table.column("food_group", context);
        for (const CsvRecord& row : table.rows) {
            const std::string& id = row.fields[id_col];
            if (id.empty())
                throw ValidationError(context + ": line " + std::to_string(row.line) +
                                      ": empty food_id");
            FoodEntry entry;
            entry.food_id = id;
            entry.food_group = row.fields[group_col];
            if (!entries.emplace(id, std::move(entry)).second)
                throw ValidationError(context + ": line " + std::to_string(row.line) +
                                      ": duplicate food_id '" + id + "'");
        }
        if (entries.empty()) throw ValidationError(context + ": no food rows");
    }

    auto find_food = [&](const std::string& id, const std::string& context,
                         std::size_t line) -> FoodEntry& {
        const auto it = entries.find(id);
        if (it == entries.end())
            throw ValidationError(context + ": line " + std::to_string(line) + ": unknown food_id '" +
                                  id + "'");
        return it->second;
    };

    {
        const std::string context = compounds.filename().string();
        const CsvTable table = read_csv(compounds);
        const std::size_t food_col = table.column("food_id", context);
        const std::size_t compound_col = table.column("compound_id", context);
        const std::size_t conc_col = table.column("concentration_mg_per_100g", context);
        std::array<std::size_t, 6> prob_cols{};
        for (std::size_t t = 0; t < 6; ++t)
            prob_cols[t] = table.column(std::string("p_") + kTaste6Names[t], context);
        for (const CsvRecord& row : table.rows) {
            CompoundRecord rec;
            rec.food_id = row.fields[food_col];
            rec.compound_id = row.fields[compound_col];
            rec.concentration_mg_per_100g =
                parse_number(row.fields[conc_col], context, row.line, "concentration_mg_per_100g");
            for (std::size_t t = 0; t < 6; ++t)
                rec.taste_probs[t] = parse_number(row.fields[prob_cols[t]], context, row.line,
                                                  std::string("p_") + kTaste6Names[t]);
            find_food(rec.food_id, context, row.line).compounds.push_back(std::move(rec));
        }
    }

    std::map<std::string, Taste6> taste_of_nutrient;
    {
        const std::string context = nutrient_map.filename().string();
        const CsvTable table = read_csv(nutrient_map);
        const std::size_t id_col = table.column("nutrient_id", context);
        const std::size_t taste_col = table.column("taste", context);
        for (const CsvRecord& row : table.rows) {
            const auto taste = parse_taste6(row.fields[taste_col]);
            if (!taste)
                throw ValidationError(context + ": line " + std::to_string(row.line) +
                                      ": unknown taste '" + row.fields[taste_col] + "'");
            if (!taste_of_nutrient.emplace(row.fields[id_col], *taste).second)
                throw ValidationError(context + ": line " + std::to_string(row.line) +
                                      ": duplicate nutrient_id '" + row.fields[id_col] + "'");
        }
    }

    {
        const std::string context = nutrients.filename().string();
        const CsvTable table = read_csv(nutrients);
        const std::size_t food_col = table.column("food_id", context);
        const std::size_t nutrient_col = table.column("nutrient_id", context);
        const std::size_t amount_col = table.column("amount", context);
        for (const CsvRecord& row : table.rows) {
            NutrientRecord rec;
            rec.food_id = row.fields[food_col];
            rec.nutrient_id = row.fields[nutrient_col];
            rec.amount = parse_number(row.fields[amount_col], context, row.line, "amount");
            const auto it = taste_of_nutrient.find(rec.nutrient_id);
            if (it != taste_of_nutrient.end()) rec.mapped_taste = it->second;
            find_food(rec.food_id, context, row.line).nutrients.push_back(std::move(rec));
        }
    }

    FoodBank bank;
    bank.foods.reserve(entries.size());
    for (auto& [id, entry] : entries) {
        (void)id;
        bank.foods.push_back(std::move(entry));
    }
    return bank;
}

std::vector<DishSpec> read_dishes(const std::filesystem::path& path) {
    const std::string context = path.filename().string();
    const CsvTable table = read_csv(path);
    const std::size_t id_col = table.column("dish_id", context);
    const std::size_t foods_col = table.column("food_ids", context);

    std::vector<DishSpec> out;
    std::map<std::string, std::size_t> seen;
    for (const CsvRecord& row : table.rows) {
        DishSpec dish;
        dish.dish_id = row.fields[id_col];
        dish.food_ids = split_list(row.fields[foods_col]);
        if (dish.dish_id.empty())
            throw ValidationError(context + ": line " + std::to_string(row.line) + ": empty dish_id");
        if (dish.food_ids.empty())
            throw ValidationError(context + ": line " + std::to_string(row.line) +
                                  ": dish without ingredients");
        if (!seen.emplace(dish.dish_id, row.line).second)
            throw ValidationError(context + ": line " + std::to_string(row.line) +
                                  ": duplicate dish_id '" + dish.dish_id + "'");
        out.push_back(std::move(dish));
    }
    if (out.empty()) throw ValidationError(context + ": no dish rows");
    return out;
}

std::vector<std::pair<std::string, TasteVector>> read_taste_table(
    const std::filesystem::path& path) {
    const std::string context = path.filename().string();
    const CsvTable table = read_csv(path);

    std::size_t id_col = 0;
    bool found = false;
    for (const char* candidate : {"target_id", "dish_id", "food_id"}) {
        if (table.has_column(candidate)) {
            id_col = table.column(candidate, context);
            found = true;
            break;
        }
    }
    if (!found)
        throw ValidationError(context + ": need a target_id, dish_id or food_id column");
    std::array<std::size_t, 5> taste_cols{};
    for (std::size_t t = 0; t < 5; ++t) taste_cols[t] = table.column(kTasteNames[t], context);

    std::vector<std::pair<std::string, TasteVector>> out;
    std::map<std::string, std::size_t> seen;
    for (const CsvRecord& row : table.rows) {
        const std::string& id = row.fields[id_col];
        if (id.empty())
            throw ValidationError(context + ": line " + std::to_string(row.line) + ": empty id");
        if (!seen.emplace(id, row.line).second)
            throw ValidationError(context + ": line " + std::to_string(row.line) +
                                  ": duplicate id '" + id + "'");
        TasteVector v;
        for (std::size_t t = 0; t < 5; ++t)
            v[t] = parse_number(row.fields[taste_cols[t]], context, row.line, kTasteNames[t]);
        out.emplace_back(id, v);
    }
    if (out.empty()) throw ValidationError(context + ": no rows");
    return out;
}

}  // namespace mfa::cli
