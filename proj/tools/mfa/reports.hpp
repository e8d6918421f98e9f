#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "mfa/audio.hpp"
#include "mfa/matching.hpp"
#include "mfa/perceptual.hpp"
#include "mfa/taste.hpp"
#include "mfa/text_stats.hpp"
#include "mfa/transfer.hpp"

namespace mfa::cli {

void write_food_profiles(const std::filesystem::path& path, const std::vector<FoodProfile>& profiles);

void write_taste_vectors(const std::filesystem::path& path, const std::string& id_column,
                         const std::vector<std::pair<std::string, TasteVector>>& rows);

void write_sweep(const std::filesystem::path& dir, const SweepResult& sweep, double lambda);

// matches.csv doubles as a perceptual targets table: it carries target_id,
// the matched track_id and the five target taste columns.
void write_matches(const std::filesystem::path& dir, const std::vector<MatchResult>& matches,
                   const std::vector<std::pair<std::string, TasteVector>>& targets);

void write_transfer(const std::filesystem::path& dir, const TransferReport& report);

void write_alignment(const std::filesystem::path& dir, const AlignmentReport& report);

void write_text_reports(const std::filesystem::path& dir, const GenreTestReport& genres,
                        const GenreFlavorTable& table, const Dendrogram& dendrogram,
                        const std::vector<MoodEffect>& moods, const TextClusterReport& clusters);

void write_features(const std::filesystem::path& path,
                    const std::vector<std::pair<std::string, FeatureVector>>& rows);

}  // namespace mfa::cli
