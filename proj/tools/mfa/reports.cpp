#include "reports.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <map>

#include "mfa/csv.hpp"
#include "mfa/errors.hpp"

namespace mfa::cli {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file: " + path.string());
    return out;
}

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::vector<std::string> taste_header(const std::string& id_column) {
    std::vector<std::string> header{id_column};
    for (const char* name : kTasteNames) header.emplace_back(name);
    return header;
}

}  // namespace

void write_food_profiles(const std::filesystem::path& path,
                         const std::vector<FoodProfile>& profiles) {
    std::ofstream out = open_out(path);
    std::vector<std::string> header{"food_id", "food_group"};
    for (const char* name : kTasteNames) header.emplace_back(name);
    header.emplace_back("zero_flagged");
    write_csv_row(out, header);
    for (const FoodProfile& p : profiles) {
        std::vector<std::string> row{p.food_id, p.food_group};
        for (std::size_t t = 0; t < 5; ++t) row.push_back(format_double(p.vector[t]));
        row.push_back(p.zero_flagged ? "1" : "0");
        write_csv_row(out, row);
    }
}

void write_taste_vectors(const std::filesystem::path& path, const std::string& id_column,
                         const std::vector<std::pair<std::string, TasteVector>>& rows) {
    std::ofstream out = open_out(path);
    write_csv_row(out, taste_header(id_column));
    for (const auto& [id, v] : rows) {
        std::vector<std::string> row{id};
        for (std::size_t t = 0; t < 5; ++t) row.push_back(format_double(v[t]));
        write_csv_row(out, row);
    }
}

void write_sweep(const std::filesystem::path& dir, const SweepResult& sweep, double lambda) {
    {
        std::ofstream out = open_out(dir / "sweep.csv");
        write_csv_row(out, {"ratio", "objective", "ch_index", "ch_infinite", "mean_spread"});
        for (const SweepPoint& p : sweep.grid) {
            write_csv_row(out, {format_double(p.ratio), format_double(p.objective),
                                format_double(p.ch_index), p.ch_infinite ? "1" : "0",
                                format_double(p.mean_spread)});
        }
    }
    json j;
    j["best_ratio"] = sweep.best_ratio;
    j["lambda"] = lambda;
    j["grid_size"] = sweep.grid.size();
    write_json(dir / "sweep.json", j);
}

void write_matches(const std::filesystem::path& dir, const std::vector<MatchResult>& matches,
                   const std::vector<std::pair<std::string, TasteVector>>& targets) {
    std::map<std::string, const TasteVector*> taste_of;
    for (const auto& [id, v] : targets) taste_of.emplace(id, &v);

    {
        std::ofstream out = open_out(dir / "matches.csv");
        std::vector<std::string> header{"target_id", "track_id", "distance", "d_max",
                                        "compatibility_pct"};
        for (const char* name : kTasteNames) header.emplace_back(name);
        write_csv_row(out, header);
        for (const MatchResult& m : matches) {
            std::vector<std::string> row{m.target_id, m.track_id, format_double(m.distance),
                                         format_double(m.d_max), format_double(m.compatibility_pct)};
            const TasteVector& v = *taste_of.at(m.target_id);
            for (std::size_t t = 0; t < 5; ++t) row.push_back(format_double(v[t]));
            write_csv_row(out, row);
        }
    }

    std::ofstream out = open_out(dir / "match_table.txt");
    out << "target            track             distance  compatibility\n";
    double acc = 0.0;
    for (const MatchResult& m : matches) {
        char line[256];
        std::snprintf(line, sizeof line, "%-17s %-17s %8s  %12s%%\n", m.target_id.c_str(),
                      m.track_id.c_str(), fixed(m.distance, 4).c_str(),
                      fixed(m.compatibility_pct, 1).c_str());
        out << line;
        acc += m.compatibility_pct;
    }
    if (!matches.empty())
        out << "mean compatibility: " << fixed(acc / static_cast<double>(matches.size()), 1) << "%\n";
}

void write_transfer(const std::filesystem::path& dir, const TransferReport& report) {
    auto profile_csv = [&](const std::filesystem::path& path, const Mat& profile) {
        std::ofstream out = open_out(path);
        std::vector<std::string> header{"feature"};
        for (const char* name : kTasteNames) header.emplace_back(name);
        write_csv_row(out, header);
        for (std::size_t i = 0; i < profile.rows(); ++i) {
            std::vector<std::string> row{report.feature_names[i]};
            for (std::size_t t = 0; t < 5; ++t) row.push_back(format_double(profile(i, t)));
            write_csv_row(out, row);
        }
    };
    profile_csv(dir / "correlation_profile_a.csv", report.profile_a);
    profile_csv(dir / "correlation_profile_b.csv", report.profile_b);
    profile_csv(dir / "importance_a.csv", report.importance_a);
    profile_csv(dir / "importance_b.csv", report.importance_b);

    json j;
    for (std::size_t t = 0; t < 5; ++t) {
        json flavor;
        flavor["correlation_transfer_rho"] = report.correlation_transfer[t].rho;
        flavor["correlation_transfer_p"] = report.correlation_transfer[t].p;
        flavor["importance_transfer_rho"] = report.importance_transfer[t].rho;
        flavor["importance_transfer_p"] = report.importance_transfer[t].p;
        j["flavors"][kTasteNames[t]] = flavor;
    }
    j["sign_agreement"]["agree"] = report.sign_agreement.agree;
    j["sign_agreement"]["total"] = report.sign_agreement.total;
    j["cca"]["corpus_a"]["first_corr"] = report.cca_a.first_corr;
    j["cca"]["corpus_a"]["rank_deficient"] = report.cca_a.rank_deficient;
    j["cca"]["corpus_b"]["first_corr"] = report.cca_b.first_corr;
    j["cca"]["corpus_b"]["rank_deficient"] = report.cca_b.rank_deficient;
    j["parallel_analysis"]["corpus_a"] = report.pa_factors_a;
    j["parallel_analysis"]["corpus_b"] = report.pa_factors_b;
    write_json(dir / "transfer_report.json", j);

    std::ofstream out = open_out(dir / "transfer_table.txt");
    out << "flavor   corr_transfer_rho      p   imp_transfer_rho      p\n";
    for (std::size_t t = 0; t < 5; ++t) {
        char line[160];
        std::snprintf(line, sizeof line, "%-8s %17s %6s %18s %6s\n", kTasteNames[t],
                      fixed(report.correlation_transfer[t].rho, 3).c_str(),
                      fixed(report.correlation_transfer[t].p, 3).c_str(),
                      fixed(report.importance_transfer[t].rho, 3).c_str(),
                      fixed(report.importance_transfer[t].p, 3).c_str());
        out << line;
    }
    out << "sign agreement: " << report.sign_agreement.agree << "/" << report.sign_agreement.total
        << "\n";
    out << "first canonical correlation: corpus_a " << fixed(report.cca_a.first_corr, 3)
        << ", corpus_b " << fixed(report.cca_b.first_corr, 3) << "\n";
    out << "parallel analysis factors: corpus_a " << report.pa_factors_a << ", corpus_b "
        << report.pa_factors_b << "\n";
}

void write_alignment(const std::filesystem::path& dir, const AlignmentReport& report) {
    json j;
    j["observed_mean_distance"] = report.alignment.d;
    j["permuted_mean"] = report.alignment.permuted_mean;
    j["permuted_sd"] = report.alignment.permuted_sd;
    j["z"] = report.alignment.z;
    j["p_perm"] = report.alignment.p;
    j["mantel_r"] = report.mantel.r;
    j["mantel_p"] = report.mantel.p;
    j["procrustes_m2"] = report.procrustes.m2;
    j["protest_p"] = report.procrustes.p;
    if (report.alignment.degenerate_null) j["degenerate_null"] = true;
    if (report.targets_constant_column) j["targets_constant_column"] = true;
    write_json(dir / "alignment_report.json", j);

    std::ofstream out = open_out(dir / "distance_matrix.csv");
    std::vector<std::string> header{"percept\\target"};
    for (const std::string& id : report.ids) header.push_back(id);
    write_csv_row(out, header);
    for (std::size_t i = 0; i < report.distances.rows(); ++i) {
        std::vector<std::string> row{report.ids[i]};
        for (std::size_t jcol = 0; jcol < report.distances.cols(); ++jcol)
            row.push_back(format_double(report.distances(i, jcol)));
        write_csv_row(out, row);
    }
}

void write_text_reports(const std::filesystem::path& dir, const GenreTestReport& genres,
                        const GenreFlavorTable& table, const Dendrogram& dendrogram,
                        const std::vector<MoodEffect>& moods, const TextClusterReport& clusters) {
    {
        json j;
        for (std::size_t t = 0; t < 5; ++t) {
            json flavor;
            flavor["H"] = genres.per_flavor[t].h;
            flavor["p"] = genres.per_flavor[t].p;
            std::size_t significant = 0;
            json pairs = json::array();
            for (const DunnResult& d : genres.dunn[t]) {
                json pair;
                pair["a"] = genres.genres[d.i];
                pair["b"] = genres.genres[d.j];
                pair["z"] = d.z;
                pair["p_adj"] = d.p_adj;
                pair["significant"] = d.significant;
                significant += static_cast<std::size_t>(d.significant);
                pairs.push_back(std::move(pair));
            }
            flavor["significant_pairs"] = significant;
            flavor["total_pairs"] = genres.dunn[t].size();
            flavor["dunn"] = std::move(pairs);
            j[kTasteNames[t]] = std::move(flavor);
        }
        write_json(dir / "genre_tests.json", j);
    }

    {
        std::ofstream out = open_out(dir / "genre_flavor_means.csv");
        std::vector<std::string> header{"genre", "count"};
        for (const char* name : kTasteNames) header.emplace_back(name);
        write_csv_row(out, header);
        for (std::size_t g = 0; g < table.genres.size(); ++g) {
            std::vector<std::string> row{table.genres[g], std::to_string(table.counts[g])};
            for (std::size_t t = 0; t < 5; ++t) row.push_back(format_double(table.means(g, t)));
            write_csv_row(out, row);
        }
    }

    {
        std::ofstream out = open_out(dir / "genre_dendrogram.csv");
        write_csv_row(out, {"cluster_a", "cluster_b", "height", "size"});
        for (const auto& m : dendrogram.merges)
            write_csv_row(out, {std::to_string(m.a), std::to_string(m.b), format_double(m.height),
                                std::to_string(m.size)});
        std::vector<std::string> order{"leaf_order"};
        for (std::size_t leaf : dendrogram.leaf_order) order.push_back(table.genres[leaf]);
        write_csv_row(out, order);
    }

    {
        std::ofstream out = open_out(dir / "mood_effects.csv");
        write_csv_row(out, {"mood", "flavor", "cohens_d", "n_tagged", "n_untagged"});
        for (const MoodEffect& e : moods)
            write_csv_row(out, {e.mood, kTasteNames[e.flavor], format_double(e.d),
                                std::to_string(e.n_tagged), std::to_string(e.n_untagged)});
    }

    {
        json j;
        j["k"] = clusters.k;
        j["silhouette"] = clusters.silhouette;
        j["documents"] = clusters.document_rows.size();
        json top = json::array();
        for (const auto& terms : clusters.top_terms) top.push_back(terms);
        j["top_terms"] = std::move(top);
        json assign = json::array();
        for (std::size_t i = 0; i < clusters.document_rows.size(); ++i) {
            json entry;
            entry["row"] = clusters.document_rows[i];
            entry["cluster"] = clusters.assignments[i];
            assign.push_back(std::move(entry));
        }
        j["assignments"] = std::move(assign);
        write_json(dir / "text_clusters.json", j);
    }
}

void write_features(const std::filesystem::path& path,
                    const std::vector<std::pair<std::string, FeatureVector>>& rows) {
    std::ofstream out = open_out(path);
    if (rows.empty()) throw ValidationError("write_features: no feature rows");
    std::vector<std::string> header{"id"};
    for (const std::string& name : rows.front().second.names) header.push_back("feat:" + name);
    write_csv_row(out, header);
    for (const auto& [id, fv] : rows) {
        std::vector<std::string> row{id};
        for (double v : fv.values) row.push_back(format_double(v));
        write_csv_row(out, row);
    }
}

}  // namespace mfa::cli
