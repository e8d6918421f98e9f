#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ingest.hpp"
#include "mfa/audio.hpp"
#include "mfa/corpus.hpp"
#include "mfa/errors.hpp"
#include "mfa/matching.hpp"
#include "mfa/perceptual.hpp"
#include "mfa/rng.hpp"
#include "mfa/sha256.hpp"
#include "mfa/taste.hpp"
#include "mfa/text_stats.hpp"
#include "mfa/transfer.hpp"
#include "mfa/wav.hpp"
#include "reports.hpp"

#ifndef MFA_VERSION
#define MFA_VERSION "0.0.0"
#endif

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using namespace mfa;
using namespace mfa::cli;

struct RunConfig {
    std::uint64_t seed = 17;
    std::string normalization = "l1";
    double d_max = 2.23606797749978969;  // sqrt(5), the L1-simplex diameter bound
    double alpha = 0.4;
    double beta = 1.0;
    double lambda = 10.0;
    std::size_t match_k = 1;
    std::size_t n_perm_alignment = 10000;
    std::size_t n_perm_mantel = 9999;
    std::size_t n_perm_protest = 9999;
    bool mantel_spearman = false;
    bool include_impaired = true;
    std::size_t rf_boot = 30;
    std::size_t rf_trees = 30;
    std::size_t rf_depth = 8;
    std::size_t rf_subsample = 5000;
    std::size_t pa_reps = 1000;
    double pa_percentile = 95.0;
    std::size_t sign_top_k = 5;
    std::size_t kmeans_k = 8;
    std::size_t kmeans_n_init = 10;
    std::size_t min_df = 2;
    std::size_t top_terms = 10;
    std::size_t mood_min_occurrences = 100;
    int frame = 2048;
    int hop = 512;
    double segment_seconds = 0.0;  // 0: one segment per file
    std::map<std::string, std::string> inputs;
    std::string out = "out";

    NormScheme scheme() const {
        const auto s = parse_norm_scheme(normalization);
        if (!s) throw ValidationError("unknown normalization scheme '" + normalization + "'");
        return *s;
    }
};

template <typename T>
void maybe(const json& j, const char* key, T& field) {
    if (const auto it = j.find(key); it != j.end()) field = it->get<T>();
}

void overlay(RunConfig& cfg, const json& j) {
    if (!j.is_object()) throw ValidationError("config file: top level must be an object");
    maybe(j, "seed", cfg.seed);
    maybe(j, "normalization", cfg.normalization);
    maybe(j, "d_max", cfg.d_max);
    maybe(j, "alpha", cfg.alpha);
    maybe(j, "beta", cfg.beta);
    maybe(j, "lambda", cfg.lambda);
    maybe(j, "match_k", cfg.match_k);
    maybe(j, "n_perm_alignment", cfg.n_perm_alignment);
    maybe(j, "n_perm_mantel", cfg.n_perm_mantel);
    maybe(j, "n_perm_protest", cfg.n_perm_protest);
    maybe(j, "mantel_spearman", cfg.mantel_spearman);
    maybe(j, "include_impaired", cfg.include_impaired);
    maybe(j, "rf_boot", cfg.rf_boot);
    maybe(j, "rf_trees", cfg.rf_trees);
    maybe(j, "rf_depth", cfg.rf_depth);
    maybe(j, "rf_subsample", cfg.rf_subsample);
    maybe(j, "pa_reps", cfg.pa_reps);
    maybe(j, "pa_percentile", cfg.pa_percentile);
    maybe(j, "sign_top_k", cfg.sign_top_k);
    maybe(j, "kmeans_k", cfg.kmeans_k);
    maybe(j, "kmeans_n_init", cfg.kmeans_n_init);
    maybe(j, "min_df", cfg.min_df);
    maybe(j, "top_terms", cfg.top_terms);
    maybe(j, "mood_min_occurrences", cfg.mood_min_occurrences);
    maybe(j, "frame", cfg.frame);
    maybe(j, "hop", cfg.hop);
    maybe(j, "segment_seconds", cfg.segment_seconds);
    maybe(j, "out", cfg.out);
    if (const auto it = j.find("inputs"); it != j.end()) {
        if (!it->is_object()) throw ValidationError("config file: 'inputs' must be an object");
        for (const auto& [key, value] : it->items()) cfg.inputs[key] = value.get<std::string>();
    }
}

json snapshot(const RunConfig& cfg) {
    json j;
    j["seed"] = cfg.seed;
    j["normalization"] = cfg.normalization;
    j["d_max"] = cfg.d_max;
    j["alpha"] = cfg.alpha;
    j["beta"] = cfg.beta;
    j["lambda"] = cfg.lambda;
    j["match_k"] = cfg.match_k;
    j["n_perm_alignment"] = cfg.n_perm_alignment;
    j["n_perm_mantel"] = cfg.n_perm_mantel;
    j["n_perm_protest"] = cfg.n_perm_protest;
    j["mantel_spearman"] = cfg.mantel_spearman;
    j["include_impaired"] = cfg.include_impaired;
    j["rf_boot"] = cfg.rf_boot;
    j["rf_trees"] = cfg.rf_trees;
    j["rf_depth"] = cfg.rf_depth;
    j["rf_subsample"] = cfg.rf_subsample;
    j["pa_reps"] = cfg.pa_reps;
    j["pa_percentile"] = cfg.pa_percentile;
    j["sign_top_k"] = cfg.sign_top_k;
    j["kmeans_k"] = cfg.kmeans_k;
    j["kmeans_n_init"] = cfg.kmeans_n_init;
    j["min_df"] = cfg.min_df;
    j["top_terms"] = cfg.top_terms;
    j["mood_min_occurrences"] = cfg.mood_min_occurrences;
    j["frame"] = cfg.frame;
    j["hop"] = cfg.hop;
    j["segment_seconds"] = cfg.segment_seconds;
    j["inputs"] = cfg.inputs;
    j["out"] = cfg.out;
    return j;
}

struct RunContext {
    RunConfig cfg;
    std::string command;
    fs::path reports_dir;
    json input_digests = json::object();
    json timings = json::object();

    explicit RunContext(RunConfig config, std::string cmd)
        : cfg(std::move(config)), command(std::move(cmd)) {
        reports_dir = fs::path(cfg.out) / "reports";
        fs::create_directories(reports_dir);
    }

    fs::path input(const std::string& key) {
        const auto it = cfg.inputs.find(key);
        if (it == cfg.inputs.end() || it->second.empty())
            throw ValidationError("missing required input '" + key +
                                  "' (set it in the config file or by flag)");
        fs::path path = it->second;
        if (!fs::exists(path)) throw ValidationError("input '" + key + "': no such file: " + it->second);
        if (fs::is_regular_file(path)) input_digests[path.generic_string()] = sha256_file_hex(path);
        return path;
    }

    bool has_input(const std::string& key) const {
        const auto it = cfg.inputs.find(key);
        return it != cfg.inputs.end() && !it->second.empty();
    }

    template <typename Fn>
    void stage(const std::string& name, Fn&& fn) {
        const auto start = std::chrono::steady_clock::now();
        std::forward<Fn>(fn)();
        const auto stop = std::chrono::steady_clock::now();
        timings[name] =
            std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(stop - start)
                .count();
    }

    void write_manifest() {
        json manifest;
        manifest["tool"] = "mfa";
        manifest["version"] = MFA_VERSION;
        manifest["command"] = command;
        manifest["config"] = snapshot(cfg);
        manifest["inputs"] = input_digests;
        manifest["timings_ms"] = timings;
        std::ofstream out(fs::path(cfg.out) / "manifest.json", std::ios::binary);
        if (!out) throw ValidationError("cannot write manifest under " + cfg.out);
        out << manifest.dump(2) << '\n';
    }
};

WeightConfig weight_config(const RunConfig& cfg) {
    return WeightConfig{cfg.alpha, cfg.beta, cfg.lambda};
}

void run_taste_build(RunContext& ctx) {
    ctx.stage("taste_build", [&] {
        const FoodBank bank =
            read_food_bank(ctx.input("foods"), ctx.input("compounds"), ctx.input("nutrients"),
                           ctx.input("nutrient_map"));
        const std::vector<FoodProfile> profiles =
            build_food_profiles(bank, weight_config(ctx.cfg), ctx.cfg.scheme());
        write_food_profiles(ctx.reports_dir / "food_profiles.csv", profiles);

        if (!ctx.has_input("dishes")) return;
        std::map<std::string, const FoodProfile*> by_id;
        for (const FoodProfile& p : profiles) by_id.emplace(p.food_id, &p);
        std::vector<std::pair<std::string, TasteVector>> dish_rows;
        for (const DishSpec& dish : read_dishes(ctx.input("dishes"))) {
            std::vector<TasteVector> members;
            for (const std::string& food_id : dish.food_ids) {
                const auto it = by_id.find(food_id);
                if (it == by_id.end())
                    throw ValidationError("dish '" + dish.dish_id + "': unknown food_id '" +
                                          food_id + "'");
                members.push_back(it->second->vector);
            }
            dish_rows.emplace_back(dish.dish_id, blend_dish(members, ctx.cfg.scheme()));
        }
        write_taste_vectors(ctx.reports_dir / "dish_profiles.csv", "dish_id", dish_rows);
    });
}

void run_taste_sweep(RunContext& ctx) {
    ctx.stage("taste_sweep", [&] {
        const FoodBank bank =
            read_food_bank(ctx.input("foods"), ctx.input("compounds"), ctx.input("nutrients"),
                           ctx.input("nutrient_map"));
        const std::vector<double> grid = default_sweep_grid();
        const SweepResult sweep = sweep_weights(bank, ctx.cfg.lambda, grid, ctx.cfg.scheme());
        write_sweep(ctx.reports_dir, sweep, ctx.cfg.lambda);
    });
}

void run_features_extract(RunContext& ctx) {
    ctx.stage("features_extract", [&] {
        const fs::path audio = ctx.input("audio");
        std::vector<fs::path> files;
        if (fs::is_directory(audio)) {
            for (const auto& entry : fs::directory_iterator(audio))
                if (entry.is_regular_file() && entry.path().extension() == ".wav")
                    files.push_back(entry.path());
            std::sort(files.begin(), files.end());
            for (const fs::path& f : files)
                ctx.input_digests[f.generic_string()] = sha256_file_hex(f);
        } else {
            files.push_back(audio);
        }
        if (files.empty()) throw ValidationError("no .wav files under " + audio.string());

        const StftConfig stft_cfg{ctx.cfg.frame, ctx.cfg.hop, Window::Hann};
        const FeatureManifest manifest = FeatureManifest::canonical();
        std::vector<std::pair<std::string, FeatureVector>> rows;
        for (const fs::path& file : files) {
            const AudioSegment full = read_wav(file);
            const std::string stem = file.stem().string();
            if (ctx.cfg.segment_seconds <= 0.0) {
                rows.emplace_back(stem, extract_features(full, stft_cfg, manifest));
                continue;
            }
            const auto window = static_cast<std::size_t>(ctx.cfg.segment_seconds *
                                                         static_cast<double>(full.sample_rate_hz));
            if (window < static_cast<std::size_t>(ctx.cfg.frame))
                throw ValidationError("segment_seconds shorter than one analysis frame");
            std::size_t index = 0;
            for (std::size_t start = 0; start + window <= full.samples.size(); start += window) {
                AudioSegment seg;
                seg.sample_rate_hz = full.sample_rate_hz;
                seg.samples.assign(full.samples.begin() + static_cast<std::ptrdiff_t>(start),
                                   full.samples.begin() + static_cast<std::ptrdiff_t>(start + window));
                char id[512];
                std::snprintf(id, sizeof id, "%s#%04zu", stem.c_str(), index++);
                rows.emplace_back(id, extract_features(seg, stft_cfg, manifest));
            }
            if (index == 0)
                throw ValidationError(file.filename().string() +
                                      ": shorter than one segment window");
        }
        write_features(ctx.reports_dir / "features.csv", rows);
    });
}

void run_match(RunContext& ctx) {
    ctx.stage("match", [&] {
        fs::path targets_path;
        if (ctx.has_input("match_targets")) {
            targets_path = ctx.input("match_targets");
        } else if (fs::exists(ctx.reports_dir / "dish_profiles.csv")) {
            targets_path = ctx.reports_dir / "dish_profiles.csv";
        } else if (fs::exists(ctx.reports_dir / "food_profiles.csv")) {
            targets_path = ctx.reports_dir / "food_profiles.csv";
        } else {
            throw ValidationError(
                "match: no targets (set input 'match_targets' or run 'taste build' first)");
        }
        const auto targets = read_taste_table(targets_path);
        const CorpusTable corpus = ingest_corpus(ctx.input("corpus_a"));

        MatchOptions opts;
        opts.k = ctx.cfg.match_k;
        opts.d_max = ctx.cfg.d_max;
        opts.scheme = ctx.cfg.scheme();

        std::vector<MatchResult> matches;
        bool any_warning = false;
        for (const auto& [id, taste] : targets) {
            bool warn = false;
            for (MatchResult& m : match_target(taste, id, corpus, opts, &warn))
                matches.push_back(std::move(m));
            any_warning = any_warning || warn;
        }
        if (any_warning)
            std::cerr << "warning: some vectors do not look " << ctx.cfg.normalization
                      << "-normalized; distances may exceed d_max\n";
        write_matches(ctx.reports_dir, matches, targets);
    });
}

void run_stats_transfer(RunContext& ctx) {
    ctx.stage("stats_transfer", [&] {
        const CorpusTable a = ingest_corpus(ctx.input("corpus_a"));
        const CorpusTable b = ingest_corpus(ctx.input("corpus_b"));
        TransferConfig tc;
        tc.importance.n_boot = ctx.cfg.rf_boot;
        tc.importance.forest.n_trees = ctx.cfg.rf_trees;
        tc.importance.forest.max_depth = ctx.cfg.rf_depth;
        tc.importance.subsample = ctx.cfg.rf_subsample;
        tc.sign_top_k = ctx.cfg.sign_top_k;
        tc.pa_reps = ctx.cfg.pa_reps;
        tc.pa_percentile = ctx.cfg.pa_percentile;
        const TransferReport report =
            run_transfer(a, b, tc, Rng(ctx.cfg.seed).derive("transfer"));
        write_transfer(ctx.reports_dir, report);
    });
}

void run_stats_perceptual(RunContext& ctx) {
    ctx.stage("stats_perceptual", [&] {
        const std::vector<TargetRecord> targets = read_targets(ctx.input("targets"));
        const std::vector<RatingRecord> ratings = read_ratings(ctx.input("ratings"));
        const PerceptMatrix percepts = mean_percepts(ratings, ctx.cfg.include_impaired);

        Mat target_mat(targets.size(), 5);
        Mat percept_mat(targets.size(), 5);
        std::vector<std::string> ids;
        for (std::size_t i = 0; i < targets.size(); ++i) {
            const auto it = std::lower_bound(percepts.track_ids.begin(), percepts.track_ids.end(),
                                             targets[i].track_id);
            if (it == percepts.track_ids.end() || *it != targets[i].track_id)
                throw ValidationError("target '" + targets[i].target_id +
                                      "': no ratings for track '" + targets[i].track_id + "'");
            const auto row = static_cast<std::size_t>(it - percepts.track_ids.begin());
            for (std::size_t t = 0; t < 5; ++t) {
                target_mat(i, t) = targets[i].taste[t];
                percept_mat(i, t) = percepts.percepts(row, t);
            }
            ids.push_back(targets[i].target_id);
        }

        AlignmentConfig ac;
        ac.n_perm_alignment = ctx.cfg.n_perm_alignment;
        ac.n_perm_mantel = ctx.cfg.n_perm_mantel;
        ac.n_perm_procrustes = ctx.cfg.n_perm_protest;
        ac.mantel_spearman = ctx.cfg.mantel_spearman;
        const AlignmentReport report =
            run_alignment(target_mat, percept_mat, ids, ac, Rng(ctx.cfg.seed).derive("perceptual"));
        write_alignment(ctx.reports_dir, report);
    });
}

void run_stats_text(RunContext& ctx) {
    ctx.stage("stats_text", [&] {
        const CorpusTable corpus = ingest_corpus(ctx.input("corpus_a"));
        const GenreTestReport genres = genre_tests(corpus);
        const GenreFlavorTable table = genre_flavor_means(corpus);
        const Dendrogram dendrogram = average_linkage(table.means);
        const std::vector<MoodEffect> moods = mood_effects(corpus, ctx.cfg.mood_min_occurrences);
        const TextClusterReport clusters =
            cluster_texts(corpus, ctx.cfg.kmeans_k, Rng(ctx.cfg.seed).derive("text"), ctx.cfg.min_df,
                          ctx.cfg.top_terms, ctx.cfg.kmeans_n_init);
        write_text_reports(ctx.reports_dir, genres, table, dendrogram, moods, clusters);
    });
}

void run_report_all(RunContext& ctx) {
    run_taste_build(ctx);
    run_taste_sweep(ctx);
    if (ctx.has_input("audio")) run_features_extract(ctx);
    if (ctx.has_input("corpus_a")) {
        run_match(ctx);
        if (ctx.has_input("corpus_b")) run_stats_transfer(ctx);
        run_stats_text(ctx);
    }
    if (ctx.has_input("targets") && ctx.has_input("ratings")) run_stats_perceptual(ctx);
}

int dispatch(const std::string& command, RunConfig cfg) {
    RunContext ctx(std::move(cfg), command);
    if (command == "taste build") {
        run_taste_build(ctx);
    } else if (command == "taste sweep") {
        run_taste_sweep(ctx);
    } else if (command == "features extract") {
        run_features_extract(ctx);
    } else if (command == "match") {
        run_match(ctx);
    } else if (command == "stats transfer") {
        run_stats_transfer(ctx);
    } else if (command == "stats perceptual") {
        run_stats_perceptual(ctx);
    } else if (command == "stats text") {
        run_stats_text(ctx);
    } else if (command == "report all") {
        run_report_all(ctx);
    }
    ctx.write_manifest();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"taste-music pipeline: taste vectors, audio features, matching and statistics"};
    app.set_version_flag("--version", MFA_VERSION);
    app.fallthrough();
    app.require_subcommand(1);

    std::optional<std::uint64_t> seed;
    std::optional<std::string> config_path;
    std::optional<std::string> out_dir;
    std::optional<std::size_t> n_perm;
    std::optional<double> d_max;
    std::optional<std::string> normalization;
    std::optional<std::size_t> subsample;
    app.add_option("--seed", seed, "master seed for all derived random streams");
    app.add_option("--config", config_path, "JSON config file (default: $MFA_CONFIG)");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--n-perm", n_perm, "permutation count for all permutation tests");
    app.add_option("--d-max", d_max, "distance ceiling of the compatibility score");
    app.add_option("--normalization", normalization, "taste normalization scheme: l1, l2 or max")
        ->check(CLI::IsMember({"l1", "l2", "max"}));
    app.add_option("--subsample", subsample, "row subsample per importance bootstrap iteration");

    std::map<std::string, std::optional<std::string>> input_flags;
    auto input_option = [&](CLI::App* cmd, const std::string& flag, const std::string& key,
                            const std::string& help) {
        cmd->add_option(flag, input_flags[key], help);
    };

    CLI::App* taste = app.add_subcommand("taste", "taste-vector construction");
    CLI::App* taste_build = taste->add_subcommand("build", "build per-food and per-dish profiles");
    CLI::App* taste_sweep = taste->add_subcommand("sweep", "alpha/beta ratio sweep");
    for (CLI::App* cmd : {taste_build, taste_sweep}) {
        input_option(cmd, "--foods", "foods", "foods table (food_id, food_group)");
        input_option(cmd, "--compounds", "compounds", "compound concentrations and taste probabilities");
        input_option(cmd, "--nutrients", "nutrients", "nutrient amounts");
        input_option(cmd, "--nutrient-map", "nutrient_map", "nutrient-to-taste mapping");
    }
    input_option(taste_build, "--dishes", "dishes", "dish compositions (dish_id, food_ids)");

    CLI::App* features = app.add_subcommand("features", "audio feature extraction");
    CLI::App* features_extract = features->add_subcommand("extract", "extract mean/std descriptors");
    input_option(features_extract, "--audio", "audio", "WAV file or directory of WAV files");
    std::optional<double> segment_seconds;
    features_extract->add_option("--segment-seconds", segment_seconds,
                                 "split files into fixed windows (0: whole file)");

    CLI::App* match = app.add_subcommand("match", "nearest tracks for taste targets");
    input_option(match, "--targets", "match_targets", "taste targets (id + five taste columns)");
    input_option(match, "--corpus", "corpus_a", "music corpus CSV");
    std::optional<std::size_t> match_k;
    match->add_option("--k", match_k, "matches per target");

    CLI::App* stats = app.add_subcommand("stats", "statistical batteries");
    CLI::App* stats_transfer = stats->add_subcommand("transfer", "cross-corpus transfer diagnostics");
    input_option(stats_transfer, "--corpus-a", "corpus_a", "first corpus CSV");
    input_option(stats_transfer, "--corpus-b", "corpus_b", "second corpus CSV");
    CLI::App* stats_perceptual = stats->add_subcommand("perceptual", "target-percept alignment");
    input_option(stats_perceptual, "--targets", "targets", "targets with matched track ids");
    input_option(stats_perceptual, "--ratings", "ratings", "per-subject Likert ratings");
    bool exclude_impaired = false;
    stats_perceptual->add_flag("--exclude-impaired", exclude_impaired,
                               "drop participants with self-reported impairments");
    CLI::App* stats_text = stats->add_subcommand("text", "genre, mood and caption probes");
    input_option(stats_text, "--corpus", "corpus_a", "music corpus CSV");
    std::optional<std::size_t> kmeans_k;
    stats_text->add_option("--k", kmeans_k, "caption cluster count");

    CLI::App* report = app.add_subcommand("report", "orchestrated runs");
    CLI::App* report_all = report->add_subcommand("all", "run every configured analysis");
    (void)report_all;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << e.what() << "\n(use --help for usage)\n";
        return 2;
    }

    try {
        RunConfig cfg;
        std::string file = config_path.value_or("");
        if (file.empty()) {
            if (const char* env = std::getenv("MFA_CONFIG")) file = env;
        }
        if (!file.empty()) {
            std::ifstream in(file);
            if (!in) throw ValidationError("cannot open config file: " + file);
            json j;
            try {
                in >> j;
            } catch (const json::parse_error& e) {
                throw ValidationError("config file " + file + ": " + e.what());
            }
            overlay(cfg, j);
        }

        if (seed) cfg.seed = *seed;
        if (out_dir) cfg.out = *out_dir;
        if (d_max) cfg.d_max = *d_max;
        if (normalization) cfg.normalization = *normalization;
        if (subsample) cfg.rf_subsample = *subsample;
        if (n_perm) {
            cfg.n_perm_alignment = *n_perm;
            cfg.n_perm_mantel = *n_perm;
            cfg.n_perm_protest = *n_perm;
        }
        if (match_k) cfg.match_k = *match_k;
        if (kmeans_k) cfg.kmeans_k = *kmeans_k;
        if (segment_seconds) cfg.segment_seconds = *segment_seconds;
        if (exclude_impaired) cfg.include_impaired = false;
        for (const auto& [key, value] : input_flags)
            if (value) cfg.inputs[key] = *value;

        if (cfg.d_max <= 0.0) throw ValidationError("--d-max must be positive");

        std::string command;
        if (taste_build->parsed()) command = "taste build";
        else if (taste_sweep->parsed()) command = "taste sweep";
        else if (features_extract->parsed()) command = "features extract";
        else if (match->parsed()) command = "match";
        else if (stats_transfer->parsed()) command = "stats transfer";
        else if (stats_perceptual->parsed()) command = "stats perceptual";
        else if (stats_text->parsed()) command = "stats text";
        else if (report_all->parsed()) command = "report all";
        else throw ValidationError("missing subcommand (use --help)");

        return dispatch(command, std::move(cfg));
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DegeneracyError& e) {
        std::cerr << "degenerate: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
