#include "mfa/corpus.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "mfa/csv.hpp"
#include "mfa/errors.hpp"

namespace mfa {

namespace {

constexpr const char* kFeatPrefix = "feat:";
constexpr const char* kFlavorPrefix = "flavor:";

double parse_double_field(const std::string& s, const std::string& context, std::size_t line,
                          const std::string& column) {
    double v = 0.0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end)
        throw ValidationError(context + ": line " + std::to_string(line) + ", column '" + column +
                              "': cannot parse number from '" + s + "'");
    if (!std::isfinite(v))
        throw ValidationError(context + ": line " + std::to_string(line) + ", column '" + column +
                              "': non-finite value");
    return v;
}

std::vector<std::string> split_moods(const std::string& s) {
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

std::string join_moods(const std::vector<std::string>& moods) {
    std::string out;
    for (std::size_t i = 0; i < moods.size(); ++i) {
        if (i) out += '|';
        out += moods[i];
    }
    return out;
}

}  // namespace

TasteVector CorpusTable::flavor_vector(std::size_t row) const {
    TasteVector v;
    for (std::size_t t = 0; t < 5; ++t) v[t] = flavors(row, t);
    return v;
}

CorpusTable ingest_corpus(const std::filesystem::path& path) {
    const CsvTable csv = read_csv(path);
    const std::string context = path.filename().string();

    const std::size_t id_col = csv.column("id", context);
    std::array<std::size_t, 5> flavor_cols{};
    for (std::size_t t = 0; t < 5; ++t) {
        flavor_cols[t] = csv.column(std::string(kFlavorPrefix) + kTasteNames[t], context);
    }

    CorpusTable corpus;
    std::vector<std::size_t> feat_cols;
    for (std::size_t c = 0; c < csv.header.size(); ++c) {
        if (csv.header[c].rfind(kFeatPrefix, 0) == 0) {
            feat_cols.push_back(c);
            corpus.feature_names.push_back(csv.header[c].substr(std::string(kFeatPrefix).size()));
        }
    }
    if (feat_cols.empty()) throw ValidationError(context + ": no 'feat:' columns found");
    {
        std::set<std::string> uniq(corpus.feature_names.begin(), corpus.feature_names.end());
        if (uniq.size() != corpus.feature_names.size())
            throw ValidationError(context + ": duplicate feature columns");
    }

    const bool has_genre = csv.has_column("genre");
    const bool has_moods = csv.has_column("moods");
    const bool has_text = csv.has_column("text");
    const std::size_t genre_col = has_genre ? csv.column("genre", context) : 0;
    const std::size_t moods_col = has_moods ? csv.column("moods", context) : 0;
    const std::size_t text_col = has_text ? csv.column("text", context) : 0;

    const std::size_t n = csv.rows.size();
    if (n == 0) throw ValidationError(context + ": no data rows");
    corpus.features = Mat(n, feat_cols.size());
    corpus.flavors = Mat(n, 5);
    corpus.meta.resize(n);

    std::set<std::string> seen_ids;
    for (std::size_t i = 0; i < n; ++i) {
        const CsvRecord& row = csv.rows[i];
        CorpusRowMeta& meta = corpus.meta[i];
        meta.id = row.fields[id_col];
        if (meta.id.empty())
            throw ValidationError(context + ": line " + std::to_string(row.line) + ": empty id");
        if (!seen_ids.insert(meta.id).second)
            throw ValidationError(context + ": line " + std::to_string(row.line) + ": duplicate id '" +
                                  meta.id + "'");
        if (has_genre) meta.genre = row.fields[genre_col];
        if (has_moods) meta.moods = split_moods(row.fields[moods_col]);
        if (has_text) meta.text = row.fields[text_col];

        for (std::size_t t = 0; t < 5; ++t) {
            corpus.flavors(i, t) =
                parse_double_field(row.fields[flavor_cols[t]], context, row.line, csv.header[flavor_cols[t]]);
        }
        for (std::size_t f = 0; f < feat_cols.size(); ++f) {
            corpus.features(i, f) =
                parse_double_field(row.fields[feat_cols[f]], context, row.line, csv.header[feat_cols[f]]);
        }
    }
    return corpus;
}

void write_corpus(const std::filesystem::path& path, const CorpusTable& corpus) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write: " + path.string());

    std::vector<std::string> header = {"id", "genre", "moods", "text"};
    for (std::size_t t = 0; t < 5; ++t) header.push_back(std::string(kFlavorPrefix) + kTasteNames[t]);
    for (const auto& f : corpus.feature_names) header.push_back(std::string(kFeatPrefix) + f);
    write_csv_row(out, header);

    for (std::size_t i = 0; i < corpus.size(); ++i) {
        std::vector<std::string> fields;
        fields.reserve(header.size());
        fields.push_back(corpus.meta[i].id);
        fields.push_back(corpus.meta[i].genre);
        fields.push_back(join_moods(corpus.meta[i].moods));
        fields.push_back(corpus.meta[i].text);
        for (std::size_t t = 0; t < 5; ++t) fields.push_back(format_double(corpus.flavors(i, t)));
        for (std::size_t f = 0; f < corpus.features.cols(); ++f)
            fields.push_back(format_double(corpus.features(i, f)));
        write_csv_row(out, fields);
    }
}

void require_matching_manifests(const CorpusTable& a, const CorpusTable& b) {
    if (a.feature_names == b.feature_names) return;
    std::ostringstream msg;
    msg << "corpus feature manifests differ (" << a.feature_names.size() << " vs "
        << b.feature_names.size() << " columns)";
    const std::size_t limit = std::min(a.feature_names.size(), b.feature_names.size());
    for (std::size_t i = 0; i < limit; ++i) {
        if (a.feature_names[i] != b.feature_names[i]) {
            msg << "; first mismatch at index " << i << ": '" << a.feature_names[i] << "' vs '"
                << b.feature_names[i] << "'";
            break;
        }
    }
    throw ValidationError(msg.str());
}

}  // namespace mfa
