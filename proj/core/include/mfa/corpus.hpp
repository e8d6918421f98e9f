#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mfa/mat.hpp"
#include "mfa/taste.hpp"

namespace mfa {

struct CorpusRowMeta {
    std::string id;
    std::string genre;
    std::vector<std::string> moods;
    std::string text;
};

// Row-aligned corpus: audio features, five-dimensional flavor annotations
// and metadata for one collection. Feature layout is whatever the file's
// header declares (columns prefixed "feat:").
struct CorpusTable {
    std::vector<std::string> feature_names;
    Mat features;  // n x p
    Mat flavors;   // n x 5, canonical taste order
    std::vector<CorpusRowMeta> meta;

    std::size_t size() const { return meta.size(); }
    TasteVector flavor_vector(std::size_t row) const;
};

// Reads and validates a corpus CSV. Required columns: id, flavor:<taste>
// for the five tastes, and at least one feat:<name> column; genre, moods
// (separated by '|') and text are optional. Rejects duplicate ids and
// non-finite values with row/column diagnostics.
CorpusTable ingest_corpus(const std::filesystem::path& path);

void write_corpus(const std::filesystem::path& path, const CorpusTable& corpus);

// Both corpora must expose identical feature manifests for cross-corpus
// statistics; mismatches are reported by name.
void require_matching_manifests(const CorpusTable& a, const CorpusTable& b);

}  // namespace mfa
