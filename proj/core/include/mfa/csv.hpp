#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace mfa {

// One parsed CSV record plus the 1-based line number its first byte came
// from, so ingestion diagnostics can point at the offending row.
struct CsvRecord {
    std::vector<std::string> fields;
    std::size_t line = 0;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<CsvRecord> rows;

    // Index of a named column, or ValidationError naming the file context.
    std::size_t column(const std::string& name, const std::string& context) const;
    bool has_column(const std::string& name) const;
};

// RFC-4180 style reader: quoted fields, "" escapes, embedded newlines,
// LF or CRLF endings. First record is the header.
CsvTable read_csv(const std::filesystem::path& path);
CsvTable read_csv_string(const std::string& content, const std::string& context);

std::string csv_escape(const std::string& field);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

// Fixed deterministic formatting for report files: shortest representation
// that round-trips is not needed; 12 significant digits is stable and diffable.
std::string format_double(double v);

}  // namespace mfa
