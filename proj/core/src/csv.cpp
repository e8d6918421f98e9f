#include "mfa/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "mfa/errors.hpp"

namespace mfa {

std::size_t CsvTable::column(const std::string& name, const std::string& context) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw ValidationError(context + ": missing column '" + name + "'");
}

bool CsvTable::has_column(const std::string& name) const {
    for (const auto& h : header) {
        if (h == name) return true;
    }
    return false;
}

namespace {

CsvTable parse_csv(const std::string& text, const std::string& context) {
    CsvTable table;
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    bool any_field_content = false;
    std::size_t line = 1;
    std::size_t record_line = 1;

    auto end_field = [&] {
        fields.push_back(std::move(field));
        field.clear();
        any_field_content = true;
    };
    auto end_record = [&] {
        if (fields.empty() && field.empty() && !any_field_content) return;  // blank line
        end_field();
        if (table.header.empty()) {
            table.header = std::move(fields);
        } else {
            if (fields.size() != table.header.size()) {
                throw ValidationError(context + ": line " + std::to_string(record_line) + ": expected " +
                                      std::to_string(table.header.size()) + " fields, got " +
                                      std::to_string(fields.size()));
            }
            table.rows.push_back({std::move(fields), record_line});
        }
        fields.clear();
        any_field_content = false;
        record_line = line;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
        } else if (c == '"') {
            in_quotes = true;
            any_field_content = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\r') {
            // consumed; LF handled next
        } else if (c == '\n') {
            ++line;
            end_record();
            record_line = line;
        } else {
            field += c;
        }
    }
    if (in_quotes) throw ValidationError(context + ": unterminated quoted field");
    if (!field.empty() || !fields.empty() || any_field_content) end_record();
    if (table.header.empty()) throw ValidationError(context + ": empty file");
    return table;
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str(), path.filename().string());
}

CsvTable read_csv_string(const std::string& content, const std::string& context) {
    return parse_csv(content, context);
}

std::string csv_escape(const std::string& field) {
    const bool needs_quotes =
        field.find_first_of(",\"\n\r") != std::string::npos || (!field.empty() && (field.front() == ' ' || field.back() == ' '));
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << csv_escape(fields[i]);
    }
    out << '\n';
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace mfa
