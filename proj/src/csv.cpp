#include "followgraph/csv.hpp"

#include <cstdio>

#include "followgraph/errors.hpp"

namespace followgraph {

CsvReader::CsvReader(const std::filesystem::path& path)
    : owned_(std::make_unique<std::ifstream>(path, std::ios::binary)),
      in_(owned_.get()),
      source_(path.string()) {
    if (!*owned_) throw InputError(source_ + ": cannot open file");
    if (!read_record(header_)) throw InputError(source_ + ": empty file (missing header)");
}

CsvReader::CsvReader(std::istream& in, std::string source_name)
    : in_(&in), source_(std::move(source_name)) {
    if (!read_record(header_)) throw InputError(source_ + ": empty file (missing header)");
}

std::optional<std::size_t> CsvReader::column(std::string_view name) const {
    for (std::size_t i = 0; i < header_.size(); ++i)
        if (header_[i] == name) return i;
    return std::nullopt;
}

std::size_t CsvReader::require_column(std::string_view name) const {
    auto c = column(name);
    if (!c) throw InputError(source_ + ": missing required column '" + std::string(name) + "'");
    return *c;
}

bool CsvReader::next(std::vector<std::string>& fields) {
    if (!read_record(fields)) return false;
    if (fields.size() != header_.size())
        throw InputError(source_ + ":" + std::to_string(record_line_) + ": expected " +
                         std::to_string(header_.size()) + " fields, got " +
                         std::to_string(fields.size()));
    return true;
}

bool CsvReader::read_record(std::vector<std::string>& fields) {
    fields.clear();
    int c = in_->get();
    if (c == EOF) return false;
    ++line_;
    record_line_ = line_;

    std::string field;
    bool quoted = false;
    bool at_field_start = true;
    while (true) {
        if (c == EOF) {
            if (quoted)
                throw InputError(source_ + ":" + std::to_string(record_line_) +
                                 ": unterminated quoted field");
            fields.push_back(std::move(field));
            return true;
        }
        char ch = static_cast<char>(c);
        if (quoted) {
            if (ch == '"') {
                int peek = in_->get();
                if (peek == '"') {
                    field.push_back('"');
                } else {
                    quoted = false;
                    c = peek;
                    continue;  // reprocess the character after the closing quote
                }
            } else {
                if (ch == '\n') ++line_;
                field.push_back(ch);
            }
        } else if (ch == '"' && at_field_start) {
            quoted = true;
            at_field_start = false;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
            at_field_start = true;
        } else if (ch == '\n') {
            if (!field.empty() && field.back() == '\r') field.pop_back();
            fields.push_back(std::move(field));
            return true;
        } else {
            field.push_back(ch);
            at_field_start = false;
        }
        c = in_->get();
    }
}

CsvTable read_csv(const std::filesystem::path& path) {
    CsvReader reader(path);
    CsvTable table;
    table.header = reader.header();
    table.source = path.string();
    std::vector<std::string> fields;
    while (reader.next(fields)) table.rows.push_back(fields);
    return table;
}

std::optional<std::size_t> CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    return std::nullopt;
}

std::size_t CsvTable::require_column(std::string_view name) const {
    auto c = column(name);
    if (!c) throw InputError(source + ": missing required column '" + std::string(name) + "'");
    return *c;
}

std::string csv_field(std::string_view value) {
    bool needs_quotes = false;
    for (char c : value) {
        if (c == ',' || c == '"' || c == '\n' || c == '\r') {
            needs_quotes = true;
            break;
        }
    }
    if (!needs_quotes) return std::string(value);
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

std::string csv_row(std::span<const std::string> fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(',');
        out += csv_field(fields[i]);
    }
    out.push_back('\n');
    return out;
}

std::string format_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

}  // namespace followgraph
