#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace followgraph {

// Streaming RFC-4180 reader. UTF-8, LF records (CRLF tolerated on input),
// double-quote escaping. The first record is the header.
class CsvReader {
public:
    explicit CsvReader(const std::filesystem::path& path);
    CsvReader(std::istream& in, std::string source_name);

    const std::vector<std::string>& header() const { return header_; }
    std::optional<std::size_t> column(std::string_view name) const;
    std::size_t require_column(std::string_view name) const;  // throws InputError

    // Reads the next record into `fields`. Returns false at end of input.
    bool next(std::vector<std::string>& fields);

    // 1-based line number where the current record started.
    std::size_t record_line() const { return record_line_; }
    const std::string& source() const { return source_; }

private:
    bool read_record(std::vector<std::string>& fields);

    std::unique_ptr<std::ifstream> owned_;
    std::istream* in_ = nullptr;
    std::string source_;
    std::vector<std::string> header_;
    std::size_t line_ = 0;
    std::size_t record_line_ = 0;
};

// Whole-file table, convenient for small inputs and for the model-fitting
// commands that need random access to columns.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::string source;

    std::optional<std::size_t> column(std::string_view name) const;
    std::size_t require_column(std::string_view name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

// Quotes a field when RFC-4180 requires it.
std::string csv_field(std::string_view value);
std::string csv_row(std::span<const std::string> fields);

// Fixed-point formatting used for report fractions ("%.6f" by default).
std::string format_fixed(double v, int decimals = 6);

}  // namespace followgraph
