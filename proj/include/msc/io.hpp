#pragma once

// CSV ingestion: dissimilarity matrices, point sets and label files. A first
// row whose first token is not a number is treated as a header.

#include "msc/core.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace msc::io {

/// Unreadable or malformed input.
class input_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline bool parse_double(std::string_view token, double& out) {
    token = trim(token);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    if (token.empty()) return false;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    return ec == std::errc() && ptr == token.data() + token.size();
}

inline std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace detail

/// Numeric rows of a CSV stream. Blank lines are skipped; errors name the
/// 1-based line number.
[[nodiscard]] inline std::vector<std::vector<double>> read_numeric_rows(std::istream& in, const std::string& source) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        const auto tokens = detail::split(line);
        std::vector<double> row;
        row.reserve(tokens.size());
        double value = 0.0;
        if (first) {
            first = false;
            if (!detail::parse_double(tokens.front(), value)) continue;  // header
        }
        for (std::size_t c = 0; c < tokens.size(); ++c) {
            if (!detail::parse_double(tokens[c], value)) {
                throw input_error(source + ": row " + std::to_string(line_no) + ", column " + std::to_string(c + 1) +
                                  ": not a number: '" + std::string(detail::trim(tokens[c])) + "'");
            }
            row.push_back(value);
        }
        rows.push_back(std::move(row));
    }
    if (in.bad()) throw input_error(source + ": read error");
    return rows;
}

[[nodiscard]] inline std::ifstream open_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    return in;
}

/// n rows of n comma-separated dissimilarities. Shape problems raise
/// input_error; symmetry/diagonal/sign violations raise matrix_error.
[[nodiscard]] inline DissimilarityMatrix read_matrix_csv(std::istream& in, const std::string& source = "<stream>") {
    const auto rows = read_numeric_rows(in, source);
    const std::size_t n = rows.size();
    if (n < 3) throw input_error(source + ": need at least 3 rows");
    std::vector<double> values;
    values.reserve(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        if (rows[r].size() != n) {
            throw input_error(source + ": data row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
                              " values, expected " + std::to_string(n));
        }
        values.insert(values.end(), rows[r].begin(), rows[r].end());
    }
    return DissimilarityMatrix(n, std::move(values));
}

[[nodiscard]] inline DissimilarityMatrix read_matrix_csv(const std::string& path) {
    auto in = open_file(path);
    return read_matrix_csv(in, path);
}

/// One point per row, all rows of equal dimension.
[[nodiscard]] inline std::vector<Point> read_points_csv(std::istream& in, const std::string& source = "<stream>") {
    auto rows = read_numeric_rows(in, source);
    if (rows.empty()) throw input_error(source + ": no data rows");
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.front().size()) {
            throw input_error(source + ": data row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
                              " values, expected " + std::to_string(rows.front().size()));
        }
    }
    return rows;
}

[[nodiscard]] inline std::vector<Point> read_points_csv(const std::string& path) {
    auto in = open_file(path);
    return read_points_csv(in, path);
}

/// Integer labels, one per line (first column used).
[[nodiscard]] inline std::vector<std::int64_t> read_labels(std::istream& in, const std::string& source = "<stream>") {
    std::vector<std::int64_t> labels;
    for (const auto& row : read_numeric_rows(in, source)) {
        const double v = row.front();
        if (v != static_cast<double>(static_cast<std::int64_t>(v))) {
            throw input_error(source + ": label " + std::to_string(labels.size() + 1) + " is not an integer");
        }
        labels.push_back(static_cast<std::int64_t>(v));
    }
    return labels;
}

[[nodiscard]] inline std::vector<std::int64_t> read_labels(const std::string& path) {
    auto in = open_file(path);
    return read_labels(in, path);
}

}  // namespace msc::io
