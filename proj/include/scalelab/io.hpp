#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "scalelab/matrix.hpp"

namespace scalelab::io {

using Json = nlohmann::json;

/// Shortest text for a double in the artifact format: 17 significant digits,
/// "inf", "-inf" or "nan".
std::string format_double(double v);

/// Compact JSON with keys in sorted order and every double printed with
/// format_double. Non-finite doubles become strings.
std::string dump_json(const Json& j);

/// Numbers from a JSON array or from CSV / whitespace separated text. "inf"
/// is accepted. Throws std::runtime_error on unreadable input.
std::vector<double> parse_vector(std::string_view text);
std::vector<double> read_vector(const std::string& path);

/// A JSON array of rows or CSV with one row per line.
Matrix parse_matrix(std::string_view text);
Matrix read_matrix(const std::string& path);

Json read_json(const std::string& path);

/// Writes text to path (or stdout for "-"). Throws std::runtime_error.
void write_text(const std::string& path, const std::string& text);

/// Column table rendered as CSV with a header line.
class CsvTable {
public:
  explicit CsvTable(std::vector<std::string> header);
  /// Cells are written verbatim; use format_double for numbers.
  void add_row(std::vector<std::string> cells);
  std::string str() const;
  std::size_t rows() const noexcept { return rows_.size(); }

private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace scalelab::io
