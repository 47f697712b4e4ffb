#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ntype/config.hpp"

namespace ntype {

inline constexpr std::string_view kToolName = "ntype";
inline constexpr std::string_view kToolVersion = "1.0.0";

/// Exactly 9 significant digits (trailing zeros kept); lowercase scientific
/// notation when 0 < |x| < 1e-4.
/// NaN prints as "nan".
std::string format_number(double x);

using Cell = std::variant<double, long, bool, std::string>;

/// Column-oriented output shared by the CSV and JSON writers.
struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;  ///< full config echo
  std::vector<std::pair<std::string, std::string>> meta;    ///< command-specific facts
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::size_t column(std::string_view name) const;
};

/// `#`-prefixed metadata lines, then a header row and one line per row.
std::string render_csv(const Report& r);
/// Object with tool, version, command, config, meta, columns and rows (each
/// row an object keyed by the CSV column names). NaN becomes null.
std::string render_json(const Report& r);
std::string render(const Report& r, OutputFormat format);

/// Parsed CSV: metadata lines (without the `# `), header, and raw cells.
struct CsvTable {
  std::vector<std::string> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::string_view name) const;
};

CsvTable parse_csv(std::string_view text);

}  // namespace ntype
