#include "ntype/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ntype {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[48];
  if (x != 0.0 && std::abs(x) < 1e-4)
    std::snprintf(buf, sizeof buf, "%.8e", x);
  else
    std::snprintf(buf, sizeof buf, "%#.9g", x);
  return buf;
}

std::size_t Report::column(std::string_view name) const {
  for (std::size_t k = 0; k < columns.size(); ++k)
    if (columns[k] == name) return k;
  throw std::out_of_range("no column " + std::string(name));
}

namespace {

std::string cell_text(const Cell& c) {
  struct {
    std::string operator()(double x) const { return format_number(x); }
    std::string operator()(long x) const { return std::to_string(x); }
    std::string operator()(bool x) const { return x ? "true" : "false"; }
    std::string operator()(const std::string& s) const { return s; }
  } visitor;
  return std::visit(visitor, c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  struct {
    nlohmann::ordered_json operator()(double x) const {
      if (!std::isfinite(x)) return nullptr;
      // Same digits as the CSV writer.
      return std::strtod(format_number(x).c_str(), nullptr);
    }
    nlohmann::ordered_json operator()(long x) const { return x; }
    nlohmann::ordered_json operator()(bool x) const { return x; }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
  } visitor;
  return std::visit(visitor, c);
}

}  // namespace

std::string render_csv(const Report& r) {
  std::ostringstream os;
  os << "# tool = " << kToolName << "\n# version = " << kToolVersion << "\n# command = " << r.command << "\n";
  for (const auto& [k, v] : r.config) os << "# config." << k << " = " << v << "\n";
  for (const auto& [k, v] : r.meta) os << "# " << k << " = " << v << "\n";
  for (std::size_t k = 0; k < r.columns.size(); ++k) os << (k ? "," : "") << r.columns[k];
  os << "\n";
  for (const auto& row : r.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << cell_text(row[k]);
    os << "\n";
  }
  return os.str();
}

std::string render_json(const Report& r) {
  nlohmann::ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = r.command;
  auto& config = j["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.config) config[k] = v;
  auto& meta = j["meta"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.meta) meta[k] = v;
  j["columns"] = r.columns;
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t k = 0; k < row.size(); ++k) obj[r.columns[k]] = cell_json(row[k]);
    rows.push_back(std::move(obj));
  }
  return j.dump(2) + "\n";
}

std::string render(const Report& r, OutputFormat format) {
  return format == OutputFormat::kCsv ? render_csv(r) : render_json(r);
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t k = 0; k < columns.size(); ++k)
    if (columns[k] == name) return k;
  throw std::out_of_range("no column " + std::string(name));
}

double CsvTable::number(std::size_t row, std::string_view name) const {
  return std::strtod(rows.at(row).at(column(name)).c_str(), nullptr);
}

CsvTable parse_csv(std::string_view text) {
  CsvTable t;
  std::istringstream is{std::string(text)};
  auto split = [](const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) out.push_back(cell);
    return out;
  };
  for (std::string line; std::getline(is, line);) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      t.meta.push_back(line.substr(2));
    } else if (t.columns.empty()) {
      t.columns = split(line);
    } else {
      t.rows.push_back(split(line));
    }
  }
  return t;
}

}  // namespace ntype
