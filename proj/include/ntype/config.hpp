#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ntype/dynamics.hpp"
#include "ntype/error.hpp"
#include "ntype/model.hpp"

namespace ntype {

enum class OutputFormat { kCsv, kJson };

/// Malformed or invalid configuration; carries the offending line (0 when the
/// setting did not come from a file) and key.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line, std::string key);
  int line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  int line_;
  std::string key_;
};

/// Inclusive, evenly spaced axis min, min + step, ... <= max.
struct AxisSpec {
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;

  std::vector<double> values() const;
  bool operator==(const AxisSpec&) const = default;
};

/// Either a bare level (1..4) or an explicit matrix in HermitianCoords order.
struct InitialState {
  int level = 1;
  std::optional<HermitianCoords> coords;

  DensityMatrix make() const;
  bool operator==(const InitialState&) const = default;
};

struct RunConfig {
  SystemParams params;
  IntegratorConfig integrator;
  InitialState initial;
  double steady_tol = 1e-10;
  std::string output;
  OutputFormat format = OutputFormat::kCsv;
  AxisSpec omega_axis{0.25, 10.0, 0.25};
  AxisSpec delta_axis{-4.0, 4.0, 0.25};

  bool operator==(const RunConfig&) const = default;
};

/// Sets one key from its text value; throws ConfigError for unknown keys or
/// unparseable values. Does not run cross-field validation.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value, int line = 0);

/// Cross-field validation of a complete configuration.
void validate_config(const RunConfig& cfg);

/// Flat `key = value` text with `#` comments. Unknown and duplicate keys are
/// rejected. Missing keys keep their defaults.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Every key with its value, in canonical order. Values print with enough
/// digits to round-trip exactly.
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg);
std::string serialize_config(const RunConfig& cfg);

}  // namespace ntype
