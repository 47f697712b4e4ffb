#include "ntype/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace ntype {

ConfigError::ConfigError(const std::string& what, int line, std::string key)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line), key_(std::move(key)) {}

std::vector<double> AxisSpec::values() const {
  std::vector<double> v;
  const double slack = 1e-9 * step;
  for (long k = 0;; ++k) {
    const double x = min + static_cast<double>(k) * step;
    if (x > max + slack) break;
    v.push_back(x);
  }
  return v;
}

DensityMatrix InitialState::make() const {
  if (coords) return DensityMatrix::from_coords(*coords);
  return DensityMatrix::bare_state(level);
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt_exact(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_real(std::string_view key, std::string_view value, int line) {
  const std::string s(value);
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(x))
    throw ConfigError("key '" + std::string(key) + "': expected a real number, got '" + s + "'", line,
                      std::string(key));
  return x;
}

int parse_int(std::string_view key, std::string_view value, int line) {
  const std::string s(value);
  char* end = nullptr;
  errno = 0;
  const long x = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || x < -1000000000 || x > 1000000000)
    throw ConfigError("key '" + std::string(key) + "': expected an integer, got '" + s + "'", line,
                      std::string(key));
  return static_cast<int>(x);
}

using Setter = std::function<void(RunConfig&, std::string_view key, std::string_view value, int line)>;
using Getter = std::function<std::string(const RunConfig&)>;

struct Field {
  const char* key;
  Setter set;
  Getter get;
};

Field real_field(const char* key, double RunConfig::*member) {
  return {key,
          [member](RunConfig& c, std::string_view k, std::string_view v, int l) { c.*member = parse_real(k, v, l); },
          [member](const RunConfig& c) { return fmt_exact(c.*member); }};
}

Field param_field(const char* key, double SystemParams::*member) {
  return {key,
          [member](RunConfig& c, std::string_view k, std::string_view v, int l) {
            c.params.*member = parse_real(k, v, l);
          },
          [member](const RunConfig& c) { return fmt_exact(c.params.*member); }};
}

Field integrator_field(const char* key, double IntegratorConfig::*member) {
  return {key,
          [member](RunConfig& c, std::string_view k, std::string_view v, int l) {
            c.integrator.*member = parse_real(k, v, l);
          },
          [member](const RunConfig& c) { return fmt_exact(c.integrator.*member); }};
}

Field axis_field(const char* key, AxisSpec RunConfig::*axis, double AxisSpec::*member) {
  return {key,
          [axis, member](RunConfig& c, std::string_view k, std::string_view v, int l) {
            (c.*axis).*member = parse_real(k, v, l);
          },
          [axis, member](const RunConfig& c) { return fmt_exact((c.*axis).*member); }};
}

void set_initial_state(RunConfig& c, std::string_view key, std::string_view value, int line) {
  std::vector<std::string> tokens;
  std::istringstream is{std::string(value)};
  for (std::string t; is >> t;) tokens.push_back(t);
  if (tokens.size() == 1) {
    const int level = parse_int(key, tokens[0], line);
    if (level < 1 || level > 4) throw ConfigError("initial_state level must be in 1..4", line, std::string(key));
    c.initial = InitialState{level, std::nullopt};
    return;
  }
  if (tokens.size() != 16)
    throw ConfigError("initial_state must be a level 1..4 or 16 reals (populations, then Re/Im of rho12 rho13 "
                      "rho14 rho23 rho24 rho34)",
                      line, std::string(key));
  HermitianCoords coords;
  for (int k = 0; k < 16; ++k) coords[k] = parse_real(key, tokens[static_cast<std::size_t>(k)], line);
  c.initial = InitialState{1, coords};
}

std::string get_initial_state(const RunConfig& c) {
  if (!c.initial.coords) return std::to_string(c.initial.level);
  std::string s;
  for (int k = 0; k < 16; ++k) s += (k ? " " : "") + fmt_exact((*c.initial.coords)[k]);
  return s;
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      param_field("rabi_31", &SystemParams::rabi_31),
      param_field("rabi_32", &SystemParams::rabi_32),
      param_field("rabi_41", &SystemParams::rabi_41),
      param_field("delta_31", &SystemParams::delta_31),
      param_field("delta_32", &SystemParams::delta_32),
      param_field("delta_41", &SystemParams::delta_41),
      param_field("gamma_31", &SystemParams::gamma_31),
      param_field("gamma_32", &SystemParams::gamma_32),
      param_field("gamma_41", &SystemParams::gamma_41),
      param_field("gamma_42", &SystemParams::gamma_42),
      param_field("phi_31", &SystemParams::phi_31),
      param_field("phi_32", &SystemParams::phi_32),
      integrator_field("step", &IntegratorConfig::step),
      integrator_field("t_end", &IntegratorConfig::t_end),
      {"sample_every",
       [](RunConfig& c, std::string_view k, std::string_view v, int l) {
         c.integrator.sample_every = parse_int(k, v, l);
       },
       [](const RunConfig& c) { return std::to_string(c.integrator.sample_every); }},
      {"method",
       [](RunConfig& c, std::string_view k, std::string_view v, int l) {
         if (v == "rk4") c.integrator.method = IntegrationMethod::kRk4;
         else if (v == "rk45") c.integrator.method = IntegrationMethod::kRk45;
         else throw ConfigError("method must be rk4 or rk45", l, std::string(k));
       },
       [](const RunConfig& c) {
         return std::string(c.integrator.method == IntegrationMethod::kRk4 ? "rk4" : "rk45");
       }},
      integrator_field("rel_tol", &IntegratorConfig::rel_tol),
      integrator_field("abs_tol", &IntegratorConfig::abs_tol),
      {"initial_state", set_initial_state, get_initial_state},
      real_field("steady_tol", &RunConfig::steady_tol),
      {"output", [](RunConfig& c, std::string_view, std::string_view v, int) { c.output = std::string(v); },
       [](const RunConfig& c) { return c.output; }},
      {"format",
       [](RunConfig& c, std::string_view k, std::string_view v, int l) {
         if (v == "csv") c.format = OutputFormat::kCsv;
         else if (v == "json") c.format = OutputFormat::kJson;
         else throw ConfigError("format must be csv or json", l, std::string(k));
       },
       [](const RunConfig& c) { return std::string(c.format == OutputFormat::kCsv ? "csv" : "json"); }},
      axis_field("omega_min", &RunConfig::omega_axis, &AxisSpec::min),
      axis_field("omega_max", &RunConfig::omega_axis, &AxisSpec::max),
      axis_field("omega_step", &RunConfig::omega_axis, &AxisSpec::step),
      axis_field("delta_min", &RunConfig::delta_axis, &AxisSpec::min),
      axis_field("delta_max", &RunConfig::delta_axis, &AxisSpec::max),
      axis_field("delta_step", &RunConfig::delta_axis, &AxisSpec::step),
  };
  return table;
}

const Field* find_field(std::string_view key) {
  for (const auto& f : fields())
    if (key == f.key) return &f;
  return nullptr;
}

void validate_axis(const AxisSpec& a, const char* name) {
  if (!(a.step > 0.0)) throw ConfigError(std::string(name) + "_step must be > 0", 0, std::string(name) + "_step");
  if (!(a.max >= a.min)) throw ConfigError(std::string(name) + "_max must be >= " + name + "_min", 0,
                                           std::string(name) + "_max");
}

}  // namespace

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value, int line) {
  const Field* f = find_field(key);
  if (!f) throw ConfigError("unknown key '" + std::string(key) + "'", line, std::string(key));
  f->set(cfg, key, value, line);
}

void validate_config(const RunConfig& cfg) {
  try {
    cfg.params.validate();
    cfg.integrator.validate();
    (void)cfg.initial.make();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what(), 0, "");
  }
  if (!(cfg.steady_tol > 0.0)) throw ConfigError("steady_tol must be > 0", 0, "steady_tol");
  validate_axis(cfg.omega_axis, "omega");
  validate_axis(cfg.delta_axis, "delta");
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no, "");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key before '='", line_no, "");
    if (!seen.insert(std::string(key)).second)
      throw ConfigError("duplicate key '" + std::string(key) + "'", line_no, std::string(key));
    apply_setting(cfg, key, value, line_no);
  }
  validate_config(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'", 0, "");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& f : fields()) out.emplace_back(f.key, f.get(cfg));
  return out;
}

std::string serialize_config(const RunConfig& cfg) {
  std::string s = "# rates, frequencies and detunings in units of gamma; times in 1/gamma\n";
  for (const auto& [k, v] : config_entries(cfg)) s += k + " = " + v + "\n";
  return s;
}

}  // namespace ntype
