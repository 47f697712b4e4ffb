// Command-line front end: evolve, steady, sweep, dressed, compare.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ntype/commands.hpp"
#include "ntype/config.hpp"
#include "ntype/error.hpp"
#include "ntype/report.hpp"

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ntype::Error("cannot open output file '" + path + "'");
  out << text;
  if (!out) throw ntype::Error("failed writing '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Driven four-level N-type atom: dynamics, entanglement and steady-state analysis"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format;
  unsigned threads = 0;
  std::optional<unsigned long> seed;
  std::vector<std::string> overrides;

  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--out", out_path, "output path (default: config 'output', else stdout)");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", threads, "worker threads for sweep/compare (0 = available parallelism)");
  app.add_option("--seed", seed, "reserved; all computation is deterministic");
  app.add_option("--set", overrides, "override a config key, e.g. --set rabi_31=5")->take_all();

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"evolve", "time series of DEM, populations and coherences"},
      {"steady", "stationary state of the equations of motion"},
      {"sweep", "steady-state DEM over the omega/delta grid (+ gnuplot matrix)"},
      {"dressed", "dressed-state basis report"},
      {"compare", "numeric vs closed-form steady-state DEM"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    ntype::RunConfig cfg = config_path.empty() ? ntype::RunConfig{} : ntype::load_config(config_path);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ntype::ConfigError("--set expects key=value, got '" + kv + "'", 0, kv);
      ntype::apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!format.empty()) ntype::apply_setting(cfg, "format", format);
    if (!out_path.empty()) cfg.output = out_path;
    ntype::validate_config(cfg);

    ntype::CommandResult result;
    if (command == "evolve") result = ntype::cmd_evolve(cfg);
    else if (command == "steady") result = ntype::cmd_steady(cfg);
    else if (command == "sweep") result = ntype::cmd_sweep(cfg, threads);
    else if (command == "dressed") result = ntype::cmd_dressed(cfg);
    else result = ntype::cmd_compare(cfg, threads);

    const std::string text = ntype::render(result.report, cfg.format);
    if (cfg.output.empty()) {
      std::cout << text;
      if (result.grid) std::cout << "\n" << ntype::gnuplot_matrix(*result.grid);
    } else {
      write_file(cfg.output, text);
      if (result.grid) write_file(cfg.output + ".matrix", ntype::gnuplot_matrix(*result.grid));
    }
  } catch (const ntype::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
