#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ntype/commands.hpp"
#include "ntype/error.hpp"

using namespace ntype;

namespace {

RunConfig config(const std::string& text) { return parse_config(text); }

void check_rows_physical(const CsvTable& t) {
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double dem = t.number(r, "dem");
    CHECK(dem >= 0.0);
    CHECK(dem <= std::log(4.0) + 1e-9);
    double bare = 0.0;
    for (const char* c : {"rho11", "rho22", "rho33", "rho44"}) bare += t.number(r, c);
    CHECK(std::abs(bare - 1.0) < 1e-8);  // 9 printed digits per value
    if (std::find(t.columns.begin(), t.columns.end(), "p_d1") != t.columns.end()) {
      double dressed = 0.0;
      for (const char* c : {"p_d1", "p_d2", "p_d3", "p_d4"}) dressed += t.number(r, c);
      CHECK(std::abs(dressed - 1.0) < 1e-8);
    }
  }
}

}  // namespace

TEST_CASE("evolve command: resonant run") {
  const RunConfig cfg = config("rabi_31 = 5\nrabi_32 = 5\nrabi_41 = 5\nt_end = 20\nsample_every = 100\n");
  const CommandResult res = cmd_evolve(cfg);
  const std::string csv = render_csv(res.report);
  const CsvTable t = parse_csv(csv);
  const std::vector<std::string> expected_columns = {
      "t",        "dem",      "rho11",    "rho22",    "rho33",    "rho44",    "p_d1",     "p_d2",
      "p_d3",     "p_d4",     "re_rho12", "im_rho12", "re_rho13", "im_rho13", "re_rho14", "im_rho14",
      "re_rho23", "im_rho23", "re_rho24", "im_rho24", "re_rho34", "im_rho34"};
  CHECK(t.columns == expected_columns);
  REQUIRE(t.rows.size() == 201);
  CHECK(t.number(200, "t") == 20.0);
  CHECK(std::abs(t.number(200, "dem") - 1.36) < 0.02);
  check_rows_physical(t);
  // Byte-identical on repeat.
  CHECK(render_csv(cmd_evolve(cfg).report) == csv);
}

TEST_CASE("evolve command: weak 1-3/2-3 drive disentangles") {
  const RunConfig cfg = config("rabi_31 = 0.05\nrabi_32 = 0.05\nrabi_41 = 5\nt_end = 20\nsample_every = 1000\n");
  const CsvTable t = parse_csv(render_csv(cmd_evolve(cfg).report));
  CHECK(t.number(t.rows.size() - 1, "dem") < 0.05);
  check_rows_physical(t);
}

TEST_CASE("evolve command: undriven atom") {
  const RunConfig cfg = config("t_end = 2\nsample_every = 100\n");
  const CsvTable t = parse_csv(render_csv(cmd_evolve(cfg).report));
  for (std::size_t r = 0; r < t.rows.size(); ++r) CHECK(t.number(r, "dem") == 0.0);
}

TEST_CASE("evolve command: dressed columns only for equal 1-3 and 2-3 drives") {
  const RunConfig cfg = config("rabi_31 = 1\nrabi_32 = 2\nrabi_41 = 1\nt_end = 1\nsample_every = 1000\n");
  const CsvTable t = parse_csv(render_csv(cmd_evolve(cfg).report));
  CHECK(std::find(t.columns.begin(), t.columns.end(), "p_d1") == t.columns.end());
}

TEST_CASE("steady command routes") {
  const CsvTable driven =
      parse_csv(render_csv(cmd_steady(config("rabi_31 = 5\nrabi_32 = 5\nrabi_41 = 5\n")).report));
  CHECK(std::find(driven.meta.begin(), driven.meta.end(), "route = linear") != driven.meta.end());
  CHECK(driven.number(0, "rhs_max_norm") < 1e-10);
  CHECK(driven.number(0, "dem") == doctest::Approx(1.35715).epsilon(1e-5));

  const CsvTable dark = parse_csv(render_csv(cmd_steady(config("initial_state = 2\n")).report));
  CHECK(std::find(dark.meta.begin(), dark.meta.end(), "route = evolve") != dark.meta.end());
  CHECK(dark.number(0, "rho22") == 1.0);
}

TEST_CASE("sweep command") {
  const RunConfig cfg =
      config("omega_min = 0\nomega_max = 5\nomega_step = 2.5\ndelta_min = -1\ndelta_max = 1\ndelta_step = 1\n");
  const CommandResult serial = cmd_sweep(cfg, 1);
  const CommandResult parallel = cmd_sweep(cfg, 4);
  CHECK(render_csv(serial.report) == render_csv(parallel.report));
  CHECK(render_json(serial.report) == render_json(parallel.report));
  REQUIRE(serial.grid.has_value());
  CHECK(gnuplot_matrix(*serial.grid) == gnuplot_matrix(*parallel.grid));

  const CsvTable t = parse_csv(render_csv(serial.report));
  CHECK(t.columns == std::vector<std::string>{"omega", "delta", "dem", "converged", "route"});
  REQUIRE(t.rows.size() == 9);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    CHECK(t.rows[r][t.column("converged")] == "true");
    CHECK(t.number(r, "dem") >= 0.0);
    CHECK(t.number(r, "dem") <= std::log(4.0));
  }
  // omega = 0 cells are degenerate and go through the evolution route.
  CHECK(t.rows[0][t.column("route")] == "evolve");
  CHECK(t.number(0, "dem") == 0.0);
  // (omega, delta) = (5, 0)
  CHECK(t.number(7, "omega") == 5.0);
  CHECK(t.number(7, "delta") == 0.0);
  CHECK(std::abs(t.number(7, "dem") - 1.36) < 0.02);

  std::istringstream matrix(gnuplot_matrix(*serial.grid));
  std::string first;
  std::getline(matrix, first);
  CHECK(first == "3 -1.00000000 0.00000000 1.00000000");
  int rows = 0;
  for (std::string line; std::getline(matrix, line);) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("sweep flags failing cells without aborting") {
  SystemParams bad;
  bad.gamma_42 = -1.0;
  const SweepGrid grid = run_sweep(bad, {0.0, 5.0}, {0.0}, SweepOptions{1});
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK_FALSE(grid.converged(i, 0));
    CHECK(std::isnan(grid.at(i, 0)));
    CHECK(grid.route[i] == CellRoute::kFailed);
    CHECK_FALSE(grid.error[i].empty());
  }
  CHECK_THROWS_AS(run_sweep(SystemParams{}, {1.0, 0.5}, {0.0}), InvalidParameter);
}

TEST_CASE("compare command") {
  const RunConfig cfg = config("omega_min = 0.5\nomega_max = 10\nomega_step = 4.5\n");
  const CsvTable t = parse_csv(render_csv(cmd_compare(cfg, 2).report));
  CHECK(t.columns == std::vector<std::string>{"omega", "dem_numeric", "dem_analytic", "abs_diff", "analytic_valid"});
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[0][t.column("analytic_valid")] == "false");
  CHECK(t.rows[0][t.column("dem_analytic")] == "nan");
  CHECK(t.number(1, "omega") == 5.0);
  CHECK(t.number(1, "abs_diff") < 0.02);
  CHECK(t.number(2, "abs_diff") < 0.01);

  const auto j = nlohmann::json::parse(render_json(cmd_compare(cfg, 1).report));
  CHECK(j["rows"][0]["dem_analytic"].is_null());
  CHECK(j["rows"][1]["analytic_valid"] == true);
}

TEST_CASE("dressed command") {
  const CommandResult res = cmd_dressed(config("rabi_31 = 5\nrabi_32 = 5\nrabi_41 = 5\n"));
  const CsvTable t = parse_csv(render_csv(res.report));
  auto meta = [&](const std::string& key) {
    for (const auto& m : t.meta)
      if (m.rfind(key + " = ", 0) == 0) return m.substr(key.size() + 3);
    return std::string();
  };
  CHECK(meta("construction") == "closed-form");
  CHECK(std::stod(meta("gram_residual")) < 1e-10);
  CHECK(std::stod(meta("diagonalization_residual")) < 1e-9);
  CHECK(meta("hamiltonian_eigenvalues") == "-8.09016994 -3.09016994 3.09016994 8.09016994");
  REQUIRE(t.rows.size() == 4);
  CHECK(t.number(0, "energy") == -8.09016994);

  const CsvTable weak = parse_csv(render_csv(cmd_dressed(config("rabi_31 = 0.05\nrabi_32 = 0.05\nrabi_41 = 5\n")).report));
  REQUIRE(weak.rows.size() == 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < weak.columns.size(); ++c) CHECK(std::isfinite(weak.number(r, weak.columns[c])));

  CHECK_THROWS_AS(cmd_dressed(config("rabi_31 = 0\nrabi_32 = 0\nrabi_41 = 5\n")), DegenerateDressedBasis);

  const CsvTable unequal = parse_csv(render_csv(cmd_dressed(config("rabi_31 = 1\nrabi_32 = 2\nrabi_41 = 3\n")).report));
  CHECK(std::find(unequal.meta.begin(), unequal.meta.end(), "construction = numeric") != unequal.meta.end());
}
