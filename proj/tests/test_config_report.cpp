#include <doctest.h>

#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "ntype/config.hpp"
#include "ntype/report.hpp"
#include "test_support.hpp"

using namespace ntype;
using namespace ntype::testing;

TEST_CASE("parse_config reads a commented key = value file") {
  const RunConfig cfg = parse_config(R"(# resonant run
rabi_31 = 5
rabi_32 = 5      # trailing comment
rabi_41 = 5.0

delta_31 = 0.5
t_end = 20
sample_every = 10
method = rk45
initial_state = 2
format = json
omega_min = 1
omega_max = 3
omega_step = 0.5
)");
  CHECK(cfg.params.rabi_31 == 5.0);
  CHECK(cfg.params.rabi_32 == 5.0);
  CHECK(cfg.params.delta_31 == 0.5);
  CHECK(cfg.params.delta_32 == 0.0);
  CHECK(cfg.integrator.t_end == 20.0);
  CHECK(cfg.integrator.sample_every == 10);
  CHECK(cfg.integrator.method == IntegrationMethod::kRk45);
  CHECK(cfg.initial.level == 2);
  CHECK(cfg.format == OutputFormat::kJson);
  CHECK(cfg.omega_axis.values() == std::vector<double>{1.0, 1.5, 2.0, 2.5, 3.0});
  CHECK(cfg.delta_axis.values().size() == 33);
}

TEST_CASE("parse_config diagnostics carry line and key") {
  auto expect_error = [](const std::string& text, int line, const std::string& key) {
    try {
      parse_config(text);
      FAIL("expected ConfigError for: " << text);
    } catch (const ConfigError& e) {
      CHECK(e.line() == line);
      CHECK(e.key() == key);
    }
  };
  expect_error("rabi_31 = 1\nbogus = 2\n", 2, "bogus");
  expect_error("rabi_31 = 1\nrabi_31 = 2\n", 2, "rabi_31");
  expect_error("\n\nrabi_41 = five\n", 3, "rabi_41");
  expect_error("rabi_41 5\n", 1, "");
  expect_error("method = euler\n", 1, "method");
  expect_error("initial_state = 7\n", 1, "initial_state");
  expect_error("initial_state = 1 2 3\n", 1, "initial_state");
  expect_error("sample_every = 2.5\n", 1, "sample_every");
  expect_error("omega_step = 0\n", 0, "omega_step");
  CHECK_THROWS_AS(parse_config("gamma_42 = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("t_end = 0.0001\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("initial_state = 2 0 0 0  0 0 0 0 0 0 0 0 0 0 0 0\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/path.cfg"), ConfigError);
}

TEST_CASE("config round-trip is exact") {
  auto rng = make_rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    RunConfig cfg;
    cfg.params = random_params(rng);
    cfg.integrator.step = uniform(rng, 1e-4, 1e-2);
    cfg.integrator.t_end = uniform(rng, 1.0, 100.0);
    cfg.integrator.sample_every = static_cast<int>(uniform(rng, 1.0, 1000.0));
    cfg.integrator.method = trial % 2 ? IntegrationMethod::kRk45 : IntegrationMethod::kRk4;
    cfg.integrator.rel_tol = uniform(rng, 1e-12, 1e-6);
    cfg.integrator.abs_tol = uniform(rng, 1e-14, 1e-8);
    if (trial % 3 == 0)
      cfg.initial = InitialState{1, random_density_matrix(rng).coords()};
    else
      cfg.initial = InitialState{1 + trial % 4, std::nullopt};
    cfg.steady_tol = uniform(rng, 1e-12, 1e-8);
    cfg.output = "out_" + std::to_string(trial) + ".csv";
    cfg.format = trial % 2 ? OutputFormat::kJson : OutputFormat::kCsv;
    cfg.omega_axis = {uniform(rng, 0.1, 1.0), uniform(rng, 2.0, 10.0), uniform(rng, 0.1, 1.0)};
    cfg.delta_axis = {uniform(rng, -4.0, -1.0), uniform(rng, 0.0, 4.0), uniform(rng, 0.1, 1.0)};
    const std::string text = serialize_config(cfg);
    CHECK(parse_config(text) == cfg);
    CHECK(serialize_config(parse_config(text)) == text);
  }
}

TEST_CASE("format_number") {
  CHECK(format_number(1.357152253) == "1.35715225");
  CHECK(format_number(0.25) == "0.250000000");
  CHECK(format_number(20.0) == "20.0000000");
  CHECK(format_number(0.0) == "0.00000000");
  CHECK(format_number(-0.0485436893203) == "-0.0485436893");
  CHECK(format_number(1e-4) == "0.000100000000");
  CHECK(format_number(9.87654321e-5) == "9.87654321e-05");
  CHECK(format_number(-2.5e-18) == "-2.50000000e-18");
  CHECK(format_number(std::nan("")) == "nan");
}

namespace {

Report sample_report() {
  Report r;
  r.command = "demo";
  r.config = {{"rabi_31", "5"}, {"format", "csv"}};
  r.meta = {{"route", "linear"}};
  r.columns = {"omega", "dem", "converged", "route"};
  r.rows = {{1.0, 0.5, true, std::string("linear")},
            {2.0, std::nan(""), false, std::string("failed")}};
  return r;
}

}  // namespace

TEST_CASE("CSV output carries metadata and parses back") {
  const std::string csv = render_csv(sample_report());
  CHECK(csv.rfind("# tool = ntype\n# version = 1.0.0\n# command = demo\n# config.rabi_31 = 5\n", 0) == 0);
  const CsvTable t = parse_csv(csv);
  CHECK(t.columns == std::vector<std::string>{"omega", "dem", "converged", "route"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.number(0, "dem") == 0.5);
  CHECK(t.rows[1][t.column("dem")] == "nan");
  CHECK(t.rows[1][t.column("converged")] == "false");
  CHECK(std::find(t.meta.begin(), t.meta.end(), "route = linear") != t.meta.end());
}

TEST_CASE("JSON output uses the CSV field names") {
  const auto j = nlohmann::json::parse(render_json(sample_report()));
  CHECK(j["tool"] == "ntype");
  CHECK(j["command"] == "demo");
  CHECK(j["config"]["rabi_31"] == "5");
  CHECK(j["meta"]["route"] == "linear");
  REQUIRE(j["rows"].size() == 2);
  CHECK(j["rows"][0]["omega"] == 1.0);
  CHECK(j["rows"][0]["converged"] == true);
  CHECK(j["rows"][0]["route"] == "linear");
  CHECK(j["rows"][1]["dem"].is_null());
  for (const auto& row : j["rows"])
    for (const auto& col : j["columns"]) CHECK(row.contains(col.get<std::string>()));
}
