#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ntype/analytic.hpp"
#include "ntype/dynamics.hpp"
#include "ntype/error.hpp"
#include "ntype/observables.hpp"
#include "ntype/report.hpp"
#include "ntype/sweep.hpp"

namespace py = pybind11;
using namespace ntype;

namespace {

IntegrationMethod parse_method(const std::string& name) {
  if (name == "rk4") return IntegrationMethod::kRk4;
  if (name == "rk45") return IntegrationMethod::kRk45;
  throw InvalidParameter("method must be 'rk4' or 'rk45'");
}

// (n, 4, 4) complex array of the recorded states.
py::array_t<Complex> stack(const std::vector<DensityMatrix>& states) {
  py::array_t<Complex> out({static_cast<py::ssize_t>(states.size()), py::ssize_t{4}, py::ssize_t{4}});
  auto v = out.mutable_unchecked<3>();
  for (std::size_t k = 0; k < states.size(); ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) v(k, i, j) = states[k](i, j);
  return out;
}

}  // namespace

PYBIND11_MODULE(_ntype, m) {
  m.doc() = "Four-level N-type atom: dynamics, steady states and atom-field entanglement";
  m.attr("__version__") = kToolVersion;

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  static py::exception<InvalidParameter> invalid_parameter(m, "InvalidParameter", PyExc_ValueError);
  static py::exception<InvalidState> invalid_state(m, "InvalidState", PyExc_ValueError);
  static py::exception<IntegrationError> integration_error(m, "IntegrationError", error.ptr());
  static py::exception<NonConvergence> non_convergence(m, "NonConvergence", error.ptr());
  static py::exception<DegenerateSteadyState> degenerate_steady(m, "DegenerateSteadyState", error.ptr());
  static py::exception<DegenerateDressedBasis> degenerate_dressed(m, "DegenerateDressedBasis", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InvalidParameter& e) {
      PyErr_SetString(invalid_parameter.ptr(), e.what());
    } catch (const InvalidState& e) {
      PyErr_SetString(invalid_state.ptr(), e.what());
    } catch (const IntegrationError& e) {
      PyErr_SetString(integration_error.ptr(), e.what());
    } catch (const NonConvergence& e) {
      PyErr_SetString(non_convergence.ptr(), e.what());
    } catch (const DegenerateSteadyState& e) {
      PyErr_SetString(degenerate_steady.ptr(), e.what());
    } catch (const DegenerateDressedBasis& e) {
      PyErr_SetString(degenerate_dressed.ptr(), e.what());
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), e.what());
    }
  });

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init<>())
      .def_readwrite("rabi_31", &SystemParams::rabi_31)
      .def_readwrite("rabi_32", &SystemParams::rabi_32)
      .def_readwrite("rabi_41", &SystemParams::rabi_41)
      .def_readwrite("delta_31", &SystemParams::delta_31)
      .def_readwrite("delta_32", &SystemParams::delta_32)
      .def_readwrite("delta_41", &SystemParams::delta_41)
      .def_readwrite("gamma_31", &SystemParams::gamma_31)
      .def_readwrite("gamma_32", &SystemParams::gamma_32)
      .def_readwrite("gamma_41", &SystemParams::gamma_41)
      .def_readwrite("gamma_42", &SystemParams::gamma_42)
      .def_readwrite("phi_31", &SystemParams::phi_31)
      .def_readwrite("phi_32", &SystemParams::phi_32)
      .def_static("symmetric", &SystemParams::symmetric, py::arg("rabi"), py::arg("delta") = 0.0)
      .def_static("with_rabi", &SystemParams::with_rabi, py::arg("rabi_31"), py::arg("rabi_32"),
                  py::arg("rabi_41"), py::arg("delta") = 0.0,
                  "Unit decay rates, common detuning, the given Rabi frequencies.")
      .def("validate", &SystemParams::validate)
      .def("__eq__", [](const SystemParams& a, const SystemParams& b) { return a == b; })
      .def("__repr__", [](const SystemParams& p) {
        return "SystemParams(rabi=(" + format_number(p.rabi_31) + ", " + format_number(p.rabi_32) + ", " +
               format_number(p.rabi_41) + "), delta=(" + format_number(p.delta_31) + ", " +
               format_number(p.delta_32) + ", " + format_number(p.delta_41) + "))";
      });

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init([](const Matrix4c& rho) { return DensityMatrix(rho); }), py::arg("matrix"))
      .def_static("bare_state", &DensityMatrix::bare_state, py::arg("level"))
      .def_property_readonly("matrix", &DensityMatrix::matrix)
      .def("trace", &DensityMatrix::trace)
      .def("population", [](const DensityMatrix& r, int level) { return r.population(level - 1); },
           py::arg("level"), "Population of bare level 1..4.")
      .def("eigenvalues", &DensityMatrix::eigenvalues);

  m.def("rhs", &rhs, py::arg("params"), py::arg("rho"), "Time derivative of rho.");
  m.def("hamiltonian_resonant", &hamiltonian_resonant, py::arg("params"));

  m.def(
      "evolve",
      [](const SystemParams& p, const DensityMatrix& rho0, double t_end, double step, int sample_every,
         const std::string& method, double rel_tol, double abs_tol) {
        IntegratorConfig cfg;
        cfg.t_end = t_end;
        cfg.step = step;
        cfg.sample_every = sample_every;
        cfg.method = parse_method(method);
        cfg.rel_tol = rel_tol;
        cfg.abs_tol = abs_tol;
        Trajectory traj;
        {
          py::gil_scoped_release release;
          traj = evolve(p, rho0, cfg);
        }
        return py::make_tuple(py::array(py::cast(traj.times)), stack(traj.states));
      },
      py::arg("params"), py::arg("rho0"), py::arg("t_end") = 20.0, py::arg("step") = 1e-3,
      py::arg("sample_every") = 1, py::arg("method") = "rk4", py::arg("rel_tol") = 1e-8,
      py::arg("abs_tol") = 1e-10, "Returns (times, states) with states of shape (n, 4, 4).");

  m.def("steady_state_linear", &steady_state_linear, py::arg("params"),
        py::call_guard<py::gil_scoped_release>());
  m.def(
      "steady_state_evolve",
      [](const SystemParams& p, const DensityMatrix& rho0, double tol, double t_cap) {
        SteadyEvolveOptions opts;
        opts.tol = tol;
        opts.t_cap = t_cap;
        return steady_state_evolve(p, rho0, opts);
      },
      py::arg("params"), py::arg("rho0"), py::arg("tol") = 1e-10, py::arg("t_cap") = 1e4,
      py::call_guard<py::gil_scoped_release>());
  m.def("stationary_dimension", &stationary_dimension, py::arg("params"));

  m.def("dem", &von_neumann_dem, py::arg("rho"), "Von-Neumann entropy of rho (natural log).");

  py::class_<DressedBasis>(m, "DressedBasis")
      .def_property_readonly("unitary", &DressedBasis::unitary)
      .def_readonly("energies", &DressedBasis::energies)
      .def_readonly("symmetric", &DressedBasis::symmetric)
      .def("gram_residual", &DressedBasis::gram_residual)
      .def("diagonalization_residual", &DressedBasis::diagonalization_residual, py::arg("hamiltonian"));
  m.def("dressed_basis", &dressed_basis, py::arg("omega3"), py::arg("omega41"));
  m.def("dressed_basis_for", &dressed_basis_for, py::arg("params"));
  m.def(
      "dressed_populations",
      [](const DensityMatrix& rho, const DressedBasis& b) { return populations(rho, b).values; },
      py::arg("rho"), py::arg("basis"));

  m.def("analytic_coherence", &analytic_coherence, py::arg("omega"), py::arg("gamma") = 1.0);
  m.def(
      "analytic_eigenvalues",
      [](Complex d) {
        const AnalyticEigenvalues ev = analytic_eigenvalues(d);
        return py::make_tuple(ev.values, ev.valid);
      },
      py::arg("coherence"), "Returns (eigenvalues, valid).");
  m.def("analytic_dem", &analytic_dem, py::arg("omega"), py::arg("gamma") = 1.0,
        "None when the analytic eigenvalues are not all non-negative.");

  m.def(
      "compare",
      [](const std::vector<double>& grid, unsigned threads) {
        std::vector<ComparisonRow> rows;
        {
          py::gil_scoped_release release;
          rows = compare_analytic_numeric(grid, SystemParams{}, threads);
        }
        py::list out;
        for (const ComparisonRow& r : rows) {
          py::dict d;
          d["omega"] = r.omega;
          d["dem_numeric"] = r.dem_numeric;
          d["dem_analytic"] = r.dem_analytic;
          d["abs_diff"] = r.abs_diff();
          d["analytic_valid"] = r.analytic_valid;
          d["error"] = r.error;
          out.append(d);
        }
        return out;
      },
      py::arg("omega_grid"), py::arg("threads") = 1);

  m.def(
      "sweep",
      [](const std::vector<double>& omegas, const std::vector<double>& deltas, unsigned threads) {
        SweepGrid grid;
        {
          py::gil_scoped_release release;
          grid = run_sweep(SystemParams{}, omegas, deltas, SweepOptions{threads});
        }
        py::array_t<double> dem({static_cast<py::ssize_t>(omegas.size()), static_cast<py::ssize_t>(deltas.size())});
        auto v = dem.mutable_unchecked<2>();
        for (std::size_t i = 0; i < omegas.size(); ++i)
          for (std::size_t j = 0; j < deltas.size(); ++j) v(i, j) = grid.at(i, j);
        return dem;
      },
      py::arg("omegas"), py::arg("deltas"), py::arg("threads") = 0,
      "Steady-state DEM on an (omega, delta) grid; failed cells are NaN.");
}
