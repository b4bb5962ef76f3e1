#include "fmoheom/analysis.hpp"
#include "fmoheom/correlation.hpp"
#include "fmoheom/dynamics.hpp"
#include "fmoheom/fmo_model.hpp"

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace fmo;

namespace {

py::array_t<std::complex<double>> stack_rho(const Trajectory& traj) {
  const auto count = static_cast<py::ssize_t>(traj.rho.size());
  const py::ssize_t dim = count > 0 ? traj.rho.front().rows() : 0;
  py::array_t<std::complex<double>> out({count, dim, dim});
  auto view = out.mutable_unchecked<3>();
  for (py::ssize_t t = 0; t < count; ++t) {
    for (py::ssize_t i = 0; i < dim; ++i) {
      for (py::ssize_t j = 0; j < dim; ++j) view(t, i, j) = traj.rho[t](i, j);
    }
  }
  return out;
}

py::dict series_dict(const CorrelationTimeSeries& s) {
  py::dict d;
  d["m"] = s.pair.m;
  d["n"] = s.pair.n;
  d["times_fs"] = py::array(py::cast(s.times_fs));
  d["B"] = py::array(py::cast(s.B));
  d["C"] = py::array(py::cast(s.C));
  d["l1"] = py::array(py::cast(s.l1));
  d["mu1"] = py::array(py::cast(s.mu1));
  d["mu3"] = py::array(py::cast(s.mu3));
  d["population_m"] = py::array(py::cast(s.population_m));
  d["population_n"] = py::array(py::cast(s.population_n));
  d["trace"] = py::array(py::cast(s.trace));
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "HEOM dynamics of the FMO monomer and pairwise correlation measures";

  py::register_exception<std::invalid_argument>(m, "InvalidArgument", PyExc_ValueError);

  py::class_<UnitSystem>(m, "UnitSystem")
      .def(py::init<>())
      .def_readwrite("cm_to_radfs", &UnitSystem::cm_to_radfs);

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init<>())
      .def_readwrite("n_sites", &SystemParams::n_sites)
      .def_readwrite("hamiltonian_cm", &SystemParams::hamiltonian_cm)
      .def_readwrite("lambda_cm", &SystemParams::lambda_cm)
      .def_readwrite("gamma_inv_fs", &SystemParams::gamma_inv_fs)
      .def_readwrite("temperature_K", &SystemParams::temperature_K)
      .def_readwrite("trap_rate_inv_ps", &SystemParams::trap_rate_inv_ps)
      .def_readwrite("trap_sites", &SystemParams::trap_sites)
      .def_readwrite("truncation_N", &SystemParams::truncation_N)
      .def_readwrite("t_end_fs", &SystemParams::t_end_fs)
      .def_readwrite("dt_out_fs", &SystemParams::dt_out_fs)
      .def("validate", &SystemParams::validate)
      .def("trap_rate_per_fs", &SystemParams::trap_rate_per_fs);

  py::class_<IntegratorConfig>(m, "IntegratorConfig")
      .def(py::init<>())
      .def_readwrite("abs_tol", &IntegratorConfig::abs_tol)
      .def_readwrite("rel_tol", &IntegratorConfig::rel_tol)
      .def_readwrite("initial_step_fs", &IntegratorConfig::initial_step_fs)
      .def_readwrite("max_step_fs", &IntegratorConfig::max_step_fs)
      .def_readwrite("min_step_fs", &IntegratorConfig::min_step_fs)
      .def_readwrite("max_steps", &IntegratorConfig::max_steps)
      .def_readwrite("dense_output", &IntegratorConfig::dense_output)
      .def("validate", &IntegratorConfig::validate);

  py::class_<IntegrationStats>(m, "IntegrationStats")
      .def_readonly("accepted", &IntegrationStats::accepted)
      .def_readonly("rejected", &IntegrationStats::rejected)
      .def_readonly("rhs_evaluations", &IntegrationStats::rhs_evaluations);

  py::class_<Trajectory>(m, "Trajectory")
      .def_property_readonly("times_fs",
                             [](const Trajectory& t) { return py::array(py::cast(t.times_fs)); })
      .def_property_readonly("rho", &stack_rho)
      .def_readonly("hierarchy_hermiticity_defect", &Trajectory::hierarchy_hermiticity_defect)
      .def_readonly("hierarchy_nodes", &Trajectory::hierarchy_nodes)
      .def_readonly("stats", &Trajectory::stats);

  m.def("fmo_hamiltonian_cm", &fmo_hamiltonian_cm);
  m.def("build_hamiltonian", &build_hamiltonian, py::arg("params"), py::arg("units") = UnitSystem{});
  m.def(
      "exciton_basis",
      [](const SystemParams& p) {
        const ExcitonBasis b = exciton_basis(p);
        return py::make_tuple(b.energies_cm, b.coeffs);
      },
      py::arg("params"));
  m.def("localized_state", &localized_state, py::arg("x"), py::arg("n_sites") = 7);
  m.def(
      "fret_state", [](int x, const SystemParams& p) { return fret_state(x, exciton_basis(p)); },
      py::arg("x"), py::arg("params"));

  m.def("integrate", &integrate, py::arg("initial"), py::arg("params"),
        py::arg("config") = IntegratorConfig{}, py::arg("units") = UnitSystem{},
        py::call_guard<py::gil_scoped_release>());
  m.def("trace_distance", &trace_distance);

  m.def(
      "reduce_pair",
      [](const ComplexMatrix& rho, int a, int b) { return Matrix4c(reduce_pair(rho, a, b).matrix); },
      py::arg("rho"), py::arg("m"), py::arg("n"));
  m.def("correlation_matrix", &correlation_matrix);
  m.def("horodecki_M", &horodecki_M);
  m.def("nonlocality_B", &nonlocality_B);
  m.def("wootters_concurrence", &wootters_concurrence, py::arg("rho"),
        py::arg("negative_tol") = 1e-9);
  m.def(
      "closed_form_measures",
      [](const ComplexMatrix& rho, int a, int b) {
        const ClosedFormMeasures c = closed_form_measures(reduce_pair(rho, a, b));
        py::dict d;
        d["B"] = c.B;
        d["C"] = c.C;
        d["l1"] = c.l1;
        d["mu1"] = c.mu1;
        d["mu3"] = c.mu3;
        return d;
      },
      py::arg("rho"), py::arg("m"), py::arg("n"));

  m.def(
      "correlation_series",
      [](const Trajectory& t, int a, int b) { return series_dict(correlation_series(t, {a, b})); },
      py::arg("trajectory"), py::arg("m"), py::arg("n"));
  m.def(
      "sudden_death",
      [](const Trajectory& t, int a, int b, double threshold) {
        const SuddenDeathReport r = detect_sudden_death(correlation_series(t, {a, b}), threshold);
        py::dict d;
        d["death_time_fs"] = r.death_time_fs ? py::cast(*r.death_time_fs) : py::none();
        d["peak_B"] = r.peak_B;
        d["peak_time_fs"] = r.peak_time_fs;
        d["threshold"] = r.threshold;
        return d;
      },
      py::arg("trajectory"), py::arg("m"), py::arg("n"), py::arg("threshold") = 1e-6);
  m.def(
      "short_time_oracle",
      [](int x, const SystemParams& p) {
        py::list out;
        for (const ShortTimePrediction& s : short_time_oracle(x, build_hamiltonian(p))) {
          py::dict d;
          d["m"] = s.pair.m;
          d["n"] = s.pair.n;
          d["slope_C"] = s.slope_C;
          d["slope_B"] = s.slope_B;
          d["quadratic_C_coeff"] = s.quadratic_C_coeff;
          out.append(d);
        }
        return out;
      },
      py::arg("x"), py::arg("params"));
  m.def(
      "dominant_pair",
      [](int x, const SystemParams& p) -> py::object {
        const auto pair = dominant_pair(x, build_hamiltonian(p));
        if (!pair) return py::none();
        return py::make_tuple(pair->m, pair->n);
      },
      py::arg("x"), py::arg("params"));
}
