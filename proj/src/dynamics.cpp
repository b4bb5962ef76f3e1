#include "fmoheom/dynamics.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fmo {

std::size_t output_steps(double t_end_fs, double dt_out_fs) {
  if (!(dt_out_fs > 0.0)) throw std::invalid_argument("output grid: dt_out_fs must be > 0");
  if (!(t_end_fs >= 0.0)) throw std::invalid_argument("output grid: t_end_fs must be >= 0");
  const double ratio = t_end_fs / dt_out_fs;
  const double whole = std::round(ratio);
  if (std::abs(ratio - whole) > 1e-9 * std::max(1.0, ratio)) {
    std::ostringstream msg;
    msg << "output grid: t_end_fs " << t_end_fs << " is not a multiple of dt_out_fs " << dt_out_fs;
    throw std::invalid_argument(msg.str());
  }
  return static_cast<std::size_t>(whole);
}

Trajectory integrate(const ComplexMatrix& initial, const SystemParams& params,
                     const IntegratorConfig& config, const UnitSystem& units) {
  params.validate();
  config.validate();
  if (initial.rows() != params.n_sites || initial.cols() != params.n_sites) {
    throw std::invalid_argument("integrate: initial state has wrong dimension");
  }
  if (!is_hermitian(initial, 1e-12)) {
    throw std::invalid_argument("integrate: initial state is not Hermitian");
  }
  if (initial.trace().real() > 1.0 + 1e-12) {
    throw std::invalid_argument("integrate: initial state has trace > 1");
  }

  const HeomSystem system(params, units);
  const std::size_t steps = output_steps(params.t_end_fs, params.dt_out_fs);
  HierarchyState state = system.initial_state(initial);

  Trajectory traj;
  traj.hierarchy_nodes = system.index_space().size();
  traj.times_fs.reserve(steps + 1);
  traj.rho.reserve(steps + 1);
  traj.hierarchy_hermiticity_defect.push_back(system.max_hermiticity_defect(state.zetas));

  const int dim = params.n_sites;
  DormandPrince stepper(
      [&system](double, std::span<const Complex> y, std::span<Complex> dydt) {
        system.rhs(y, dydt);
      },
      config);
  traj.stats = stepper.integrate(
      state.zetas, 0.0, params.dt_out_fs, steps,
      [&](std::size_t, double t, std::span<const Complex> y) {
        traj.times_fs.push_back(t);
        traj.rho.emplace_back(Eigen::Map<const ComplexMatrix>(y.data(), dim, dim));
      },
      static_cast<std::size_t>(dim * dim),
      [&](double, std::span<const Complex> y) {
        traj.hierarchy_hermiticity_defect.push_back(system.max_hermiticity_defect(y));
      });
  return traj;
}

double max_trace_distance(const Trajectory& a, const Trajectory& b) {
  if (a.rho.size() != b.rho.size()) {
    throw std::invalid_argument("max_trace_distance: trajectories have different grids");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rho.size(); ++i) {
    if (std::abs(a.times_fs[i] - b.times_fs[i]) > 1e-9) {
      throw std::invalid_argument("max_trace_distance: trajectories have different grids");
    }
    worst = std::max(worst, trace_distance(a.rho[i], b.rho[i]));
  }
  return worst;
}

std::vector<ConvergencePoint> convergence_study(
    const ComplexMatrix& initial, const SystemParams& params, int n_min, int n_max,
    const IntegratorConfig& config, const UnitSystem& units,
    const std::function<void(int, const Trajectory&)>& on_trajectory) {
  if (n_min < 0 || n_max < n_min) {
    throw std::invalid_argument("convergence_study: need 0 <= n_min <= n_max");
  }
  auto run = [&](int level) {
    SystemParams p = params;
    p.truncation_N = level;
    Trajectory traj = integrate(initial, p, config, units);
    if (on_trajectory) on_trajectory(level, traj);
    return traj;
  };

  std::vector<ConvergencePoint> out;
  Trajectory lower = run(n_min);
  for (int level = n_min; level <= n_max; ++level) {
    Trajectory upper = run(level + 1);
    ConvergencePoint point;
    point.truncation = level;
    point.max_trace_distance = max_trace_distance(lower, upper);
    point.log10_distance = point.max_trace_distance > 0.0
                               ? std::log10(point.max_trace_distance)
                               : -std::numeric_limits<double>::infinity();
    out.push_back(point);
    lower = std::move(upper);
  }
  return out;
}

}  // namespace fmo
