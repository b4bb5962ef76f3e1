#pragma once

#include "fmoheom/dormand_prince.hpp"
#include "fmoheom/heom.hpp"

#include <functional>
#include <vector>

namespace fmo {

/// zeta(0) sampled on the uniform output grid, plus diagnostics.
struct Trajectory {
  std::vector<double> times_fs;
  std::vector<ComplexMatrix> rho;
  /// Hermiticity defect maximized over all hierarchy nodes, at t = 0 and
  /// after every accepted integrator step.
  std::vector<double> hierarchy_hermiticity_defect;
  std::size_t hierarchy_nodes = 0;
  IntegrationStats stats;
};

/// Number of output intervals for t_end / dt_out; throws when t_end is not a
/// whole multiple of dt_out (relative slack 1e-9).
std::size_t output_steps(double t_end_fs, double dt_out_fs);

/// Propagates the hierarchy from rho(0) = initial with all auxiliary
/// operators zero, recording zeta(0) every params.dt_out_fs up to
/// params.t_end_fs.
Trajectory integrate(const ComplexMatrix& initial, const SystemParams& params,
                     const IntegratorConfig& config = {}, const UnitSystem& units = {});

struct ConvergencePoint {
  int truncation = 0;
  /// max over the output grid of D(rho_N(t), rho_{N+1}(t)).
  double max_trace_distance = 0.0;
  double log10_distance = 0.0;
};

/// max_t D(a(t), b(t)); both trajectories must share the grid.
double max_trace_distance(const Trajectory& a, const Trajectory& b);

/// D(N, N+1) for every N in [n_min, n_max]. Runs each truncation once and
/// compares neighbours. `on_trajectory`, when set, sees every run.
std::vector<ConvergencePoint> convergence_study(
    const ComplexMatrix& initial, const SystemParams& params, int n_min, int n_max,
    const IntegratorConfig& config = {}, const UnitSystem& units = {},
    const std::function<void(int, const Trajectory&)>& on_trajectory = {});

}  // namespace fmo
