#pragma once

// Embedded Dormand-Prince 5(4) integrator with PI step-size control for
// large complex state vectors. Output-grid samples come from the fourth-order
// continuous extension of the accepted step (or, with dense_output off, from
// steps clipped to land on every grid point). The final grid point is
// always reached by a full step.

#include "fmoheom/quantum_core.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fmo {

struct IntegratorConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  /// 0 selects an automatic first step.
  double initial_step_fs = 0.0;
  /// 0 means unbounded.
  double max_step_fs = 0.0;
  double min_step_fs = 1e-10;
  std::size_t max_steps = 50'000'000;
  bool dense_output = true;

  void validate() const;
};

struct IntegrationStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evaluations = 0;
  double last_step_fs = 0.0;
};

class DormandPrince {
 public:
  using Rhs = std::function<void(double t, std::span<const Complex> y, std::span<Complex> dydt)>;
  /// Called at every output time with the grid index, time and the leading
  /// `output_components` entries of the state.
  using Observer = std::function<void(std::size_t index, double t, std::span<const Complex> y)>;
  /// Called after every accepted step with the full state.
  using StepObserver = std::function<void(double t, std::span<const Complex> y)>;

  DormandPrince(Rhs rhs, IntegratorConfig config);

  /// Integrates y in place from t0 over `steps` output intervals of width
  /// dt_out; the observer sees t0 + i * dt_out for i = 0..steps. Throws
  /// std::runtime_error on step-size underflow or when max_steps is hit.
  /// output_components == 0 passes the whole state to the observer.
  IntegrationStats integrate(std::vector<Complex>& y, double t0, double dt_out, std::size_t steps,
                             const Observer& observer, std::size_t output_components = 0,
                             const StepObserver& on_step = {});

 private:
  double error_norm(std::span<const Complex> y, std::span<const Complex> y_new,
                    std::span<const Complex> err) const;
  void interpolate(std::span<const Complex> y_old, std::span<const Complex> y_new, double h,
                   double theta, std::size_t count);
  double initial_step(double t, std::span<const Complex> y, std::span<const Complex> f0,
                      double span_fs);

  Rhs rhs_;
  IntegratorConfig config_;
  std::vector<Complex> k_[7];
  std::vector<Complex> stage_;
  std::vector<Complex> y_new_;
  std::vector<Complex> err_;
  std::vector<Complex> dense_;
  std::size_t evaluations_ = 0;
};

}  // namespace fmo
