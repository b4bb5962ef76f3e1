#include "fmoheom/dynamics.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace fmo;

namespace {

SystemParams unitary(int truncation, double t_end) {
  SystemParams p;
  p.truncation_N = truncation;
  p.lambda_cm.assign(7, 0.0);
  p.trap_rate_inv_ps = std::numeric_limits<double>::infinity();
  p.t_end_fs = t_end;
  return p;
}

}  // namespace

TEST_CASE("output grid") {
  CHECK(output_steps(1000.0, 1.0) == 1000);
  CHECK(output_steps(0.0, 1.0) == 0);
  CHECK(output_steps(1.0, 0.1) == 10);
  CHECK_THROWS_AS(output_steps(10.5, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(output_steps(10.0, 0.0), std::invalid_argument);
}

TEST_CASE("unitary limit matches the exact propagator") {
  const SystemParams p = unitary(0, 200.0);
  const Trajectory traj = integrate(localized_state(1), p);
  REQUIRE(traj.rho.size() == 201);
  const auto eig = hermitian_eigen(build_hamiltonian(p));
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.rho.size(); ++i) {
    const double t = traj.times_fs[i];
    const ComplexMatrix phase = (eig.values * Complex(0.0, -t)).array().exp().matrix().asDiagonal();
    const ComplexMatrix u = eig.vectors * phase * eig.vectors.adjoint();
    worst = std::max(worst, max_abs(traj.rho[i] - u * localized_state(1) * u.adjoint()));
    CHECK(std::abs(traj.rho[i].trace().real() - 1.0) <= 1e-8);
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("zero reorganization energy decouples the hierarchy") {
  const Trajectory flat = integrate(localized_state(6), unitary(0, 100.0));
  const Trajectory deep = integrate(localized_state(6), unitary(3, 100.0));
  // Auxiliaries stay zero; the two runs differ only by step selection.
  CHECK(max_trace_distance(flat, deep) <= 1e-6);
}

TEST_CASE("dissipative run: Hermiticity, positivity and monotone trace") {
  SystemParams p;
  p.truncation_N = 3;
  p.t_end_fs = 300.0;
  const Trajectory traj = integrate(localized_state(1), p);
  CHECK(traj.hierarchy_nodes == 120);
  for (double d : traj.hierarchy_hermiticity_defect) CHECK(d <= 1e-9);
  for (std::size_t i = 0; i < traj.rho.size(); ++i) {
    CHECK(hermitian_eigen(traj.rho[i], 1e-9).values(0) >= -1e-6);
    if (i > 0) CHECK(traj.rho[i].trace().real() <= traj.rho[i - 1].trace().real() + 1e-12);
  }
  CHECK(traj.rho.back().trace().real() < 0.99);
}

TEST_CASE("halving the tolerances moves the final population by less than the coarse tolerance") {
  SystemParams p;
  p.truncation_N = 3;
  p.t_end_fs = 1000.0;
  IntegratorConfig coarse;
  coarse.abs_tol = 1e-8;
  coarse.rel_tol = 1e-6;
  IntegratorConfig fine = coarse;
  fine.abs_tol /= 2.0;
  fine.rel_tol /= 2.0;
  const double a = integrate(localized_state(1), p, coarse).rho.back()(0, 0).real();
  const double b = integrate(localized_state(1), p, fine).rho.back()(0, 0).real();
  CHECK(std::abs(a - b) < coarse.rel_tol);
}

TEST_CASE("integrate validates the initial state") {
  SystemParams p;
  p.truncation_N = 1;
  p.t_end_fs = 1.0;
  ComplexMatrix bad = localized_state(1);
  bad(0, 1) = 0.3;
  CHECK_THROWS_AS(integrate(bad, p), std::invalid_argument);
  CHECK_THROWS_AS(integrate(2.0 * localized_state(1), p), std::invalid_argument);
  CHECK_THROWS_AS(integrate(localized_state(1, 3), p), std::invalid_argument);
}

TEST_CASE("convergence study") {
  SystemParams p;
  p.t_end_fs = 100.0;
  const Trajectory a = integrate(localized_state(1), [&] { auto q = p; q.truncation_N = 2; return q; }());
  CHECK(max_trace_distance(a, a) == 0.0);

  int runs = 0;
  const auto points = convergence_study(localized_state(1), p, 1, 3, {}, {},
                                        [&](int, const Trajectory&) { ++runs; });
  CHECK(runs == 4);
  REQUIRE(points.size() == 3);
  for (std::size_t i = 0; i < points.size(); ++i) {
    CHECK(points[i].truncation == static_cast<int>(i) + 1);
    CHECK(points[i].max_trace_distance > 0.0);
    CHECK(points[i].log10_distance == doctest::Approx(std::log10(points[i].max_trace_distance)));
    if (i > 0) CHECK(points[i].max_trace_distance < points[i - 1].max_trace_distance);
  }
  CHECK_THROWS_AS(convergence_study(localized_state(1), p, 3, 2), std::invalid_argument);
}
