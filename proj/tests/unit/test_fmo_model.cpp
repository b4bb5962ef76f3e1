#include "fmoheom/fmo_model.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace fmo;

TEST_CASE("unit system constants") {
  const UnitSystem u;
  CHECK(u.cm_to_radfs == doctest::Approx(2.0 * M_PI * 2.99792458e-5).epsilon(1e-15));
  CHECK(u.cm_to_radfs == doctest::Approx(1.88365e-4).epsilon(1e-5));
  CHECK(std::abs(u.kB_cm_per_K - 0.69503) <= 1e-5);
}

TEST_CASE("Hamiltonian entries and conversion") {
  const RealMatrix h = fmo_hamiltonian_cm();
  CHECK(h(0, 1) == -87.7);
  CHECK(h(2, 2) == 0.0);
  CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);

  const SystemParams params;
  const ComplexMatrix converted = build_hamiltonian(params);
  CHECK(converted(0, 1).real() == doctest::Approx(-0.016520).epsilon(1e-4));
  CHECK(converted(0, 1).real() == doctest::Approx(-87.7 * 2.0 * M_PI * 2.99792458e-5));
  CHECK(converted.imag().cwiseAbs().maxCoeff() == 0.0);

  SystemParams bad;
  bad.hamiltonian_cm(0, 1) += 1.0;
  CHECK_THROWS_AS(build_hamiltonian(bad), std::invalid_argument);
}

TEST_CASE("parameter validation names the field") {
  SystemParams p;
  p.temperature_K = 0.0;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("temperature_K"), std::invalid_argument);
  p = {};
  p.gamma_inv_fs[2] = -1.0;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("gamma_inv_fs"), std::invalid_argument);
  p = {};
  p.trap_sites = {0};
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("trap_sites"), std::invalid_argument);
  p = {};
  p.truncation_N = -1;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("truncation_N"), std::invalid_argument);
  p = {};
  CHECK(p.trap_rate_per_fs() == doctest::Approx(1e-3));
  p.trap_rate_inv_ps = std::numeric_limits<double>::infinity();
  CHECK(p.trap_rate_per_fs() == 0.0);
}

TEST_CASE("exciton basis is orthogonal, ascending and nondegenerate") {
  const ExcitonBasis basis = exciton_basis(SystemParams{});
  const RealMatrix& c = basis.coeffs;
  CHECK((c.transpose() * c - RealMatrix::Identity(7, 7)).cwiseAbs().maxCoeff() <= 1e-10);
  for (int r = 1; r < 7; ++r) CHECK(basis.energies_cm(r) - basis.energies_cm(r - 1) > 1.0);
  // Reference energies from an independent numerical diagonalization.
  const double expected[7] = {-30.01, 81.70, 155.09, 244.80, 259.67, 367.56, 471.20};
  for (int r = 0; r < 7; ++r) CHECK(basis.energies_cm(r) == doctest::Approx(expected[r]).epsilon(1e-4));
  CHECK(c(2, 0) == doctest::Approx(0.877).epsilon(0.001));
  CHECK(c(2, 1) == doctest::Approx(0.440).epsilon(0.001));
  CHECK(c(5, 0) == doctest::Approx(-0.456).epsilon(0.001));
  CHECK(c(5, 1) == doctest::Approx(0.871).epsilon(0.001));

  SystemParams degenerate;
  degenerate.hamiltonian_cm = RealMatrix::Zero(7, 7);
  CHECK_THROWS_AS(exciton_basis(degenerate), std::runtime_error);
}

TEST_CASE("localized states") {
  for (int x = 1; x <= 7; ++x) {
    const ComplexMatrix rho = localized_state(x);
    CHECK(rho(x - 1, x - 1) == Complex(1.0, 0.0));
    CHECK(rho.cwiseAbs().sum() == 1.0);
    CHECK((rho * rho).trace().real() == 1.0);
  }
  CHECK_THROWS_AS(localized_state(0), std::invalid_argument);
  CHECK_THROWS_AS(localized_state(8), std::invalid_argument);
}

TEST_CASE("FRET states") {
  const SystemParams params;
  const ExcitonBasis basis = exciton_basis(params);
  const RealMatrix h = params.hamiltonian_cm;
  for (int x = 1; x <= 7; ++x) {
    const ComplexMatrix rho = fret_state(x, basis);
    CHECK(std::abs(rho.trace().real() - 1.0) <= 1e-14);
    const ComplexMatrix hc = h.cast<Complex>();
    CHECK(max_abs(rho * hc - hc * rho) <= 1e-12 * max_abs(hc));
    // Diagonal in the exciton basis.
    const RealMatrix in_exciton = basis.coeffs * rho.real() * basis.coeffs.transpose();
    RealMatrix off = in_exciton;
    off.diagonal().setZero();
    CHECK(off.cwiseAbs().maxCoeff() <= 1e-12);
  }
  CHECK_THROWS_AS(fret_state(0, basis), std::invalid_argument);

  // x = 1: two dominant excitons, site populations and coherence. The exact
  // values come from an independent full-basis evaluation.
  const ComplexMatrix rho = fret_state(1, basis);
  CHECK(basis.coeffs(2, 0) * basis.coeffs(2, 0) == doctest::Approx(0.769).epsilon(0.005));
  CHECK(basis.coeffs(5, 0) * basis.coeffs(5, 0) == doctest::Approx(0.208).epsilon(0.005));
  CHECK(rho(0, 0).real() == doctest::Approx(0.63543).epsilon(1e-4));
  CHECK(rho(1, 1).real() == doctest::Approx(0.30687).epsilon(1e-4));
  CHECK(rho(0, 1).real() == doctest::Approx(0.21417).epsilon(1e-4));
}

TEST_CASE("thermal prefactors") {
  const SystemParams params;
  const UnitSystem u;
  const ThermalPrefactors p = thermal_prefactors(params, u);
  CHECK(p.kT_cm == doctest::Approx(208.509));
  for (int k = 0; k < 7; ++k) {
    const auto i = static_cast<std::size_t>(k);
    CHECK(p.gamma[i] == doctest::Approx(0.02));
    CHECK(p.lambda[i] == doctest::Approx(35.0 * u.cm_to_radfs));
    CHECK(p.commutator_coeff[i] == doctest::Approx(2.0 * p.lambda[i] * 208.509 * u.cm_to_radfs));
    CHECK(p.anticommutator_coeff[i] == doctest::Approx(p.lambda[i] * 0.02));
  }
  CHECK(p.beta == doctest::Approx(1.0 / (208.509 * u.cm_to_radfs)));
}
