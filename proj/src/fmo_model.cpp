#include "fmoheom/fmo_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fmo {

namespace {

void fail(const std::string& field, const std::string& what) {
  throw std::invalid_argument("SystemParams." + field + ": " + what);
}

void require_site(int x, int n_sites, const char* what) {
  if (x < 1 || x > n_sites) {
    std::ostringstream msg;
    msg << what << ": site " << x << " outside 1.." << n_sites;
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

RealMatrix fmo_hamiltonian_cm() {
  RealMatrix h(7, 7);
  // clang-format off
  h <<  200.0, -87.7,   5.5,  -5.9,   6.7, -13.7,  -9.9,
        -87.7, 320.0,  30.8,   8.2,   0.7,  11.8,   4.3,
          5.5,  30.8,   0.0, -53.5,  -2.2,  -9.6,   6.0,
         -5.9,   8.2, -53.5, 110.0, -70.7, -17.0, -63.3,
          6.7,   0.7,  -2.2, -70.7, 270.0,  81.1,  -1.3,
        -13.7,  11.8,  -9.6, -17.0,  81.1, 420.0,  39.7,
         -9.9,   4.3,   6.0, -63.3,  -1.3,  39.7, 230.0;
  // clang-format on
  return h;
}

void SystemParams::validate() const {
  if (n_sites < 1) fail("n_sites", "must be positive");
  const auto n = static_cast<Eigen::Index>(n_sites);
  if (hamiltonian_cm.rows() != n || hamiltonian_cm.cols() != n) {
    fail("hamiltonian_cm", "must be n_sites x n_sites");
  }
  const double scale = std::max(1.0, hamiltonian_cm.cwiseAbs().maxCoeff());
  if ((hamiltonian_cm - hamiltonian_cm.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    fail("hamiltonian_cm", "must be symmetric");
  }
  if (!hamiltonian_cm.allFinite()) fail("hamiltonian_cm", "must be finite");
  if (lambda_cm.size() != static_cast<std::size_t>(n_sites)) fail("lambda_cm", "needs one value per site");
  if (gamma_inv_fs.size() != static_cast<std::size_t>(n_sites)) {
    fail("gamma_inv_fs", "needs one value per site");
  }
  for (double l : lambda_cm) {
    if (!(l >= 0.0) || !std::isfinite(l)) fail("lambda_cm", "must be finite and >= 0");
  }
  for (double g : gamma_inv_fs) {
    if (!(g > 0.0) || !std::isfinite(g)) fail("gamma_inv_fs", "must be finite and > 0");
  }
  if (!(temperature_K > 0.0) || !std::isfinite(temperature_K)) fail("temperature_K", "must be > 0");
  if (!(trap_rate_inv_ps > 0.0)) fail("trap_rate_inv_ps", "must be > 0 (inf disables trapping)");
  for (int s : trap_sites) {
    if (s < 1 || s > n_sites) fail("trap_sites", "site " + std::to_string(s) + " out of range");
  }
  if (truncation_N < 0) fail("truncation_N", "must be >= 0");
  if (!(t_end_fs >= 0.0) || !std::isfinite(t_end_fs)) fail("t_end_fs", "must be finite and >= 0");
  if (!(dt_out_fs > 0.0) || !std::isfinite(dt_out_fs)) fail("dt_out_fs", "must be > 0");
}

double SystemParams::trap_rate_per_fs() const {
  if (std::isinf(trap_rate_inv_ps)) return 0.0;
  return 1.0 / (trap_rate_inv_ps * 1000.0);
}

ComplexMatrix build_hamiltonian(const SystemParams& params, const UnitSystem& units) {
  params.validate();
  return (params.hamiltonian_cm * units.cm_to_radfs).cast<Complex>();
}

ExcitonBasis exciton_basis(const SystemParams& params, double min_gap_cm) {
  params.validate();
  const EigenDecomposition eig = hermitian_eigen(params.hamiltonian_cm.cast<Complex>());
  ExcitonBasis basis;
  basis.energies_cm = eig.values;
  for (Eigen::Index r = 1; r < eig.values.size(); ++r) {
    if (eig.values(r) - eig.values(r - 1) <= min_gap_cm) {
      std::ostringstream msg;
      msg << "exciton_basis: exciton energies " << r << " and " << r + 1 << " are within "
          << min_gap_cm << " cm^-1; ordering is ill defined";
      throw std::runtime_error(msg.str());
    }
  }
  // Real symmetric input with the phase rule gives real eigenvectors.
  basis.coeffs = eig.vectors.real().transpose();
  return basis;
}

ComplexMatrix localized_state(int x, int n_sites) {
  require_site(x, n_sites, "localized_state");
  ComplexMatrix rho = ComplexMatrix::Zero(n_sites, n_sites);
  rho(x - 1, x - 1) = 1.0;
  return rho;
}

ComplexMatrix fret_state(int x, const ExcitonBasis& basis) {
  const auto n = basis.coeffs.rows();
  require_site(x, static_cast<int>(n), "fret_state");
  RealMatrix rho = RealMatrix::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const double c = basis.coeffs(r, x - 1);
    rho += (c * c) * basis.coeffs.row(r).transpose() * basis.coeffs.row(r);
  }
  return rho.cast<Complex>();
}

ThermalPrefactors thermal_prefactors(const SystemParams& params, const UnitSystem& units) {
  params.validate();
  ThermalPrefactors out;
  out.kT_cm = units.kB_cm_per_K * params.temperature_K;
  const double kT = out.kT_cm * units.cm_to_radfs;
  out.beta = 1.0 / kT;
  for (int k = 0; k < params.n_sites; ++k) {
    const double lambda = params.lambda_cm[k] * units.cm_to_radfs;
    const double gamma = 1.0 / params.gamma_inv_fs[k];
    out.lambda.push_back(lambda);
    out.gamma.push_back(gamma);
    out.commutator_coeff.push_back(2.0 * lambda / out.beta);
    out.anticommutator_coeff.push_back(lambda * gamma);
  }
  return out;
}

}  // namespace fmo
