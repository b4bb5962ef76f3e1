#pragma once

// FMO monomer model: site Hamiltonian, bath parameters, unit conversion,
// exciton basis and the two families of initial states.
//
// Units: energies enter in cm^-1 and are converted to angular frequency
// (rad/fs) with hbar = 1, so time is measured in fs everywhere downstream.
// Site indices are 1-based in every public function of this header.

#include "fmoheom/quantum_core.hpp"

#include <limits>
#include <vector>

namespace fmo {

struct UnitSystem {
  /// 2*pi*c with c in cm/fs: multiplies a wavenumber to give rad/fs.
  double cm_to_radfs = 2.0 * 3.14159265358979323846 * 2.99792458e-5;
  /// Boltzmann constant in cm^-1 / K.
  double kB_cm_per_K = 0.69503;
};

/// Site energies and couplings of one FMO monomer in cm^-1, with the common
/// 12210 cm^-1 offset removed.
RealMatrix fmo_hamiltonian_cm();

struct SystemParams {
  int n_sites = 7;
  RealMatrix hamiltonian_cm = fmo_hamiltonian_cm();
  std::vector<double> lambda_cm = std::vector<double>(7, 35.0);
  /// Bath relaxation time scale gamma_k^-1 per site.
  std::vector<double> gamma_inv_fs = std::vector<double>(7, 50.0);
  double temperature_K = 300.0;
  /// Trapping time r_trap^-1; infinity disables trapping.
  double trap_rate_inv_ps = 1.0;
  std::vector<int> trap_sites = {3, 4};
  int truncation_N = 12;
  double t_end_fs = 1000.0;
  double dt_out_fs = 1.0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  /// r_trap in fs^-1 (zero when disabled).
  double trap_rate_per_fs() const;
};

/// H[k][l] = hamiltonian_cm[k][l] * cm_to_radfs, in rad/fs.
ComplexMatrix build_hamiltonian(const SystemParams& params, const UnitSystem& units = {});

struct ExcitonBasis {
  RealVector energies_cm;  // ascending
  RealMatrix coeffs;       // coeffs(r, k) = c_rk = <k|e_r>, rows are excitons
};

/// Diagonalizes hamiltonian_cm. Throws std::runtime_error when two exciton
/// energies are closer than min_gap_cm (ordering would be ill defined).
ExcitonBasis exciton_basis(const SystemParams& params, double min_gap_cm = 1.0);

/// |x><x| for x in 1..n_sites.
ComplexMatrix localized_state(int x, int n_sites = 7);

/// sum_r c_rx^2 |e_r><e_r| for x in 1..n_sites.
ComplexMatrix fret_state(int x, const ExcitonBasis& basis);

struct ThermalPrefactors {
  std::vector<double> lambda;            // rad/fs
  std::vector<double> gamma;             // fs^-1
  std::vector<double> commutator_coeff;  // 2 lambda / beta, rad^2/fs^2
  std::vector<double> anticommutator_coeff;  // lambda * gamma, rad/fs^2
  double kT_cm = 0.0;
  double beta = 0.0;  // fs/rad
};

ThermalPrefactors thermal_prefactors(const SystemParams& params, const UnitSystem& units = {});

}  // namespace fmo
