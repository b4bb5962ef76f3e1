#pragma once

// Two-chromophore reduced states and their correlation measures: Bell-CHSH
// nonlocality via the Horodecki criterion, Wootters concurrence and l1
// coherence, plus the closed forms that hold in the single-excitation
// subspace.
//
// Pair basis ordering: (ground-ground, n-excited, m-excited, double), i.e.
// |S0m S0n>, |S0m S1n>, |S1m S0n>, |S1m S1n> with qubit m as the first tensor
// factor. Site indices are 1-based.

#include "fmoheom/quantum_core.hpp"

#include <vector>

namespace fmo {

using Matrix4c = Eigen::Matrix4cd;

struct PairIndex {
  int m = 1;
  int n = 2;
  friend bool operator==(const PairIndex&, const PairIndex&) = default;
};

/// Every pair (m, n) with 1 <= m < n <= n_sites, ordered lexicographically.
std::vector<PairIndex> all_pairs(int n_sites = 7);

struct ReducedPairState {
  int m = 1;
  int n = 2;
  Matrix4c matrix = Matrix4c::Zero();
  double source_trace = 0.0;

  double population_m() const { return matrix(2, 2).real(); }
  double population_n() const { return matrix(1, 1).real(); }
  /// <m|rho|n>.
  Complex coherence() const { return matrix(2, 1); }
};

/// Partial trace of the single-excitation state over all sites but m and n.
/// The pair is stored with m < n. Throws std::invalid_argument when m == n,
/// a site is out of range, or the ground-ground population is below -1e-9.
ReducedPairState reduce_pair(const ComplexMatrix& rho, int m, int n);

/// t_ab = Tr(rho sigma_a (x) sigma_b).
Eigen::Matrix3d correlation_matrix(const Matrix4c& rho);

/// Sum of the two largest eigenvalues of T^T T. The state is used as given
/// (no renormalization). Throws std::invalid_argument on non-Hermitian input.
double horodecki_M(const Matrix4c& rho);

/// sqrt(max(M - 1, 0)).
double nonlocality_B(const Matrix4c& rho);

struct ClosedFormMeasures {
  double B = 0.0;
  double C = 0.0;
  double l1 = 0.0;
  double mu1 = 0.0;
  double mu3 = 0.0;
};

ClosedFormMeasures closed_form_measures(const ReducedPairState& r);

/// max(l1 - l2 - l3 - l4, 0) with l_i the decreasing square roots of the
/// eigenvalues of rho (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y).
/// Evaluated as singular values of L^dagger Y L* with rho = L L^dagger.
/// Throws std::invalid_argument on non-Hermitian input or an eigenvalue
/// below -negative_tol.
double wootters_concurrence(const Matrix4c& rho, double negative_tol = 1e-9);

/// |rho_mn| <= sqrt(rho_mm rho_nn) within tol.
bool positivity_bound_check(const ReducedPairState& r, double tol = 1e-9);

}  // namespace fmo
