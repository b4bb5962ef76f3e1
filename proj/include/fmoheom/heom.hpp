#pragma once

// Hierarchical equations of motion for the single-excitation manifold.
//
//   d/dt zeta(n) = -i [H + sum_k lambda_k V_k, zeta(n)] - (sum_k n_k gamma_k) zeta(n)
//                  + sum_k [ Phi_k zeta(n_k+) + n_k Theta_k zeta(n_k-) ]
//                  - r_trap sum_{s in trap} {V_s, zeta(n)}
//
// with V_k = |k><k|, Phi_k g = i[V_k, g] and
// Theta_k g = i (2 lambda_k / beta) [V_k, g] + lambda_k gamma_k {V_k, g}.
// At depth N the Phi coupling is dropped (no upward generation).

#include "fmoheom/fmo_model.hpp"
#include "fmoheom/hierarchy.hpp"

#include <span>
#include <vector>

namespace fmo {

/// [H + sum_k lambda_k |k><k|, g].
ComplexMatrix apply_liouvillian(const ComplexMatrix& g, const ComplexMatrix& hamiltonian,
                                std::span<const double> lambdas);

/// i[V_k, g], k in 1..dim.
ComplexMatrix apply_phi(int k, const ComplexMatrix& g);

/// i (2 lambda_k / beta) [V_k, g] + lambda_k gamma_k {V_k, g}, k in 1..dim.
ComplexMatrix apply_theta(int k, const ComplexMatrix& g, const ThermalPrefactors& prefactors);

/// -rate * sum_s {|s><s|, g}; sites 1-based. Throws on negative rate.
ComplexMatrix apply_trapping(const ComplexMatrix& g, std::span<const int> trap_sites, double rate);

/// All auxiliary operators, stored node-major; each node is a dim x dim
/// column-major block of `dim * dim` complex numbers.
struct HierarchyState {
  std::size_t nodes = 0;
  int dim = 0;
  std::vector<Complex> zetas;
  double time_fs = 0.0;

  HierarchyState() = default;
  HierarchyState(std::size_t node_count, int dimension)
      : nodes(node_count), dim(dimension),
        zetas(node_count * static_cast<std::size_t>(dimension * dimension)) {}

  std::size_t block() const { return static_cast<std::size_t>(dim * dim); }

  Eigen::Map<ComplexMatrix> node(std::size_t i) {
    return {zetas.data() + i * block(), dim, dim};
  }
  Eigen::Map<const ComplexMatrix> node(std::size_t i) const {
    return {zetas.data() + i * block(), dim, dim};
  }
};

/// Precomputed data and the right-hand side of the hierarchy.
class HeomSystem {
 public:
  HeomSystem(const SystemParams& params, const UnitSystem& units = {});

  const HierarchyIndexSpace& index_space() const { return space_; }
  int dim() const { return dim_; }
  std::size_t state_size() const { return space_.size() * static_cast<std::size_t>(dim_ * dim_); }

  /// Physical state at the top, every auxiliary operator zero.
  HierarchyState initial_state(const ComplexMatrix& rho) const;

  /// d/dt of the flattened state. Sizes must equal state_size().
  void rhs(std::span<const Complex> state, std::span<Complex> derivative) const;

  HierarchyState rhs(const HierarchyState& state) const;

  /// max over nodes of max|zeta - zeta^dagger|.
  double max_hermiticity_defect(std::span<const Complex> state) const;

  const RealMatrix& shifted_hamiltonian() const { return shifted_h_; }
  const ThermalPrefactors& prefactors() const { return prefactors_; }
  double trap_rate() const { return trap_rate_; }

 private:
  HierarchyIndexSpace space_;
  int dim_;
  RealMatrix shifted_h_;  // H + diag(lambda), rad/fs
  ThermalPrefactors prefactors_;
  std::vector<double> damping_;  // sum_k n_k gamma_k per node
  std::vector<int> trap_sites_;  // 0-based
  double trap_rate_;
};

}  // namespace fmo
