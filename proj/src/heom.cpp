#include "fmoheom/heom.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fmo {

namespace {

void require_site(int k, Eigen::Index dim, const char* what) {
  if (k < 1 || k > dim) {
    std::ostringstream msg;
    msg << what << ": site " << k << " outside 1.." << dim;
    throw std::invalid_argument(msg.str());
  }
}

ComplexMatrix projector(int k, Eigen::Index dim) {
  ComplexMatrix v = ComplexMatrix::Zero(dim, dim);
  v(k - 1, k - 1) = 1.0;
  return v;
}

// One node of the right-hand side. D is the compile-time dimension, or 0 to
// use `dim` at run time. Blocks are column-major: g(i, j) = g[i + j * d].
template <int D>
void node_rhs(const int dim, const double* h, const Complex* self, double damping,
              const std::int32_t* plus, const std::int32_t* minus, const std::uint8_t* n,
              const Complex* state, const double* comm_coeff, const double* anti_coeff,
              const int* trap_sites, int trap_count, double trap_rate, Complex* out) {
  const int d = D > 0 ? D : dim;
  const std::size_t block = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);

  // -i [H, g] - damping * g, H real symmetric.
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      Complex acc{0.0, 0.0};
      for (int l = 0; l < d; ++l) {
        acc += h[i + l * d] * self[l + j * d] - self[i + l * d] * h[l + j * d];
      }
      const Complex g = self[i + j * d];
      out[i + j * d] = Complex(acc.imag(), -acc.real()) - damping * g;
    }
  }

  for (int k = 0; k < d; ++k) {
    // Phi_k zeta(n_k+) = i (V_k z - z V_k): +i on row k, -i on column k.
    if (plus[k] >= 0) {
      const Complex* z = state + static_cast<std::size_t>(plus[k]) * block;
      for (int j = 0; j < d; ++j) {
        const Complex v = z[k + j * d];
        out[k + j * d] += Complex(-v.imag(), v.real());
      }
      for (int i = 0; i < d; ++i) {
        const Complex v = z[i + k * d];
        out[i + k * d] -= Complex(-v.imag(), v.real());
      }
    }
    // n_k Theta_k zeta(n_k-) = n_k [(i c + a) V_k z + (-i c + a) z V_k].
    if (minus[k] >= 0) {
      const Complex* z = state + static_cast<std::size_t>(minus[k]) * block;
      const double nk = static_cast<double>(n[k]);
      const double a = nk * anti_coeff[k];
      const double c = nk * comm_coeff[k];
      for (int j = 0; j < d; ++j) {
        const Complex v = z[k + j * d];
        out[k + j * d] += Complex(a * v.real() - c * v.imag(), a * v.imag() + c * v.real());
      }
      for (int i = 0; i < d; ++i) {
        const Complex v = z[i + k * d];
        out[i + k * d] += Complex(a * v.real() + c * v.imag(), a * v.imag() - c * v.real());
      }
    }
  }

  // -r {V_s, g}.
  for (int t = 0; t < trap_count; ++t) {
    const int s = trap_sites[t];
    for (int j = 0; j < d; ++j) out[s + j * d] -= trap_rate * self[s + j * d];
    for (int i = 0; i < d; ++i) out[i + s * d] -= trap_rate * self[i + s * d];
  }
}

}  // namespace

ComplexMatrix apply_liouvillian(const ComplexMatrix& g, const ComplexMatrix& hamiltonian,
                                std::span<const double> lambdas) {
  if (static_cast<Eigen::Index>(lambdas.size()) != hamiltonian.rows()) {
    throw std::invalid_argument("apply_liouvillian: need one reorganization energy per site");
  }
  ComplexMatrix shifted = hamiltonian;
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    shifted(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) += lambdas[k];
  }
  return commutator(shifted, g);
}

ComplexMatrix apply_phi(int k, const ComplexMatrix& g) {
  require_site(k, g.rows(), "apply_phi");
  return kI * commutator(projector(k, g.rows()), g);
}

ComplexMatrix apply_theta(int k, const ComplexMatrix& g, const ThermalPrefactors& prefactors) {
  require_site(k, g.rows(), "apply_theta");
  if (static_cast<Eigen::Index>(prefactors.commutator_coeff.size()) < g.rows()) {
    throw std::invalid_argument("apply_theta: prefactors do not cover every site");
  }
  const ComplexMatrix v = projector(k, g.rows());
  const auto idx = static_cast<std::size_t>(k - 1);
  return kI * prefactors.commutator_coeff[idx] * commutator(v, g) +
         prefactors.anticommutator_coeff[idx] * anticommutator(v, g);
}

ComplexMatrix apply_trapping(const ComplexMatrix& g, std::span<const int> trap_sites, double rate) {
  if (!(rate >= 0.0)) throw std::invalid_argument("apply_trapping: rate must be >= 0");
  ComplexMatrix out = ComplexMatrix::Zero(g.rows(), g.cols());
  for (int s : trap_sites) {
    require_site(s, g.rows(), "apply_trapping");
    out -= rate * anticommutator(projector(s, g.rows()), g);
  }
  return out;
}

HeomSystem::HeomSystem(const SystemParams& params, const UnitSystem& units)
    : space_(params.n_sites, params.truncation_N),
      dim_(params.n_sites),
      prefactors_(thermal_prefactors(params, units)),
      trap_rate_(params.trap_rate_per_fs()) {
  if (dim_ > 64) throw std::invalid_argument("HeomSystem: at most 64 sites are supported");
  shifted_h_ = build_hamiltonian(params, units).real();
  for (int k = 0; k < dim_; ++k) shifted_h_(k, k) += prefactors_.lambda[static_cast<std::size_t>(k)];

  damping_.resize(space_.size());
  for (std::size_t r = 0; r < space_.size(); ++r) {
    const auto n = space_.multi_index(r);
    double sum = 0.0;
    for (int k = 0; k < dim_; ++k) sum += n[static_cast<std::size_t>(k)] * prefactors_.gamma[static_cast<std::size_t>(k)];
    damping_[r] = sum;
  }
  if (trap_rate_ > 0.0) {
    for (int s : params.trap_sites) {
      if (std::find(trap_sites_.begin(), trap_sites_.end(), s - 1) == trap_sites_.end()) {
        trap_sites_.push_back(s - 1);
      }
    }
  }
}

HierarchyState HeomSystem::initial_state(const ComplexMatrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) {
    throw std::invalid_argument("HeomSystem::initial_state: density matrix has wrong dimension");
  }
  HierarchyState state(space_.size(), dim_);
  state.node(0) = rho;
  return state;
}

void HeomSystem::rhs(std::span<const Complex> state, std::span<Complex> derivative) const {
  if (state.size() != state_size() || derivative.size() != state_size()) {
    std::ostringstream msg;
    msg << "HeomSystem::rhs: expected " << state_size() << " entries, got " << state.size()
        << " and " << derivative.size();
    throw std::invalid_argument(msg.str());
  }
  const std::size_t block = static_cast<std::size_t>(dim_ * dim_);
  const auto nodes = static_cast<std::int64_t>(space_.size());
  const double* h = shifted_h_.data();
  const Complex* base = state.data();
  Complex* out = derivative.data();
  const auto k_sites = static_cast<std::size_t>(dim_);

#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < nodes; ++r) {
    const auto ur = static_cast<std::size_t>(r);
    // Neighbour ranks; plus entries are kAbsent at depth N.
    std::int32_t plus[64];
    std::int32_t minus[64];
    for (std::size_t k = 0; k < k_sites; ++k) {
      plus[k] = space_.plus(ur, static_cast<int>(k));
      minus[k] = space_.minus(ur, static_cast<int>(k));
    }
    const auto n = space_.multi_index(ur);
    if (dim_ == 7) {
      node_rhs<7>(dim_, h, base + ur * block, damping_[ur], plus, minus, n.data(), base,
                  prefactors_.commutator_coeff.data(), prefactors_.anticommutator_coeff.data(),
                  trap_sites_.data(), static_cast<int>(trap_sites_.size()), trap_rate_,
                  out + ur * block);
    } else {
      node_rhs<0>(dim_, h, base + ur * block, damping_[ur], plus, minus, n.data(), base,
                  prefactors_.commutator_coeff.data(), prefactors_.anticommutator_coeff.data(),
                  trap_sites_.data(), static_cast<int>(trap_sites_.size()), trap_rate_,
                  out + ur * block);
    }
  }
}

HierarchyState HeomSystem::rhs(const HierarchyState& state) const {
  HierarchyState out(state.nodes, state.dim);
  out.time_fs = state.time_fs;
  rhs(state.zetas, out.zetas);
  return out;
}

double HeomSystem::max_hermiticity_defect(std::span<const Complex> state) const {
  const std::size_t block = static_cast<std::size_t>(dim_ * dim_);
  double worst = 0.0;
  for (std::size_t r = 0; r < state.size() / block; ++r) {
    const Complex* g = state.data() + r * block;
    for (int j = 0; j < dim_; ++j) {
      for (int i = 0; i <= j; ++i) {
        worst = std::max(worst, std::norm(g[i + j * dim_] - std::conj(g[j + i * dim_])));
      }
    }
  }
  return std::sqrt(worst);
}

}  // namespace fmo
