#include "fmoheom/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fmo {

namespace {

void require_hermitian(const Matrix4c& rho, const char* what) {
  const double scale = std::max(rho.cwiseAbs().maxCoeff(), 1.0);
  const double defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (defect > 1e-12 * scale) {
    std::ostringstream msg;
    msg << what << ": state is not Hermitian (defect " << defect << ")";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

std::vector<PairIndex> all_pairs(int n_sites) {
  std::vector<PairIndex> out;
  for (int m = 1; m <= n_sites; ++m) {
    for (int n = m + 1; n <= n_sites; ++n) out.push_back({m, n});
  }
  return out;
}

ReducedPairState reduce_pair(const ComplexMatrix& rho, int m, int n) {
  const auto dim = static_cast<int>(rho.rows());
  if (m == n) throw std::invalid_argument("reduce_pair: sites must differ");
  if (m < 1 || n < 1 || m > dim || n > dim) {
    std::ostringstream msg;
    msg << "reduce_pair: pair (" << m << ", " << n << ") outside 1.." << dim;
    throw std::invalid_argument(msg.str());
  }
  if (m > n) std::swap(m, n);

  ReducedPairState r;
  r.m = m;
  r.n = n;
  r.source_trace = rho.trace().real();
  const double pm = rho(m - 1, m - 1).real();
  const double pn = rho(n - 1, n - 1).real();
  const double ground = r.source_trace - pm - pn;
  if (ground < -1e-9) {
    std::ostringstream msg;
    msg << "reduce_pair: negative ground-ground population " << ground << " for pair (" << m
        << ", " << n << ")";
    throw std::invalid_argument(msg.str());
  }
  r.matrix(0, 0) = ground;
  r.matrix(1, 1) = pn;
  r.matrix(2, 2) = pm;
  r.matrix(2, 1) = rho(m - 1, n - 1);
  r.matrix(1, 2) = std::conj(rho(m - 1, n - 1));
  return r;
}

Eigen::Matrix3d correlation_matrix(const Matrix4c& rho) {
  const auto& s = pauli().sigma;
  Eigen::Matrix3d t;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      Matrix4c op;
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) op.block<2, 2>(2 * i, 2 * j) = s[a](i, j) * s[b];
      }
      t(a, b) = (rho * op).trace().real();
    }
  }
  return t;
}

double horodecki_M(const Matrix4c& rho) {
  require_hermitian(rho, "horodecki_M");
  const Eigen::Matrix3d t = correlation_matrix(rho);
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(t.transpose() * t,
                                                               Eigen::EigenvaluesOnly);
  const Eigen::Vector3d u = solver.eigenvalues();  // ascending
  return u(1) + u(2);
}

double nonlocality_B(const Matrix4c& rho) {
  return std::sqrt(std::max(horodecki_M(rho) - 1.0, 0.0));
}

ClosedFormMeasures closed_form_measures(const ReducedPairState& r) {
  const double c2 = std::norm(r.coherence());
  const double diff = r.source_trace - 2.0 * (r.population_m() + r.population_n());
  ClosedFormMeasures out;
  out.mu1 = 4.0 * c2;
  out.mu3 = diff * diff;
  const double m_value = std::max(8.0 * c2, 4.0 * c2 + out.mu3);
  out.B = std::sqrt(std::max(m_value - 1.0, 0.0));
  out.C = 2.0 * std::sqrt(c2);
  out.l1 = out.C;
  return out;
}

double wootters_concurrence(const Matrix4c& rho, double negative_tol) {
  require_hermitian(rho, "wootters_concurrence");
  const Eigen::SelfAdjointEigenSolver<Matrix4c> solver(rho);
  const Eigen::Vector4d p = solver.eigenvalues();
  if (p(0) < -negative_tol) {
    std::ostringstream msg;
    msg << "wootters_concurrence: state has eigenvalue " << p(0);
    throw std::invalid_argument(msg.str());
  }
  const Eigen::Vector4d root = p.cwiseMax(0.0).cwiseSqrt();
  const Matrix4c l = solver.eigenvectors() * root.asDiagonal();

  Matrix4c y = Matrix4c::Zero();
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;
  const Matrix4c a = l.adjoint() * y * l.conjugate();
  const Eigen::JacobiSVD<Matrix4c> svd(a);
  const Eigen::Vector4d s = svd.singularValues();  // descending
  return std::max(s(0) - s(1) - s(2) - s(3), 0.0);
}

bool positivity_bound_check(const ReducedPairState& r, double tol) {
  const double product = std::max(r.population_m(), 0.0) * std::max(r.population_n(), 0.0);
  return std::abs(r.coherence()) <= std::sqrt(product) + tol;
}

}  // namespace fmo
