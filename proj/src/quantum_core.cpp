#include "fmoheom/quantum_core.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fmo {

namespace {

void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    std::ostringstream msg;
    msg << what << ": expected a non-empty square matrix, got " << a.rows() << "x" << a.cols();
    throw std::invalid_argument(msg.str());
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows()
        << "x" << b.cols();
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

double max_abs(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& a) {
  require_square(a, "hermiticity_defect");
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  return hermiticity_defect(a) <= rel_tol * max_abs(a);
}

EigenDecomposition hermitian_eigen(const ComplexMatrix& a, double rel_tol) {
  require_square(a, "hermitian_eigen");
  const double defect = hermiticity_defect(a);
  const double scale = max_abs(a);
  if (defect > rel_tol * scale) {
    std::ostringstream msg;
    msg << "hermitian_eigen: matrix is not Hermitian (defect " << defect << ", max|A| " << scale
        << ")";
    throw std::invalid_argument(msg.str());
  }

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigen: eigensolver did not converge");
  }

  EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index c = 0; c < out.vectors.cols(); ++c) {
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < out.vectors.rows(); ++r) {
      const double mag = std::abs(out.vectors(r, c));
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    const Complex phase = std::conj(out.vectors(pivot, c)) / best;
    out.vectors.col(c) *= phase;
    // Remove the rounding residue so the pivot is exactly real.
    out.vectors(pivot, c) = Complex(best, 0.0);
  }
  return out;
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "trace_distance");
  require_same_shape(a, b, "trace_distance");
  const ComplexMatrix diff = a - b;
  if (max_abs(diff) == 0.0) return 0.0;
  // Symmetrize: inputs are Hermitian up to rounding, the difference may lose
  // relative precision when the two states are close.
  const ComplexMatrix herm = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "commutator");
  return a * b - b * a;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "anticommutator");
  return a * b + b * a;
}

const PauliVector& pauli() {
  static const PauliVector paulis = [] {
    PauliVector p;
    p.sigma[0] << 0.0, 1.0, 1.0, 0.0;
    p.sigma[1] << 0.0, -kI, kI, 0.0;
    p.sigma[2] << 1.0, 0.0, 0.0, -1.0;
    return p;
  }();
  return paulis;
}

}  // namespace fmo
