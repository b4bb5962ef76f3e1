#pragma once

// Small dense complex linear algebra: Hermitian eigendecomposition, trace
// distance, (anti)commutators and the Pauli matrices. Dimensions are 7
// (site basis) and 4 (chromophore pair) throughout.

#include <Eigen/Dense>

#include <array>
#include <complex>

namespace fmo {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Largest |entry|; the scale all relative tolerances refer to.
double max_abs(const ComplexMatrix& a);

/// max_ij |A_ij - conj(A_ji)|.
double hermiticity_defect(const ComplexMatrix& a);

/// True when the defect is within rel_tol * max|A| (square matrices only).
bool is_hermitian(const ComplexMatrix& a, double rel_tol = 1e-12);

struct EigenDecomposition {
  RealVector values;     // ascending
  ComplexMatrix vectors; // columns, orthonormal
};

/// Eigendecomposition of a Hermitian matrix. Each eigenvector's global phase
/// is fixed so that its largest-magnitude component (first one on ties) is
/// real and positive. Throws std::invalid_argument on non-square or
/// non-Hermitian input (beyond rel_tol * max|A|).
EigenDecomposition hermitian_eigen(const ComplexMatrix& a, double rel_tol = 1e-12);

/// (1/2) * sum |eig(A - B)|.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

struct PauliVector {
  std::array<Eigen::Matrix2cd, 3> sigma;
};

/// sigma_1, sigma_2, sigma_3 in the basis (|0>, |1>).
const PauliVector& pauli();

}  // namespace fmo
