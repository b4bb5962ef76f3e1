#pragma once

#include "fmoheom/quantum_core.hpp"

#include <random>

namespace fmo::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611);
  return engine;
}

inline double uniform(double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline ComplexMatrix random_matrix(int dim) {
  ComplexMatrix a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(uniform(), uniform());
  }
  return a;
}

inline ComplexMatrix random_hermitian(int dim) {
  const ComplexMatrix a = random_matrix(dim);
  return 0.5 * (a + a.adjoint());
}

/// Random density matrix with trace `trace`.
inline ComplexMatrix random_density(int dim, double trace = 1.0) {
  const ComplexMatrix a = random_matrix(dim);
  ComplexMatrix rho = a * a.adjoint();
  return rho * (trace / rho.trace().real());
}

}  // namespace fmo::test
