#pragma once

#include <cmath>
#include <random>

#include "accretive/assembly.hpp"

namespace accretive::testing {

// Random matrix with Hermitian part >= shift * I: Q D Q* plus an arbitrary
// skew-Hermitian term of the given scale.
inline Matrix random_accretive(int n, std::mt19937_64& rng, double shift = 0.5, double skew = 1.0) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix x(n, n), y(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      x(i, j) = Complex(g(rng), g(rng));
      y(i, j) = Complex(g(rng), g(rng));
    }
  const Matrix h = x * x.adjoint() / double(n) + shift * Matrix::Identity(n, n);
  const Matrix k = (y + y.adjoint()) / (2.0 * std::sqrt(double(n)));
  return h + Complex(0.0, skew) * k;
}

inline Matrix closed_form_w() {
  Matrix w(2, 2);
  w << 2.0, Complex(0.0, 1.0), Complex(0.0, 1.0), 2.0;
  return w;
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace accretive::testing
