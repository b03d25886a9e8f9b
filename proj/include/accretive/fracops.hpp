#pragma once

#include <string_view>

#include "accretive/assembly.hpp"

namespace accretive {

// Riemann-Liouville operators on a grid. Functions are extended by zero
// outside (a, b), so the endpoint samples are 0.

struct FracScheme {
  FracVariant variant = FracVariant::Composed;
  double order = 0.0;
  Side side = Side::Left;
};

/// (-1)^k binom(alpha, k) for k = 0..m.
RealVector gl_weights(double alpha, int m);

OperatorMatrix frac_integral_matrix(const Grid& grid, double alpha, Side side);

/// variant must be Composed or GrunwaldLetnikovDerivative.
OperatorMatrix frac_derivative_matrix(const Grid& grid, double alpha, Side side,
                                      FracVariant variant = FracVariant::Composed);

/// Smallest eigenvalue of the pencil (Hermitian part of M, gram).
double coercivity_margin(const Matrix& M, const SobolevGram& gram);

/// Index-reversal conjugation P M P.
Matrix reflect(const Matrix& M);

}  // namespace accretive
