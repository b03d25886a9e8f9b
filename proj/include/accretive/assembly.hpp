#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "accretive/error.hpp"

namespace accretive {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Uniform lattice on (a, b) with n interior points. Node 0 and node n+1
/// are the endpoints and carry the homogeneous Dirichlet data.
struct Grid {
  double a = 0.0;
  double b = 1.0;
  int n = 2;
  double h = 1.0 / 3.0;

  /// Coordinate of interior point i (0-based).
  double node(int i) const { return a + (i + 1) * h; }
  RealVector nodes() const;
};

Grid make_grid(double a, double b, int n);

/// Dense complex matrix standing for a discretized operator on a grid.
struct OperatorMatrix {
  Matrix entries;
  Grid grid;
  std::string label;
  std::string scheme;

  Eigen::Index dim() const { return entries.rows(); }
};

/// Discrete H^k_0 Gram matrix: f* G g is the (f, g)_{H^k_0} inner product
/// with trapezoidal weight h.
struct SobolevGram {
  int order = 0;
  RealMatrix matrix;
};

enum class Side { Left, Right };

std::string_view to_string(Side side) noexcept;

enum class FracVariant {
  ProductTrapezoidIntegral,
  GrunwaldLetnikovDerivative,
  Composed,  ///< D^{l+a} = I^{1-a} d^{l+1}, with a causal inner difference
};

std::string_view to_string(FracVariant variant) noexcept;

/// One term p * D^order on the given side.
struct FractionalTerm {
  double coeff = 0.0;
  double order = 0.0;
  Side side = Side::Left;
};

/// Coefficients of the model operators.
///   differential[j] : samples of c_j at the interior nodes, j = 0..k
///   fractional      : terms of the constant-coefficient fractional part
struct CoefficientSpec {
  std::vector<Vector> differential;
  std::vector<FractionalTerm> fractional;

  int order() const { return static_cast<int>(differential.size()) - 1; }
};

/// Required sign of the coefficient of a left-sided term of order alpha:
/// +1 or -1 as dictated by the parity of floor(alpha).
int fractional_sign_rule(double alpha);

/// Square pointwise derivative: centered first difference, standard
/// 3-point second difference, higher orders by composition.
OperatorMatrix diff_matrix(const Grid& grid, int order);

/// Staggered difference used by the energy (form) assembly.
/// Odd j maps nodes to the n+1 cell edges, even j maps nodes to nodes, and
/// E_j^T E_j equals the j-th power of the Dirichlet Laplacian stencil.
RealMatrix energy_difference(const Grid& grid, int j);

SobolevGram sobolev_gram(const Grid& grid, int k);

/// Gram matrix scaled so f* G f is the plain weighted L2 norm.
SobolevGram identity_gram(const Grid& grid);

/// -(a u')' in form assembly.
OperatorMatrix assemble_elliptic(const Grid& grid, const RealVector& a_samples);

/// sum_j (c_j f^{(j)})^{(j)}, Galerkin-assembled as sum_j (-1)^j E_j^T c_j E_j.
OperatorMatrix assemble_L(const Grid& grid, const CoefficientSpec& coeffs);

/// sum of p_j D^{alpha_j}_{a+} and q_j D^{beta_j}_{b-}.
OperatorMatrix assemble_D(const Grid& grid, const CoefficientSpec& coeffs,
                          FracVariant variant = FracVariant::Composed);

OperatorMatrix assemble_W(const OperatorMatrix& T, const OperatorMatrix& A);
OperatorMatrix adjoint(const OperatorMatrix& W);

Matrix hermitian_part(const Matrix& M);
Matrix skew_part(const Matrix& M);  ///< (M - M*) / 2i, itself Hermitian

}  // namespace accretive
