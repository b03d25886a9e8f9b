#include "accretive/fracops.hpp"

#include <cmath>
#include <sstream>

namespace accretive {

std::string_view to_string(FracVariant variant) noexcept {
  switch (variant) {
    case FracVariant::ProductTrapezoidIntegral: return "product-trapezoid-integral";
    case FracVariant::GrunwaldLetnikovDerivative: return "grunwald-letnikov-derivative";
    case FracVariant::Composed: return "composed";
  }
  return "unknown";
}

RealVector gl_weights(double alpha, int m) {
  RealVector w(m + 1);
  w(0) = 1.0;
  for (int k = 1; k <= m; ++k) w(k) = w(k - 1) * (1.0 - (alpha + 1.0) / k);
  return w;
}

Matrix reflect(const Matrix& M) { return M.colwise().reverse().rowwise().reverse(); }

namespace {

// Lower-triangular Toeplitz matrix with first column c.
RealMatrix lower_toeplitz(const RealVector& c) {
  const Eigen::Index n = c.size();
  RealMatrix m = RealMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) m(i, j) = c(i - j);
  return m;
}

// Product-trapezoid weights for the left Abel integral. The integrand is
// interpolated piecewise linearly through the nodes (with f(a) = 0), and the
// kernel (x - t)^{alpha - 1} / Gamma(alpha) is integrated exactly.
RealMatrix left_integral(const Grid& grid, double alpha) {
  const int n = grid.n;
  const double scale = std::pow(grid.h, alpha) / std::tgamma(alpha + 2.0);
  RealVector c(n);
  c(0) = scale;
  const double p = alpha + 1.0;
  for (int d = 1; d < n; ++d)
    c(d) = scale * (std::pow(d + 1.0, p) - 2.0 * std::pow(double(d), p) + std::pow(d - 1.0, p));
  return lower_toeplitz(c);
}

RealMatrix backward_difference(const Grid& grid) {
  const int n = grid.n;
  RealMatrix d = RealMatrix::Identity(n, n) / grid.h;
  for (int i = 1; i < n; ++i) d(i, i - 1) = -1.0 / grid.h;
  return d;
}

RealMatrix left_composed(const Grid& grid, double alpha) {
  const int whole = static_cast<int>(std::floor(alpha));
  const double frac = alpha - whole;
  const RealMatrix back = backward_difference(grid);
  RealMatrix inner = back;
  for (int k = 0; k < whole; ++k) inner = back * inner;
  return left_integral(grid, 1.0 - frac) * inner;
}

RealMatrix left_grunwald(const Grid& grid, double alpha) {
  return lower_toeplitz(gl_weights(alpha, grid.n - 1)) / std::pow(grid.h, alpha);
}

}  // namespace

OperatorMatrix frac_integral_matrix(const Grid& grid, double alpha, Side side) {
  if (!(alpha > 0.0)) throw Error(Errc::NonpositiveOrder, "fractional integral order must be > 0");
  Matrix m = left_integral(grid, alpha).cast<Complex>();
  if (side == Side::Right) m = reflect(m);
  std::ostringstream label;
  label << "I^" << alpha << "_" << to_string(side);
  return OperatorMatrix{std::move(m), grid, label.str(),
                        std::string(to_string(FracVariant::ProductTrapezoidIntegral))};
}

OperatorMatrix frac_derivative_matrix(const Grid& grid, double alpha, Side side, FracVariant variant) {
  if (alpha < 0.0) throw Error(Errc::NonpositiveOrder, "fractional derivative order must be >= 0");
  std::ostringstream label;
  label << "D^" << alpha << "_" << to_string(side);

  const double whole = std::floor(alpha);
  if (alpha == whole) {
    const int m = static_cast<int>(whole);
    if (m == 0) return OperatorMatrix{Matrix::Identity(grid.n, grid.n), grid, label.str(), "identity"};
    OperatorMatrix d = diff_matrix(grid, m);
    // (-d/dx)^m on the right side.
    if (side == Side::Right && m % 2 == 1) d.entries = -d.entries;
    d.label = label.str();
    return d;
  }

  RealMatrix left;
  switch (variant) {
    case FracVariant::Composed: left = left_composed(grid, alpha); break;
    case FracVariant::GrunwaldLetnikovDerivative: left = left_grunwald(grid, alpha); break;
    case FracVariant::ProductTrapezoidIntegral:
      throw Error(Errc::NonpositiveOrder, "product-trapezoid is an integral scheme");
  }
  // The right-sided operator (-1)^{l+1} I_{b-} (forward difference)^{l+1}
  // is exactly the reversal conjugate of the left-sided one.
  Matrix m = left.cast<Complex>();
  if (side == Side::Right) m = reflect(m);
  return OperatorMatrix{std::move(m), grid, label.str(), std::string(to_string(variant))};
}

double coercivity_margin(const Matrix& M, const SobolevGram& gram) {
  if (M.rows() != M.cols() || M.rows() != gram.matrix.rows())
    throw Error(Errc::DimensionMismatch, "operator and Gram matrix differ in size");
  Eigen::LLT<Matrix> llt(gram.matrix.cast<Complex>());
  if (llt.info() != Eigen::Success) throw Error(Errc::SingularGram, "Gram matrix is not positive definite");
  // L^{-1} M_H L^{-*} shares the pencil's eigenvalues.
  const Matrix x = llt.matrixL().solve(hermitian_part(M));
  const Matrix c = hermitian_part(llt.matrixL().solve(x.adjoint()));
  Eigen::SelfAdjointEigenSolver<Matrix> es(c, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace accretive
