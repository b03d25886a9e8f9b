#include "accretive/assembly.hpp"

#include <cmath>
#include <sstream>

#include "accretive/fracops.hpp"

namespace accretive {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NonpositiveLength: return "NonpositiveLength";
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::OrderTooHigh: return "OrderTooHigh";
    case Errc::NonellipticCoefficient: return "NonellipticCoefficient";
    case Errc::SignViolation: return "SignViolation";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NonpositiveOrder: return "NonpositiveOrder";
    case Errc::SingularGram: return "SingularGram";
    case Errc::NonAccretive: return "NonAccretive";
    case Errc::NonpositiveEpsilon: return "NonpositiveEpsilon";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::ConvergenceFailure: return "ConvergenceFailure";
    case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
    case Errc::SpectrumHit: return "SpectrumHit";
    case Errc::WindowTooSmall: return "WindowTooSmall";
    case Errc::NonpositiveValue: return "NonpositiveValue";
    case Errc::InsufficientSizes: return "InsufficientSizes";
    case Errc::ParseError: return "ParseError";
    case Errc::ConstraintError: return "ConstraintError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

std::string_view to_string(Side side) noexcept { return side == Side::Left ? "left" : "right"; }

RealVector Grid::nodes() const {
  RealVector x(n);
  for (int i = 0; i < n; ++i) x(i) = node(i);
  return x;
}

Grid make_grid(double a, double b, int n) {
  if (!(b > a)) throw Error(Errc::NonpositiveLength, "interval must satisfy b > a");
  if (n < 2) throw Error(Errc::TooFewPoints, "need at least 2 interior points");
  return Grid{a, b, n, (b - a) / (n + 1)};
}

namespace {

void check_order(const Grid& grid, int order) {
  // A stencil of the given order spans order + 1 consecutive nodes.
  if (order < 0 || order >= grid.n) {
    std::ostringstream os;
    os << "order " << order << " does not fit on " << grid.n << " interior points";
    throw Error(Errc::OrderTooHigh, os.str());
  }
}

RealMatrix centered_first(const Grid& grid) {
  const int n = grid.n;
  RealMatrix d = RealMatrix::Zero(n, n);
  const double s = 1.0 / (2.0 * grid.h);
  for (int i = 0; i < n; ++i) {
    if (i + 1 < n) d(i, i + 1) = s;
    if (i > 0) d(i, i - 1) = -s;
  }
  return d;
}

RealMatrix second_difference(const Grid& grid) {
  const int n = grid.n;
  RealMatrix d = RealMatrix::Zero(n, n);
  const double s = 1.0 / (grid.h * grid.h);
  for (int i = 0; i < n; ++i) {
    d(i, i) = -2.0 * s;
    if (i + 1 < n) d(i, i + 1) = s;
    if (i > 0) d(i, i - 1) = s;
  }
  return d;
}

// Forward difference from the n nodes onto the n + 1 cell edges.
RealMatrix edge_gradient(const Grid& grid) {
  const int n = grid.n;
  RealMatrix e = RealMatrix::Zero(n + 1, n);
  const double s = 1.0 / grid.h;
  for (int edge = 0; edge <= n; ++edge) {
    if (edge < n) e(edge, edge) = s;
    if (edge > 0) e(edge, edge - 1) = -s;
  }
  return e;
}

// Node samples to edge values. Interior edges average their two nodes; the
// two boundary edges take the adjacent node.
Vector to_edges(const Vector& c) {
  const Eigen::Index n = c.size();
  Vector e(n + 1);
  e(0) = c(0);
  e(n) = c(n - 1);
  for (Eigen::Index k = 1; k < n; ++k) e(k) = 0.5 * (c(k - 1) + c(k));
  return e;
}

Matrix weighted_energy(const Grid& grid, int j, const Vector& samples) {
  const RealMatrix E = energy_difference(grid, j);
  const Vector w = (E.rows() == grid.n) ? samples : to_edges(samples);
  return E.transpose().cast<Complex>() * w.asDiagonal() * E.cast<Complex>();
}

// Left derivative of order l + a with l >= 1 in form assembly,
// (-1)^m E_m^T X E_m with X = I^{1-a} for l = 2m - 1 and X = D^a for l = 2m.
// Moving m derivatives onto the test function keeps the sign structure of
// the continuous form, which the causal product loses at grid frequencies.
Matrix left_fractional_form(const Grid& grid, double order, FracVariant variant) {
  const int l = static_cast<int>(std::floor(order));
  const double frac = order - l;
  const int m = (l + 1) / 2;
  check_order(grid, m);
  const RealMatrix E = energy_difference(grid, m);
  const int rows = static_cast<int>(E.rows());
  // Odd m lands on the n + 1 cell edges, which again form a uniform lattice.
  const Grid inner = rows == grid.n ? grid : Grid{grid.a - grid.h / 2, grid.b + grid.h / 2, rows, grid.h};
  const Matrix X = (l % 2 == 1) ? frac_integral_matrix(inner, 1.0 - frac, Side::Left).entries
                                : frac_derivative_matrix(inner, frac, Side::Left, variant).entries;
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return sign * (E.transpose().cast<Complex>() * X * E.cast<Complex>());
}

Matrix fractional_term(const Grid& grid, double order, Side side, FracVariant variant) {
  if (order < 1.0 || order == std::floor(order)) return frac_derivative_matrix(grid, order, side, variant).entries;
  const Matrix left = left_fractional_form(grid, order, variant);
  return side == Side::Left ? left : reflect(left);
}

}  // namespace

OperatorMatrix diff_matrix(const Grid& grid, int order) {
  if (order < 1) throw Error(Errc::OrderTooHigh, "derivative order must be positive");
  check_order(grid, order);
  RealMatrix d = RealMatrix::Identity(grid.n, grid.n);
  const RealMatrix d2 = second_difference(grid);
  for (int k = 0; k < order / 2; ++k) d = d2 * d;
  if (order % 2 == 1) d = centered_first(grid) * d;
  std::ostringstream scheme;
  scheme << "central order " << order;
  return OperatorMatrix{d.cast<Complex>(), grid, "d^" + std::to_string(order), scheme.str()};
}

RealMatrix energy_difference(const Grid& grid, int j) {
  if (j == 0) return RealMatrix::Identity(grid.n, grid.n);
  check_order(grid, j);
  const RealMatrix e1 = edge_gradient(grid);
  const RealMatrix second = -(e1.transpose() * e1);
  RealMatrix d = RealMatrix::Identity(grid.n, grid.n);
  for (int k = 0; k < j / 2; ++k) d = second * d;
  if (j % 2 == 1) d = e1 * d;
  return d;
}

SobolevGram sobolev_gram(const Grid& grid, int k) {
  if (k < 0) throw Error(Errc::OrderTooHigh, "Sobolev order must be nonnegative");
  if (k > 0) check_order(grid, k);
  RealMatrix g = RealMatrix::Identity(grid.n, grid.n);
  for (int j = 1; j <= k; ++j) {
    const RealMatrix e = energy_difference(grid, j);
    g += e.transpose() * e;
  }
  g *= grid.h;
  return SobolevGram{k, 0.5 * (g + g.transpose())};
}

SobolevGram identity_gram(const Grid& grid) { return sobolev_gram(grid, 0); }

OperatorMatrix assemble_elliptic(const Grid& grid, const RealVector& a_samples) {
  if (a_samples.size() != grid.n)
    throw Error(Errc::DimensionMismatch, "coefficient samples must match the grid");
  for (Eigen::Index i = 0; i < a_samples.size(); ++i) {
    if (!(a_samples(i) > 0.0)) {
      std::ostringstream os;
      os << "a(x) = " << a_samples(i) << " at node " << i;
      throw Error(Errc::NonellipticCoefficient, os.str());
    }
  }
  Matrix m = weighted_energy(grid, 1, a_samples.cast<Complex>());
  return OperatorMatrix{std::move(m), grid, "elliptic", "form assembly E1^T a E1"};
}

OperatorMatrix assemble_L(const Grid& grid, const CoefficientSpec& coeffs) {
  if (coeffs.differential.empty()) throw Error(Errc::DimensionMismatch, "no differential coefficients");
  Matrix m = Matrix::Zero(grid.n, grid.n);
  for (int j = 0; j <= coeffs.order(); ++j) {
    const Vector& c = coeffs.differential[static_cast<std::size_t>(j)];
    if (c.size() != grid.n) throw Error(Errc::DimensionMismatch, "coefficient samples must match the grid");
    const double parity = (j % 2 == 0) ? 1.0 : -1.0;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      if (parity * c(i).real() < 0.0) {
        std::ostringstream os;
        os << "sign(Re c_" << j << ") must be " << (parity > 0 ? "+" : "-") << "1, got Re c_" << j
           << " = " << c(i).real() << " at node " << i;
        throw Error(Errc::SignViolation, os.str());
      }
    }
    if (c.isZero(0.0)) continue;
    m += parity * weighted_energy(grid, j, c);
  }
  std::ostringstream scheme;
  scheme << "form assembly, order " << coeffs.order();
  return OperatorMatrix{std::move(m), grid, "L", scheme.str()};
}

int fractional_sign_rule(double alpha) {
  const int l = static_cast<int>(std::floor(alpha));
  const int exponent = (l % 2 == 1) ? (l + 1) / 2 : l / 2;
  return (exponent % 2 == 0) ? 1 : -1;
}

OperatorMatrix assemble_D(const Grid& grid, const CoefficientSpec& coeffs, FracVariant variant) {
  Matrix m = Matrix::Zero(grid.n, grid.n);
  const int k = coeffs.order();
  for (const auto& term : coeffs.fractional) {
    if (term.order < 0.0) throw Error(Errc::NonpositiveOrder, "fractional order must be >= 0");
    const int whole = static_cast<int>(std::floor(term.order));
    if (k >= 1 && whole >= k) {
      std::ostringstream os;
      os << "[order] = " << whole << " must be below the differential order " << k;
      throw Error(Errc::SignViolation, os.str());
    }
    if (term.side == Side::Left) {
      const int required = fractional_sign_rule(term.order);
      if (term.coeff * required < 0.0) {
        std::ostringstream os;
        os << "left coefficient " << term.coeff << " of order " << term.order << " must have sign "
           << (required > 0 ? "+" : "-");
        throw Error(Errc::SignViolation, os.str());
      }
    } else if (term.coeff < 0.0) {
      throw Error(Errc::SignViolation, "right-sided coefficients must be >= 0");
    }
    if (term.coeff == 0.0) continue;
    m += term.coeff * fractional_term(grid, term.order, term.side, variant);
  }
  return OperatorMatrix{std::move(m), grid, "D", std::string(to_string(variant))};
}

OperatorMatrix assemble_W(const OperatorMatrix& T, const OperatorMatrix& A) {
  if (T.entries.rows() != A.entries.rows() || T.entries.cols() != A.entries.cols() ||
      T.grid.n != A.grid.n)
    throw Error(Errc::DimensionMismatch, "T and A must live on the same grid");
  return OperatorMatrix{T.entries + A.entries, T.grid, "W", T.label + " + " + A.label};
}

OperatorMatrix adjoint(const OperatorMatrix& W) {
  return OperatorMatrix{W.entries.adjoint(), W.grid, W.label + "*", W.scheme};
}

Matrix hermitian_part(const Matrix& M) { return 0.5 * (M + M.adjoint()); }

Matrix skew_part(const Matrix& M) { return (M - M.adjoint()) / Complex(0.0, 2.0); }

}  // namespace accretive
