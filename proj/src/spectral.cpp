#include "accretive/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace accretive {

double spectral_norm(const Matrix& M) {
  if (M.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(M);
  return svd.singularValues()(0);
}

double hermitian_residual(const Matrix& M) {
  const double scale = M.norm();
  if (scale == 0.0) return 0.0;
  return (M - M.adjoint()).norm() / scale;
}

Spectrum HermitianEig::spectrum() const {
  Spectrum s;
  s.eigenvalues.reserve(static_cast<std::size_t>(eigenvalues.size()));
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) s.eigenvalues.emplace_back(eigenvalues(i), 0.0);
  s.residual = residual;
  return s;
}

HermitianEig hermitian_eig(const Matrix& M) {
  if (M.rows() != M.cols()) throw Error(Errc::DimensionMismatch, "matrix must be square");
  if (hermitian_residual(M) > 1e-10) throw Error(Errc::NotHermitian, "matrix is not Hermitian");
  const Matrix sym = hermitian_part(M);
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.info() != Eigen::Success) throw Error(Errc::ConvergenceFailure, "Hermitian eigensolver failed");
  HermitianEig out{es.eigenvalues(), es.eigenvectors(), 0.0};
  const Matrix r = sym * out.eigenvectors - out.eigenvectors * out.eigenvalues.cast<Complex>().asDiagonal();
  out.residual = r.colwise().norm().maxCoeff();
  return out;
}

Spectrum general_eig(const Matrix& M) {
  if (M.rows() != M.cols()) throw Error(Errc::DimensionMismatch, "matrix must be square");
  if (!M.allFinite()) throw Error(Errc::ConvergenceFailure, "matrix has non-finite entries");
  Eigen::ComplexEigenSolver<Matrix> es(M, true);
  if (es.info() != Eigen::Success) throw Error(Errc::ConvergenceFailure, "Schur iteration did not converge");
  const Vector& values = es.eigenvalues();
  const Matrix& vectors = es.eigenvectors();

  Spectrum s;
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    const double ai = std::abs(values(i)), aj = std::abs(values(j));
    if (ai != aj) return ai > aj;
    if (values(i).real() != values(j).real()) return values(i).real() > values(j).real();
    return values(i).imag() > values(j).imag();
  });
  for (Eigen::Index i : order) {
    s.eigenvalues.push_back(values(i));
    const Vector v = vectors.col(i).normalized();
    s.residual = std::max(s.residual, (M * v - values(i) * v).norm());
  }
  return s;
}

std::pair<Matrix, Matrix> psd_sqrt(const Matrix& H) {
  const HermitianEig eig = hermitian_eig(H);
  if (eig.eigenvalues.size() > 0 && !(eig.eigenvalues(0) > 0.0))
    throw Error(Errc::NotPositiveDefinite, "smallest eigenvalue is not positive");
  const RealVector root = eig.eigenvalues.cwiseSqrt();
  const Matrix& V = eig.eigenvectors;
  Matrix half = V * root.cast<Complex>().asDiagonal() * V.adjoint();
  Matrix inv_half = V * root.cwiseInverse().cast<Complex>().asDiagonal() * V.adjoint();
  return {hermitian_part(half), hermitian_part(inv_half)};
}

FactorizationBundle extract_factorization(const Matrix& W) {
  if (W.rows() != W.cols()) throw Error(Errc::DimensionMismatch, "matrix must be square");
  FactorizationBundle f;
  f.H = hermitian_part(W);
  try {
    std::tie(f.Hhalf, f.Hinvhalf) = psd_sqrt(f.H);
  } catch (const Error& e) {
    if (e.code() == Errc::NotPositiveDefinite)
      throw Error(Errc::NonAccretive, "Hermitian part of W is not positive definite");
    throw;
  }
  f.B = hermitian_part(f.Hinvhalf * skew_part(W) * f.Hinvhalf);
  const Eigen::Index n = W.rows();
  f.S = Matrix::Identity(n, n) + f.B * f.B;
  f.S = hermitian_part(f.S);

  Eigen::SelfAdjointEigenSolver<Matrix> eb(f.B, Eigen::EigenvaluesOnly);
  const RealVector& lb = eb.eigenvalues();
  f.normB = n > 0 ? std::max(std::abs(lb(0)), std::abs(lb(n - 1))) : 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(f.S, Eigen::EigenvaluesOnly);
  const RealVector& ls = es.eigenvalues();
  f.normS = n > 0 ? ls(n - 1) : 0.0;
  f.normSinv = n > 0 ? 1.0 / ls(0) : 0.0;
  return f;
}

namespace {

double smallest_singular_value(const Matrix& M) {
  Eigen::BDCSVD<Matrix> svd(M);
  const auto& s = svd.singularValues();
  return s.size() ? s(s.size() - 1) : 0.0;
}

}  // namespace

Matrix resolvent(const Matrix& W, Complex zeta) {
  if (W.rows() != W.cols()) throw Error(Errc::DimensionMismatch, "matrix must be square");
  const Eigen::Index n = W.rows();
  const Matrix shifted = W + zeta * Matrix::Identity(n, n);
  const double scale = spectral_norm(W);
  if (smallest_singular_value(shifted) <= 1e-12 * scale) {
    std::ostringstream os;
    os << "W + zeta is numerically singular at zeta = " << zeta;
    throw Error(Errc::SpectrumHit, os.str());
  }
  return shifted.fullPivLu().inverse();
}

Matrix compute_V(const Matrix& W) {
  const Matrix r = resolvent(W, Complex(0.0, 0.0));
  return hermitian_part(r);
}

Matrix V_from_factorization(const FactorizationBundle& f) {
  const Matrix s_inv = f.S.llt().solve(Matrix::Identity(f.S.rows(), f.S.cols()));
  return hermitian_part(f.Hinvhalf * s_inv * f.Hinvhalf);
}

std::vector<double> singular_values(const Matrix& M) {
  if (M.size() == 0) return {};
  Eigen::BDCSVD<Matrix> svd(M);
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

double schatten_norm(const Matrix& M, double p) {
  if (p < 1.0) throw Error(Errc::NonpositiveValue, "Schatten exponent must be >= 1");
  double sum = 0.0;
  for (double s : singular_values(M)) sum += std::pow(s, p);
  return std::pow(sum, 1.0 / p);
}

std::vector<double> descending_eigenvalues(const Matrix& M) {
  const HermitianEig eig = hermitian_eig(M);
  std::vector<double> out(eig.eigenvalues.data(), eig.eigenvalues.data() + eig.eigenvalues.size());
  std::reverse(out.begin(), out.end());
  return out;
}

Window default_window(int count) {
  // Skip the first four indices, where the fit is dominated by the lowest
  // mode; short sequences fall back to dropping the smallest tenth.
  const int first = count >= 18 ? 5 : count / 10 + 1;
  const int last = std::max(first, count / 2);
  return Window{first, last};
}

double log_log_slope(const std::vector<double>& values, Window window, double* r_squared) {
  if (window.first < 1 || window.last > static_cast<int>(values.size()) || window.length() < 5) {
    std::ostringstream os;
    os << "window [" << window.first << ", " << window.last << "] over " << values.size()
       << " values needs at least 5 indices";
    throw Error(Errc::WindowTooSmall, os.str());
  }
  const int m = window.length();
  Eigen::VectorXd x(m), y(m);
  for (int i = 0; i < m; ++i) {
    const int index = window.first + i;
    const double v = values[static_cast<std::size_t>(index - 1)];
    if (!(v > 0.0)) {
      std::ostringstream os;
      os << "value " << v << " at index " << index;
      throw Error(Errc::NonpositiveValue, os.str());
    }
    x(i) = std::log(static_cast<double>(index));
    y(i) = std::log(v);
  }
  const double xm = x.mean(), ym = y.mean();
  const Eigen::VectorXd dx = x.array() - xm, dy = y.array() - ym;
  const double slope = dx.dot(dy) / dx.squaredNorm();
  if (r_squared) {
    const double ss_tot = dy.squaredNorm();
    const double ss_res = (dy - slope * dx).squaredNorm();
    *r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  }
  return slope;
}

DecayFit decay_fit(const std::vector<double>& values, Window window) {
  DecayFit fit;
  fit.mu_hat = -log_log_slope(values, window, &fit.r_squared);
  fit.first = window.first;
  fit.last = window.last;
  return fit;
}

}  // namespace accretive
