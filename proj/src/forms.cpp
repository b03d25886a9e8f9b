#include "accretive/forms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace accretive {

namespace {

Eigen::LLT<Matrix> factor(const SobolevGram& gram) {
  Eigen::LLT<Matrix> llt(gram.matrix.cast<Complex>());
  if (llt.info() != Eigen::Success) throw Error(Errc::SingularGram, "Gram matrix is not positive definite");
  return llt;
}

// L_row^{-1} M L_col^{-*} for Gram factors G = L L*.
Matrix congruence(const Eigen::LLT<Matrix>& row, const Matrix& M, const Eigen::LLT<Matrix>& col) {
  const Matrix left = row.matrixL().solve(M);
  return col.matrixL().solve(left.adjoint()).adjoint();
}

double min_eig(const Matrix& M) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(M), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_singular(const Matrix& M) {
  Eigen::BDCSVD<Matrix> svd(M);
  return svd.singularValues()(0);
}

Vector random_unit(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v.normalized();
}

// Largest-eigenvalue pair of a Hermitian matrix.
std::pair<double, Vector> top_pair(const Matrix& M) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(M));
  const Eigen::Index last = M.rows() - 1;
  return {es.eigenvalues()(last), es.eigenvectors().col(last)};
}

double top_eigenvalue(const Matrix& M) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(M), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(M.rows() - 1);
}

// For a matrix whose numerical range lies in the open right half-plane,
// returns the unit vector whose Rayleigh quotient sits on the support ray
// through the origin with the largest argument. The angle is located by
// bisection on the sign of lambda_max(Im(e^{-i phi} W)).
Vector upper_tangent(const Matrix& W, double lo) {
  double hi = std::numbers::pi / 2;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (top_eigenvalue(skew_part(std::polar(1.0, -mid) * W)) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return top_pair(skew_part(std::polar(1.0, -hi) * W)).second;
}

}  // namespace

AccretivityConstants estimate_constants(const Matrix& T, const Matrix& A, const GramPair& grams) {
  const Eigen::Index n = T.rows();
  if (T.cols() != n || A.rows() != n || A.cols() != n || grams.plus.matrix.rows() != n ||
      grams.base.matrix.rows() != n)
    throw Error(Errc::DimensionMismatch, "operators and Gram matrices differ in size");
  const auto plus = factor(grams.plus);
  const auto base = factor(grams.base);
  const Matrix wT = grams.weight * T;
  const Matrix wA = grams.weight * A;

  AccretivityConstants c;
  c.C0 = min_eig(congruence(plus, hermitian_part(wT), plus));
  c.C1 = max_singular(congruence(plus, wT, plus));
  c.C2 = min_eig(congruence(base, hermitian_part(wA), base));
  c.C3 = max_singular(congruence(base, wA, plus));
  c.C4 = c.C1 + c.C3;
  if (!(c.C0 > 0.0) || !(c.C2 > 0.0)) {
    std::ostringstream os;
    os << "coercivity constants C0 = " << c.C0 << ", C2 = " << c.C2 << " must be positive";
    throw Error(Errc::NonAccretive, os.str());
  }
  return c;
}

AccretivityConstants estimate_constants(const OperatorMatrix& T, const OperatorMatrix& A,
                                        const SobolevGram& gram_plus, const SobolevGram& gram0) {
  return estimate_constants(T.entries, A.entries, GramPair{gram_plus, gram0, T.grid.h});
}

double sector_k(const AccretivityConstants& c, double epsilon) {
  return c.C0 / (0.5 * c.C3 * epsilon + c.C1);
}

double sector_gamma(const AccretivityConstants& c, double epsilon) {
  return c.C2 - sector_k(c, epsilon) * c.C3 / (2.0 * epsilon);
}

double sector_root(const AccretivityConstants& c) {
  const double ratio = c.C1 / c.C3;
  return std::sqrt(ratio * ratio + c.C0 / c.C2) - ratio;
}

SectorParams sector_parameters(const AccretivityConstants& c, std::optional<double> epsilon) {
  if (!(c.C0 > 0.0 && c.C1 > 0.0 && c.C2 > 0.0 && c.C3 > 0.0))
    throw Error(Errc::NonAccretive, "sector parameters need positive constants");
  if (epsilon && !(*epsilon > 0.0)) throw Error(Errc::NonpositiveEpsilon, "epsilon must be positive");
  SectorParams s;
  s.xi = sector_root(c);
  s.epsilon = epsilon.value_or(s.xi);
  s.k = sector_k(c, s.epsilon);
  s.gamma = sector_gamma(c, s.epsilon);
  s.theta = std::atan(1.0 / s.k);
  return s;
}

NumericalRangeSample numerical_range(const Matrix& W, int m_angles, int m_random, std::uint64_t seed) {
  if (W.rows() != W.cols()) throw Error(Errc::DimensionMismatch, "matrix must be square");
  NumericalRangeSample out;
  auto add = [&](const Vector& v, bool boundary) {
    const Complex z = v.dot(W * v);  // v* W v
    out.points.push_back(z);
    out.vectors.push_back(v);
    if (boundary) out.boundary.push_back(z);
  };

  for (int k = 0; k < m_angles; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / m_angles;
    add(top_pair(hermitian_part(std::polar(1.0, phi) * W)).second, true);
  }
  std::mt19937_64 rng(seed);
  for (int k = 0; k < m_random; ++k) add(random_unit(rng, W.rows()), false);

  auto aperture = [&] {
    double best = 0.0;
    for (const Complex& z : out.points)
      if (std::abs(z) >= 1e-13) best = std::max(best, std::abs(std::arg(z)));
    return best;
  };

  Eigen::SelfAdjointEigenSolver<Matrix> real_part(hermitian_part(W), Eigen::EigenvaluesOnly);
  if (W.rows() > 0 && real_part.eigenvalues()(0) > 0.0) {
    double upper = 0.0, lower = 0.0;
    for (const Complex& z : out.points) {
      upper = std::max(upper, std::arg(z));
      lower = std::max(lower, -std::arg(z));
    }
    add(upper_tangent(W, upper), true);
    // The range of W* is the mirror image of the range of W.
    add(upper_tangent(W.adjoint(), lower), true);
  }
  out.aperture = aperture();
  return out;
}

double ConditionReport::worst() const {
  return std::min({slack_T_coercive, slack_T_bounded, slack_A_coercive, slack_A_bounded});
}

ConditionReport verify_form_conditions(const Matrix& T, const Matrix& A, const GramPair& grams,
                                       const AccretivityConstants& c, int trials, std::uint64_t seed) {
  const Eigen::Index n = T.rows();
  const Matrix Gp = grams.plus.matrix.cast<Complex>();
  const Matrix G0 = grams.base.matrix.cast<Complex>();
  const double w = grams.weight;
  auto relative = [](double rhs, double lhs, double scale) { return (rhs - lhs) / std::max(1.0, scale); };

  ConditionReport r;
  r.trials = trials;
  r.slack_T_coercive = r.slack_T_bounded = r.slack_A_coercive = r.slack_A_bounded =
      std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    const Vector f = random_unit(rng, n);
    const Vector g = random_unit(rng, n);
    const double fp = std::sqrt(f.dot(Gp * f).real());
    const double gp = std::sqrt(g.dot(Gp * g).real());
    const double g0 = std::sqrt(g.dot(G0 * g).real());
    const double f0sq = f.dot(G0 * f).real();

    const double reT = w * f.dot(T * f).real();
    r.slack_T_coercive = std::min(r.slack_T_coercive, relative(reT, c.C0 * fp * fp, std::abs(reT)));
    const double tfg = std::abs(w * g.dot(T * f));
    r.slack_T_bounded = std::min(r.slack_T_bounded, relative(c.C1 * fp * gp, tfg, c.C1 * fp * gp));
    const double reA = w * f.dot(A * f).real();
    r.slack_A_coercive = std::min(r.slack_A_coercive, relative(reA, c.C2 * f0sq, std::abs(reA)));
    const double afg = std::abs(w * g.dot(A * f));
    r.slack_A_bounded = std::min(r.slack_A_bounded, relative(c.C3 * fp * g0, afg, c.C3 * fp * g0));
  }
  return r;
}

}  // namespace accretive
