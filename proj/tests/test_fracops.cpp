#include <doctest.h>

#include <cmath>
#include <functional>

#include "accretive/fracops.hpp"
#include "accretive/spectral.hpp"

using namespace accretive;

namespace {

Vector sample(const Grid& g, const std::function<double(double)>& f) {
  Vector v(g.n);
  for (int i = 0; i < g.n; ++i) v(i) = f(g.node(i));
  return v;
}

// Power rule: I^alpha t^beta = Gamma(beta + 1) / Gamma(alpha + beta + 1) t^(alpha + beta).
double power_rule(double alpha, double beta, double x) {
  return std::tgamma(beta + 1.0) / std::tgamma(alpha + beta + 1.0) * std::pow(x, alpha + beta);
}

double semigroup_residual(int n) {
  const Grid g = make_grid(0.0, 1.0, n);
  const Vector f = sample(g, [](double x) { return x * (1.0 - x); });
  const Matrix i3 = frac_integral_matrix(g, 0.3, Side::Left).entries;
  const Matrix i4 = frac_integral_matrix(g, 0.4, Side::Left).entries;
  const Matrix i7 = frac_integral_matrix(g, 0.7, Side::Left).entries;
  return (i3 * (i4 * f) - i7 * f).cwiseAbs().maxCoeff();
}

double left_inverse_residual(int n) {
  const Grid g = make_grid(0.0, 1.0, n);
  const Vector f = sample(g, [](double x) {
    const double r = (x - 0.5) / 0.3;
    return std::abs(r) < 1.0 ? std::exp(-1.0 / (1.0 - r * r)) : 0.0;
  });
  const Matrix d = frac_derivative_matrix(g, 0.5, Side::Left).entries;
  const Matrix i = frac_integral_matrix(g, 0.5, Side::Left).entries;
  return (d * (i * f) - f).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_SUITE("fracops") {

TEST_CASE("binomial weights agree with the gamma formula") {
  for (double alpha : {0.3, 0.5, 1.5}) {
    const RealVector w = gl_weights(alpha, 12);
    for (int k = 0; k <= 12; ++k) {
      const double binom = std::tgamma(alpha + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(alpha - k + 1.0));
      CAPTURE(alpha);
      CAPTURE(k);
      CHECK(w(k) == doctest::Approx((k % 2 == 0 ? 1.0 : -1.0) * binom).epsilon(1e-12));
    }
  }
}

TEST_CASE("half integral of one near x = 1") {
  const Grid g = make_grid(0.0, 1.0, 127);
  const Vector v = frac_integral_matrix(g, 0.5, Side::Left).entries * Vector::Ones(127);
  CHECK(std::abs(v(126).real() - 1.0 / std::tgamma(1.5)) <= 5.0 * g.h);
  // The zero extension puts a jump at x = a, so the constant is not
  // reproduced exactly; the error is still below one grid step.
  CHECK(std::abs(v(126).real() - power_rule(0.5, 0.0, g.node(126))) <= g.h);
}

TEST_CASE("half derivative of t near x = 1") {
  const Grid g = make_grid(0.0, 1.0, 127);
  const Vector t = sample(g, [](double x) { return x; });
  const Vector c = frac_derivative_matrix(g, 0.5, Side::Left).entries * t;
  const double exact = power_rule(-0.5, 1.0, g.node(126));
  CHECK(std::abs(c(126).real() - 1.0 / std::tgamma(1.5)) <= 10.0 * g.h);
  CHECK(std::abs(c(126).real() - exact) <= 10.0 * g.h);
  const Vector gl = frac_derivative_matrix(g, 0.5, Side::Left, FracVariant::GrunwaldLetnikovDerivative).entries * t;
  CHECK(std::abs(gl(126).real() - exact) <= 10.0 * g.h);
}

TEST_CASE("composed derivative of order 1.5 on t^2") {
  const Grid g = make_grid(0.0, 1.0, 255);
  const Vector t2 = sample(g, [](double x) { return x * x; });
  const Vector d = frac_derivative_matrix(g, 1.5, Side::Left).entries * t2;
  CHECK(std::abs(d(200).real() - power_rule(-1.5, 2.0, g.node(200))) <= 10.0 * g.h);
}

TEST_CASE("integral of x^2 follows the power rule") {
  const Grid g = make_grid(0.0, 1.0, 200);
  const Vector f = sample(g, [](double x) { return x * x; });
  const Vector v = frac_integral_matrix(g, 0.7, Side::Left).entries * f;
  for (int i : {20, 100, 199}) CHECK(std::abs(v(i).real() - power_rule(0.7, 2.0, g.node(i))) <= 5.0 * g.h * g.h);
}

TEST_CASE("semigroup residual decreases under refinement") {
  const double r32 = semigroup_residual(32), r64 = semigroup_residual(64), r128 = semigroup_residual(128);
  CHECK(r64 < r32);
  CHECK(r128 < r64);
}

TEST_CASE("left-inverse residual decreases under refinement") {
  const double r32 = left_inverse_residual(32), r64 = left_inverse_residual(64), r128 = left_inverse_residual(128);
  CHECK(r64 < r32);
  CHECK(r128 < r64);
}

TEST_CASE("right-sided operators are index reversals of the left ones") {
  const Grid g = make_grid(0.0, 1.0, 17);
  const Matrix il = frac_integral_matrix(g, 0.4, Side::Left).entries;
  const Matrix ir = frac_integral_matrix(g, 0.4, Side::Right).entries;
  CHECK((ir - reflect(il)).norm() == 0.0);
  const Matrix dl = frac_derivative_matrix(g, 0.6, Side::Left).entries;
  const Matrix dr = frac_derivative_matrix(g, 0.6, Side::Right).entries;
  CHECK((dr - reflect(dl)).norm() == 0.0);
  // The right-sided integral is the adjoint of the left one in the reversed
  // sense: index reversal of a lower Toeplitz matrix is its transpose.
  CHECK((ir - il.transpose()).norm() <= 1e-15 * il.norm());
}

TEST_CASE("right integral of one grows toward a") {
  const Grid g = make_grid(0.0, 1.0, 127);
  const Vector v = frac_integral_matrix(g, 0.5, Side::Right).entries * Vector::Ones(127);
  CHECK(std::abs(v(0).real() - power_rule(0.5, 0.0, 1.0 - g.node(0))) <= g.h);
}

TEST_CASE("integer orders reduce to differences") {
  const Grid g = make_grid(0.0, 1.0, 10);
  CHECK((frac_derivative_matrix(g, 0.0, Side::Left).entries - Matrix::Identity(10, 10)).norm() == 0.0);
  CHECK((frac_derivative_matrix(g, 2.0, Side::Left).entries - diff_matrix(g, 2).entries).norm() == 0.0);
  CHECK((frac_derivative_matrix(g, 1.0, Side::Right).entries + diff_matrix(g, 1).entries).norm() == 0.0);
}

TEST_CASE("invalid orders") {
  const Grid g = make_grid(0.0, 1.0, 10);
  CHECK_THROWS_AS(frac_integral_matrix(g, 0.0, Side::Left), Error);
  CHECK_THROWS_AS(frac_derivative_matrix(g, -0.5, Side::Left), Error);
  CHECK_THROWS_AS(frac_derivative_matrix(g, 0.5, Side::Left, FracVariant::ProductTrapezoidIntegral), Error);
}

TEST_CASE("low-order left derivatives are accretive") {
  const Grid g = make_grid(0.0, 1.0, 64);
  for (double alpha : {0.2, 0.5, 0.8}) {
    for (FracVariant v : {FracVariant::Composed, FracVariant::GrunwaldLetnikovDerivative}) {
      const Matrix d = frac_derivative_matrix(g, alpha, Side::Left, v).entries;
      CAPTURE(alpha);
      CHECK(coercivity_margin(d, SobolevGram{0, RealMatrix::Identity(64, 64)}) > 0.0);
    }
  }
}

TEST_CASE("coercivity margin of a scaled identity") {
  const Grid g = make_grid(0.0, 1.0, 9);
  CHECK(coercivity_margin(3.0 * Matrix::Identity(9, 9), SobolevGram{0, RealMatrix::Identity(9, 9) * g.h}) ==
        doctest::Approx(3.0 / g.h));
  CHECK_THROWS_AS(coercivity_margin(Matrix::Identity(9, 9), SobolevGram{0, RealMatrix::Identity(8, 8)}), Error);
}

}
