#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "accretive/assembly.hpp"
#include "accretive/forms.hpp"
#include "accretive/spectral.hpp"
#include "support.hpp"

using namespace accretive;

namespace {

// Upper edge of the numerical range by an angle scan: arg z <= psi on the
// whole range iff the skew part of e^{-i psi} W is negative semidefinite.
// A coarse scan brackets the first such psi and bisection refines it.
bool below(const Matrix& W, double psi) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(skew_part(std::polar(1.0, -psi) * W), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff() <= 0.0;
}

double scanned_upper_angle(const Matrix& W) {
  const int steps = 4000;
  double prev = -0.5 * std::numbers::pi;
  for (int s = 1; s <= steps; ++s) {
    const double psi = -0.5 * std::numbers::pi + std::numbers::pi * s / steps;
    if (below(W, psi)) {
      double lo = prev, hi = psi;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (below(W, mid) ? hi : lo) = mid;
      }
      return hi;
    }
    prev = psi;
  }
  return 0.5 * std::numbers::pi;
}

double scanned_aperture(const Matrix& W) {
  return std::max(scanned_upper_angle(W), scanned_upper_angle(W.adjoint()));
}

AccretivityConstants sample_constants() { return AccretivityConstants{0.8, 3.0, 0.6, 1.5, 4.5}; }

}  // namespace

TEST_SUITE("forms") {

TEST_CASE("sector formulas") {
  const AccretivityConstants c = sample_constants();
  const double eps = 0.7;
  CHECK(sector_k(c, eps) == doctest::Approx(c.C0 / (0.5 * c.C3 * eps + c.C1)));
  CHECK(sector_gamma(c, eps) == doctest::Approx(c.C2 - sector_k(c, eps) * c.C3 / (2.0 * eps)));
  const SectorParams s = sector_parameters(c, eps);
  CHECK(s.theta == doctest::Approx(std::atan(1.0 / s.k)));
  CHECK(s.theta > 0.0);
  CHECK(s.theta < 0.5 * std::numbers::pi);
}

TEST_CASE("bisection root of gamma equals xi") {
  const AccretivityConstants c = sample_constants();
  double lo = 1e-8, hi = 1e3;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (sector_gamma(c, mid) < 0.0 ? lo : hi) = mid;
  }
  CHECK(sector_root(c) == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-10));
  const SectorParams s = sector_parameters(c);
  CHECK(s.epsilon == doctest::Approx(s.xi));
  CHECK(std::abs(s.gamma) <= 1e-12);
}

TEST_CASE("gamma increases with epsilon") {
  const AccretivityConstants c = sample_constants();
  double prev = sector_gamma(c, 0.05);
  for (double eps = 0.1; eps < 5.0; eps += 0.1) {
    const double g = sector_gamma(c, eps);
    CHECK(g > prev);
    prev = g;
  }
}

TEST_CASE("invalid sector input") {
  try {
    sector_parameters(sample_constants(), 0.0);
    FAIL("expected NonpositiveEpsilon");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonpositiveEpsilon);
  }
  CHECK_THROWS_AS(sector_parameters(AccretivityConstants{}), Error);
}

TEST_CASE("numerical range of [[2, i], [i, 2]] is a vertical segment") {
  const NumericalRangeSample r = numerical_range(testing::closed_form_w(), 32, 64, 5);
  for (const Complex& z : r.points) {
    CHECK(z.real() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(z.imag()) <= 1.0 + 1e-12);
  }
  CHECK(r.aperture == doctest::Approx(std::atan(0.5)).epsilon(1e-9));
  CHECK(r.points.size() == r.vectors.size());
}

TEST_CASE("aperture agrees with a dense angle scan") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 4; ++t) {
    const Matrix W = testing::random_accretive(8, rng, 0.5, 0.3 + 0.4 * t);
    const NumericalRangeSample r = numerical_range(W);
    CAPTURE(t);
    CHECK(std::abs(r.aperture - scanned_aperture(W)) <= 1e-4);
    CHECK(std::tan(r.aperture) == doctest::Approx(extract_factorization(W).normB).epsilon(1e-6));
  }
}

TEST_CASE("numerical range is reproducible for a fixed seed") {
  std::mt19937_64 rng(1);
  const Matrix W = testing::random_accretive(6, rng);
  const NumericalRangeSample a = numerical_range(W, 16, 32, 42), b = numerical_range(W, 16, 32, 42);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i] == b.points[i]);
}

TEST_CASE("constants of the elliptic model satisfy the form conditions") {
  const int n = 24;
  const Grid g = make_grid(0.0, 1.0, n);
  const Matrix T = assemble_elliptic(g, RealVector::Ones(n)).entries;
  CoefficientSpec spec;
  spec.fractional = {{1.0, 0.5, Side::Left}};
  const Matrix A = assemble_D(g, spec).entries;
  const GramPair grams{sobolev_gram(g, 1), identity_gram(g), g.h};
  const AccretivityConstants c = estimate_constants(T, A, grams);
  CHECK(c.C0 > 0.0);
  CHECK(c.C2 > 0.0);
  CHECK(c.C4 == doctest::Approx(c.C1 + c.C3));
  CHECK(verify_form_conditions(T, A, grams, c, 100).pass());

  AccretivityConstants weak = c;
  weak.C0 *= 0.9;
  weak.C2 *= 0.9;
  weak.C1 /= 0.9;
  weak.C3 /= 0.9;
  CHECK(verify_form_conditions(T, A, grams, weak, 100).worst() > 0.0);

  AccretivityConstants wrong = c;
  wrong.C1 *= 0.01;
  CHECK_FALSE(verify_form_conditions(T, A, grams, wrong, 100).pass());
}

TEST_CASE("zero perturbation is not strictly accretive") {
  const Grid g = make_grid(0.0, 1.0, 10);
  const Matrix T = assemble_elliptic(g, RealVector::Ones(10)).entries;
  const GramPair grams{sobolev_gram(g, 1), identity_gram(g), g.h};
  try {
    estimate_constants(T, Matrix::Zero(10, 10), grams);
    FAIL("expected NonAccretive");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonAccretive);
  }
}

}
