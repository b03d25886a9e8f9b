#include <doctest.h>

#include <cmath>
#include <random>

#include "accretive/pipeline.hpp"
#include "support.hpp"

using namespace accretive;

namespace {

double min_real_part(const Matrix& W) { return hermitian_eig(hermitian_part(W)).eigenvalues(0); }

void check_auditable(const VerificationReport& report) {
  for (const CheckResult* c : report.all_checks()) {
    CAPTURE(c->id);
    if (c->evaluated()) {
      CHECK(c->margin == c->rhs - c->lhs);
      CHECK((c->status == CheckStatus::Pass) == (c->margin >= -c->tolerance));
    } else {
      CHECK_FALSE(c->note.empty());
    }
  }
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("every reported status is reproducible from its margin") {
  check_auditable(run_analysis(parse_config("family = selftest2x2\n")));
  check_auditable(run_analysis(parse_config("sizes = 16, 24, 32\nalpha = 0.7\nright_coeff = 0.5\nbeta = 0.3\n")));
  check_auditable(run_analysis(parse_config("family = highorder\nsizes = 16\nc0 = 1\nc1 = lin(-1, -2+1i)\nc2 = 1\n"
                                            "left_orders = 0.5, 1.5\nleft_coeffs = 1, -0.5\n")));
  check_auditable(run_analysis(parse_config("sizes = 12\nfrac_coeff = 0\n")));
}

TEST_CASE("two-sided estimate holds for random accretive matrices") {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> size(3, 24);
  std::uniform_real_distribution<double> skew(0.0, 3.0);
  for (int t = 0; t < 25; ++t) {
    const Matrix W = testing::random_accretive(size(rng), rng, 0.2, skew(rng));
    CAPTURE(t);
    CHECK(check_two_sided_estimate(W).pass());
  }
}

TEST_CASE("resolvent of an accretive matrix is bounded by the real part") {
  std::mt19937_64 rng(202);
  for (int t = 0; t < 10; ++t) {
    const Matrix W = testing::random_accretive(12, rng, 0.3, 2.0);
    const double C0 = min_real_part(W);
    for (double re : {0.0, 0.5, 4.0})
      for (double im : {-3.0, 0.0, 2.0}) {
        const double norm = spectral_norm(resolvent(W, Complex(re, im)));
        CHECK(norm <= 1.0 / (C0 + re) * (1.0 + 1e-10));
      }
  }
}

TEST_CASE("numerical range lies right of the real-part floor and inside the aperture") {
  std::mt19937_64 rng(303);
  for (int t = 0; t < 6; ++t) {
    const Matrix W = testing::random_accretive(10, rng, 0.4, 1.5);
    const double floor = min_real_part(W);
    const NumericalRangeSample r = numerical_range(W, 32, 128, 1000 + t);
    for (const Complex& z : r.points) {
      CHECK(z.real() >= floor - 1e-12);
      CHECK(std::abs(std::arg(z)) <= r.aperture + 1e-15);
    }
  }
}

TEST_CASE("eigenvalue sums hold for random accretive matrices") {
  std::mt19937_64 rng(404);
  for (int t = 0; t < 8; ++t) {
    const Matrix W = testing::random_accretive(14, rng, 0.3, 1.0 + t);
    for (const CheckResult& c : check_eigenvalue_sums(W, numerical_range(W).aperture, {1.0, 2.0})) {
      CAPTURE(c.id);
      CHECK(c.pass());
    }
  }
}

TEST_CASE("norm of B is the tangent of the aperture") {
  std::mt19937_64 rng(505);
  for (int t = 0; t < 8; ++t) {
    const Matrix W = testing::random_accretive(9, rng, 0.5, 0.2 * (t + 1));
    CHECK(std::tan(numerical_range(W).aperture) == doctest::Approx(extract_factorization(W).normB).epsilon(1e-7));
  }
}

TEST_CASE("reflection is an involution that maps left to right") {
  std::mt19937_64 rng(606);
  const Matrix M = testing::random_accretive(7, rng);
  CHECK((reflect(reflect(M)) - M).norm() == 0.0);
  CHECK(reflect(M)(0, 0) == M(6, 6));
}

TEST_CASE("assembled main parts are Hermitian positive for positive diffusion") {
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> coeff(0.1, 5.0);
  for (int t = 0; t < 5; ++t) {
    const int n = 10 + 7 * t;
    const Grid g = make_grid(0.0, 1.0 + t, n);
    RealVector a(n);
    for (int i = 0; i < n; ++i) a(i) = coeff(rng);
    const Matrix T = assemble_elliptic(g, a).entries;
    CHECK(hermitian_residual(T) <= 1e-14);
    CHECK(hermitian_eig(T).eigenvalues(0) > 0.0);
  }
}

TEST_CASE("smallest real resolvent eigenvalue decreases under refinement") {
  double prev = 1e300;
  for (int n : {8, 16, 32, 64}) {
    const Grid g = make_grid(0.0, 1.0, n);
    const Matrix W = assemble_elliptic(g, RealVector::Ones(n)).entries + Matrix::Identity(n, n);
    const double smallest = size_spectra(n, W).real_resolvent.back();
    CHECK(smallest < prev);
    prev = smallest;
  }
}

}
