#include <doctest.h>

#include <cmath>
#include <random>

#include "accretive/verify.hpp"
#include "support.hpp"

using namespace accretive;

namespace {

const CheckResult& by_id(const std::vector<CheckResult>& checks, const std::string& id) {
  for (const auto& c : checks)
    if (c.id == id) return c;
  FAIL("missing check " << id);
  return checks.front();
}

double detail(const CheckResult& c, const std::string& key) {
  for (const auto& [k, v] : c.details)
    if (k == key) return v;
  FAIL("missing detail " << key);
  return 0.0;
}

double min_real_part(const Matrix& W) { return hermitian_eig(hermitian_part(W)).eigenvalues(0); }

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("margin and status follow rhs - lhs") {
  const CheckResult ok = make_check("x", "", 1.0, 2.0, 0.0);
  CHECK(ok.margin == 1.0);
  CHECK(ok.status == CheckStatus::Pass);
  const CheckResult edge = make_check("x", "", 2.0 + 1e-10, 2.0, 1e-9);
  CHECK(edge.pass());
  const CheckResult bad = make_check("x", "", 3.0, 2.0, 1e-9);
  CHECK(bad.status == CheckStatus::Fail);
  CHECK_FALSE(bad.pass());
  const CheckResult skip = skipped_check("x", "", "why");
  CHECK(skip.status == CheckStatus::Skipped);
  CHECK_FALSE(skip.evaluated());
  CHECK(skip.note == "why");
}

TEST_CASE("two-sided estimate on the closed-form example") {
  const CheckResult r = check_two_sided_estimate(testing::closed_form_w());
  CHECK(r.pass());
  CHECK(detail(r, "lower_margin") == doctest::Approx(0.08).epsilon(1e-10));
  CHECK(std::abs(detail(r, "upper_margin")) <= 1e-10);
  CHECK(detail(r, "norm_S") == doctest::Approx(1.25));
  CHECK(detail(r, "norm_S_inverse") == doctest::Approx(0.8));
}

TEST_CASE("factorization checks on random accretive matrices") {
  std::mt19937_64 rng(31);
  for (int n : {4, 12, 30}) {
    const Matrix W = testing::random_accretive(n, rng);
    const double C0 = min_real_part(W);
    const double aperture = numerical_range(W).aperture;
    const auto checks = check_factorization(W, C0, aperture);
    for (const auto& c : checks) {
      CAPTURE(c.id);
      CHECK(c.pass());
    }
    const CheckResult& v = by_id(checks, "factorization.v_identity");
    CHECK(detail(v, "residual_without_half") <= 1e-10);
    CHECK(detail(v, "residual_with_half") == doctest::Approx(0.5).epsilon(1e-6));
  }
}

TEST_CASE("resolvent bounds hold for a strictly accretive matrix") {
  std::mt19937_64 rng(5);
  const Matrix W = testing::random_accretive(16, rng);
  const double C0 = min_real_part(W);
  const ZetaProbes probes = default_zeta_probes(C0);
  CHECK(probes.bound.size() == 16);
  CHECK(probes.half_plane.size() == 8);
  for (const Complex& z : probes.half_plane) CHECK(z.real() < C0);
  const auto checks = check_resolvent_bounds(W, C0, probes);
  CHECK(by_id(checks, "resolvent.bound").pass());
  CHECK(by_id(checks, "resolvent.half_plane").pass());
}

TEST_CASE("an overstated C0 breaks the resolvent bound") {
  std::mt19937_64 rng(5);
  const Matrix W = testing::random_accretive(16, rng);
  const double C0 = 3.0 * min_real_part(W);
  ZetaProbes probes{{Complex(0.1, 0.0)}, {}};
  CHECK(by_id(check_resolvent_bounds(W, C0, probes), "resolvent.bound").status == CheckStatus::Fail);
}

TEST_CASE("eigenvalue sums for random accretive matrices") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 3; ++t) {
    const Matrix W = testing::random_accretive(20, rng);
    const auto checks = check_eigenvalue_sums(W, numerical_range(W).aperture, {1.0, 2.0, 3.5});
    CHECK(checks.size() == 7);
    for (const auto& c : checks) {
      CAPTURE(c.id);
      CHECK(c.pass());
    }
  }
  CHECK_THROWS_AS(check_eigenvalue_sums(testing::closed_form_w(), 0.4, {0.5}), Error);
}

TEST_CASE("eigenvalue sum p = 1 is tight on the closed-form example") {
  const auto checks = check_eigenvalue_sums(testing::closed_form_w(), std::atan(0.5), {1.0});
  const CheckResult& c = by_id(checks, "eigen_sums.p1");
  CHECK(std::abs(c.lhs - 0.894427190999916) <= 1e-10);
  CHECK(std::abs(c.rhs - 0.894427190999916) <= 1e-10);
}

TEST_CASE("Schatten check on a diagonal power law") {
  const int n = 60;
  Matrix W = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) W(i, i) = std::pow(i + 1.0, 2.0);
  const SchattenOutcome s = check_schatten(W, 1.0);
  CHECK(s.check.pass());
  REQUIRE(s.fit.has_value());
  CHECK(s.fit->mu_hat == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(s.classification == "p = 1");
  REQUIRE(s.converse.size() == 2);
  CHECK(s.converse[0].second);
}

TEST_CASE("Schatten check without a fit window") {
  const SchattenOutcome s = check_schatten(testing::closed_form_w(), 1.5);
  CHECK_FALSE(s.fit.has_value());
  CHECK(s.classification == "unavailable");
}

TEST_CASE("completeness checks") {
  const int n = 60;
  Matrix W = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) W(i, i) = Complex(std::pow(i + 1.0, 2.0), 0.2 * std::pow(i + 1.0, 2.0));
  const double theta = std::atan(0.2) + 1e-3;
  const auto checks = check_completeness_hypothesis(W, theta, 2.0);
  CHECK(by_id(checks, "completeness.aperture").pass());
  CHECK(by_id(checks, "completeness.hypothesis").pass());
  CHECK(by_id(checks, "completeness.trend").pass());
  const auto none = check_completeness_hypothesis(W, theta, std::nan(""));
  CHECK(by_id(none, "completeness.hypothesis").status == CheckStatus::Skipped);
  const auto wide = check_completeness_hypothesis(W, 1.5, 0.5);
  CHECK(by_id(wide, "completeness.hypothesis").status == CheckStatus::Fail);
}

TEST_CASE("asymptotic check input errors") {
  std::vector<SizeSpectra> two(2);
  try {
    check_asymptotic(two, 0.25);
    FAIL("expected InsufficientSizes");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InsufficientSizes);
  }
  std::vector<SizeSpectra> three;
  for (int n : {20, 40, 80}) {
    Matrix d = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) d(i, i) = (i + 1.0) * (i + 1.0);
    three.push_back(size_spectra(n, d));
  }
  CHECK_THROWS_AS(check_asymptotic(three, 0.0), Error);
  const auto r = check_asymptotic(three, 3.0);
  CHECK(r.front().status == CheckStatus::OutOfRange);
  CHECK(r.front().pass());
}

TEST_CASE("real part checks") {
  std::mt19937_64 rng(17);
  const Matrix W = testing::random_accretive(10, rng);
  const SobolevGram unit{0, RealMatrix::Identity(10, 10)};
  const auto checks = check_real_part(W, GramPair{unit, unit, 1.0}, min_real_part(W));
  for (const auto& c : checks) {
    CAPTURE(c.id);
    CHECK(c.pass());
  }
  const auto over = check_real_part(W, GramPair{unit, unit, 1.0}, 2.0 * min_real_part(W));
  CHECK(by_id(over, "real_part.coercive").status == CheckStatus::Fail);
}

TEST_CASE("a Hermitian positive matrix passes every check") {
  std::mt19937_64 rng(23);
  const int n = 40;
  const Matrix W = hermitian_part(testing::random_accretive(n, rng, 1.0, 0.0));
  const double C0 = min_real_part(W);
  const NumericalRangeSample range = numerical_range(W);
  CHECK(range.aperture <= 1e-12);
  std::vector<CheckResult> all;
  auto append = [&](const std::vector<CheckResult>& r) { all.insert(all.end(), r.begin(), r.end()); };
  append(check_factorization(W, C0, range.aperture));
  append(check_resolvent_bounds(W, C0, default_zeta_probes(C0)));
  append(check_eigenvalue_sums(W, range.aperture, {1.0, 2.0}));
  append(check_completeness_hypothesis(W, 0.1, 1.0));
  all.push_back(check_two_sided_estimate(W));
  all.push_back(check_schatten(W, C0).check);
  const SobolevGram unit{0, RealMatrix::Identity(n, n)};
  append(check_real_part(W, GramPair{unit, unit, 1.0}, C0));
  for (const auto& c : all) {
    CAPTURE(c.id);
    CHECK(c.pass());
  }
  CHECK(std::abs(check_two_sided_estimate(W).margin) <= 1e-9);
}

TEST_CASE("form-condition check mirrors the report") {
  ConditionReport good{0.1, 0.2, 0.0, 0.3, 10};
  CHECK(check_form_conditions(good).pass());
  ConditionReport bad{0.1, -0.2, 0.0, 0.3, 10};
  CHECK(check_form_conditions(bad).status == CheckStatus::Fail);
}

}
