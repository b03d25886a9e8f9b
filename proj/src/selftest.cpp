#include "accretive/selftest.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "accretive/config.hpp"
#include "accretive/fracops.hpp"
#include "accretive/pipeline.hpp"
#include "accretive/verify.hpp"

namespace accretive {

namespace {

constexpr double kTight = 1e-10;

bool near(double x, double y, double tol = kTight) { return std::abs(x - y) <= tol; }

std::string show(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

Matrix worked_example() {
  const Complex i(0.0, 1.0);
  Matrix w(2, 2);
  w << 2.0, i, i, 2.0;
  return w;
}

const CheckResult& find(const std::vector<CheckResult>& checks, const std::string& id) {
  for (const auto& c : checks)
    if (c.id == id) return c;
  throw Error(Errc::ConstraintError, "missing check " + id);
}

template <class F>
bool throws_code(Errc code, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

std::vector<SelftestCase> run_selftest() {
  std::vector<SelftestCase> out;
  auto add = [&](std::string name, const std::function<std::pair<bool, std::string>()>& body) {
    SelftestCase c{std::move(name), false, ""};
    try {
      std::tie(c.pass, c.detail) = body();
    } catch (const std::exception& e) {
      c.detail = std::string("unexpected error: ") + e.what();
    }
    out.push_back(std::move(c));
  };
  const Matrix W = worked_example();
  const Matrix I2 = Matrix::Identity(2, 2);

  add("grid spacing", [] {
    const Grid g = make_grid(0.0, 1.0, 3);
    return std::pair{near(g.h, 0.25, 1e-15), "h = " + show(g.h)};
  });
  add("degenerate interval", [] {
    return std::pair{throws_code(Errc::NonpositiveLength, [] { make_grid(0.0, 0.0, 8); }), "make_grid(0, 0, 8)"};
  });
  add("binomial weights", [] {
    const RealVector w = gl_weights(0.5, 2);
    return std::pair{near(w(0), 1.0) && near(w(1), -0.5) && near(w(2), -0.125),
                     "w = " + show(w(0)) + ", " + show(w(1)) + ", " + show(w(2))};
  });
  add("sign rule", [] {
    const bool ok = fractional_sign_rule(0.5) == 1 && fractional_sign_rule(1.5) == -1 &&
                    fractional_sign_rule(2.5) == -1 && fractional_sign_rule(3.5) == 1;
    return std::pair{ok, "signs for [alpha] = 0, 1, 2, 3"};
  });
  add("adjoint", [&] {
    const Complex i(0.0, 1.0);
    Matrix expected(2, 2);
    expected << 2.0, -i, -i, 2.0;
    return std::pair{(W.adjoint() - expected).norm() == 0.0, "conjugate transpose of [[2, i], [i, 2]]"};
  });
  add("factorization of [[2, i], [i, 2]]", [&] {
    const FactorizationBundle f = extract_factorization(W);
    Matrix B(2, 2);
    B << 0.0, 0.5, 0.5, 0.0;
    const bool ok = (f.H - 2.0 * I2).norm() <= kTight && (f.B - B).norm() <= kTight && near(f.normB, 0.5) &&
                    (f.S - 1.25 * I2).norm() <= kTight && (compute_V(W) - 0.4 * I2).norm() <= kTight;
    return std::pair{ok, "||B|| = " + show(f.normB) + ", ||S|| = " + show(f.normS)};
  });
  add("two-sided estimate of [[2, i], [i, 2]]", [&] {
    const CheckResult r = check_two_sided_estimate(W);
    double lower = 0.0, upper = 0.0;
    for (const auto& [k, v] : r.details) {
      if (k == "lower_margin") lower = v;
      if (k == "upper_margin") upper = v;
    }
    const bool ok = r.pass() && near(lower, 0.4 - 0.32) && near(upper, 0.0);
    return std::pair{ok, "lower margin " + show(lower) + ", upper margin " + show(upper)};
  });
  add("eigenvalue sum p = 1 is tight", [&] {
    const auto r = check_eigenvalue_sums(W, std::atan(0.5), {1.0});
    const CheckResult& c = find(r, "eigen_sums.p1");
    const double expected = 2.0 / std::sqrt(5.0);
    return std::pair{near(c.lhs, expected) && near(c.rhs, expected) && c.pass(),
                     "lhs " + show(c.lhs) + ", rhs " + show(c.rhs)};
  });
  add("aperture of the resolvent", [&] {
    const auto r = check_completeness_hypothesis(W, std::atan(0.5), std::numeric_limits<double>::quiet_NaN());
    const CheckResult& c = find(r, "completeness.aperture");
    return std::pair{near(c.lhs, std::atan(0.5), 1e-9) && c.pass(), "aperture " + show(c.lhs)};
  });
  add("resolvent of 2I at zeta = 1", [&] {
    const Matrix R = resolvent(2.0 * I2, Complex(1.0, 0.0));
    const double norm = spectral_norm(R);
    ZetaProbes probes{{Complex(1.0, 0.0), Complex(0.0, 1.0)}, {}};
    const auto checks = check_resolvent_bounds(2.0 * I2, 2.0, probes);
    const CheckResult& b = find(checks, "resolvent.bound");
    return std::pair{near(norm, 1.0 / 3.0) && b.pass() && near(b.margin, 0.0), "norm " + show(norm)};
  });
  add("real part of 2I", [&] {
    const SobolevGram unit{0, RealMatrix::Identity(2, 2)};
    const auto checks = check_real_part(2.0 * I2, GramPair{unit, unit, 1.0}, 2.0);
    const CheckResult& c = find(checks, "real_part.coercive");
    return std::pair{near(c.rhs, 2.0) && c.pass(), "lambda_min = " + show(c.rhs)};
  });
  add("skew matrix is not strictly accretive", [] {
    const Complex i(0.0, 1.0);
    Matrix skew(2, 2);
    skew << i, 0.0, 0.0, -i;
    const SobolevGram unit{0, RealMatrix::Identity(2, 2)};
    const auto checks = check_real_part(skew, GramPair{unit, unit, 1.0}, 1.0);
    return std::pair{!find(checks, "real_part.strictly_accretive").pass(), "H = 0 reported as failure"};
  });
  add("Hermitian collapse of the two-sided estimate", [] {
    Matrix h(2, 2);
    h << 3.0, 1.0, 1.0, 2.0;
    const CheckResult r = check_two_sided_estimate(h);
    return std::pair{r.pass() && std::abs(r.margin) <= kTight, "margin " + show(r.margin)};
  });
  add("power-law asymptotics", [] {
    std::vector<SizeSpectra> family;
    for (int n : {32, 64, 128}) {
      RealVector d(n);
      for (int i = 0; i < n; ++i) d(i) = double(i + 1) * double(i + 1);
      family.push_back(size_spectra(n, d.cast<Complex>().asDiagonal().toDenseMatrix()));
    }
    const auto checks = check_asymptotic(family, 0.1);
    const CheckResult& c = find(checks, "asymptotic.decay");
    return std::pair{c.pass() && near(c.lhs, -0.1, 1e-9), "slope " + show(c.lhs)};
  });
  add("zero in the fit window", [] {
    std::vector<double> v(20, 1.0);
    v[7] = 0.0;
    return std::pair{throws_code(Errc::NonpositiveValue, [&] { decay_fit(v, Window{5, 10}); }), "decay_fit"};
  });
  add("worked example through the pipeline", [] {
    AnalysisConfig cfg = parse_config("family = selftest2x2\n");
    const VerificationReport report = run_analysis(cfg);
    const auto& s = report.sizes.at(0);
    const bool ok = report.errors.empty() && s.norms && near(s.norms->norm_B, 0.5) && near(s.norms->norm_S, 1.25);
    return std::pair{ok, "pipeline norms"};
  });
  add("sign rule in configuration", [] {
    return std::pair{throws_code(Errc::ConstraintError, [] { parse_config("family = highorder\nk = 2\nc1 = 1\nc2 = 1\n"); }),
                     "c1 = +1 rejected"};
  });
  return out;
}

}  // namespace accretive
