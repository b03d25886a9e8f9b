#include "accretive/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace accretive {

std::string_view to_string(CheckStatus status) noexcept {
  switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
    case CheckStatus::OutOfRange: return "out_of_range";
  }
  return "unknown";
}

CheckResult make_check(std::string id, std::string claim, double lhs, double rhs, double tolerance) {
  CheckResult r;
  r.id = std::move(id);
  r.claim = std::move(claim);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.tolerance = tolerance;
  r.status = r.margin >= -tolerance ? CheckStatus::Pass : CheckStatus::Fail;
  return r;
}

CheckResult skipped_check(std::string id, std::string claim, std::string reason) {
  CheckResult r;
  r.id = std::move(id);
  r.claim = std::move(claim);
  r.status = CheckStatus::Skipped;
  r.note = std::move(reason);
  return r;
}

namespace {

Matrix identity_like(const Matrix& W) { return Matrix::Identity(W.rows(), W.cols()); }

// Plain LU inverse, kept separate from the resolvent routine so that checks
// do not share factorizations with the quantities they test.
Matrix inverse_of(const Matrix& W) { return W.partialPivLu().inverse(); }

Matrix inverse_hermitian(const Matrix& H) {
  Eigen::LLT<Matrix> llt(hermitian_part(H));
  if (llt.info() != Eigen::Success)
    throw Error(Errc::NonAccretive, "Hermitian part is not positive definite");
  return hermitian_part(llt.solve(identity_like(H)));
}

double min_eigenvalue(const Matrix& M) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(M), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Tracks the binding index of a family of lhs <= rhs comparisons.
struct Tightest {
  double margin = std::numeric_limits<double>::infinity();
  double lhs = 0.0;
  double rhs = 0.0;
  int index = 0;

  void add(double l, double r, int i) {
    if (r - l < margin) {
      margin = r - l;
      lhs = l;
      rhs = r;
      index = i;
    }
  }
};

CheckResult from_tightest(std::string id, std::string claim, const Tightest& t, double tolerance) {
  CheckResult r = make_check(std::move(id), std::move(claim), t.lhs, t.rhs, tolerance);
  r.details.emplace_back("index", t.index);
  return r;
}

std::string p_suffix(double p) {
  std::ostringstream os;
  os << "p" << p;
  return os.str();
}

}  // namespace

CheckResult check_positive_sector(const SectorParams& sector, const NumericalRangeSample& range,
                                  const Tolerances& tol) {
  const std::string claim = "k |Im z| <= Re(z - gamma) over sampled numerical range";
  if (range.points.empty()) return skipped_check("sector.positive", claim, "empty range sample");
  Tightest t;
  for (std::size_t i = 0; i < range.points.size(); ++i) {
    const Complex z = range.points[i];
    t.add(sector.k * std::abs(z.imag()), z.real() - sector.gamma, static_cast<int>(i));
  }
  CheckResult r = make_check("sector.positive", claim, t.lhs, t.rhs, tol.identity);
  r.details = {{"k", sector.k}, {"gamma", sector.gamma}, {"theta", sector.theta},
               {"points", static_cast<double>(range.points.size())}};
  return r;
}

ZetaProbes default_zeta_probes(double C0) {
  ZetaProbes probes;
  const double imag[] = {-10.0, -1.0, 1.0, 10.0};
  for (int i = 0; i < 4; ++i) {
    const double re = 0.1 * std::pow(100.0, i / 3.0);
    for (double im : imag) probes.bound.emplace_back(re, im);
  }
  const double fractions[] = {-1.0, 0.0, 0.5, 0.9};
  for (double f : fractions) {
    probes.half_plane.emplace_back(f * C0, 0.0);
    probes.half_plane.emplace_back(f * C0, 3.0);
  }
  return probes;
}

std::vector<CheckResult> check_resolvent_bounds(const Matrix& W, double C0, const ZetaProbes& probes,
                                                const Tolerances& tol) {
  std::vector<CheckResult> out;
  const std::string bound_claim = "||(W + zeta)^{-1}|| <= 1 / (C0 + Re zeta) for Re zeta > 0";
  Tightest bound;
  int used = 0, excluded = 0;
  for (std::size_t i = 0; i < probes.bound.size(); ++i) {
    const Complex zeta = probes.bound[i];
    if (!(zeta.real() > 0.0)) {
      ++excluded;
      continue;
    }
    ++used;
    const Matrix shifted = W + zeta * identity_like(W);
    const double norm = spectral_norm(inverse_of(shifted));
    bound.add(norm, 1.0 / (C0 + zeta.real()), static_cast<int>(i));
  }
  if (used == 0) {
    out.push_back(skipped_check("resolvent.bound", bound_claim, "no probe with Re zeta > 0"));
  } else {
    CheckResult r = from_tightest("resolvent.bound", bound_claim, bound, tol.identity);
    r.details.emplace_back("probes", used);
    r.details.emplace_back("excluded", excluded);
    out.push_back(std::move(r));
  }

  const std::string plane_claim = "sigma_min(W - zeta) > 1e-8 for Re zeta < C0";
  constexpr double floor = 1e-8;
  Tightest plane;
  used = excluded = 0;
  for (std::size_t i = 0; i < probes.half_plane.size(); ++i) {
    const Complex zeta = probes.half_plane[i];
    if (!(zeta.real() < C0)) {
      ++excluded;
      continue;
    }
    ++used;
    const std::vector<double> s = singular_values(W - zeta * identity_like(W));
    plane.add(floor, s.empty() ? 0.0 : s.back(), static_cast<int>(i));
  }
  if (used == 0) {
    out.push_back(skipped_check("resolvent.half_plane", plane_claim, "no probe with Re zeta < C0"));
  } else {
    CheckResult r = from_tightest("resolvent.half_plane", plane_claim, plane, 0.0);
    r.details.emplace_back("probes", used);
    r.details.emplace_back("excluded", excluded);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CheckResult> check_real_part(const Matrix& W, const GramPair& grams, double C0,
                                         const Tolerances& tol) {
  std::vector<CheckResult> out;
  const Matrix H = 0.5 * (W + W.adjoint());
  out.push_back(make_check("real_part.hermitian", "||H - H*|| / ||H|| <= tol", hermitian_residual(H), 0.0,
                           tol.identity));

  const double lambda = coercivity_margin(grams.weight * W, grams.plus);
  out.push_back(make_check("real_part.coercive", "C0 <= lambda_min(H, G+)", C0, lambda, tol.identity));

  const double floor = 1e-12 * std::max(1.0, spectral_norm(W));
  CheckResult strict =
      make_check("real_part.strictly_accretive", "lambda_min(H) >= 1e-12 max(1, ||W||)", floor,
                 min_eigenvalue(H), 0.0);
  out.push_back(std::move(strict));
  return out;
}

std::vector<CheckResult> check_factorization(const Matrix& W, double C0, double theta,
                                             const Tolerances& tol) {
  std::vector<CheckResult> out;
  const FactorizationBundle f = extract_factorization(W);
  const Matrix I = identity_like(W);
  const Complex i(0.0, 1.0);
  const double scale = std::max(spectral_norm(W), std::numeric_limits<double>::min());

  const Matrix rebuilt = f.Hhalf * (I + i * f.B) * f.Hhalf;
  out.push_back(make_check("factorization.reconstruction", "||Hhalf (I + iB) Hhalf - W|| / ||W|| <= tol",
                           spectral_norm(rebuilt - W) / scale, 0.0, tol.identity));

  const Matrix s_inv = f.S.llt().solve(I);
  const Matrix sum = inverse_of(I + i * f.B) + inverse_of(I - i * f.B);
  out.push_back(make_check("factorization.inverse_sum", "||(I + iB)^{-1} + (I - iB)^{-1} - 2 S^{-1}|| <= tol",
                           spectral_norm(sum - 2.0 * s_inv), 0.0, tol.identity));

  const Matrix V = hermitian_part(inverse_of(W));
  const double v_norm = std::max(spectral_norm(V), std::numeric_limits<double>::min());
  const Matrix candidate = f.Hinvhalf * s_inv * f.Hinvhalf;
  const double full = spectral_norm(V - candidate) / v_norm;
  const double halved = spectral_norm(V - 0.5 * candidate) / v_norm;
  // Both sides pass through inverses of H, so rounding grows with its
  // condition number; the tolerance never drops below the identity default.
  Eigen::SelfAdjointEigenSolver<Matrix> eh(f.H, Eigen::EigenvaluesOnly);
  const double condition = eh.eigenvalues()(eh.eigenvalues().size() - 1) / eh.eigenvalues()(0);
  const double v_tol = std::max(tol.identity, 16.0 * std::numeric_limits<double>::epsilon() * condition);
  CheckResult v = make_check("factorization.v_identity", "||V - Hinvhalf S^{-1} Hinvhalf|| / ||V|| <= tol",
                             full, 0.0, v_tol);
  v.details = {{"residual_without_half", full}, {"residual_with_half", halved}, {"condition_H", condition}};
  v.note = full < halved ? "matches V = Hinvhalf S^{-1} Hinvhalf without a factor 1/2"
                         : "matches the variant with a factor 1/2";
  out.push_back(std::move(v));

  const double root_min = min_eigenvalue(f.Hhalf);
  out.push_back(make_check("factorization.sqrt_lower", "sqrt(C0) <= lambda_min(Hhalf)", std::sqrt(C0),
                           root_min, tol.identity));

  if (theta >= 0.0 && theta < std::numbers::pi / 2) {
    CheckResult b = make_check("factorization.b_norm", "||B|| <= tan(theta)", f.normB, std::tan(theta),
                               tol.identity);
    b.details = {{"theta", theta}};
    out.push_back(std::move(b));
  } else {
    out.push_back(skipped_check("factorization.b_norm", "||B|| <= tan(theta)", "theta unavailable"));
  }
  return out;
}

CheckResult check_two_sided_estimate(const Matrix& W, const Tolerances& tol) {
  const std::vector<double> v = descending_eigenvalues(hermitian_part(inverse_of(W)));
  const std::vector<double> rh = descending_eigenvalues(inverse_hermitian(hermitian_part(W)));
  const FactorizationBundle f = extract_factorization(W);
  const double lower_factor = 1.0 / (f.normS * f.normS);

  Tightest lower, upper;
  for (std::size_t i = 0; i < v.size(); ++i) {
    lower.add(lower_factor * rh[i], v[i], static_cast<int>(i) + 1);
    upper.add(v[i], f.normSinv * rh[i], static_cast<int>(i) + 1);
  }
  const Tightest& binding = lower.margin <= upper.margin ? lower : upper;
  CheckResult r = from_tightest("two_sided", "||S||^{-2} lambda_i(R_H) <= lambda_i(V) <= ||S^{-1}|| lambda_i(R_H)",
                                binding, tol.identity);
  r.details.emplace_back("lower_margin", lower.margin);
  r.details.emplace_back("upper_margin", upper.margin);
  r.details.emplace_back("norm_S", f.normS);
  r.details.emplace_back("norm_S_inverse", f.normSinv);
  return r;
}

SchattenOutcome check_schatten(const Matrix& W, double C0, std::optional<Window> window, const Tolerances& tol) {
  SchattenOutcome out;
  const std::vector<double> s = singular_values(inverse_of(W));
  const std::vector<double> v = descending_eigenvalues(hermitian_part(inverse_of(W)));
  Tightest t;
  for (std::size_t i = 0; i < s.size(); ++i) t.add(s[i] * s[i], v[i] / C0, static_cast<int>(i) + 1);
  out.check = from_tightest("schatten.gram", "lambda_i(|R_W|^2) <= lambda_i(V) / C0", t, tol.identity);

  const std::vector<double> rh = descending_eigenvalues(inverse_hermitian(hermitian_part(W)));
  const Window w = window.value_or(default_window(static_cast<int>(rh.size())));
  try {
    out.fit = decay_fit(rh, w);
  } catch (const Error& e) {
    if (e.code() != Errc::WindowTooSmall) throw;
    out.classification = "unavailable";
    out.check.note = "decay fit unavailable: " + std::string(e.what());
    return out;
  }
  const double mu = out.fit->mu_hat;
  if (mu > 1.0) {
    out.classification = "p = 1";
  } else {
    std::ostringstream os;
    os << "p > " << 2.0 / mu;
    out.classification = os.str();
  }
  for (double p : {1.0, 2.0}) out.converse.emplace_back(p, mu * p > 1.0);
  out.check.details.emplace_back("mu_hat", mu);
  out.check.details.emplace_back("r_squared", out.fit->r_squared);
  return out;
}

std::vector<CheckResult> check_completeness_hypothesis(const Matrix& W, double theta, double mu_hat,
                                                       std::optional<Window> window, const Tolerances& tol) {
  std::vector<CheckResult> out;
  const Matrix R = inverse_of(W);
  const double vartheta = numerical_range(R).aperture;
  const bool degenerate = vartheta < 1e-12;

  CheckResult aperture = make_check("completeness.aperture", "aperture(R_W) <= 2 theta", vartheta,
                                    2.0 * theta, tol.identity);
  aperture.details = {{"theta", theta}, {"aperture", vartheta}};
  if (degenerate) aperture.note = "degenerate: zero aperture, d taken as infinite";
  out.push_back(std::move(aperture));

  const std::string hyp_claim = "theta < pi mu_hat / 2";
  if (!std::isfinite(mu_hat)) {
    out.push_back(skipped_check("completeness.hypothesis", hyp_claim, "decay exponent unavailable"));
  } else {
    CheckResult hyp = make_check("completeness.hypothesis", hyp_claim, theta, std::numbers::pi * mu_hat / 2, 0.0);
    hyp.details = {{"mu_hat", mu_hat}};
    out.push_back(std::move(hyp));
  }

  // s_i(V) i^{1/d} with d = pi / aperture.
  const std::string trend_claim = "s_i(V) i^{1/d} non-increasing over the fit window";
  const std::vector<double> s = singular_values(hermitian_part(R));
  const Window w = window.value_or(default_window(static_cast<int>(s.size())));
  if (w.length() < 5 || w.first < 1 || w.last > static_cast<int>(s.size())) {
    out.push_back(skipped_check("completeness.trend", trend_claim, "spectrum too short for the fit window"));
    return out;
  }
  const double inv_d = degenerate ? 0.0 : vartheta / std::numbers::pi;
  double running = std::numeric_limits<double>::infinity();
  Tightest t;
  for (int i = w.first; i <= w.last; ++i) {
    const double value = s[static_cast<std::size_t>(i - 1)] * std::pow(double(i), inv_d);
    if (i > w.first) t.add(value / running, 1.0, i);
    running = std::min(running, value);
  }
  CheckResult trend = from_tightest("completeness.trend", trend_claim, t, tol.trend);
  trend.details.emplace_back("d", degenerate ? std::numeric_limits<double>::infinity() : 1.0 / inv_d);
  trend.note = "lhs is the largest ratio to the running minimum; the completeness conclusion itself is not asserted";
  out.push_back(std::move(trend));
  return out;
}

std::vector<CheckResult> check_eigenvalue_sums(const Matrix& W, double theta, const std::vector<double>& p_list,
                                               const Tolerances& tol) {
  std::vector<CheckResult> out;
  const Matrix R = inverse_of(W);
  const Spectrum spectrum = general_eig(R);
  const std::vector<double> rh = descending_eigenvalues(inverse_hermitian(hermitian_part(W)));
  const std::vector<double> sv = singular_values(hermitian_part(R));
  const double s_inv = extract_factorization(W).normSinv;
  const double sec = 1.0 / std::cos(theta);
  const std::size_t n = spectrum.eigenvalues.size();

  std::vector<double> moduli(n), real_parts(n);
  for (std::size_t i = 0; i < n; ++i) {
    moduli[i] = std::abs(spectrum.eigenvalues[i]);
    real_parts[i] = std::abs(spectrum.eigenvalues[i].real());
  }
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  std::sort(real_parts.begin(), real_parts.end(), std::greater<>());

  for (double p : p_list) {
    if (p < 1.0) throw Error(Errc::NonpositiveValue, "exponents must be >= 1");
    Tightest sums, reals;
    double lhs = 0.0, rhs = 0.0, re_lhs = 0.0, re_rhs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      lhs += std::pow(moduli[i], p);
      rhs += std::pow(rh[i], p);
      sums.add(lhs, std::pow(sec, p) * s_inv * rhs, static_cast<int>(i) + 1);
      re_lhs += std::pow(real_parts[i], p);
      re_rhs += std::pow(sv[i], p);
      reals.add(re_lhs, re_rhs, static_cast<int>(i) + 1);
    }
    CheckResult r = from_tightest("eigen_sums." + p_suffix(p),
                                  "sum_{i<=n} |lambda_i(R_W)|^p <= sec^p(theta) ||S^{-1}|| sum_{i<=n} lambda_i(R_H)^p",
                                  sums, tol.identity);
    r.details.emplace_back("p", p);
    r.details.emplace_back("theta", theta);
    out.push_back(std::move(r));
    CheckResult re = from_tightest("eigen_sums.real_part." + p_suffix(p),
                                   "sum_{m<=n} |Re lambda_m(R_W)|^p <= sum_{m<=n} s_m(V)^p", reals, tol.identity);
    re.details.emplace_back("p", p);
    out.push_back(std::move(re));
  }

  Tightest modulus;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex z = spectrum.eigenvalues[i];
    modulus.add(std::abs(z), sec * std::abs(z.real()), static_cast<int>(i) + 1);
  }
  CheckResult m = from_tightest("eigen_sums.modulus", "|lambda_m(R_W)| <= sec(theta) |Re lambda_m(R_W)|", modulus,
                                tol.identity);
  m.details.emplace_back("theta", theta);
  out.push_back(std::move(m));
  return out;
}

SizeSpectra size_spectra(int n, const Matrix& W) {
  SizeSpectra s;
  s.n = n;
  for (const Complex& z : general_eig(inverse_of(W)).eigenvalues) s.resolvent_moduli.push_back(std::abs(z));
  std::sort(s.resolvent_moduli.begin(), s.resolvent_moduli.end(), std::greater<>());
  s.real_resolvent = descending_eigenvalues(inverse_hermitian(hermitian_part(W)));
  return s;
}

std::vector<CheckResult> check_asymptotic(const std::vector<SizeSpectra>& family, double eps,
                                          const Tolerances& tol) {
  (void)tol;
  if (family.size() < 3) throw Error(Errc::InsufficientSizes, "asymptotic check needs at least 3 grid sizes");
  if (!(eps > 0.0)) throw Error(Errc::NonpositiveEpsilon, "eps must be positive");
  std::vector<CheckResult> out;
  const SizeSpectra& last = family.back();
  const SizeSpectra& prev = family[family.size() - 2];
  const DecayFit fit = decay_fit(last.real_resolvent, default_window(static_cast<int>(last.real_resolvent.size())));
  const DecayFit prev_fit =
      decay_fit(prev.real_resolvent, default_window(static_cast<int>(prev.real_resolvent.size())));

  const std::string claim = "log-slope of |lambda_i(R_W)| i^{mu_hat - eps} < 0";
  if (eps >= fit.mu_hat) {
    CheckResult r = skipped_check("asymptotic.decay", claim, "hypothesis out of range: eps >= mu_hat");
    r.status = CheckStatus::OutOfRange;
    r.n = last.n;
    r.details = {{"mu_hat", fit.mu_hat}, {"eps", eps}};
    out.push_back(std::move(r));
  } else {
    std::vector<double> scaled(last.resolvent_moduli.size());
    for (std::size_t i = 0; i < scaled.size(); ++i)
      scaled[i] = last.resolvent_moduli[i] * std::pow(double(i + 1), fit.mu_hat - eps);
    double r2 = 0.0;
    const double slope = log_log_slope(scaled, Window{fit.first, fit.last}, &r2);
    CheckResult r = make_check("asymptotic.decay", claim, slope, 0.0, 0.0);
    r.n = last.n;
    r.details = {{"mu_hat", fit.mu_hat}, {"eps", eps}, {"r_squared", r2}};
    out.push_back(std::move(r));
  }

  const double variation = std::abs(fit.mu_hat - prev_fit.mu_hat) / std::abs(fit.mu_hat);
  CheckResult stab = make_check("asymptotic.stability", "|mu_hat(n) - mu_hat(n_prev)| / mu_hat(n) < 0.1",
                                variation, 0.1, 0.0);
  stab.details = {{"mu_hat", fit.mu_hat}, {"mu_hat_prev", prev_fit.mu_hat},
                  {"n", static_cast<double>(last.n)}, {"n_prev", static_cast<double>(prev.n)}};
  out.push_back(std::move(stab));
  return out;
}

CheckResult check_form_conditions(const ConditionReport& report, const Tolerances& tol) {
  CheckResult r = make_check("conditions.form", "sampled slack of the four form inequalities >= 0", 0.0,
                             report.worst(), tol.identity);
  r.details = {{"T_coercive", report.slack_T_coercive},
               {"T_bounded", report.slack_T_bounded},
               {"A_coercive", report.slack_A_coercive},
               {"A_bounded", report.slack_A_bounded},
               {"trials", static_cast<double>(report.trials)}};
  return r;
}

}  // namespace accretive
