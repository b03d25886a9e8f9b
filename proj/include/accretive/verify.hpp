#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "accretive/forms.hpp"
#include "accretive/fracops.hpp"
#include "accretive/spectral.hpp"

namespace accretive {

enum class CheckStatus { Pass, Fail, Skipped, OutOfRange };

std::string_view to_string(CheckStatus status) noexcept;

/// One inequality evaluated at finite dimension. For a claim lhs <= rhs the
/// margin is rhs - lhs, and an evaluated check passes iff margin >= -tolerance.
struct CheckResult {
  std::string id;
  std::string claim;
  int n = 0;  ///< grid size, 0 when the check spans several sizes
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::Pass;
  std::string note;
  std::vector<std::pair<std::string, double>> details;

  bool pass() const { return status == CheckStatus::Pass || status == CheckStatus::OutOfRange; }
  bool evaluated() const { return status == CheckStatus::Pass || status == CheckStatus::Fail; }
};

CheckResult make_check(std::string id, std::string claim, double lhs, double rhs, double tolerance);
CheckResult skipped_check(std::string id, std::string claim, std::string reason);

/// Tolerances for exact identities and for trend statements.
struct Tolerances {
  double identity = 1e-9;
  double trend = 0.05;
};

CheckResult check_positive_sector(const SectorParams& sector, const NumericalRangeSample& range,
                                  const Tolerances& tol = {});

struct ZetaProbes {
  std::vector<Complex> bound;       ///< used for the norm bound, Re zeta > 0 only
  std::vector<Complex> half_plane;  ///< Re zeta < C0
};

/// 16 points with Re zeta in [0.1, 10] and 8 probes left of C0.
ZetaProbes default_zeta_probes(double C0);

std::vector<CheckResult> check_resolvent_bounds(const Matrix& W, double C0, const ZetaProbes& probes,
                                                const Tolerances& tol = {});

std::vector<CheckResult> check_real_part(const Matrix& W, const GramPair& grams, double C0,
                                         const Tolerances& tol = {});

/// Factorization identities: reconstruction, inverse-sum identity, both V
/// variants, square-root lower bound, resolvent representation, norm of B.
std::vector<CheckResult> check_factorization(const Matrix& W, double C0, double theta,
                                             const Tolerances& tol = {});

CheckResult check_two_sided_estimate(const Matrix& W, const Tolerances& tol = {});

struct SchattenOutcome {
  CheckResult check;
  std::optional<DecayFit> fit;  ///< absent when the spectrum is too short to fit
  std::string classification;
  std::vector<std::pair<double, bool>> converse;  ///< (p, mu p > 1)
};

SchattenOutcome check_schatten(const Matrix& W, double C0, std::optional<Window> window = std::nullopt,
                               const Tolerances& tol = {});

std::vector<CheckResult> check_completeness_hypothesis(const Matrix& W, double theta, double mu_hat,
                                                       std::optional<Window> window = std::nullopt,
                                                       const Tolerances& tol = {});

std::vector<CheckResult> check_eigenvalue_sums(const Matrix& W, double theta,
                                               const std::vector<double>& p_list,
                                               const Tolerances& tol = {});

/// Spectral data of one grid size for the asymptotic check.
struct SizeSpectra {
  int n = 0;
  std::vector<double> resolvent_moduli;  ///< |lambda_i(R_W)|, descending
  std::vector<double> real_resolvent;    ///< lambda_i(R_H), descending
};

SizeSpectra size_spectra(int n, const Matrix& W);

std::vector<CheckResult> check_asymptotic(const std::vector<SizeSpectra>& family, double eps,
                                          const Tolerances& tol = {});

CheckResult check_form_conditions(const ConditionReport& report, const Tolerances& tol = {});

}  // namespace accretive
