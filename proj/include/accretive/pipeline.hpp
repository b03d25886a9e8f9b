#pragma once

#include <optional>
#include <string>
#include <vector>

#include "accretive/config.hpp"
#include "accretive/fracops.hpp"
#include "accretive/spectral.hpp"
#include "accretive/verify.hpp"

namespace accretive {

/// The discretized operators of one family at one grid size.
struct ModelOperators {
  Grid grid;
  OperatorMatrix T;
  OperatorMatrix A;
  OperatorMatrix W;
  GramPair grams;
};

/// Builds T, A, W and the Gram pair. The selftest family ignores n.
ModelOperators build_model(const AnalysisConfig& config, int n);

struct StageError {
  int n = 0;  ///< 0 for cross-size stages
  std::string stage;
  std::string code;
  std::string message;
};

struct FactorizationNorms {
  double norm_B = 0.0;
  double norm_S = 0.0;
  double norm_S_inverse = 0.0;
  double aperture = 0.0;  ///< aperture of the numerical range of W
};

struct SpectrumRecord {
  std::string op;  ///< "W" or "R_W"
  std::vector<Complex> eigenvalues;
  std::vector<double> s_numbers;
};

struct FitRecord {
  DecayFit fit;
  std::string classification;
  std::vector<std::pair<double, bool>> converse;
};

struct SizeReport {
  int n = 0;
  std::optional<AccretivityConstants> constants;
  std::optional<SectorParams> sector;
  std::optional<FactorizationNorms> norms;
  std::optional<FitRecord> fit;
  std::vector<SpectrumRecord> spectra;
  std::vector<CheckResult> checks;
};

struct VerificationReport {
  AnalysisConfig config;
  std::vector<SizeReport> sizes;
  std::vector<CheckResult> cross_checks;  ///< checks spanning several sizes
  std::vector<StageError> errors;

  std::vector<const CheckResult*> all_checks() const;
  bool pass() const;  ///< no failed check and no stage error
};

/// Runs every enabled check for every configured size. Sizes are processed
/// concurrently; the report order follows the configuration.
VerificationReport run_analysis(const AnalysisConfig& config);

/// Spectra only, for the CSV dump.
std::vector<SizeReport> compute_spectra(const AnalysisConfig& config);

}  // namespace accretive
