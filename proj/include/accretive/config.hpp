#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "accretive/assembly.hpp"
#include "accretive/verify.hpp"

namespace accretive {

enum class Family { EllipticFrac, HighOrder, Selftest2x2 };

std::string_view to_string(Family family) noexcept;

/// A coefficient given either as a constant or as lin(u, v), the linear
/// interpolant from u at x = a to v at x = b.
struct CoefficientExpr {
  Complex start{0.0, 0.0};
  Complex end{0.0, 0.0};

  bool constant() const { return start == end; }
  Vector sample(const Grid& grid) const;
  std::string text() const;
};

struct FractionalTermConfig {
  double order = 0.0;
  double coeff = 0.0;
};

struct AnalysisConfig {
  double a = 0.0;
  double b = 1.0;
  std::vector<int> sizes{64};

  Family family = Family::EllipticFrac;
  // elliptic+frac
  CoefficientExpr diffusion{{1.0, 0.0}, {1.0, 0.0}};
  double alpha = 0.5;
  double frac_coeff = 1.0;
  double beta = 0.5;
  double right_coeff = 0.0;
  double reaction = 0.0;
  // highorder
  int k = 1;
  std::vector<CoefficientExpr> c;  ///< c0 .. ck
  std::vector<FractionalTermConfig> left;
  std::vector<FractionalTermConfig> right;

  FracVariant scheme = FracVariant::Composed;
  std::vector<std::string> checks;  ///< enabled check groups, in canonical order
  bool checks_explicit = false;
  Tolerances tolerances;

  std::uint64_t seed = 20190331;
  std::vector<double> p_list{1.0, 2.0};
  double eps = 0.25;
  int range_angles = 64;
  int range_samples = 256;
  int trials = 200;

  bool enabled(std::string_view group) const;
};

/// Check groups in the order they run.
const std::vector<std::string>& check_groups();

/// Parses the `key = value` format with `[section]` headers. Throws
/// ParseError (with line and column) on malformed input and ConstraintError
/// when a value violates a structural rule.
AnalysisConfig parse_config(const std::string& text);

AnalysisConfig load_config(const std::string& path);

/// Applies the ACCRETIVE_SEED override when the variable is set.
void apply_seed_override(AnalysisConfig& config, const char* value);

/// Re-validates a config after programmatic edits (for example new sizes).
void validate(const AnalysisConfig& config);

/// Canonical flat key/value view used for the report echo.
std::map<std::string, std::string> echo(const AnalysisConfig& config);

}  // namespace accretive
