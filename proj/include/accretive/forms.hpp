#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "accretive/assembly.hpp"

namespace accretive {

/// Constants of the four form conditions on T (main part) and A (perturbation):
///   Re(Tf,f) >= C0 |f|_+^2        |(Tf,g)| <= C1 |f|_+ |g|_+
///   Re(Af,f) >= C2 |f|^2          |(Af,g)| <= C3 |f|_+ |g|
/// and C4 = C1 + C3.
struct AccretivityConstants {
  double C0 = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double C3 = 0.0;
  double C4 = 0.0;
};

struct SectorParams {
  double epsilon = 0.0;
  double k = 0.0;
  double gamma = 0.0;
  double xi = 0.0;
  double theta = 0.0;
};

struct NumericalRangeSample {
  std::vector<Complex> points;    ///< includes the boundary points
  std::vector<Complex> boundary;  ///< rotation-method support points
  std::vector<Vector> vectors;    ///< unit vector behind each entry of points
  double aperture = 0.0;          ///< max |arg z| over points with |z| >= 1e-13
};

/// Inner-product pair for the space and the energetic space. The weight is
/// the scalar factor of the discrete inner product (grid spacing h).
struct GramPair {
  SobolevGram plus;
  SobolevGram base;
  double weight = 1.0;
};

/// Tightest constants, obtained from pencil eigenproblems and weighted
/// operator norms. Throws NonAccretive if C0 <= 0 or C2 <= 0.
AccretivityConstants estimate_constants(const Matrix& T, const Matrix& A, const GramPair& grams);
AccretivityConstants estimate_constants(const OperatorMatrix& T, const OperatorMatrix& A,
                                        const SobolevGram& gram_plus, const SobolevGram& gram0);

double sector_k(const AccretivityConstants& c, double epsilon);
double sector_gamma(const AccretivityConstants& c, double epsilon);
double sector_root(const AccretivityConstants& c);

/// Default epsilon is the root xi, where gamma vanishes.
SectorParams sector_parameters(const AccretivityConstants& c,
                               std::optional<double> epsilon = std::nullopt);

NumericalRangeSample numerical_range(const Matrix& W, int m_angles = 64, int m_random = 256,
                                     std::uint64_t seed = 20190331);

struct ConditionReport {
  double slack_T_coercive = 0.0;
  double slack_T_bounded = 0.0;
  double slack_A_coercive = 0.0;
  double slack_A_bounded = 0.0;
  int trials = 0;

  double worst() const;
  bool pass(double tol = 1e-9) const { return worst() >= -tol; }
};

/// Evaluates the four conditions on random pairs (f, g) and reports the worst
/// slack of each, relative to max(1, |rhs|).
ConditionReport verify_form_conditions(const Matrix& T, const Matrix& A, const GramPair& grams,
                                     const AccretivityConstants& c, int trials,
                                     std::uint64_t seed = 20190331);

}  // namespace accretive
