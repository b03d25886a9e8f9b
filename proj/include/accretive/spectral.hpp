#pragma once

#include <utility>
#include <vector>

#include "accretive/assembly.hpp"

namespace accretive {

struct Spectrum {
  std::vector<Complex> eigenvalues;
  double residual = 0.0;  ///< max ||M v - lambda v|| over the computed pairs
};

struct HermitianEig {
  RealVector eigenvalues;  ///< ascending
  Matrix eigenvectors;     ///< orthonormal columns
  double residual = 0.0;

  Spectrum spectrum() const;
};

/// W = Hhalf (I + iB) Hhalf with H the Hermitian part of W.
struct FactorizationBundle {
  Matrix H;
  Matrix Hhalf;
  Matrix Hinvhalf;
  Matrix B;
  Matrix S;  ///< I + B^2
  double normB = 0.0;
  double normS = 0.0;
  double normSinv = 0.0;
};

struct DecayFit {
  double mu_hat = 0.0;
  int first = 1;  ///< 1-based inclusive window
  int last = 1;
  double r_squared = 0.0;
};

/// 1-based inclusive index range.
struct Window {
  int first = 1;
  int last = 1;

  int length() const { return last - first + 1; }
};

double spectral_norm(const Matrix& M);
double hermitian_residual(const Matrix& M);  ///< ||M - M*|| / ||M||

HermitianEig hermitian_eig(const Matrix& M);
Spectrum general_eig(const Matrix& M);

std::pair<Matrix, Matrix> psd_sqrt(const Matrix& H);

FactorizationBundle extract_factorization(const Matrix& W);

/// (W + zeta I)^{-1}.
Matrix resolvent(const Matrix& W, Complex zeta);

/// Real part of the inverse, (W^{-1} + W^{-*}) / 2.
Matrix compute_V(const Matrix& W);

/// Hinvhalf S^{-1} Hinvhalf from a factorization; equals compute_V(W).
Matrix V_from_factorization(const FactorizationBundle& f);

std::vector<double> singular_values(const Matrix& M);
double schatten_norm(const Matrix& M, double p);

/// Default window: indices 5 .. count/2 (the leading tenth for short sequences).
Window default_window(int count);

DecayFit decay_fit(const std::vector<double>& values, Window window);

/// Eigenvalues of a Hermitian matrix sorted descending.
std::vector<double> descending_eigenvalues(const Matrix& M);

/// Least-squares slope of log(values) against log(index) over the window.
double log_log_slope(const std::vector<double>& values, Window window, double* r_squared = nullptr);

}  // namespace accretive
