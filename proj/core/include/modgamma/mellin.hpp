#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modgamma/specfun.hpp"

namespace modgamma {

// Indexes L(p, l, alpha; z) = sum_{k=1}^p [log Gamma(alpha(k+l) + z) - log Gamma(alpha(k+l))].
struct LParams {
  int p = 1;
  double l = 0.0;  // real; l > -1 keeps every alpha(k+l) positive
  double alpha = 1.0;

  void validate() const;
  double boundary() const { return -alpha * (1.0 + l); }  // Re z must exceed this
};

// Fast exact evaluation: Barnes-ratio telescoping for alpha in {1/2, 1, 2}, compensated sum otherwise.
Complex l_exact(const LParams& params, Complex z);
// Compensated term-by-term sum; the reference the fast paths are tested against.
Complex l_direct(const LParams& params, Complex z);
// d/dz and d^2/dz^2 of L at z = 0.
double l_mean(const LParams& params);
double l_variance(const LParams& params);

enum class EnsembleKind {
  Laguerre,
  Jacobi,
  Ginibre,
  GUE,
  FixedTraceGUE,
  Chiral,
  BdG1,
  BdG2,
  BdG3,
  BdG4,
  ParallelotopeGaussian,
  ParallelotopeBeta,
  ParallelotopeBetaPrime,
  ParallelotopeSpherical,
  SimplexGaussian,
  SimplexBeta,
  SimplexBetaPrime,
  SimplexSpherical,
};

std::string to_string(EnsembleKind kind);
EnsembleKind ensemble_kind_from_string(const std::string& name);

// Descriptor of one ensemble or volume model. Build through the named factories.
struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::Laguerre;
  double beta = 2.0;
  int n = 1;
  int p = 1;
  int n1 = 0;
  int n2 = 0;
  double nu = 0.0;
  double mu = 0.0;                // tenfold exponent of |lambda|^{beta mu}
  std::optional<double> gap;      // real n - p for Laguerre, overriding the integer gap

  static EnsembleSpec laguerre(double beta, int n, int p);
  static EnsembleSpec laguerre_real_gap(double beta, int p, double gap);
  static EnsembleSpec jacobi(double beta, int p, int n1, int n2);
  static EnsembleSpec ginibre(double beta, int n);
  static EnsembleSpec gue(int n);
  static EnsembleSpec fixed_trace_gue(int n);
  static EnsembleSpec chiral(double beta, int n, int p);
  static EnsembleSpec bdg(int variant, int n);
  static EnsembleSpec parallelotope_gaussian(int n, int p);
  static EnsembleSpec parallelotope_beta(int n, int p, double nu);
  static EnsembleSpec parallelotope_beta_prime(int n, int p, double nu);
  static EnsembleSpec parallelotope_spherical(int n, int p);
  static EnsembleSpec simplex_gaussian(int n, int p);
  static EnsembleSpec simplex_beta(int n, int p, double nu);
  static EnsembleSpec simplex_beta_prime(int n, int p, double nu);
  static EnsembleSpec simplex_spherical(int n, int p);

  void validate() const;
  // Real part window (lower, upper) on which the Mellin transform is finite.
  std::pair<double, double> admissible_strip() const;
  std::string describe() const;
};

// E[X^s] = C D^s prod Gamma(a_j s + b_j) / prod Gamma(a'_k s + b'_k).
struct GammaFactor {
  double a = 0.0;
  double b = 1.0;
};

struct GammaMomentForm {
  double log_C = 0.0;
  double log_D = 0.0;
  std::vector<GammaFactor> numerator;
  std::vector<GammaFactor> denominator;

  Complex evaluate(Complex s) const;
  void check_normalized(double tol = 1e-12) const;
};

GammaMomentForm lower_to_gamma_form(const EnsembleSpec& e);

// log E[stat^z], stat = determinant or volume.
Complex log_mgf(const EnsembleSpec& e, Complex z);
// Exact mean (order 1) or variance (order 2) of log(stat).
double cumulant(const EnsembleSpec& e, int order);

}  // namespace modgamma
