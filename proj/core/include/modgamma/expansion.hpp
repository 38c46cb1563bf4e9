#pragma once

#include <string>
#include <utility>

#include "modgamma/mellin.hpp"

namespace modgamma {

// Exact decomposition L = t1 + t2 + t3 + t4 + t5 - r of the log-Gamma product.
struct ExpansionTerms {
  Complex t1, t2, t3, t4, t5, r;
  double r_bound = 0.0;  // envelope K (|z| + |z|^2) / (p + l) with a measured constant

  Complex total() const { return t1 + t2 + t3 + t4 + t5 - r; }
};

struct ExpansionOptions {
  QuadratureSpec quad;
  // Opt-in window |z| <= (alpha / 8) (p + l)^{1/6} where the asymptotic reading applies.
  bool enforce_window = false;
};

ExpansionTerms expansion_terms(const LParams& params, Complex z, const ExpansionOptions& opts = {});
// Sum of the terms; throws IdentityMismatchError if it drifts from l_exact.
Complex l_reconstruct(const LParams& params, Complex z, const ExpansionOptions& opts = {});

// Limiting function Phi_alpha by its integral representation, Re z > -alpha.
Complex phi_alpha(double alpha, Complex z, const QuadratureSpec& q = {});
// Barnes closed forms, available for alpha in {1/2, 1}.
bool phi_alpha_has_closed_form(double alpha);
Complex phi_alpha_closed(double alpha, Complex z);

// Limiting function of the fixed-gap regime, c > -1, Re z > -(beta/2)(1+c).
// At beta = 2 the result is checked against the Barnes closed form.
Complex phi_c(double beta, double c, Complex z, const QuadratureSpec& q = {});
// Barnes closed form of phi_c, beta = 2 only.
Complex phi_c_barnes(double c, Complex z);

// Centering constants of the log-Gamma product L(p, l, beta/2; z).
double mu1_full(double n, double beta);                // p = n
double mu1_vanishing(double p, double n, double beta);  // real n = p + l, l -> 0
double mu2(double p, double c, double beta);            // fixed gap c
double mu3(double p, double n, double beta);            // gap n - p growing

// Levy exponent eta of a mod-phi limit.
class LevyExponent {
 public:
  enum class Kind { Gaussian, Stable1, Stable2, Proportional };

  // variance * z^2 / 2
  static LevyExponent gaussian(double variance = 1.0);
  // Fixed-p Laguerre exponent evaluated at scale * z, plus linear * z.
  static LevyExponent stable1(double beta, double scale = 1.0, double linear = 0.0);
  // Fixed-p Jacobi exponent with proportional sizes n1 ~ n tau1, n2 ~ n tau2.
  static LevyExponent stable2(double beta, double tau1, double tau2);
  // Large-deviation exponent of the Laguerre log-determinant with p/n -> c in [0, 1), speed p n.
  // Only convex for h above convex_lower_bound() when c > 0.
  static LevyExponent proportional(double beta, double c);

  Complex operator()(Complex z) const;
  // Derivatives at real h, order 1 or 2.
  double derivative(double h, int order) const;
  // Real h with Re-domain lower bound: the exponent is finite for h > lower_bound().
  double lower_bound() const;
  // Left end of the interval on which the exponent is convex.
  double convex_lower_bound() const;
  // Limits of the first derivative at convex_lower_bound() and at +infinity.
  std::pair<double, double> derivative_range() const;
  Kind kind() const { return kind_; }
  bool is_gaussian() const { return kind_ == Kind::Gaussian; }
  double variance() const { return derivative(0.0, 2); }
  std::string describe() const;

 private:
  Kind kind_ = Kind::Gaussian;
  double variance_ = 1.0;
  double beta_ = 2.0;
  double scale_ = 1.0;
  double linear_ = 0.0;
  double tau1_ = 1.0;
  double tau2_ = 1.0;
  double c_ = 0.0;
};

// Limiting function psi of a mod-phi convergence, log psi(z) = weight * base(scale * z) + quad * z^2 (+ extras).
struct LimitingFunctionSpec {
  enum class Kind { PhiAlpha, PhiC, ClosedFormProduct, One, StablePower };

  Kind kind = Kind::One;
  double alpha = 1.0;     // PhiAlpha
  double beta = 2.0;      // PhiC, StablePower
  double c = 0.0;         // PhiC
  double weight = 1.0;
  double arg_scale = 1.0;
  double quad_coeff = 0.0;
  double exponent = 0.0;  // StablePower
  double tau1 = 0.0;      // StablePower, Jacobi form when tau1 > 0
  double tau2 = 0.0;

  Complex log_value(Complex z, const QuadratureSpec& q = {}) const;
  Complex operator()(Complex z) const { return std::exp(log_value(z)); }
  // psi is finite for Re z above this bound.
  double lower_bound() const;
  // Left end of the interval on which the exponent is convex.
  double convex_lower_bound() const;
  // Limits of the first derivative at convex_lower_bound() and at +infinity.
  std::pair<double, double> derivative_range() const;
  bool has_closed_form() const;
  std::string describe() const;
};

struct ConvergenceDomain {
  enum class Kind { Strip, ImaginaryAxis };
  Kind kind = Kind::Strip;
  double lower = 0.0;
  double upper = 0.0;
  std::string describe() const;
};

// Regime descriptor: how p (and the gaps) grow with n.
struct Regime {
  enum class Kind { Full, VanishingGap, FixedGap, GrowingGap, FixedP, Proportional };

  Kind kind = Kind::Full;
  double gap = 0.0;          // VanishingGap: l(n) = gap / n. FixedGap: c.
  double exponent = 0.5;     // GrowingGap: n - p = round(n^exponent)
  int p = 1;                 // FixedP
  double ratio = 0.5;        // Proportional: p / n
  bool proportional_sizes = false;  // Jacobi: n1 = floor(n tau1), n2 = floor(n tau2)
  double tau1 = 1.0;
  double tau2 = 1.0;
  double max_gap_fraction = 0.2;  // GrowingGap refuses (n - p) / n above this

  static Regime full();
  static Regime vanishing_gap(double gap0);
  static Regime fixed_gap(double c);
  static Regime growing_gap(double exponent = 0.5);
  static Regime fixed_p(int p);
  static Regime proportional(double ratio);
  Regime with_proportional_sizes(double t1, double t2) const;

  // Matrix size p(n) and the real gap l(n) = n - p(n) for Laguerre-type use.
  int p_of(int n) const;
  double gap_of(int n) const;
  std::string label() const;
};

struct ModPhiData {
  LevyExponent eta;
  double t_n = 0.0;
  double mean_shift = 0.0;
  double scale = 1.0;  // X_n = scale * log(stat) - mean_shift
  LimitingFunctionSpec psi_limit;
  ConvergenceDomain domain;
  std::string regime_label;
  EnsembleSpec ensemble;

  // log E[exp(z X_n)] from the exact Mellin transform.
  Complex log_phi_n(Complex z) const;
};

ModPhiData laguerre_modphi(double beta, int n, const Regime& regime);
ModPhiData jacobi_modphi(double beta, int p, int n1, int n2, const Regime& regime);
ModPhiData ensemble_modphi(const EnsembleSpec& e, const Regime& regime);

struct AsymptoticEstimate {
  Complex main;
  double bound = 0.0;
};

// log Gamma(m + z) - log Gamma(m) ~ z (log m - 1/(2m)) + z^2/(2m).
AsymptoticEstimate binet_shift_expansion(double m, Complex z);
// log G(1 + p + z) - log G(1 + p) ~ (z/2) log 2pi - (p+1) z + (z^2/2 + p z) log(1 + p), |z| <= p^{1/6}/2.
AsymptoticEstimate barnes_ratio_estimate(int p, Complex z);

}  // namespace modgamma
