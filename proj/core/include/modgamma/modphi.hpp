#pragma once

#include <functional>
#include <string>

#include "modgamma/expansion.hpp"

namespace modgamma {

double normal_pdf(double x);
double normal_cdf(double x);
// P(N(0,1) >= x) without cancellation for large x.
double normal_tail(double x);

// Stable law with scale c, index alpha and skewness delta; characteristic exponent
// -c^alpha |xi|^alpha (1 - i delta sgn(xi) tan(pi alpha / 2)), alpha = 1 uses the log|xi| form.
struct StableLaw {
  double c = 0.70710678118654752;  // 1/sqrt(2): the standard normal at alpha = 2
  double alpha = 2.0;
  double delta = 0.0;

  static StableLaw standard_normal() { return {}; }
  void validate() const;
  bool is_gaussian() const { return alpha == 2.0; }
  double density(double x) const;
};

// |psi_n(i xi) - 1| <= K1 |xi|^v exp(K2 |xi|^w) on |xi| <= D t_n^gamma.
struct ZoneOfControl {
  double gamma = 0.0;
  double v = 1.0;
  double w = 3.0;
  double D = 1.0;
  double K1 = 1.0;
  double K2 = 0.25;
  StableLaw stable;

  // Defaults for the Gaussian log-determinant regimes; K1 from a frozen sweep of |psi_n(i xi) - 1|.
  static ZoneOfControl gaussian_default();
  // Throws InvalidZoneError naming the violated inequality.
  void validate() const;
};

struct LLTQuery {
  double x = 0.0;
  double a = -0.5;
  double b = 0.5;
  double mu_exponent = 1.0;
};

struct LegendreResult {
  double F = 0.0;
  double h = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

struct DeviationResult {
  double probability = 0.0;
  double h = 0.0;
  double F = 0.0;
  int iterations = 0;
  double residual = 0.0;
  double threshold = 0.0;  // t_n x on the X_n scale
  double t_n = 0.0;
  bool lower_tail = false;
  std::string regime_label;
};

struct CltTail {
  double probability = 0.0;
  double threshold = 0.0;  // t_n eta'(0) + sqrt(t_n eta''(0)) y on the X_n scale
  bool in_normality_zone = true;
  std::string warning;
};

using LogMgf = std::function<Complex(Complex)>;

// psi_n(z) = exp(log_phi(z) - t_n eta(z)).
Complex residue_psi_n(const ModPhiData& m, const LogMgf& log_phi, Complex z);
Complex residue_psi_n(const ModPhiData& m, Complex z);

// First-order Gaussian tail; the zone flag is |y| <= t_n^{1/6}.
CltTail extended_clt_tail(const ModPhiData& m, double y);

// sup_h (h x - eta(h)) by safeguarded Newton on eta'(h) = x.
LegendreResult legendre_fenchel(const LevyExponent& eta, double x, double tol = 1e-12);

// P(X_n >= t_n x) for x > eta'(0), or P(X_n <= t_n x) for x < eta'(0).
DeviationResult precise_deviation(const ModPhiData& m, double x);

// Kolmogorov bound C / t_n^{gamma + 1/alpha}; the constant is explicit for Gaussian references only.
double berry_esseen_gaussian_constant(double D, double v);
double berry_esseen_bound(const ZoneOfControl& zoc, double t_n);
// max of |psi_n(i xi) - 1| / (|xi|^v exp(K2 |xi|^w)) over the zone, for checking K1.
double zone_constant_sweep(const ModPhiData& m, const ZoneOfControl& zoc, int points = 64);

// m(B) p(x) / t_n^mu for Y_n = X_n / sqrt(t_n); Gaussian regimes, mu in (0, gamma + 1/alpha).
double llt_window(const ModPhiData& m, const LLTQuery& q, double zone_gamma = 1.0);

// Large-deviation rate at x: x^2/2 for Gaussian regimes, the fixed-p closed form at c = 0,
// the numeric conjugate for proportional p/n.
double ldp_rate(const Regime& regime, double beta, double x);

// X_n / t_n^{1/alpha}, or X_n / t_n - (2 c delta / pi) log t_n at alpha = 1.
double stable_normalization(double x_n, double t_n, const StableLaw& law);

}  // namespace modgamma
