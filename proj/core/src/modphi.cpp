#include "modgamma/modphi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "modgamma/errors.hpp"
#include "modgamma/quadrature.hpp"

namespace modgamma {
namespace {

using std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Frozen max of |psi_n(i xi) - 1| / (|xi| exp(|xi|^3 / 4)) over |xi| <= 1 for Laguerre full,
// beta in {1, 2, 4}, n in {10, ..., 10^5}, rounded up.
constexpr double kGaussianK1 = 1.0;

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * pi); }
double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }
double normal_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

void StableLaw::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("StableLaw: c must be positive");
  if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("StableLaw: alpha must lie in (0, 2]");
  if (!(delta >= -1.0 && delta <= 1.0)) throw DomainError("StableLaw: delta must lie in [-1, 1]");
}

double StableLaw::density(double x) const {
  validate();
  if (is_gaussian()) {
    const double s = std::numbers::sqrt2 * c;
    return normal_pdf(x / s) / s;
  }
  // p(x) = (1/pi) int_0^inf Re(exp(-i xi x) phi(xi)) dxi
  const double ca = std::pow(c, alpha);
  const double skew = alpha == 1.0 ? 0.0 : delta * std::tan(pi * alpha / 2.0);
  QuadratureSpec q;
  q.decay_hint = 0.0;
  const double upper = std::pow(40.0 / ca, 1.0 / alpha);
  const double v = integrate(
                       [&](double xi) -> Complex {
                         if (xi == 0.0) return 1.0;
                         const double mag = ca * std::pow(xi, alpha);
                         const double phase =
                             alpha == 1.0 ? -c * xi * (2.0 / pi) * delta * std::log(xi) : mag * skew;
                         return std::exp(-mag) * std::cos(phase - xi * x);
                       },
                       0.0, upper, q)
                       .real();
  return std::max(0.0, v / pi);
}

ZoneOfControl ZoneOfControl::gaussian_default() {
  ZoneOfControl z;
  z.K1 = kGaussianK1;
  return z;
}

void ZoneOfControl::validate() const {
  stable.validate();
  if (!(v >= 0.0)) throw InvalidZoneError("zone of control: v must be non-negative");
  if (!(w > 0.0)) throw InvalidZoneError("zone of control: w must be positive");
  if (!(K1 > 0.0) || !(K2 > 0.0)) throw InvalidZoneError("zone of control: K1 and K2 must be positive");
  const double a = stable.alpha;
  if (!(a <= w)) throw InvalidZoneError("zone of control: alpha <= w violated");
  if (!(gamma >= -1.0 / a)) throw InvalidZoneError("zone of control: gamma >= -1/alpha violated");
  if (w > a && !(gamma <= 1.0 / (w - a))) throw InvalidZoneError("zone of control: gamma <= 1/(w - alpha) violated");
  if (!(D > 0.0)) throw InvalidZoneError("zone of control: D must be positive");
  if (w > a) {
    const double dmax = std::pow(std::pow(stable.c, a) / (2.0 * K2), 1.0 / (w - a));
    if (D > dmax * (1.0 + 1e-12))
      throw InvalidZoneError("zone of control: D <= (c^alpha / (2 K2))^{1/(w - alpha)} = " + num(dmax) + " violated");
  }
}

Complex residue_psi_n(const ModPhiData& m, const LogMgf& log_phi, Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("residue_psi_n: z is not finite");
  if (m.domain.kind == ConvergenceDomain::Kind::ImaginaryAxis) {
    if (z.real() != 0.0) throw DomainError("residue_psi_n: this regime converges on the imaginary axis only");
  } else if (!(z.real() > m.domain.lower && z.real() < m.domain.upper)) {
    throw DomainError("residue_psi_n: z outside the " + m.domain.describe());
  }
  if (z == 0.0) return 1.0;
  return std::exp(log_phi(z) - m.t_n * m.eta(z));
}

Complex residue_psi_n(const ModPhiData& m, Complex z) {
  return residue_psi_n(m, [&m](Complex w) { return m.log_phi_n(w); }, z);
}

CltTail extended_clt_tail(const ModPhiData& m, double y) {
  if (!m.eta.is_gaussian()) throw NonGaussianRegimeError("extended_clt_tail: needs a Gaussian reference law");
  if (!std::isfinite(y)) throw DomainError("extended_clt_tail: y must be finite");
  CltTail out;
  out.probability = normal_tail(y);
  out.threshold = m.t_n * m.eta.derivative(0.0, 1) + std::sqrt(m.t_n * m.eta.variance()) * y;
  out.in_normality_zone = std::abs(y) <= std::pow(m.t_n, 1.0 / 6.0);
  if (!out.in_normality_zone)
    out.warning = "|y| = " + num(std::abs(y)) + " exceeds t_n^{1/6} = " + num(std::pow(m.t_n, 1.0 / 6.0)) +
                  "; the Gaussian tail is only first order here";
  return out;
}

LegendreResult legendre_fenchel(const LevyExponent& eta, double x, double tol) {
  if (!std::isfinite(x)) throw RangeError("legendre_fenchel: x must be finite");
  if (!(tol > 0.0)) throw DomainError("legendre_fenchel: tol must be positive");
  const auto [dlo, dhi] = eta.derivative_range();
  if (!(x > dlo && x < dhi)) throw RangeError("legendre_fenchel: x = " + num(x) + " outside the range of eta'");
  auto d1 = [&](double h) { return eta.derivative(h, 1); };
  const double left = eta.convex_lower_bound();
  const double scale = std::max(1.0, std::abs(x));

  // Bracket [lo, hi] with d1(lo) < x < d1(hi); d1 is increasing on (left, inf).
  double h = left < 0.0 ? 0.0 : left + 1.0;
  double lo = -kInf, hi = kInf;
  if (d1(h) < x) {
    lo = h;
    double step = 1.0;
    for (hi = h + step; d1(hi) < x; hi = lo + step) {
      lo = hi;
      step *= 2.0;
      if (step > 1e300) throw ConvergenceError("legendre_fenchel: no upper bracket");
    }
  } else {
    hi = h;
    if (std::isfinite(left)) {
      for (lo = left + 0.5 * (hi - left); d1(lo) >= x; lo = left + 0.5 * (lo - left)) {
        hi = lo;
        if (lo - left < 1e-300) throw ConvergenceError("legendre_fenchel: no lower bracket");
      }
    } else {
      double step = 1.0;
      for (lo = h - step; d1(lo) >= x; lo = hi - step) {
        hi = lo;
        step *= 2.0;
        if (step > 1e300) throw ConvergenceError("legendre_fenchel: no lower bracket");
      }
    }
  }

  LegendreResult r;
  h = 0.5 * (lo + hi);
  for (r.iterations = 1; r.iterations <= 200; ++r.iterations) {
    const double g = d1(h) - x;
    const double next = h - g / eta.derivative(h, 2);
    if (std::abs(g) <= tol * scale) {
      // One more Newton step is nearly free and lands at rounding level.
      if (std::isfinite(next) && next >= lo && next <= hi) h = next;
      break;
    }
    (g < 0.0 ? lo : hi) = h;
    h = (next >= lo && next <= hi) ? next : 0.5 * (lo + hi);
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(h))) break;
  }
  r.h = h;
  r.residual = std::abs(d1(h) - x);
  if (r.residual > 1e3 * tol * scale) throw ConvergenceError("legendre_fenchel: residual " + num(r.residual));
  r.F = h * x - eta(h).real();
  if (h == 0.0) r.F = 0.0;
  return r;
}

DeviationResult precise_deviation(const ModPhiData& m, double x) {
  if (m.domain.kind == ConvergenceDomain::Kind::ImaginaryAxis)
    throw NonEvaluableLimitError("precise_deviation: the limit is only known on the imaginary axis in " +
                                 m.regime_label);
  const double center = m.eta.derivative(0.0, 1);
  if (!std::isfinite(x) || std::abs(x - center) <= 1e-12 * std::max(1.0, std::abs(center)))
    throw RangeError("precise_deviation: x must differ from eta'(0) = " + num(center));
  const LegendreResult lf = legendre_fenchel(m.eta, x);
  if (!(lf.h > m.domain.lower && lf.h < m.domain.upper))
    throw RangeError("precise_deviation: tilt h = " + num(lf.h) + " outside the " + m.domain.describe());
  DeviationResult d;
  d.h = lf.h;
  d.F = lf.F;
  d.iterations = lf.iterations;
  d.residual = lf.residual;
  d.t_n = m.t_n;
  d.threshold = m.t_n * x;
  d.lower_tail = x < center;
  d.regime_label = m.regime_label;
  const double psi = std::exp(m.psi_limit.log_value(lf.h).real());
  d.probability = std::exp(-m.t_n * lf.F) / (std::abs(lf.h) * std::sqrt(2.0 * pi * m.t_n * m.eta.derivative(lf.h, 2))) * psi;
  return d;
}

double berry_esseen_gaussian_constant(double D, double v) {
  if (!(D > 0.0)) throw InvalidZoneError("Berry-Esseen constant: D must be positive");
  if (!(v > 0.0)) throw InvalidZoneError("Berry-Esseen constant: v must be positive");
  return 3.0 / (2.0 * pi) * (std::pow(2.0, v - 1.0) * std::tgamma(v / 2.0) + 7.0 / D * std::sqrt(pi / 2.0));
}

double berry_esseen_bound(const ZoneOfControl& zoc, double t_n) {
  zoc.validate();
  if (!(t_n > 0.0)) throw DomainError("berry_esseen_bound: t_n must be positive");
  const double a = zoc.stable.alpha;
  if (!(zoc.gamma <= (zoc.v - 1.0) / a)) throw InvalidZoneError("Berry-Esseen: gamma <= (v - 1)/alpha violated");
  if (!zoc.stable.is_gaussian() || std::abs(zoc.stable.c - 1.0 / std::numbers::sqrt2) > 1e-12)
    throw NonGaussianRegimeError("berry_esseen_bound: the explicit constant covers the standard Gaussian only");
  return berry_esseen_gaussian_constant(zoc.D, zoc.v) / std::pow(t_n, zoc.gamma + 1.0 / a);
}

double zone_constant_sweep(const ModPhiData& m, const ZoneOfControl& zoc, int points) {
  if (points < 1) throw DomainError("zone_constant_sweep: points must be positive");
  const double edge = zoc.D * std::pow(m.t_n, zoc.gamma);
  double worst = 0.0;
  for (int i = 1; i <= points; ++i) {
    const double xi = edge * i / points;
    for (double s : {xi, -xi}) {
      const double dev = std::abs(residue_psi_n(m, Complex(0.0, s)) - 1.0);
      worst = std::max(worst, dev / (std::pow(xi, zoc.v) * std::exp(zoc.K2 * std::pow(xi, zoc.w))));
    }
  }
  return worst;
}

double llt_window(const ModPhiData& m, const LLTQuery& q, double zone_gamma) {
  if (!m.eta.is_gaussian())
    throw UnsupportedRegimeError("llt_window: no local limit statement for the stable regimes");
  if (!(q.a <= q.b) || !std::isfinite(q.a) || !std::isfinite(q.b) || !std::isfinite(q.x))
    throw DomainError("llt_window: needs a finite window a <= b");
  const double upper = zone_gamma + 0.5;
  if (!(q.mu_exponent > 0.0 && q.mu_exponent < upper))
    throw ExponentRangeError("llt_window: mu must lie in (0, " + num(upper) + ")");
  const double sd = std::sqrt(m.eta.variance());
  return (q.b - q.a) * normal_pdf(q.x / sd) / sd / std::pow(m.t_n, q.mu_exponent);
}

double ldp_rate(const Regime& regime, double beta, double x) {
  if (!std::isfinite(x)) throw RangeError("ldp_rate: x must be finite");
  switch (regime.kind) {
    case Regime::Kind::Full:
    case Regime::Kind::VanishingGap:
    case Regime::Kind::FixedGap:
    case Regime::Kind::GrowingGap:
      return 0.5 * x * x;
    case Regime::Kind::FixedP:
      if (!(beta > 0.0)) throw DomainError("ldp_rate: beta must be positive");
      return std::exp(x - std::log(2.0) - 1.0) - beta / 2.0 * x + beta / 2.0 * std::log(beta);
    case Regime::Kind::Proportional:
      return legendre_fenchel(LevyExponent::proportional(beta, regime.ratio), x).F;
  }
  throw UnsupportedRegimeError("ldp_rate: unknown regime");
}

double stable_normalization(double x_n, double t_n, const StableLaw& law) {
  law.validate();
  if (!(t_n > 0.0)) throw DomainError("stable_normalization: t_n must be positive");
  if (law.alpha != 1.0) return x_n / std::pow(t_n, 1.0 / law.alpha);
  return x_n / t_n - 2.0 * law.c * law.delta / pi * std::log(t_n);
}

}  // namespace modgamma
