#include "modgamma/expansion.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "modgamma/errors.hpp"

namespace modgamma {
namespace {

using std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
const Complex kI(0.0, 1.0);

// Measured envelope constant of |r| alpha (p + l) / (|z| + |z|^2); see the expansion tests.
constexpr double kRemainderConstant = 0.05;

double exp_level_gap(Complex a, Complex b) {
  Complex d = a - b;
  return std::abs(Complex(d.real(), std::remainder(d.imag(), 2.0 * pi)));
}

void check_finite(Complex z, const char* where) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError(std::string(where) + ": z is not finite");
}

void check_lower(Complex z, double bound, const char* where) {
  check_finite(z, where);
  if (!(z.real() > bound)) {
    std::ostringstream os;
    os.precision(17);
    os << where << ": Re z = " << z.real() << " must exceed " << bound;
    throw DomainError(os.str());
  }
}

// int_0^inf phi(s) e^{-s shift} (e^{-sz} - 1) / (e^{alpha s} - 1) ds
Complex binet_tail_integral(double shift, double alpha, Complex z, const QuadratureSpec& q) {
  QuadratureSpec qq = q;
  qq.decay_hint = std::min(1.0, alpha + shift + z.real());
  return semiinf_integral(
      [=](double s) -> Complex {
        const double k = binet_kernel(s);
        if (s <= 1.0) return k * expm1(-s * z) * std::exp(-s * shift) / std::expm1(alpha * s);
        // Large s: factor out e^{alpha s} so that neither exponential overflows.
        const double d = -std::expm1(-alpha * s);
        return k * (std::exp(-s * (shift + alpha + z)) - std::exp(-s * (shift + alpha))) / d;
      },
      qq);
}

// Corrected T5 for gap l: two integrals against 1/(e^{2 pi s} - 1).
Complex t5_term(double l, double alpha, Complex z, const QuadratureSpec& q) {
  const double w0 = 1.0 + l;
  const Complex w1 = w0 + z / alpha;
  const Complex dw2 = (w1 - w0) * (w1 + w0);
  QuadratureSpec qq = q;
  qq.decay_hint = 2.0 * pi;
  Complex i1 = semiinf_integral(
      [=](double s) { return s * log1p(dw2 / (w0 * w0 + s * s)) / std::expm1(2.0 * pi * s); }, qq);
  Complex i2 = semiinf_integral(
      [=](double s) {
        return (std::atan(Complex(s) / w1) - std::atan(s / w0)) / std::expm1(2.0 * pi * s);
      },
      qq);
  return -alpha * i1 - 2.0 * (alpha * w0 + z - 0.5) * i2;
}

}  // namespace

ExpansionTerms expansion_terms(const LParams& params, Complex z, const ExpansionOptions& opts) {
  params.validate();
  opts.quad.validate();
  check_lower(z, params.boundary(), "expansion_terms");
  const double a = params.alpha, l = params.l;
  const int p = params.p;
  const double pl = p + l;
  if (opts.enforce_window && std::abs(z) > a / 8.0 * std::pow(pl, 1.0 / 6.0)) {
    std::ostringstream os;
    os << "expansion_terms: |z| = " << std::abs(z) << " outside the window (alpha/8)(p+l)^{1/6} = "
       << a / 8.0 * std::pow(pl, 1.0 / 6.0);
    throw DomainError(os.str());
  }
  ExpansionTerms t;
  if (z == 0.0) return t;
  const QuadratureSpec& q = opts.quad;

  t.t1 = -double(p) * z - binet_tail_integral(a * pl, a, z, q) + binet_tail_integral(a * l, a, z, q);
  t.t2 = z * (p * std::log(a) + log_gamma(pl + 1.0) - log_gamma(l + 1.0));

  const Complex zz = z * (z - 1.0) / (2.0 * a);
  const Complex big = (a * (1.0 + pl) * pl / 2.0 + (z - 0.5) * (pl + 0.5) + zz) * log1p(z / (a * (1.0 + pl)));
  const Complex small = (a * (1.0 + l) * (1.0 + l) / 2.0 + (z - 0.5) * (1.0 + l) + zz) * log1p(z / (a * (1.0 + l)));
  t.t3 = big - small + double(p) * z / 2.0 + zz * std::log1p(p / (1.0 + l));

  t.t4 = 0.5 * (a * (1.0 + l) + z - 0.5) * log1p(z / (a * (1.0 + l)));
  t.t5 = t5_term(l, a, z, q);

  auto f = [=](Complex x) {
    const Complex u = a * (x + 1.0 + l);
    return (u + z - 0.5) * log1p(z / u);
  };
  QuadratureSpec qr = q;
  qr.decay_hint = 2.0 * pi;
  t.r = kI * semiinf_integral(
                 [=](double s) { return (f(Complex(p, s)) - f(Complex(p, -s))) / std::expm1(2.0 * pi * s); }, qr);
  t.r_bound = kRemainderConstant * (std::abs(z) + std::norm(z)) / (a * pl);
  return t;
}

Complex l_reconstruct(const LParams& params, Complex z, const ExpansionOptions& opts) {
  const Complex total = expansion_terms(params, z, opts).total();
  const Complex exact = l_exact(params, z);
  const double tol = 100.0 * std::max(opts.quad.abs_tol * 10.0, opts.quad.rel_tol * std::abs(exact));
  const double gap = exp_level_gap(total, exact);
  if (!(gap <= tol)) {
    std::ostringstream os;
    os << "l_reconstruct: term sum differs from l_exact by " << gap << " (tolerance " << tol << ")";
    throw IdentityMismatchError(os.str());
  }
  return total;
}

Complex phi_alpha(double alpha, Complex z, const QuadratureSpec& q) {
  if (!(alpha > 0.0)) throw DomainError("phi_alpha: alpha must be positive");
  check_lower(z, -alpha, "phi_alpha");
  if (z == 0.0) return 0.0;
  const Complex w = z / alpha;
  const Complex integral = binet_tail_integral(0.0, alpha, z, q);
  return alpha * log_barnes_g(w, q) - (z - 0.5) * log_gamma(w + 1.0) + integral + 0.5 * z * z / alpha + 0.5 * z;
}

bool phi_alpha_has_closed_form(double alpha) { return alpha == 1.0 || alpha == 0.5; }

Complex phi_alpha_closed(double alpha, Complex z) {
  if (!phi_alpha_has_closed_form(alpha))
    throw UnsupportedParameterError("phi_alpha_closed: closed forms exist for alpha in {1/2, 1} only");
  check_lower(z, -alpha, "phi_alpha_closed");
  if (z == 0.0) return 0.0;
  if (alpha == 1.0) return 0.5 * z * std::log(2.0 * pi) - log_barnes_g(z);
  return z * (0.5 * std::log(2.0) + kLogSqrt2Pi) - 0.5 * log_barnes_g(2.0 * z) + 0.5 * log_gamma_diff(0.5, z);
}

Complex phi_c_barnes(double c, Complex z) {
  if (!(c > -1.0)) throw DomainError("phi_c_barnes: c must exceed -1");
  check_lower(z, -(1.0 + c), "phi_c_barnes");
  return -log_barnes_ratio(c, z) + z * (kLogSqrt2Pi - c) + 0.5 * z * z * std::log1p(c);
}

Complex phi_c(double beta, double c, Complex z, const QuadratureSpec& q) {
  if (!(beta > 0.0)) throw DomainError("phi_c: beta must be positive");
  if (!(c > -1.0)) throw DomainError("phi_c: c must exceed -1");
  const double a = beta / 2.0;
  check_lower(z, -a * (1.0 + c), "phi_c");
  if (z == 0.0) return 0.0;
  const Complex lg = log1p(z / (a * (1.0 + c)));
  const Complex u1 = binet_tail_integral(a * c, a, z, q);
  const Complex u2 = z * (kLogSqrt2Pi - c - log_gamma(1.0 + c));
  const Complex u3 = c * z / 2.0 + 1.5 * z * z / beta - z / beta + z / beta * std::log1p(c) -
                     (beta * (1.0 + c) * (1.0 + c) / 4.0 + (z - 0.5) * (1.0 + c) + z * (z - 1.0) / beta) * lg;
  const Complex u4 = 0.5 * (a * (1.0 + c) + z - 0.5) * lg;
  const Complex u5 = t5_term(c, a, z, q);
  const Complex sum = u1 + u2 + u3 + u4 + u5;
  if (beta == 2.0) {
    const double gap = exp_level_gap(sum, phi_c_barnes(c, z));
    if (gap > 1e-7 + 1e-9 * std::abs(sum)) {
      std::ostringstream os;
      os << "phi_c: U-sum and Barnes form disagree by " << gap;
      throw IdentityMismatchError(os.str());
    }
  }
  return sum;
}

double mu1_full(double n, double beta) {
  return n * std::log(beta / 2.0) + n * std::log(n) - n + (0.5 - 1.0 / beta) * std::log(n);
}

double mu1_vanishing(double p, double n, double beta) {
  const double g = n - p;
  const double glog = g > 0.0 ? g * std::log(g) : 0.0;
  return (0.5 - 1.0 / beta) * std::log(n) + n / 2.0 - 1.5 * p + n * std::log(n) - glog + p * std::log(beta / 2.0);
}

double mu2(double p, double c, double beta) {
  return 0.5 * std::log(p + c) - std::log(p + 1.0 + c) / beta + (p + c) * std::log(p + c) + p * std::log(beta / 2.0) -
         p;
}

double mu3(double p, double n, double beta) {
  const double g = n - p;
  return (0.5 - 1.0 / beta) * std::log(n / g) + n * std::log(n) - g * std::log(g) + p * std::log(beta / 2.0) - p;
}

LevyExponent LevyExponent::gaussian(double variance) {
  if (!(variance > 0.0)) throw DomainError("LevyExponent: variance must be positive");
  LevyExponent e;
  e.kind_ = Kind::Gaussian;
  e.variance_ = variance;
  return e;
}

LevyExponent LevyExponent::stable1(double beta, double scale, double linear) {
  if (!(beta > 0.0) || !(scale > 0.0)) throw DomainError("LevyExponent: beta and scale must be positive");
  LevyExponent e;
  e.kind_ = Kind::Stable1;
  e.beta_ = beta;
  e.scale_ = scale;
  e.linear_ = linear;
  return e;
}

LevyExponent LevyExponent::stable2(double beta, double tau1, double tau2) {
  if (!(beta > 0.0) || !(tau1 > 0.0) || !(tau2 > 0.0))
    throw DomainError("LevyExponent: beta, tau1, tau2 must be positive");
  LevyExponent e;
  e.kind_ = Kind::Stable2;
  e.beta_ = beta;
  e.tau1_ = tau1;
  e.tau2_ = tau2;
  return e;
}

LevyExponent LevyExponent::proportional(double beta, double c) {
  if (!(beta > 0.0) || !(c >= 0.0 && c < 1.0)) throw DomainError("LevyExponent: need beta > 0 and c in [0, 1)");
  LevyExponent e;
  e.kind_ = Kind::Proportional;
  e.beta_ = beta;
  e.c_ = c;
  return e;
}

namespace {

Complex xlogx(Complex x) { return x == 0.0 ? Complex(0.0) : x * std::log(x); }

}  // namespace

Complex LevyExponent::operator()(Complex z) const {
  const double a = beta_ / 2.0;
  switch (kind_) {
    case Kind::Gaussian:
      return 0.5 * variance_ * z * z;
    case Kind::Stable1: {
      const Complex w = scale_ * z;
      return -a * std::log(beta_) + (w + a) * std::log(2.0) + xlogx(w + a) + linear_ * z;
    }
    case Kind::Stable2: {
      const double lo = a * tau1_, hi = a * (tau1_ + tau2_);
      return hi * std::log(hi) - lo * std::log(lo) + xlogx(z + lo) - xlogx(z + hi);
    }
    case Kind::Proportional: {
      const double b = a * (1.0 - c_), k = a * (1.0 - c_ / 2.0);
      return z * std::log(2.0) + (z + k) * std::log(b + z) - k * std::log(b);
    }
  }
  return 0.0;
}

double LevyExponent::derivative(double h, int order) const {
  if (order != 1 && order != 2) throw DomainError("LevyExponent::derivative: order must be 1 or 2");
  if (!(h > lower_bound())) throw DomainError("LevyExponent::derivative: argument below the domain");
  const double a = beta_ / 2.0;
  switch (kind_) {
    case Kind::Gaussian:
      return order == 1 ? variance_ * h : variance_;
    case Kind::Stable1: {
      const double w = scale_ * h + a;
      return order == 1 ? scale_ * (std::log(2.0) + std::log(w) + 1.0) + linear_ : scale_ * scale_ / w;
    }
    case Kind::Stable2: {
      const double lo = a * tau1_ + h, hi = a * (tau1_ + tau2_) + h;
      return order == 1 ? std::log(lo) - std::log(hi) : 1.0 / lo - 1.0 / hi;
    }
    case Kind::Proportional: {
      const double w = a * (1.0 - c_) + h, excess = a * c_ / 2.0;
      return order == 1 ? std::log(2.0) + std::log(w) + 1.0 + excess / w : 1.0 / w - excess / (w * w);
    }
  }
  return 0.0;
}

double LevyExponent::lower_bound() const {
  switch (kind_) {
    case Kind::Gaussian:
      return -kInf;
    case Kind::Stable1:
      return -beta_ / 2.0 / scale_;
    case Kind::Stable2:
      return -beta_ / 2.0 * tau1_;
    case Kind::Proportional:
      return -beta_ / 2.0 * (1.0 - c_);
  }
  return -kInf;
}

double LevyExponent::convex_lower_bound() const {
  // The proportional exponent has eta'' = (w - a c / 2) / w^2 with w = h - lower_bound().
  if (kind_ == Kind::Proportional) return lower_bound() + beta_ / 2.0 * c_ / 2.0;
  return lower_bound();
}

std::pair<double, double> LevyExponent::derivative_range() const {
  switch (kind_) {
    case Kind::Stable2:
      return {-kInf, 0.0};
    case Kind::Proportional:
      if (c_ > 0.0) return {derivative(convex_lower_bound(), 1), kInf};
      return {-kInf, kInf};
    default:
      return {-kInf, kInf};
  }
}

std::string LevyExponent::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Gaussian:
      os << "gaussian(variance=" << variance_ << ")";
      break;
    case Kind::Stable1:
      os << "stable1(beta=" << beta_ << ", scale=" << scale_ << ", linear=" << linear_ << ")";
      break;
    case Kind::Stable2:
      os << "stable2(beta=" << beta_ << ", tau1=" << tau1_ << ", tau2=" << tau2_ << ")";
      break;
    case Kind::Proportional:
      os << "proportional(beta=" << beta_ << ", c=" << c_ << ")";
      break;
  }
  return os.str();
}

Complex LimitingFunctionSpec::log_value(Complex z, const QuadratureSpec& q) const {
  check_lower(z, lower_bound(), "limiting function");
  const Complex w = arg_scale * z;
  Complex v = quad_coeff * z * z;
  switch (kind) {
    case Kind::One:
      break;
    case Kind::PhiAlpha:
      v += weight * (phi_alpha_has_closed_form(alpha) ? phi_alpha_closed(alpha, w) : phi_alpha(alpha, w, q));
      break;
    case Kind::PhiC:
      v += weight * (beta == 2.0 ? phi_c_barnes(c, w) : phi_c(beta, c, w, q));
      break;
    case Kind::ClosedFormProduct:
      v += log_gamma_diff(0.5, 0.5 * z) + weight * phi_c_barnes(c, w);
      break;
    case Kind::StablePower:
      if (tau1 > 0.0)
        v += exponent * (log1p(2.0 * w / (tau1 * beta)) - log1p(2.0 * w / ((tau1 + tau2) * beta)));
      else
        v += exponent * log1p(2.0 * w / beta);
      break;
  }
  return v;
}

double LimitingFunctionSpec::lower_bound() const {
  switch (kind) {
    case Kind::One:
      return -kInf;
    case Kind::PhiAlpha:
      return -alpha / arg_scale;
    case Kind::PhiC:
      return -beta / 2.0 * (1.0 + c) / arg_scale;
    case Kind::ClosedFormProduct:
      return -1.0;
    case Kind::StablePower:
      return -beta / 2.0 * (tau1 > 0.0 ? tau1 : 1.0) / arg_scale;
  }
  return -kInf;
}

bool LimitingFunctionSpec::has_closed_form() const {
  switch (kind) {
    case Kind::PhiAlpha:
      return phi_alpha_has_closed_form(alpha);
    case Kind::PhiC:
      return beta == 2.0;
    default:
      return true;
  }
}

std::string LimitingFunctionSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::One:
      os << "one";
      break;
    case Kind::PhiAlpha:
      os << "phi_alpha(alpha=" << alpha << ")";
      break;
    case Kind::PhiC:
      os << "phi_c(beta=" << beta << ", c=" << c << ")";
      break;
    case Kind::ClosedFormProduct:
      os << "gue_product(c=" << c << ")";
      break;
    case Kind::StablePower:
      os << "stable_power(beta=" << beta << ", exponent=" << exponent;
      if (tau1 > 0.0) os << ", tau1=" << tau1 << ", tau2=" << tau2;
      os << ")";
      break;
  }
  if (kind != Kind::One && kind != Kind::StablePower) os << " weight=" << weight;
  if (arg_scale != 1.0) os << " at " << arg_scale << "z";
  if (quad_coeff != 0.0) os << " + " << quad_coeff << "z^2";
  return os.str();
}

std::string ConvergenceDomain::describe() const {
  if (kind == Kind::ImaginaryAxis) return "imaginary axis";
  std::ostringstream os;
  os << "strip " << lower << " < Re z < " << upper;
  return os.str();
}

Regime Regime::full() { return {}; }

Regime Regime::vanishing_gap(double gap0) {
  if (!(gap0 > 0.0)) throw DomainError("Regime: vanishing gap constant must be positive");
  Regime r;
  r.kind = Kind::VanishingGap;
  r.gap = gap0;
  return r;
}

Regime Regime::fixed_gap(double c) {
  if (!(c > -1.0)) throw DomainError("Regime: fixed gap must exceed -1");
  Regime r;
  r.kind = Kind::FixedGap;
  r.gap = c;
  return r;
}

Regime Regime::growing_gap(double exponent) {
  if (!(exponent > 0.0 && exponent < 1.0)) throw DomainError("Regime: growing-gap exponent must lie in (0, 1)");
  Regime r;
  r.kind = Kind::GrowingGap;
  r.exponent = exponent;
  return r;
}

Regime Regime::fixed_p(int p) {
  if (p < 1) throw DomainError("Regime: fixed p must be positive");
  Regime r;
  r.kind = Kind::FixedP;
  r.p = p;
  return r;
}

Regime Regime::proportional(double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw DomainError("Regime: proportional ratio must lie in (0, 1)");
  Regime r;
  r.kind = Kind::Proportional;
  r.ratio = ratio;
  return r;
}

Regime Regime::with_proportional_sizes(double t1, double t2) const {
  if (!(t1 > 0.0) || !(t2 > 0.0)) throw DomainError("Regime: tau1 and tau2 must be positive");
  Regime r = *this;
  r.proportional_sizes = true;
  r.tau1 = t1;
  r.tau2 = t2;
  return r;
}

int Regime::p_of(int n) const {
  switch (kind) {
    case Kind::Full:
    case Kind::VanishingGap:
    case Kind::FixedGap:
      return n;
    case Kind::GrowingGap:
      return n - int(std::max(1.0, std::round(std::pow(double(n), exponent))));
    case Kind::FixedP:
      return p;
    case Kind::Proportional:
      return int(std::floor(ratio * n));
  }
  return n;
}

double Regime::gap_of(int n) const {
  switch (kind) {
    case Kind::Full:
      return 0.0;
    case Kind::VanishingGap:
      return gap / n;
    case Kind::FixedGap:
      return gap;
    default:
      return double(n - p_of(n));
  }
}

std::string Regime::label() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Full:
      os << "full";
      break;
    case Kind::VanishingGap:
      os << "vanishing-gap(" << gap << "/n)";
      break;
    case Kind::FixedGap:
      os << "fixed-gap(c=" << gap << ")";
      break;
    case Kind::GrowingGap:
      os << "growing-gap(n^" << exponent << ")";
      break;
    case Kind::FixedP:
      os << "fixed-p(p=" << p << ")";
      break;
    case Kind::Proportional:
      os << "proportional(p/n=" << ratio << ")";
      break;
  }
  if (proportional_sizes) os << " sizes(tau1=" << tau1 << ", tau2=" << tau2 << ")";
  return os.str();
}

Complex ModPhiData::log_phi_n(Complex z) const { return log_mgf(ensemble, scale * z) - z * mean_shift; }

namespace {

// Asymptotics of one block L(p, l, beta/2; z) in a Gaussian regime.
struct BlockAsymptotics {
  double mean = 0.0;
  double log_rate = 0.0;  // the z^2 coefficient is log_rate / beta
  LimitingFunctionSpec limit;
};

BlockAsymptotics laguerre_block(Regime::Kind kind, double p, double l, double beta) {
  BlockAsymptotics b;
  const double a = beta / 2.0;
  switch (kind) {
    case Regime::Kind::Full:
      b.mean = mu1_full(p, beta);
      b.log_rate = std::log(p);
      b.limit.kind = LimitingFunctionSpec::Kind::PhiAlpha;
      b.limit.alpha = a;
      break;
    case Regime::Kind::VanishingGap:
      b.mean = mu1_vanishing(p, p + l, beta);
      b.log_rate = std::log(p + l);
      b.limit.kind = LimitingFunctionSpec::Kind::PhiAlpha;
      b.limit.alpha = a;
      break;
    case Regime::Kind::FixedGap:
      b.mean = mu2(p, l, beta);
      b.log_rate = std::log((p + 1.0 + l) / (1.0 + l));
      b.limit.kind = LimitingFunctionSpec::Kind::PhiC;
      b.limit.beta = beta;
      b.limit.c = l;
      break;
    case Regime::Kind::GrowingGap:
      b.mean = mu3(p, p + l, beta);
      b.log_rate = std::log((p + l) / l);
      b.limit.kind = LimitingFunctionSpec::Kind::One;
      break;
    default:
      throw UnsupportedRegimeError("no Gaussian block asymptotics for this regime");
  }
  return b;
}

// Gaussian mod-phi data for slope z + weight L(p, l, beta/2; scale z) + extras.
ModPhiData assemble(const EnsembleSpec& e, const BlockAsymptotics& b, double beta, double scale, double weight,
                    double mean_extra, double eta_variance, const std::string& label) {
  ModPhiData d;
  d.eta = LevyExponent::gaussian(eta_variance);
  d.t_n = 2.0 * weight * scale * scale * b.log_rate / beta / eta_variance;
  d.mean_shift = mean_extra + weight * scale * b.mean;
  d.psi_limit = b.limit;
  d.psi_limit.weight = weight;
  d.psi_limit.arg_scale = scale;
  d.domain.kind = ConvergenceDomain::Kind::Strip;
  d.domain.lower = d.psi_limit.lower_bound();
  d.domain.upper = e.admissible_strip().second;
  d.regime_label = label;
  d.ensemble = e;
  if (!(d.t_n > 0.0)) throw UnsupportedRegimeError("mod-phi data needs t_n > 0; size too small for " + label);
  return d;
}

void check_growing_gap(double gap, double n, const Regime& regime) {
  if (!(gap >= 1.0)) throw UnsupportedRegimeError("growing-gap regime needs n - p >= 1");
  if (gap / n > regime.max_gap_fraction) {
    std::ostringstream os;
    os << "growing-gap regime: (n - p)/n = " << gap / n << " exceeds " << regime.max_gap_fraction
       << "; proportional gaps have no mod-phi limit";
    throw UnsupportedRegimeError(os.str());
  }
}

// Block regime for an integer p x n Laguerre-type block with gap n - p.
Regime::Kind integer_block_kind(const Regime& regime, int n, int p) {
  switch (regime.kind) {
    case Regime::Kind::Full:
      if (p != n) throw UnsupportedRegimeError("full regime needs p = n");
      return Regime::Kind::Full;
    case Regime::Kind::FixedGap:
      if (std::abs(double(n - p) - regime.gap) > 1e-12) throw UnsupportedRegimeError("fixed-gap regime needs n - p = c");
      return Regime::Kind::FixedGap;
    case Regime::Kind::GrowingGap:
      check_growing_gap(double(n - p), double(n), regime);
      return Regime::Kind::GrowingGap;
    case Regime::Kind::Proportional:
      throw UnsupportedRegimeError("proportional p/n: no mod-phi convergence");
    default:
      throw UnsupportedRegimeError("regime " + regime.label() + " not available here");
  }
}

double stable_exponent(double beta, int p) { return -beta * (p - 1.0) * p / 4.0 - p / 2.0; }

ModPhiData stable_laguerre_type(const EnsembleSpec& e, double beta, double arg_scale, double linear,
                                double mean_shift, const std::string& label) {
  ModPhiData d;
  d.eta = LevyExponent::stable1(beta, arg_scale, linear);
  d.t_n = double(e.p) * e.n;
  d.scale = e.n;
  d.mean_shift = mean_shift;
  d.psi_limit.kind = LimitingFunctionSpec::Kind::StablePower;
  d.psi_limit.beta = beta;
  d.psi_limit.arg_scale = arg_scale;
  d.psi_limit.exponent = stable_exponent(beta, e.p);
  d.domain.kind = ConvergenceDomain::Kind::ImaginaryAxis;
  d.regime_label = label;
  d.ensemble = e;
  return d;
}

ModPhiData laguerre_from_spec(const EnsembleSpec& e, const Regime& regime) {
  const double beta = e.beta;
  const std::string label = "laguerre " + regime.label();
  if (regime.kind == Regime::Kind::FixedP) {
    if (e.p != regime.p || e.gap) throw UnsupportedRegimeError("fixed-p regime needs the integer p of the regime");
    const double n = e.n;
    return stable_laguerre_type(e, beta, 1.0, 0.0, n * (e.p * std::log(n) - e.p), label);
  }
  const double p = e.p;
  const double l = e.gap ? *e.gap : double(e.n - e.p);
  Regime::Kind kind = regime.kind;
  switch (kind) {
    case Regime::Kind::Full:
      if (l != 0.0) throw UnsupportedRegimeError("full regime needs p = n");
      break;
    case Regime::Kind::VanishingGap:
      if (!(l > 0.0 && l < 1.0)) throw UnsupportedRegimeError("vanishing-gap regime needs a real gap in (0, 1)");
      break;
    case Regime::Kind::FixedGap:
      if (std::abs(l - regime.gap) > 1e-12) throw UnsupportedRegimeError("fixed-gap regime needs gap = c");
      break;
    case Regime::Kind::GrowingGap:
      check_growing_gap(l, p + l, regime);
      break;
    default:
      throw UnsupportedRegimeError("proportional p/n: no mod-phi convergence for the Laguerre log-determinant");
  }
  return assemble(e, laguerre_block(kind, p, l, beta), beta, 1.0, 1.0, p * std::log(2.0), 1.0, label);
}

ModPhiData gue_family(const EnsembleSpec& e, const Regime& regime) {
  if (regime.kind != Regime::Kind::Full) throw UnsupportedRegimeError("GUE kinds support the full regime only");
  if (e.n < 2) throw UnsupportedRegimeError("GUE mod-phi data needs n >= 2");
  const int m = e.n / 2;
  BlockAsymptotics b = laguerre_block(Regime::Kind::FixedGap, m, 0.5, 2.0);
  b.limit.kind = LimitingFunctionSpec::Kind::ClosedFormProduct;
  double extra = 0.0;
  if (e.n % 2 == 0) extra -= 0.5 * (std::log(m + 0.5) - 1.0 / (2.0 * m + 1.0));
  if (e.kind == EnsembleKind::GUE) {
    extra += 0.5 * e.n * std::log(2.0);
  } else {
    for (int k = 1; k <= e.n; ++k) {
      const double mk = 0.5 * e.n + double(k - 1) / e.n;
      extra -= 0.5 * (std::log(mk) - 0.5 / mk);
    }
    b.limit.quad_coeff = -0.25;
  }
  ModPhiData d = assemble(e, b, 2.0, 0.5, 2.0, extra, 1.0, to_string(e.kind) + " " + regime.label());
  d.psi_limit.quad_coeff = b.limit.quad_coeff;
  return d;
}

ModPhiData tenfold(const EnsembleSpec& e, const Regime& regime) {
  const double beta = e.beta;
  const double l = (beta * e.mu / 2.0 + 0.5) / (beta / 2.0) - 1.0;
  const double prefactor = 0.5 * e.p * std::log(2.0 / beta);
  const std::string label = to_string(e.kind) + " " + regime.label();
  if (e.kind == EnsembleKind::Chiral) {
    if (regime.kind == Regime::Kind::FixedP) {
      if (e.p != regime.p) throw UnsupportedRegimeError("fixed-p regime needs p of the regime");
      const double n = e.n;
      return stable_laguerre_type(e, beta, 0.5, -0.5 * std::log(beta), 0.5 * n * (e.p * std::log(n) - e.p), label);
    }
    const Regime::Kind kind = integer_block_kind(regime, e.n, e.p);
    return assemble(e, laguerre_block(kind, e.p, l, beta), beta, 0.5, 1.0, prefactor, 1.0, label);
  }
  // BdG: the gap is the fixed constant l of the kind.
  const bool natural = regime.kind == Regime::Kind::Full ||
                       (regime.kind == Regime::Kind::FixedGap && std::abs(regime.gap - l) < 1e-12);
  if (!natural) throw UnsupportedRegimeError("BdG kinds have a fixed gap; use the full or fixed-gap(c=l) regime");
  ModPhiData d = assemble(e, laguerre_block(Regime::Kind::FixedGap, e.p, l, beta), beta, 0.5, 1.0, prefactor,
                          1.0 / (2.0 * beta), label);
  if (e.kind == EnsembleKind::BdG1) d.t_n = std::log(0.5 * (e.n + 1) + 1.0);
  return d;
}

ModPhiData volume_family(const EnsembleSpec& e, const Regime& regime) {
  const std::string label = to_string(e.kind) + " " + regime.label();
  const bool gaussian = e.kind == EnsembleKind::ParallelotopeGaussian || e.kind == EnsembleKind::SimplexGaussian;
  const bool simplex = e.kind >= EnsembleKind::SimplexGaussian;
  if (e.kind == EnsembleKind::ParallelotopeBetaPrime || e.kind == EnsembleKind::SimplexBetaPrime)
    throw UnsupportedRegimeError("Beta-prime volume models have no mod-phi packaging");
  const double n = e.n, p = e.p;
  if (regime.kind == Regime::Kind::FixedP) {
    if (!gaussian) throw UnsupportedRegimeError("fixed-p regime is available for Gaussian volume models only");
    if (e.p != regime.p) throw UnsupportedRegimeError("fixed-p regime needs p of the regime");
    double shift = 0.5 * n * (p * std::log(n) - p);
    if (simplex) shift += 0.5 * n * std::log(p + 1.0);
    return stable_laguerre_type(e, 1.0, 0.5, 0.0, shift, label);
  }
  const Regime::Kind kind = integer_block_kind(regime, e.n, e.p);
  BlockAsymptotics b = laguerre_block(kind, p, n - p, 1.0);
  double extra = 0.0;
  if (gaussian) {
    extra = 0.5 * p * std::log(2.0);
    if (simplex) extra += 0.5 * std::log(p + 1.0);
  } else {
    const double m = 0.5 * (n + e.nu);
    extra = -0.5 * p * std::log(m) + p / (4.0 * m);
    if (simplex) {
      const double big = 0.5 * (p * (n + e.nu - 2.0) + (n + e.nu));
      extra += -0.5 * (std::log(m) - 0.5 / m) + 0.5 * (std::log(big) - 0.5 / big);
    }
    b.limit.quad_coeff = -0.25;
  }
  ModPhiData d = assemble(e, b, 1.0, 0.5, 1.0, extra, 1.0, label);
  d.psi_limit.quad_coeff = b.limit.quad_coeff;
  return d;
}

}  // namespace

ModPhiData laguerre_modphi(double beta, int n, const Regime& regime) {
  switch (regime.kind) {
    case Regime::Kind::Full:
      return laguerre_from_spec(EnsembleSpec::laguerre(beta, n, n), regime);
    case Regime::Kind::VanishingGap:
    case Regime::Kind::FixedGap:
      return laguerre_from_spec(EnsembleSpec::laguerre_real_gap(beta, n, regime.gap_of(n)), regime);
    case Regime::Kind::GrowingGap:
    case Regime::Kind::FixedP: {
      const int p = regime.p_of(n);
      if (p < 1 || p > n) throw UnsupportedRegimeError("regime gives p outside [1, n]");
      return laguerre_from_spec(EnsembleSpec::laguerre(beta, n, p), regime);
    }
    case Regime::Kind::Proportional:
      break;
  }
  throw UnsupportedRegimeError("proportional p/n: no mod-phi convergence for the Laguerre log-determinant");
}

ModPhiData jacobi_modphi(double beta, int p, int n1, int n2, const Regime& regime) {
  const EnsembleSpec e = EnsembleSpec::jacobi(beta, p, n1, n2);
  const std::string label = "jacobi " + regime.label();
  const double N = double(n1) + n2;
  double n = 0.0;
  if (regime.proportional_sizes) {
    n = n1 / regime.tau1;
    if (std::abs(std::floor(n * regime.tau2 + 1e-9) - n2) > 0.5 || std::abs(std::round(n) - n) > 1e-9)
      throw UnsupportedRegimeError("proportional sizes need n1 = n tau1 and n2 = floor(n tau2) for an integer n");
  }
  if (regime.kind == Regime::Kind::FixedP) {
    if (!regime.proportional_sizes)
      throw UnsupportedRegimeError("fixed p without proportional n1, n2: no mod-phi convergence");
    if (p != regime.p) throw UnsupportedRegimeError("fixed-p regime needs p of the regime");
    ModPhiData d;
    d.eta = LevyExponent::stable2(beta, regime.tau1, regime.tau2);
    d.t_n = p * n;
    d.scale = n;
    d.mean_shift = 0.0;
    d.psi_limit.kind = LimitingFunctionSpec::Kind::StablePower;
    d.psi_limit.beta = beta;
    d.psi_limit.exponent = stable_exponent(beta, p);
    d.psi_limit.tau1 = regime.tau1;
    d.psi_limit.tau2 = regime.tau2;
    d.domain.kind = ConvergenceDomain::Kind::ImaginaryAxis;
    d.regime_label = label;
    d.ensemble = e;
    return d;
  }
  const Regime::Kind kind = integer_block_kind(regime, n1, p);
  BlockAsymptotics a = laguerre_block(kind, p, double(n1 - p), beta);
  a.mean -= mu3(p, N, beta);
  a.log_rate -= std::log(N / (N - p));
  if (kind == Regime::Kind::FixedGap) {
    // Tabulated rate log(n1 (c + n2) / N); its limiting offset -log(1 + c) moves into psi.
    const double c = n1 - p;
    const double tabulated = std::log(n1 * (c + n2) / N);
    a.limit.quad_coeff = -std::log1p(c) / beta;
    a.log_rate = tabulated;
  }
  if (kind == Regime::Kind::Full && regime.proportional_sizes) {
    const double t1 = regime.tau1, t2 = regime.tau2;
    a.log_rate = std::log(n);
    a.limit.quad_coeff += std::log(t1 * t2 / (t1 + t2)) / beta;
  }
  ModPhiData d = assemble(e, a, beta, 1.0, 1.0, 0.0, 1.0, label);
  d.psi_limit.quad_coeff = a.limit.quad_coeff;
  return d;
}

ModPhiData ensemble_modphi(const EnsembleSpec& e, const Regime& regime) {
  e.validate();
  switch (e.kind) {
    case EnsembleKind::Laguerre:
      return laguerre_from_spec(e, regime);
    case EnsembleKind::Jacobi:
      return jacobi_modphi(e.beta, e.p, e.n1, e.n2, regime);
    case EnsembleKind::Ginibre: {
      if (regime.kind != Regime::Kind::Full) throw UnsupportedRegimeError("Ginibre supports the full regime only");
      return assemble(e, laguerre_block(Regime::Kind::Full, e.n, 0.0, e.beta), e.beta, 0.5, 1.0,
                      0.5 * e.n * std::log(2.0 / e.beta), 1.0, "ginibre " + regime.label());
    }
    case EnsembleKind::GUE:
    case EnsembleKind::FixedTraceGUE:
      return gue_family(e, regime);
    case EnsembleKind::Chiral:
    case EnsembleKind::BdG1:
    case EnsembleKind::BdG2:
    case EnsembleKind::BdG3:
    case EnsembleKind::BdG4:
      return tenfold(e, regime);
    default:
      return volume_family(e, regime);
  }
}

AsymptoticEstimate binet_shift_expansion(double m, Complex z) {
  if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("binet_shift_expansion: m must be positive");
  check_finite(z, "binet_shift_expansion");
  const double r = std::abs(z);
  if (r > m / 2.0) throw DomainError("binet_shift_expansion: needs |z| <= m/2");
  AsymptoticEstimate est;
  est.main = z * (std::log(m) - 0.5 / m) + z * z / (2.0 * m);
  est.bound = 3.0 * (r / 12.0 + r * r / 4.0 + r * r * r / 6.0) / (m * m) + r * r * r * r / (m * m * m);
  return est;
}

AsymptoticEstimate barnes_ratio_estimate(int p, Complex z) {
  if (p < 1) throw DomainError("barnes_ratio_estimate: p must be positive");
  check_finite(z, "barnes_ratio_estimate");
  const double r = std::abs(z);
  if (r > 0.5 * std::pow(double(p), 1.0 / 6.0)) throw DomainError("barnes_ratio_estimate: needs |z| <= p^{1/6}/2");
  AsymptoticEstimate est;
  const double pp = p;
  est.main = 0.5 * z * std::log(2.0 * pi) - (pp + 1.0) * z + (0.5 * z * z + pp * z) * std::log1p(pp);
  // Leading error (z^3/6 - z^2/2 + 5z/12)/p, with margin for the next order.
  est.bound = 1.25 * (r * r * r / 6.0 + r * r / 2.0 + 5.0 * r / 12.0) / pp + (r + r * r * r * r) / (pp * pp);
  return est;
}

}  // namespace modgamma
