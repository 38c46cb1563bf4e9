#include "modgamma/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "modgamma/errors.hpp"

namespace modgamma {
namespace {

constexpr int kOrder = 20;

struct GaussLegendre {
  std::array<double, kOrder> x{};
  std::array<double, kOrder> w{};

  GaussLegendre() {
    for (int i = 0; i < kOrder; ++i) {
      double t = std::cos(std::numbers::pi * (i + 0.75) / (kOrder + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= kOrder; ++k) {
          double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        double dp = kOrder * (t * p1 - p0) / (t * t - 1.0);
        double dt = p1 / dp;
        t -= dt;
        if (std::abs(dt) < 1e-16) {
          x[i] = t;
          w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
          break;
        }
      }
    }
  }
};

const GaussLegendre& rule() {
  static const GaussLegendre gl;
  return gl;
}

Complex panel(const RealIntegrand& f, double a, double b) {
  const auto& gl = rule();
  double h = 0.5 * (b - a), c = 0.5 * (a + b);
  Complex sum = 0.0;
  for (int i = 0; i < kOrder; ++i) sum += gl.w[i] * f(c + h * gl.x[i]);
  return sum * h;
}

struct Adaptive {
  const RealIntegrand& f;
  int max_depth;
  double worst_delta = 0.0;
  bool failed = false;

  Complex run(double a, double b, Complex whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    Complex left = panel(f, a, m), right = panel(f, m, b);
    Complex both = left + right;
    double delta = std::abs(both - whole);
    if (!std::isfinite(delta)) throw QuadratureError("non-finite integrand value on [" +
                                                     std::to_string(a) + ", " + std::to_string(b) + "]");
    if (delta <= tol || m <= a || m >= b) return both;
    if (depth >= max_depth) {
      failed = true;
      worst_delta = std::max(worst_delta, delta);
      return both;
    }
    return run(a, m, left, 0.5 * tol, depth + 1) + run(m, b, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_refinements < 1)
    throw DomainError("QuadratureSpec requires abs_tol > 0, rel_tol > 0, max_refinements >= 1");
}

QuadratureSpec QuadratureSpec::tightened(double factor) const {
  QuadratureSpec q = *this;
  q.abs_tol *= factor;
  q.rel_tol *= factor;
  return q;
}

Complex integrate(const RealIntegrand& f, double a, double b, const QuadratureSpec& q) {
  q.validate();
  if (a == b) return 0.0;
  Complex whole = panel(f, a, b);
  double tol = std::max(q.abs_tol, q.rel_tol * std::abs(whole));
  Adaptive ad{f, q.max_refinements};
  Complex v = ad.run(a, b, whole, tol, 1);
  if (ad.failed) {
    std::ostringstream os;
    os << "adaptive quadrature on [" << a << ", " << b << "] did not reach tolerance " << tol
       << " (last refinement delta " << ad.worst_delta << ")";
    throw QuadratureError(os.str());
  }
  return v;
}

Complex semiinf_integral(const RealIntegrand& f, const QuadratureSpec& q) {
  q.validate();
  QuadratureSpec inner = q;
  inner.abs_tol = q.abs_tol / 8.0;
  const double cutoff = q.abs_tol / 10.0;
  constexpr int kMaxPanels = 64;

  // (0, 1] mapped to t in [0, inf) by s = exp(-t).
  auto head_f = [&f](double t) -> Complex {
    double s = std::exp(-t);
    return s > 0.0 ? f(s) * s : Complex(0.0);
  };
  Complex head = 0.0;
  int quiet = 0;
  // Stops at t = 128: the dropped piece (0, e^{-128}) is below any tolerance for
  // integrable singularities.
  for (int k = 0; k <= 7 && quiet < 2; ++k) {
    double a = k == 0 ? 0.0 : std::ldexp(1.0, k - 1), b = std::ldexp(1.0, k);
    Complex c = integrate(head_f, a, b, inner);
    head += c;
    quiet = std::abs(c) < cutoff ? quiet + 1 : 0;
  }

  Complex tail = 0.0;
  quiet = 0;
  double min_end = q.decay_hint > 0.0 ? 40.0 / q.decay_hint : 0.0;
  int k = 0;
  for (; k < kMaxPanels; ++k) {
    double a = std::ldexp(1.0, k), b = std::ldexp(1.0, k + 1);
    Complex c = integrate(f, a, b, inner);
    tail += c;
    quiet = std::abs(c) < cutoff ? quiet + 1 : 0;
    if (quiet >= 2 && b >= min_end) break;
  }
  if (k == kMaxPanels) {
    throw NonDecayError("integrand on (0, inf) shows no numerical decay up to s = 2^64");
  }
  return ensure_finite(head + tail, "semiinf_integral");
}

Complex ensure_finite(Complex v, const char* where) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw OverflowError(std::string(where) + ": result is not finite");
  return v;
}

double ensure_finite(double v, const char* where) {
  if (!std::isfinite(v)) throw OverflowError(std::string(where) + ": result is not finite");
  return v;
}

}  // namespace modgamma
