#pragma once

#include <complex>
#include <functional>

namespace modgamma {

using Complex = std::complex<double>;

// Tolerances and refinement budget shared by every integral in the library.
struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_refinements = 30;
  // Exponential decay rate of the integrand tail; 0 means unknown.
  double decay_hint = 0.0;

  void validate() const;
  QuadratureSpec tightened(double factor) const;
};

using RealIntegrand = std::function<Complex(double)>;

// Adaptive composite 20-point Gauss-Legendre on [a, b].
Complex integrate(const RealIntegrand& f, double a, double b, const QuadratureSpec& q = {});

// Integral over (0, inf) of an exponentially decaying integrand; an integrable
// singularity at 0 is tamed by s = exp(-t) on (0, 1].
Complex semiinf_integral(const RealIntegrand& f, const QuadratureSpec& q = {});

// Throws OverflowError if either component is not finite.
Complex ensure_finite(Complex v, const char* where);
double ensure_finite(double v, const char* where);

}  // namespace modgamma
