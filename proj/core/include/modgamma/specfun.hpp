#pragma once

#include <functional>

#include "modgamma/quadrature.hpp"

namespace modgamma {

using ComplexValue = Complex;
using AnalyticFunction = std::function<Complex(Complex)>;

// Principal-branch log Gamma. Valid for |z| <= 1e12 and Re z >= -1000.
Complex log_gamma(Complex z);
double log_gamma(double x);  // x > 0

// log Gamma(w + z) - log Gamma(w) without cancellation when |z| << |w|.
// Branch: continuous in z from z = 0, equal to log_gamma differences at exp level.
Complex log_gamma_diff(Complex w, Complex z);

// First Binet formula by quadrature. Oracle only, Re z > 0.
Complex binet_log_gamma(Complex z, const QuadratureSpec& q = {});

// Kernel phi(s) = (1/2 - 1/s + 1/(e^s - 1)) / s of the Binet formula.
double binet_kernel(double s);

Complex digamma(Complex z);
double digamma(double x);
Complex trigamma(Complex z);
double trigamma(double x);

// log G(z + 1) for the Barnes G-function.
Complex log_barnes_g(Complex z, const QuadratureSpec& q = {});

// log G(N + 1 + z) - log G(N + 1), accurate for very large N.
Complex log_barnes_ratio(double N, Complex z);

// Sum_{k=0}^{n-1} f(k) through the Abel-Plana formula.
Complex abel_plana_sum(const AnalyticFunction& f, int n, const QuadratureSpec& q = {});

// log(1 + u) and exp(x) - 1 for complex arguments, accurate near 0.
Complex log1p(Complex u);
Complex expm1(Complex x);

inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;
inline constexpr double kZetaPrimeMinus1 = -0.16542114370045092921;

}  // namespace modgamma
