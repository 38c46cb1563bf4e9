#include "modgamma/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "modgamma/errors.hpp"

namespace modgamma {
namespace {

using std::numbers::pi;

// B_2, B_4, ..., B_22.
constexpr std::array<double, 11> kBernoulli = {
    1.0 / 6.0,        -1.0 / 30.0,   1.0 / 42.0,        -1.0 / 30.0,
    5.0 / 66.0,       -691.0 / 2730.0, 7.0 / 6.0,       -3617.0 / 510.0,
    43867.0 / 798.0,  -174611.0 / 330.0, 854513.0 / 138.0};

constexpr double kShift = 10.0;
constexpr double kBarnesAsymptotic = 20.0;
constexpr double kBarnesRatioShift = 30.0;

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

void check_range(Complex z, const char* where) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError(std::string(where) + ": argument is not finite");
  if (std::abs(z) > 1e12 || z.real() < -1000.0) {
    std::ostringstream os;
    os << where << ": argument " << z << " outside the supported range |z| <= 1e12, Re z >= -1000";
    throw OverflowError(os.str());
  }
}

template <class T>
T stirling_tail(T z) {
  T zi = T(1.0) / z, z2 = zi * zi, term = zi, sum = 0.0;
  for (std::size_t k = 1; k <= 10; ++k) {
    sum += kBernoulli[k - 1] / double(2 * k * (2 * k - 1)) * term;
    term *= z2;
  }
  return sum;
}

template <class T>
T log_gamma_shifted(T z) {
  // log Gamma(z) = log Gamma(z + N) - sum log(z + k).
  T acc = 0.0;
  while (std::real(z) < kShift) {
    acc -= std::log(z);
    z += 1.0;
  }
  return acc + (z - 0.5) * std::log(z) - z + kLogSqrt2Pi + stirling_tail(z);
}

}  // namespace

Complex log1p(Complex u) {
  double re = 0.5 * std::log1p(2.0 * u.real() + std::norm(u));
  double im = std::atan2(u.imag(), 1.0 + u.real());
  return {re, im};
}

Complex expm1(Complex x) {
  double a = x.real(), b = x.imag();
  double s = std::sin(0.5 * b);
  return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

Complex log_gamma(Complex z) {
  check_range(z, "log_gamma");
  if (is_nonpositive_integer(z)) throw PoleError("log_gamma: pole at non-positive integer");
  if (z.imag() == 0.0 && z.real() > 0.0) return log_gamma(z.real());
  return ensure_finite(log_gamma_shifted(z), "log_gamma");
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma(real): argument must be positive");
  if (x > 1e12) throw OverflowError("log_gamma(real): argument above 1e12");
  if (x == 1.0 || x == 2.0) return 0.0;
  return log_gamma_shifted(x);
}

Complex log_gamma_diff(Complex w, Complex z) {
  if (is_nonpositive_integer(w) || is_nonpositive_integer(w + z))
    throw PoleError("log_gamma_diff: pole at non-positive integer");
  check_range(w, "log_gamma_diff");
  check_range(w + z, "log_gamma_diff");
  if (z == 0.0) return 0.0;
  Complex acc = 0.0;
  while (w.real() < kShift || (w + z).real() < kShift) {
    acc -= log1p(z / w);
    w += 1.0;
  }
  Complex l1 = log1p(z / w);
  acc += (w - 0.5) * l1 + z * std::log(w + z) - z;
  Complex wi = 1.0 / w, w2 = wi * wi, wpow = wi;
  for (std::size_t k = 1; k <= 10; ++k) {
    double m = double(2 * k - 1);
    acc += kBernoulli[k - 1] / double(2 * k * (2 * k - 1)) * wpow * expm1(-m * l1);
    wpow *= w2;
  }
  return ensure_finite(acc, "log_gamma_diff");
}

double binet_kernel(double s) {
  if (s < 1e-3) {
    double s2 = s * s;
    return 1.0 / 12.0 - s2 / 720.0 + s2 * s2 / 30240.0;
  }
  return (0.5 - 1.0 / s + 1.0 / std::expm1(s)) / s;
}

Complex binet_log_gamma(Complex z, const QuadratureSpec& q) {
  if (!(z.real() > 0.0)) throw DomainError("binet_log_gamma: requires Re z > 0");
  QuadratureSpec qq = q;
  qq.decay_hint = std::min(z.real(), 1.0);
  Complex integral = semiinf_integral(
      [z](double s) { return binet_kernel(s) * (std::exp(-s * z) - std::exp(-s)); }, qq);
  return ensure_finite((z - 0.5) * std::log(z) - z + 1.0 + integral, "binet_log_gamma");
}

Complex digamma(Complex z) {
  check_range(z, "digamma");
  if (is_nonpositive_integer(z)) throw PoleError("digamma: pole at non-positive integer");
  Complex acc = 0.0;
  while (z.real() < kShift) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  Complex zi = 1.0 / z, z2 = zi * zi, term = z2, sum = 0.0;
  for (std::size_t k = 1; k <= 10; ++k) {
    sum += kBernoulli[k - 1] / double(2 * k) * term;
    term *= z2;
  }
  return ensure_finite(acc + std::log(z) - 0.5 * zi - sum, "digamma");
}

double digamma(double x) { return digamma(Complex(x)).real(); }

Complex trigamma(Complex z) {
  check_range(z, "trigamma");
  if (is_nonpositive_integer(z)) throw PoleError("trigamma: pole at non-positive integer");
  Complex acc = 0.0;
  while (z.real() < kShift) {
    acc += 1.0 / (z * z);
    z += 1.0;
  }
  Complex zi = 1.0 / z, z2 = zi * zi, term = z2 * zi, sum = 0.0;
  for (std::size_t k = 1; k <= 10; ++k) {
    sum += kBernoulli[k - 1] * term;
    term *= z2;
  }
  return ensure_finite(acc + zi + 0.5 * z2 + sum, "trigamma");
}

double trigamma(double x) { return trigamma(Complex(x)).real(); }

namespace {

// log G(1 + w) for |w| large away from the negative axis.
Complex log_barnes_asymptotic(Complex w) {
  Complex lw = std::log(w);
  Complex val = (0.5 * w * w - 1.0 / 12.0) * lw - 0.75 * w * w + w * (0.5 * std::log(2.0 * pi)) +
                kZetaPrimeMinus1;
  Complex wi2 = 1.0 / (w * w), term = wi2;
  for (std::size_t k = 1; k <= 10; ++k) {
    val += kBernoulli[k] / double(4 * k * (k + 1)) * term;
    term *= wi2;
  }
  return val;
}

}  // namespace

Complex log_barnes_g(Complex z, const QuadratureSpec& q) {
  check_range(z, "log_barnes_g");
  if (is_nonpositive_integer(z + 1.0)) throw PoleError("log_barnes_g: G vanishes at z + 1 in {0, -1, ...}");
  Complex acc = 0.0;
  // G(z + 1) = G(z + 2) / Gamma(z + 1).
  while (z.real() <= 0.5) {
    acc -= log_gamma(z + 1.0);
    z += 1.0;
  }
  if (std::abs(z) >= kBarnesAsymptotic) return ensure_finite(acc + log_barnes_asymptotic(z), "log_barnes_g");
  if (z == 1.0 || z == 2.0) return acc;
  QuadratureSpec qq = q;
  qq.decay_hint = 2.0 * pi;
  Complex z2 = z * z;
  Complex integral = semiinf_integral(
      [z2](double s) { return s * log1p(z2 / (s * s)) / std::expm1(2.0 * pi * s); }, qq);
  Complex val = 0.5 * z2 * std::log(z) - 0.75 * z2 + 0.5 * z * std::log(2.0 * pi) - integral;
  return ensure_finite(acc + val, "log_barnes_g");
}

Complex log_barnes_ratio(double N, Complex z) {
  if (!(N > -1.0)) throw DomainError("log_barnes_ratio: requires N > -1");
  if (z == 0.0) return 0.0;
  Complex acc = 0.0;
  double W = N;
  while (W < kBarnesRatioShift || (W + z).real() < kBarnesRatioShift) {
    acc -= log_gamma_diff(W + 1.0, z);
    W += 1.0;
  }
  // F(W + z) - F(W) with F(w) = log G(1 + w) asymptotic, in difference form.
  Complex u = z / W, lam = log1p(u);
  double lw = std::log(W);
  Complex wz = W + z;
  Complex val = (W * z + 0.5 * z * z) * lw + (0.5 * wz * wz - 1.0 / 12.0) * lam -
                0.75 * (2.0 * W * z + z * z) + 0.5 * z * std::log(2.0 * pi);
  double wi2 = 1.0 / (W * W), term = wi2;
  for (std::size_t k = 1; k <= 10; ++k) {
    val += kBernoulli[k] / double(4 * k * (k + 1)) * term * expm1(-2.0 * double(k) * lam);
    term *= wi2;
  }
  return ensure_finite(acc + val, "log_barnes_ratio");
}

Complex abel_plana_sum(const AnalyticFunction& f, int n, const QuadratureSpec& q) {
  if (n < 0) throw DomainError("abel_plana_sum: n must be non-negative");
  if (n == 0) return 0.0;
  const double dn = n;
  Complex real_part = integrate([&f](double s) { return f(Complex(s)); }, 0.0, dn, q);
  QuadratureSpec qq = q;
  qq.decay_hint = 2.0 * pi;
  auto side = [&f, &qq](double x0) {
    return semiinf_integral(
        [&f, x0](double s) {
          return (f(Complex(x0, s)) - f(Complex(x0, -s))) / std::expm1(2.0 * pi * s);
        },
        qq);
  };
  const Complex i(0.0, 1.0);
  Complex val = real_part + 0.5 * f(0.0) - 0.5 * f(dn) + i * side(0.0) - i * side(dn);
  return ensure_finite(val, "abel_plana_sum");
}

}  // namespace modgamma
