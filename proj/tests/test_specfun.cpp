#include <doctest.h>

#include <cmath>
#include <numbers>

#include "modgamma/errors.hpp"
#include "modgamma/specfun.hpp"

using namespace modgamma;
using std::numbers::pi;

namespace {

// Equality of complex logarithms up to multiples of 2 pi i.
double exp_level_gap(Complex a, Complex b) {
  Complex d = a - b;
  double im = std::remainder(d.imag(), 2.0 * pi);
  return std::abs(Complex(d.real(), im));
}

}  // namespace

TEST_CASE("log_gamma reference values") {
  CHECK(log_gamma(Complex(1.0)).real() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(log_gamma(Complex(0.5)).real() == doctest::Approx(0.5723649429247001).epsilon(1e-14));
  CHECK(log_gamma(Complex(5.0)).real() == doctest::Approx(std::log(24.0)).epsilon(1e-14));
  CHECK(log_gamma(0.1) == doctest::Approx(std::lgamma(0.1)).epsilon(1e-14));
  CHECK(log_gamma(123.456) == doctest::Approx(std::lgamma(123.456)).epsilon(1e-14));
  // Gamma(i) modulus: |Gamma(i)|^2 = pi / sinh(pi).
  CHECK(log_gamma(Complex(0.0, 1.0)).real() ==
        doctest::Approx(0.5 * std::log(pi / std::sinh(pi))).epsilon(1e-13));
}

TEST_CASE("log_gamma poles and range") {
  CHECK_THROWS_AS(log_gamma(Complex(0.0)), PoleError);
  CHECK_THROWS_AS(log_gamma(Complex(-3.0)), PoleError);
  CHECK_THROWS_AS(log_gamma(Complex(2e12, 0.0)), OverflowError);
  CHECK_NOTHROW(log_gamma(Complex(-2.5)));
}

TEST_CASE("log_gamma reflection and recurrence") {
  for (int i = 0; i < 100; ++i) {
    Complex z(0.5 + 19.5 * (i % 10) / 9.0, -10.0 + 20.0 * (i / 10) / 9.0);
    Complex a = log_gamma(z);
    CHECK(std::abs(log_gamma(std::conj(z)) - std::conj(a)) < 1e-12);
    Complex r = std::exp(log_gamma(z + 1.0) - a - std::log(z));
    CHECK(std::abs(r - 1.0) < 1e-10);
  }
}

TEST_CASE("log_gamma_diff matches direct differences") {
  for (Complex w : {Complex(0.3), Complex(2.5, 1.0), Complex(50.0), Complex(1e6)}) {
    for (Complex z : {Complex(0.25), Complex(1.0, -0.5), Complex(-0.2, 3.0)}) {
      Complex direct = log_gamma(w + z) - log_gamma(w);
      // The direct difference itself loses digits in proportion to |log Gamma(w)|.
      double tol = 1e-12 + 1e-15 * std::abs(log_gamma(w));
      CHECK(exp_level_gap(log_gamma_diff(w, z), direct) < tol);
    }
  }
}

TEST_CASE("binet oracle") {
  CHECK(std::abs(binet_log_gamma(1.0)) < 1e-13);
  CHECK(std::abs(binet_log_gamma(2.0)) < 1e-12);
  Complex z(3.0, 1.0);
  CHECK(std::abs(binet_log_gamma(z) - log_gamma(z)) < 1e-10);
  CHECK_THROWS_AS(binet_log_gamma(Complex(-0.5, 1.0)), DomainError);
}

TEST_CASE("binet kernel bounds") {
  CHECK(binet_kernel(0.0) == doctest::Approx(1.0 / 12.0));
  for (int i = 1; i <= 500; ++i) {
    double s = 0.1 * i;
    double k = s * binet_kernel(s) + 0.5;
    CHECK(k > 0.0);
    CHECK(k < 1.0);
  }
  // Taylor branch joins the closed form smoothly.
  CHECK(binet_kernel(0.999e-3) == doctest::Approx(binet_kernel(1.001e-3)).epsilon(1e-8));
}

TEST_CASE("digamma and trigamma") {
  CHECK(digamma(1.0) == doctest::Approx(-kEulerGamma).epsilon(1e-14));
  CHECK(digamma(2.0) == doctest::Approx(1.0 - kEulerGamma).epsilon(1e-14));
  CHECK(trigamma(1.0) == doctest::Approx(pi * pi / 6.0).epsilon(1e-14));
  CHECK(trigamma(0.5) == doctest::Approx(pi * pi / 2.0).epsilon(1e-14));
  CHECK_THROWS_AS(digamma(Complex(-1.0)), PoleError);
  Complex z(1.7, 0.9);
  double h = 1e-4;
  Complex fd1 = (log_gamma(z + h) - log_gamma(z - h)) / (2.0 * h);
  Complex fd2 = (log_gamma(z + h) - 2.0 * log_gamma(z) + log_gamma(z - h)) / (h * h);
  CHECK(std::abs(fd1 - digamma(z)) < 1e-6);
  CHECK(std::abs(fd2 - trigamma(z)) < 1e-5);
}

TEST_CASE("Barnes G values and functional equation") {
  CHECK(std::abs(log_barnes_g(1.0)) < 1e-14);
  CHECK(std::abs(log_barnes_g(3.0) - std::log(2.0)) < 1e-12);
  CHECK(std::abs(log_barnes_g(0.0)) < 1e-14);
  // G(5) = 1! 2! 3! = 12.
  CHECK(std::abs(log_barnes_g(4.0) - std::log(12.0)) < 1e-12);
  // G(1/2) = 0.603244281209446...
  CHECK(std::abs(log_barnes_g(-0.5) - std::log(0.6032442812094462)) < 1e-12);
  CHECK_THROWS_AS(log_barnes_g(Complex(-2.0)), PoleError);
  for (Complex z : {Complex(2.5), Complex(0.7, 0.4), Complex(6.0, -3.0), Complex(25.0, 2.0), Complex(-1.3, 0.2)}) {
    Complex gap = log_barnes_g(z) - log_barnes_g(z - 1.0) - log_gamma(z);
    CHECK(exp_level_gap(gap, 0.0) < 1e-10);
    CHECK(std::abs(log_barnes_g(std::conj(z)) - std::conj(log_barnes_g(z))) < 1e-12);
  }
}

TEST_CASE("Barnes G derivative formula") {
  // d/dz log G(z) = (z - 1) psi(z) - z + 1/2 log(2 pi) + 1/2; log_barnes_g(z - 1) = log G(z).
  for (double x : {1.5, 2.5, 4.0, 7.3}) {
    double h = 1e-5;
    double fd = (log_barnes_g(x - 1.0 + h) - log_barnes_g(x - 1.0 - h)).real() / (2.0 * h);
    double expected = (x - 1.0) * digamma(x) - x + 0.5 * std::log(2.0 * pi) + 0.5;
    CHECK(fd == doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("Barnes ratio for large N") {
  for (double N : {0.0, 3.5, 40.0, 100.0}) {
    for (Complex z : {Complex(1.0), Complex(0.5, 0.5), Complex(-0.4, 2.0)}) {
      Complex direct = log_barnes_g(N + z) - log_barnes_g(N);
      CHECK(exp_level_gap(log_barnes_ratio(N, z), direct) < 1e-9);
    }
  }
  // Integer steps telescope into log Gamma sums.
  double N = 1e6;
  Complex one = log_barnes_ratio(N, 1.0);
  CHECK(one.real() == doctest::Approx(log_gamma(N + 1.0)).epsilon(1e-14));
}

TEST_CASE("Abel-Plana summation") {
  QuadratureSpec q;
  CHECK(std::abs(abel_plana_sum([](Complex) { return Complex(3.0); }, 4, q) - 12.0) < 1e-12);
  CHECK(std::abs(abel_plana_sum([](Complex s) { return s; }, 5, q) - 10.0) < 1e-12);
  double expected = 1.0 + std::exp(-1.0) + std::exp(-2.0);
  CHECK(std::abs(abel_plana_sum([](Complex s) { return std::exp(-s); }, 3, q) - expected) < 1e-10);
  for (int n : {5, 20, 100}) {
    double a = 0.7, direct = 0.0;
    for (int k = 0; k < n; ++k) direct += 1.0 / ((k + a) * (k + a));
    Complex v = abel_plana_sum([a](Complex s) { return 1.0 / ((s + a) * (s + a)); }, n, q);
    CHECK(std::abs(v - direct) < 1e-9);
  }
}

TEST_CASE("semi-infinite quadrature") {
  QuadratureSpec q;
  CHECK(std::abs(semiinf_integral([](double s) { return Complex(std::exp(-s)); }, q) - 1.0) < 1e-12);
  CHECK(std::abs(semiinf_integral([](double s) { return Complex(s * std::exp(-s)); }, q) - 1.0) < 1e-12);
  // Log singularity at the origin: int_0^inf log(s) e^{-s} ds = -gamma.
  CHECK(std::abs(semiinf_integral([](double s) { return Complex(std::log(s) * std::exp(-s)); }, q) +
                 kEulerGamma) < 1e-11);
  auto binet_like = [](double s) { return Complex(binet_kernel(s) * std::expm1(-s) / std::expm1(s)); };
  Complex coarse = semiinf_integral(binet_like, q);
  Complex fine = semiinf_integral(binet_like, q.tightened(0.5));
  CHECK(std::abs(coarse - fine) < q.abs_tol);
  QuadratureSpec bad;
  bad.abs_tol = -1.0;
  CHECK_THROWS_AS(semiinf_integral(binet_like, bad), DomainError);
  CHECK_THROWS_AS(semiinf_integral([](double) { return Complex(1.0); }, q), NonDecayError);
}
