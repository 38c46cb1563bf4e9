#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "modgamma/errors.hpp"
#include "modgamma/modphi.hpp"

using namespace modgamma;
using std::numbers::pi;

namespace {

ModPhiData plain_gaussian(double t_n) {
  ModPhiData d;
  d.eta = LevyExponent::gaussian();
  d.t_n = t_n;
  d.domain.lower = -std::numeric_limits<double>::infinity();
  d.domain.upper = std::numeric_limits<double>::infinity();
  d.regime_label = "plain";
  return d;
}

double stable1_rate(double beta, double x) {
  return std::exp(x - std::log(2.0) - 1.0) - beta / 2.0 * x + beta / 2.0 * std::log(beta);
}

}  // namespace

TEST_CASE("residue psi_n") {
  const ModPhiData d = laguerre_modphi(2.0, 400, Regime::full());
  CHECK(residue_psi_n(d, 0.0) == Complex(1.0));
  CHECK(std::abs(residue_psi_n(d, 1.0) - std::sqrt(2.0 * pi)) < 0.02);
  const Complex z(0.4, 0.9);
  CHECK(std::abs(residue_psi_n(d, std::conj(z)) - std::conj(residue_psi_n(d, z))) < 1e-12);
  CHECK_THROWS_AS(residue_psi_n(d, -2.0), DomainError);

  const ModPhiData s = laguerre_modphi(2.0, 100, Regime::fixed_p(1));
  CHECK_NOTHROW(residue_psi_n(s, Complex(0.0, 1.0)));
  CHECK_THROWS_AS(residue_psi_n(s, 0.5), DomainError);
  const LogMgf zero = [](Complex) { return Complex(0.0); };
  CHECK(std::abs(residue_psi_n(d, zero, 1.0) - std::exp(-d.t_n * 0.5)) < 1e-15);
}

TEST_CASE("extended CLT tail") {
  const ModPhiData d = laguerre_modphi(2.0, 1000, Regime::full());
  CHECK(extended_clt_tail(d, 0.0).probability == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(extended_clt_tail(d, 1.0).probability == doctest::Approx(0.1586552539).epsilon(1e-9));
  CHECK(extended_clt_tail(d, 2.0).probability == doctest::Approx(0.0227501319).epsilon(1e-9));
  CHECK(extended_clt_tail(d, 1.0).threshold == doctest::Approx(std::sqrt(d.t_n)));
  CHECK(extended_clt_tail(d, 1.0).in_normality_zone);
  const CltTail far = extended_clt_tail(d, 5.0);
  CHECK_FALSE(far.in_normality_zone);
  CHECK_FALSE(far.warning.empty());
  CHECK_THROWS_AS(extended_clt_tail(laguerre_modphi(2.0, 50, Regime::fixed_p(1)), 1.0), NonGaussianRegimeError);
}

TEST_CASE("Legendre-Fenchel of the Gaussian exponent") {
  const LevyExponent g = LevyExponent::gaussian();
  for (int i = 0; i <= 60; ++i) {
    const double x = -3.0 + 0.1 * i;
    const LegendreResult r = legendre_fenchel(g, x);
    CHECK(std::abs(r.F - 0.5 * x * x) < 1e-12);
    CHECK(std::abs(r.h - x) < 1e-12);
  }
  const LegendreResult half = legendre_fenchel(g, 0.5);
  CHECK(half.F == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(std::abs(legendre_fenchel(g, 0.0).F) < 1e-15);
}

TEST_CASE("Legendre-Fenchel of the fixed-p exponent matches the closed rate") {
  for (double beta : {1.0, 2.0, 4.0}) {
    const LevyExponent eta = LevyExponent::stable1(beta);
    for (double x : {0.5, 1.0, 2.0, -1.0}) {
      const LegendreResult r = legendre_fenchel(eta, x);
      CHECK(std::abs(r.F - stable1_rate(beta, x)) < 1e-8);
      CHECK(r.F >= 0.0);
      CHECK(std::abs(eta.derivative(r.h, 1) - x) < 1e-10);
    }
  }
}

TEST_CASE("conjugacy consistency") {
  const LevyExponent exps[] = {LevyExponent::gaussian(2.0), LevyExponent::stable1(2.0),
                               LevyExponent::stable1(1.0, 0.5, -0.3), LevyExponent::stable2(2.0, 1.0, 2.0),
                               LevyExponent::proportional(2.0, 0.4)};
  for (const LevyExponent& eta : exps) {
    CAPTURE(eta.describe());
    for (double h : {0.2, 0.7, 1.5}) {
      const double x = eta.derivative(h, 1);
      const LegendreResult r = legendre_fenchel(eta, x);
      CHECK(std::abs(r.F + eta(h).real() - h * x) < 1e-10);
      const double dx = 1e-3;
      const double f2 = (legendre_fenchel(eta, x + dx).F - 2.0 * r.F + legendre_fenchel(eta, x - dx).F) / (dx * dx);
      CHECK(std::abs(f2 - 1.0 / eta.derivative(h, 2)) < 1e-4 * std::max(1.0, 1.0 / eta.derivative(h, 2)));
    }
  }
}

TEST_CASE("Legendre-Fenchel range errors") {
  CHECK_THROWS_AS(legendre_fenchel(LevyExponent::stable2(2.0, 1.0, 1.0), 0.1), RangeError);
  const LevyExponent prop = LevyExponent::proportional(2.0, 0.5);
  const double edge = prop.derivative_range().first;
  CHECK_THROWS_AS(legendre_fenchel(prop, edge - 0.1), RangeError);
  CHECK_NOTHROW(legendre_fenchel(prop, edge + 0.1));
  CHECK_THROWS_AS(legendre_fenchel(LevyExponent::gaussian(), std::nan("")), RangeError);
}

TEST_CASE("proportional exponent reduces to the fixed-p exponent at c = 0") {
  const LevyExponent a = LevyExponent::proportional(2.0, 0.0), b = LevyExponent::stable1(2.0);
  for (Complex z : {Complex(0.3), Complex(-0.5), Complex(1.0, 2.0)}) CHECK(std::abs(a(z) - b(z)) < 1e-14);
  CHECK(std::abs(a(0.0)) < 1e-15);
  CHECK(std::abs(LevyExponent::proportional(1.0, 0.3)(0.0)) < 1e-15);
}

TEST_CASE("precise deviations") {
  const ModPhiData g = plain_gaussian(std::log(1e4));
  const DeviationResult r = precise_deviation(g, 1.0);
  CHECK(r.probability == doctest::Approx(std::exp(-0.5 * g.t_n) / std::sqrt(2.0 * pi * g.t_n)).epsilon(1e-12));
  CHECK(r.probability == doctest::Approx(0.001314).epsilon(1e-3));
  CHECK(r.h == doctest::Approx(1.0));
  CHECK(r.F == doctest::Approx(0.5));
  CHECK(r.threshold == doctest::Approx(g.t_n));
  CHECK_THROWS_AS(precise_deviation(g, 0.0), RangeError);

  const DeviationResult lo = precise_deviation(g, -1.0);
  CHECK(lo.lower_tail);
  CHECK(lo.probability == doctest::Approx(r.probability));

  const ModPhiData d = laguerre_modphi(2.0, 10000, Regime::full());
  const DeviationResult half = precise_deviation(d, 0.5);
  CHECK(half.probability ==
        doctest::Approx(std::exp(-0.125 * d.t_n) / (0.5 * std::sqrt(2.0 * pi * d.t_n)) *
                        std::exp(phi_alpha_closed(1.0, 0.5).real()))
            .epsilon(1e-12));
  double prev = std::numeric_limits<double>::infinity();
  for (double x = 0.1; x < 3.0; x += 0.1) {
    const double p = precise_deviation(d, x).probability;
    CHECK(p < prev);
    prev = p;
  }
  CHECK_THROWS_AS(precise_deviation(laguerre_modphi(2.0, 100, Regime::fixed_p(1)), 1.0), NonEvaluableLimitError);
  CHECK_THROWS_AS(precise_deviation(d, -1.5), RangeError);
}

TEST_CASE("Berry-Esseen bound") {
  ZoneOfControl z = ZoneOfControl::gaussian_default();
  const double c = 3.0 / (2.0 * pi) * (std::sqrt(pi) + 7.0 * std::sqrt(pi / 2.0));
  CHECK(c == doctest::Approx(5.0338).epsilon(1e-3));
  CHECK(berry_esseen_bound(z, 100.0) == doctest::Approx(0.5034).epsilon(1e-3));
  CHECK(berry_esseen_bound(z, 100.0) == doctest::Approx(c / 10.0).epsilon(1e-14));
  CHECK(berry_esseen_bound(z, 200.0) / berry_esseen_bound(z, 100.0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(berry_esseen_gaussian_constant(1.0, 2.0) ==
        doctest::Approx(3.0 / (2.0 * pi) * (2.0 + 7.0 * std::sqrt(pi / 2.0))).epsilon(1e-14));

  ZoneOfControl bad = z;
  bad.gamma = -0.6;
  CHECK_THROWS_AS(berry_esseen_bound(bad, 10.0), InvalidZoneError);
  bad = z;
  bad.D = 1.5;
  CHECK_THROWS_AS(berry_esseen_bound(bad, 10.0), InvalidZoneError);
  bad = z;
  bad.gamma = 0.5;
  CHECK_THROWS_AS(berry_esseen_bound(bad, 10.0), InvalidZoneError);
  bad = z;
  bad.w = 1.5;
  CHECK_THROWS_AS(berry_esseen_bound(bad, 10.0), InvalidZoneError);
  bad = z;
  bad.stable = StableLaw{1.0, 1.0, 0.0};
  bad.w = 1.0;
  CHECK_THROWS(berry_esseen_bound(bad, 10.0));
}

TEST_CASE("frozen K1 covers the zone of control") {
  const ZoneOfControl z = ZoneOfControl::gaussian_default();
  for (double beta : {1.0, 2.0, 4.0})
    for (int n : {20, 200, 2000}) {
      const double k = zone_constant_sweep(laguerre_modphi(beta, n, Regime::full()), z, 32);
      CHECK(k <= z.K1);
      CHECK(k > 0.5);
    }
}

TEST_CASE("local limit window") {
  ModPhiData g = plain_gaussian(10.0);
  CHECK(llt_window(g, {0.0, -1.0, 1.0, 1.0}) == doctest::Approx(0.0797885).epsilon(1e-6));
  CHECK(llt_window(g, {2.0, 0.0, 1.0, 1.0}) == doctest::Approx(0.00539910).epsilon(1e-5));
  CHECK(llt_window(g, {0.0, 0.3, 0.3, 1.0}) == 0.0);
  CHECK_THROWS_AS(llt_window(g, {0.0, -1.0, 1.0, 1.5}), ExponentRangeError);
  CHECK_THROWS_AS(llt_window(g, {0.0, -1.0, 1.0, 0.0}), ExponentRangeError);
  CHECK_THROWS_AS(llt_window(g, {0.0, 1.0, -1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(llt_window(laguerre_modphi(2.0, 50, Regime::fixed_p(1)), {}), UnsupportedRegimeError);
}

TEST_CASE("large deviation rates") {
  CHECK(ldp_rate(Regime::full(), 2.0, 1.0) == 0.5);
  CHECK(ldp_rate(Regime::fixed_gap(1.0), 2.0, 0.0) == 0.0);
  CHECK(std::abs(ldp_rate(Regime::fixed_p(1), 2.0, std::log(2.0) + 1.0)) < 1e-15);
  for (double x : {-1.0, 0.5, 2.0}) CHECK(ldp_rate(Regime::fixed_p(3), 4.0, x) > 0.0);
  const LevyExponent prop = LevyExponent::proportional(2.0, 0.3);
  const double x0 = prop.derivative(0.0, 1);
  CHECK(std::abs(ldp_rate(Regime::proportional(0.3), 2.0, x0)) < 1e-12);
  CHECK(ldp_rate(Regime::proportional(0.3), 2.0, x0 + 0.5) > 0.0);
}

TEST_CASE("stable normalization") {
  CHECK(stable_normalization(10.0, 25.0, StableLaw{}) == doctest::Approx(2.0));
  CHECK(stable_normalization(3.0, 7.0, StableLaw{0.8, 1.0, 0.0}) == doctest::Approx(3.0 / 7.0));
  CHECK(stable_normalization(0.0, std::exp(1.0), StableLaw{1.0, 1.0, -1.0}) == doctest::Approx(2.0 / pi));
  CHECK_THROWS_AS(stable_normalization(1.0, 1.0, StableLaw{1.0, 2.5, 0.0}), DomainError);
}

TEST_CASE("stable densities") {
  const StableLaw normal = StableLaw::standard_normal();
  CHECK(normal.density(0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * pi)));
  const StableLaw cauchy{1.0, 1.0, 0.0};
  for (double x : {0.0, 1.0, -2.5}) CHECK(cauchy.density(x) == doctest::Approx(1.0 / (pi * (1.0 + x * x))).epsilon(1e-8));
  const StableLaw wide{1.0, 2.0 - 1e-9, 0.0};
  CHECK(wide.density(0.5) == doctest::Approx(StableLaw{1.0, 2.0, 0.0}.density(0.5)).epsilon(1e-6));
}
