#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "modgamma/errors.hpp"
#include "modgamma/expansion.hpp"

using namespace modgamma;
using std::numbers::pi;

namespace {

double exp_level_gap(Complex a, Complex b) {
  Complex d = a - b;
  return std::abs(Complex(d.real(), std::remainder(d.imag(), 2.0 * pi)));
}

Complex psi_n(const ModPhiData& d, Complex z) { return std::exp(d.log_phi_n(z) - d.t_n * d.eta(z)); }

double centered_mean(const ModPhiData& d) { return d.scale * cumulant(d.ensemble, 1) - d.mean_shift; }

double variance_excess(const ModPhiData& d) {
  return d.scale * d.scale * cumulant(d.ensemble, 2) - d.t_n * d.eta.variance();
}

using Family = std::function<ModPhiData(int)>;

struct Row {
  const char* name;
  Family make;
};

std::vector<Row> gaussian_rows() {
  std::vector<Row> rows;
  for (double b : {1.0, 2.0, 4.0}) {
    rows.push_back({"laguerre full", [b](int n) { return laguerre_modphi(b, n, Regime::full()); }});
    rows.push_back({"laguerre vanishing", [b](int n) { return laguerre_modphi(b, n, Regime::vanishing_gap(0.5)); }});
    rows.push_back({"laguerre fixed gap", [b](int n) { return laguerre_modphi(b, n, Regime::fixed_gap(1.0)); }});
    rows.push_back({"laguerre growing", [b](int n) { return laguerre_modphi(b, n, Regime::growing_gap()); }});
    rows.push_back({"jacobi full", [b](int n) { return jacobi_modphi(b, n, n, n, Regime::full()); }});
    rows.push_back({"jacobi fixed gap", [b](int n) { return jacobi_modphi(b, n - 2, n, n, Regime::fixed_gap(2.0)); }});
    rows.push_back({"chiral fixed gap", [b](int n) {
                      return ensemble_modphi(EnsembleSpec::chiral(b, n, n - 3), Regime::fixed_gap(3.0));
                    }});
    rows.push_back({"ginibre", [b](int n) { return ensemble_modphi(EnsembleSpec::ginibre(b, n), Regime::full()); }});
  }
  for (int v = 1; v <= 4; ++v)
    rows.push_back({"bdg", [v](int n) { return ensemble_modphi(EnsembleSpec::bdg(v, n), Regime::full()); }});
  rows.push_back({"gue", [](int n) { return ensemble_modphi(EnsembleSpec::gue(n), Regime::full()); }});
  rows.push_back({"fixed-trace gue odd",
                  [](int n) { return ensemble_modphi(EnsembleSpec::fixed_trace_gue(n + 1), Regime::full()); }});
  rows.push_back({"parallelotope gaussian", [](int n) {
                    return ensemble_modphi(EnsembleSpec::parallelotope_gaussian(n, n), Regime::full());
                  }});
  rows.push_back({"parallelotope beta gap", [](int n) {
                    return ensemble_modphi(EnsembleSpec::parallelotope_beta(n, n - 2, 1.5), Regime::fixed_gap(2.0));
                  }});
  rows.push_back({"simplex spherical", [](int n) {
                    return ensemble_modphi(EnsembleSpec::simplex_spherical(n, n), Regime::full());
                  }});
  rows.push_back({"simplex gaussian", [](int n) {
                    return ensemble_modphi(EnsembleSpec::simplex_gaussian(n, n), Regime::full());
                  }});
  return rows;
}

}  // namespace

TEST_CASE("expansion terms vanish at z = 0") {
  const ExpansionTerms t = expansion_terms({1, 0.0, 1.0}, 0.0);
  for (Complex v : {t.t1, t.t2, t.t3, t.t4, t.t5, t.r}) CHECK(std::abs(v) == 0.0);
  CHECK(std::abs(l_reconstruct({5, 0.0, 1.0}, 0.0)) == 0.0);
}

TEST_CASE("term sum reproduces l_exact") {
  struct Case {
    LParams params;
    Complex z;
  };
  for (const Case& c : {Case{{20, 3.0, 1.0}, 0.7}, Case{{7, 0.5, 2.0}, Complex(1.3, 0.4)}}) {
    const Complex total = expansion_terms(c.params, c.z).total();
    CHECK(exp_level_gap(total, l_exact(c.params, c.z)) < 1e-8);
    CHECK(exp_level_gap(l_reconstruct(c.params, c.z), l_exact(c.params, c.z)) < 1e-8);
  }
}

TEST_CASE("term sum identity on random instances") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> pd(1, 50);
  std::uniform_real_distribution<double> ld(0.0, 10.0), rd(0.0, 2.0), td(0.0, 2.0 * pi);
  const double alphas[] = {0.5, 1.0, 2.0};
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    LParams params{pd(rng), ld(rng), alphas[i % 3]};
    Complex z;
    do {
      z = std::polar(rd(rng), td(rng));
    } while (!(z.real() > -params.alpha / 2.0));
    worst = std::max(worst, exp_level_gap(expansion_terms(params, z).total(), l_exact(params, z)));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("remainder is inside its envelope") {
  const ExpansionTerms t = expansion_terms({100, 0.0, 1.0}, 1.0);
  CHECK(std::abs(t.r) <= t.r_bound);
  CHECK(t.r_bound == doctest::Approx(0.05 * 2.0 / 100.0));

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pd(1, 60);
  std::uniform_real_distribution<double> ld(0.0, 5.0), rd(0.0, 2.0), td(0.0, 2.0 * pi);
  for (int i = 0; i < 40; ++i) {
    LParams params{pd(rng), ld(rng), (i % 2) ? 1.0 : 2.0};
    const Complex z = std::polar(rd(rng), td(rng));
    if (!(z.real() > -params.alpha / 2.0)) continue;
    const ExpansionTerms tt = expansion_terms(params, z);
    CHECK(std::abs(tt.r) <= tt.r_bound);
  }
}

TEST_CASE("remainder decays faster than 1/(p+l)") {
  // The quadrature shows |r| ~ 1/p^3 at z = 1: each doubling divides |r| by about 8.
  std::vector<double> r;
  for (int p : {32, 64, 128, 256}) r.push_back(std::abs(expansion_terms({p, 0.0, 1.0}, 1.0).r));
  CHECK(r[0] == doctest::Approx(3.69e-7).epsilon(0.01));
  for (size_t i = 1; i < r.size(); ++i) {
    const double ratio = r[i - 1] / r[i];
    CHECK(ratio > 7.0);
    CHECK(ratio < 8.5);
  }
  // Off the real axis the decay is 1/p^2.
  const Complex z(0.5, 1.0);
  const double ratio = std::abs(expansion_terms({64, 0.0, 1.0}, z).r) / std::abs(expansion_terms({128, 0.0, 1.0}, z).r);
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("window precondition is opt-in") {
  ExpansionOptions opts;
  opts.enforce_window = true;
  CHECK_THROWS_AS(expansion_terms({10, 0.0, 1.0}, 1.0, opts), DomainError);
  CHECK_NOTHROW(expansion_terms({10, 0.0, 1.0}, 0.1, opts));
  CHECK_NOTHROW(expansion_terms({10, 0.0, 1.0}, 1.0));
  CHECK_THROWS_AS(expansion_terms({10, 0.0, 1.0}, -1.5), DomainError);
}

TEST_CASE("phi_alpha integral form matches the Barnes closed forms") {
  CHECK(std::abs(phi_alpha(1.0, 0.0)) == 0.0);
  CHECK(phi_alpha(1.0, 1.0).real() == doctest::Approx(0.5 * std::log(2.0 * pi)).epsilon(1e-10));
  for (Complex z : {Complex(0.5), Complex(1.0), Complex(1.5), Complex(1.0, 0.5)}) {
    CHECK(std::abs(phi_alpha(1.0, z) - (0.5 * z * std::log(2.0 * pi) - log_barnes_g(z))) < 1e-8);
    CHECK(std::abs(phi_alpha(1.0, z) - phi_alpha_closed(1.0, z)) < 1e-8);
    CHECK(std::abs(phi_alpha(0.5, z) - phi_alpha_closed(0.5, z)) < 1e-8);
  }
  CHECK_THROWS_AS(phi_alpha_closed(2.0, 1.0), UnsupportedParameterError);
  CHECK_THROWS_AS(phi_alpha(1.0, -1.0), DomainError);
}

TEST_CASE("phi_alpha is the full-regime residue limit") {
  for (double alpha : {0.5, 1.0, 2.0}) {
    const double beta = 2.0 * alpha;
    for (Complex z : {Complex(0.5), Complex(1.0), Complex(1.0, 0.5)}) {
      std::vector<double> res;
      for (int n : {50, 100, 200, 400, 800}) {
        const Complex v = l_exact({n, 0.0, alpha}, z) - z * mu1_full(n, beta) - z * z / beta * std::log(double(n));
        res.push_back(std::abs(std::exp(v) - std::exp(phi_alpha(alpha, z))));
      }
      for (size_t i = 1; i < res.size(); ++i) CHECK(res[i] < res[i - 1]);
      CHECK(res.back() < 0.02);
    }
  }
}

TEST_CASE("phi_c representations agree") {
  CHECK(std::abs(phi_c(2.0, 1.0, 0.0)) == 0.0);
  for (double c : {0.0, 0.5, 1.0, 3.0})
    for (Complex z : {Complex(0.5), Complex(1.0), Complex(0.3, 0.8)})
      CHECK(std::abs(phi_c(2.0, c, z) - phi_c_barnes(c, z)) < 1e-8);
  // At c = 1, z = 1 the Barnes ratio is G(3)/G(2) = 1.
  CHECK(phi_c_barnes(1.0, 1.0).real() ==
        doctest::Approx(0.5 * std::log(2.0 * pi) - 1.0 + 0.5 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("phi_c is the fixed-gap residue limit") {
  struct Case {
    double beta, c;
    Complex z;
  };
  for (const Case& k : {Case{1.0, 2.0, 0.5}, Case{2.0, 1.0, 1.0}, Case{4.0, 0.5, Complex(0.5, 0.5)}}) {
    const Complex target = phi_c(k.beta, k.c, k.z);
    double prev = 1e300;
    for (int p : {100, 400, 1600}) {
      const Complex v = l_exact({p, k.c, k.beta / 2.0}, k.z) - k.z * mu2(p, k.c, k.beta) -
                        k.z * k.z / k.beta * std::log((p + 1.0 + k.c) / (1.0 + k.c));
      const double res = exp_level_gap(v, target);
      CHECK(res < prev);
      prev = res;
    }
    CHECK(prev < 5e-3);
  }
}

TEST_CASE("modphi data from the tabulated examples") {
  const ModPhiData full = laguerre_modphi(2.0, 100, Regime::full());
  CHECK(full.t_n == doctest::Approx(std::log(100.0)));
  CHECK(full.eta.is_gaussian());
  CHECK(std::abs(full.psi_limit(1.0) - std::exp(phi_alpha_closed(1.0, 1.0))) < 1e-12);

  CHECK(laguerre_modphi(2.0, 50, Regime::fixed_gap(1.0)).t_n == doctest::Approx(std::log(26.0)));

  const ModPhiData st = laguerre_modphi(2.0, 10, Regime::fixed_p(1));
  CHECK(st.t_n == doctest::Approx(10.0));
  CHECK(st.domain.kind == ConvergenceDomain::Kind::ImaginaryAxis);
  for (Complex z : {Complex(0.0, 0.5), Complex(0.0, 1.0), Complex(0.3)})
    CHECK(std::abs(st.psi_limit(z) - std::pow(1.0 + z, -0.5)) < 1e-14);
  const Complex w(0.0, 0.7);
  CHECK(std::abs(st.eta(w) - (-std::log(2.0) + (w + 1.0) * std::log(2.0) + (w + 1.0) * std::log(w + 1.0))) < 1e-14);

  CHECK(jacobi_modphi(2.0, 60, 60, 60, Regime::full()).t_n == doctest::Approx(std::log(30.0)));
  const ModPhiData js = jacobi_modphi(2.0, 1, 40, 40, Regime::fixed_p(1).with_proportional_sizes(1.0, 1.0));
  for (Complex z : {Complex(0.0, 0.5), Complex(0.4)})
    CHECK(std::abs(js.psi_limit(z) - std::pow(2.0 * (2.0 + 2.0 * z) / (4.0 + 2.0 * z), -0.5)) < 1e-14);

  CHECK(ensemble_modphi(EnsembleSpec::parallelotope_gaussian(100, 100), Regime::full()).t_n ==
        doctest::Approx(0.5 * std::log(100.0)));
  CHECK(ensemble_modphi(EnsembleSpec::bdg(1, 60), Regime::full()).t_n == doctest::Approx(std::log(61.0 / 2.0 + 1.0)));
}

TEST_CASE("exponent and limit are normalized at zero") {
  for (const Row& row : gaussian_rows()) {
    const ModPhiData d = row.make(120);
    CHECK(std::abs(d.eta(0.0)) == 0.0);
    CHECK(std::abs(d.psi_limit(0.0) - 1.0) < 1e-15);
    CHECK(d.t_n > 0.0);
    CHECK(d.t_n < row.make(240).t_n);
  }
  for (const ModPhiData& d : {laguerre_modphi(1.0, 50, Regime::fixed_p(3)),
                              jacobi_modphi(4.0, 2, 50, 100, Regime::fixed_p(2).with_proportional_sizes(1.0, 2.0)),
                              ensemble_modphi(EnsembleSpec::chiral(2.0, 50, 2), Regime::fixed_p(2)),
                              ensemble_modphi(EnsembleSpec::simplex_gaussian(50, 3), Regime::fixed_p(3))}) {
    CHECK(std::abs(d.eta(0.0)) < 1e-14);
    CHECK(std::abs(d.psi_limit(0.0) - 1.0) < 1e-15);
  }
}

TEST_CASE("centred means are Cauchy along a doubling grid") {
  for (const Row& row : gaussian_rows()) {
    CAPTURE(row.name);
    std::vector<double> m;
    for (int n : {100, 200, 400, 800, 1600}) m.push_back(centered_mean(row.make(n)));
    for (size_t i = 2; i < m.size(); ++i) CHECK(std::abs(m[i] - m[i - 1]) < std::abs(m[i - 1] - m[i - 2]) + 1e-12);
    CHECK(std::abs(m[4] - m[3]) < 0.01);
  }
}

TEST_CASE("variance minus t_n converges") {
  // The log-rate t_n leaves a bounded offset, so cumulant(e,2)/t_n approaches 1 only like 1/log n.
  for (const Row& row : gaussian_rows()) {
    CAPTURE(row.name);
    std::vector<double> v;
    for (int n : {200, 400, 800, 1600, 3200}) v.push_back(variance_excess(row.make(n)));
    for (size_t i = 2; i < v.size(); ++i) CHECK(std::abs(v[i] - v[i - 1]) < std::abs(v[i - 1] - v[i - 2]) + 1e-12);
    CHECK(std::abs(v[4] - v[3]) < 0.01);
  }
  // Growing gaps have t_n ~ (1/2) log n + O(1/sqrt n) and the ratio is near 1.
  const ModPhiData g = laguerre_modphi(2.0, 3200, Regime::growing_gap());
  CHECK(cumulant(g.ensemble, 2) / g.t_n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("finite-n residue tracks the limit") {
  for (const Row& row : gaussian_rows()) {
    CAPTURE(row.name);
    const ModPhiData a = row.make(200), b = row.make(1600);
    const Complex z(0.5, 0.25);
    const double ra = std::abs(psi_n(a, z) - a.psi_limit(z));
    const double rb = std::abs(psi_n(b, z) - b.psi_limit(z));
    CHECK(rb < ra + 1e-12);
    CHECK(rb < 0.01);
  }
}

TEST_CASE("stable regime converges on the imaginary axis") {
  for (double xi : {0.5, 1.0}) {
    const Complex z(0.0, xi);
    std::vector<double> err;
    for (int n : {100, 1000, 10000}) {
      const ModPhiData d = laguerre_modphi(2.0, n, Regime::fixed_p(1));
      err.push_back(std::abs(psi_n(d, z) - std::pow(1.0 + z, -0.5)));
    }
    CHECK(err[1] < err[0]);
    CHECK(err[2] < err[1]);
    CHECK(err[2] < 0.05);
  }
}

TEST_CASE("unsupported regimes are refused") {
  CHECK_THROWS_AS(laguerre_modphi(2.0, 100, Regime::proportional(0.5)), UnsupportedRegimeError);
  Regime wide = Regime::growing_gap(0.9);
  CHECK_THROWS_AS(laguerre_modphi(2.0, 100, wide), UnsupportedRegimeError);
  CHECK_THROWS_AS(jacobi_modphi(2.0, 1, 50, 50, Regime::fixed_p(1)), UnsupportedRegimeError);
  CHECK_THROWS_AS(ensemble_modphi(EnsembleSpec::parallelotope_beta_prime(20, 20, 3.0), Regime::full()),
                  UnsupportedRegimeError);
  CHECK_THROWS_AS(ensemble_modphi(EnsembleSpec::gue(20), Regime::fixed_p(1)), UnsupportedRegimeError);
  CHECK_THROWS_AS(ensemble_modphi(EnsembleSpec::chiral(2.0, 20, 10), Regime::full()), UnsupportedRegimeError);
  CHECK_THROWS_AS(Regime::growing_gap(1.5), DomainError);
}

TEST_CASE("Barnes ratio estimate") {
  const AsymptoticEstimate zero = barnes_ratio_estimate(100, 0.0);
  CHECK(std::abs(zero.main) == 0.0);
  auto err = [](int p, Complex z) {
    return std::abs(log_barnes_ratio(double(p), z) - barnes_ratio_estimate(p, z).main);
  };
  const AsymptoticEstimate e100 = barnes_ratio_estimate(100, 1.0);
  CHECK(err(100, 1.0) <= e100.bound);
  CHECK(err(100, 1.0) == doctest::Approx(1.0 / 1200.0).epsilon(0.05));
  const double shrink = err(100, 1.0) / err(400, 1.0);
  CHECK(shrink > 3.0);
  CHECK(shrink < 5.0);
  for (int p : {64, 100, 729, 4096})
    for (Complex z : {Complex(0.5), Complex(-0.4, 0.3), Complex(0.0, 1.0)})
      if (std::abs(z) <= 0.5 * std::pow(p, 1.0 / 6.0)) CHECK(err(p, z) <= barnes_ratio_estimate(p, z).bound);
  CHECK_THROWS_AS(barnes_ratio_estimate(10, 2.0), DomainError);
}

TEST_CASE("Binet shift expansion") {
  CHECK(std::abs(binet_shift_expansion(50.0, 0.0).main) == 0.0);
  const AsymptoticEstimate e = binet_shift_expansion(50.0, 1.0);
  CHECK(std::abs(e.main - std::log(50.0)) <= e.bound);
  CHECK(std::abs(e.main - std::log(50.0)) < 1.0 / 50.0);
  const Complex z(0.5, 0.5);
  const AsymptoticEstimate f = binet_shift_expansion(200.0, z);
  CHECK(std::abs(f.main - log_gamma_diff(200.0, z)) <= f.bound);
  for (double m : {5.0, 20.0, 80.0, 320.0})
    for (Complex w : {Complex(1.0), Complex(-1.0, 1.0), Complex(0.0, 2.0)})
      if (std::abs(w) <= m / 2.0) CHECK(std::abs(binet_shift_expansion(m, w).main - log_gamma_diff(m, w)) <=
                                        binet_shift_expansion(m, w).bound);
  CHECK_THROWS_AS(binet_shift_expansion(2.0, 3.0), DomainError);
}
