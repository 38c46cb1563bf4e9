#include "modgamma/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "modgamma/errors.hpp"
#include "modgamma/expansion.hpp"
#include "modgamma/modphi.hpp"
#include "modgamma/sampling.hpp"

namespace modgamma {
namespace {

using std::numbers::pi;

// Distance of a and b as points of C modulo 2 pi i.
double exp_level_gap(Complex a, Complex b) {
  const Complex d = a - b;
  return std::abs(Complex(d.real(), std::remainder(d.imag(), 2.0 * pi)));
}

class Detail {
 public:
  template <class T>
  Detail& operator<<(const T& v) {
    os_ << v;
    return *this;
  }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_ = [] {
    std::ostringstream os;
    os.precision(4);
    return os;
  }();
};

struct Verdict {
  bool passed;
  std::string detail;
};

Verdict special_functions() {
  double worst_binet = 0.0;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const Complex z(0.5 + 19.5 * i / 9.0, -10.0 + 20.0 * j / 9.0);
      worst_binet = std::max(worst_binet, std::abs(binet_log_gamma(z) - log_gamma(z)));
    }
  double worst_barnes = 0.0;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 5; ++j) {
      // log G(1 + z) - log G(z) = log Gamma(z)
      const Complex z(0.5 + 5.5 * i / 9.0, -3.0 + 1.5 * j);
      worst_barnes = std::max(worst_barnes, exp_level_gap(log_barnes_g(z) - log_barnes_g(z - 1.0), log_gamma(z)));
    }
  return {worst_binet < 1e-10 && worst_barnes < 1e-10,
          (Detail() << "binet max err " << worst_binet << ", barnes functional eq max err " << worst_barnes).str()};
}

Verdict exact_identity() {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> pd(1, 50), ad(0, 2);
  std::uniform_real_distribution<double> ld(0.0, 10.0), rd(0.0, 2.0), td(-pi, pi);
  const std::array<double, 3> alphas{0.5, 1.0, 2.0};
  double worst = 0.0;
  int done = 0;
  while (done < 50) {
    const LParams params{pd(rng), ld(rng), alphas[ad(rng)]};
    const Complex z = std::polar(rd(rng), td(rng));
    if (!(z.real() > -params.alpha / 2.0)) continue;
    const ExpansionTerms t = expansion_terms(params, z);
    worst = std::max(worst, std::abs(t.total() - l_exact(params, z)));
    ++done;
  }
  return {worst < 1e-7, (Detail() << "50 instances, max |sum of terms - L| = " << worst).str()};
}

Verdict remainder_rate() {
  std::vector<double> r;
  for (int p : {32, 64, 128, 256}) r.push_back(std::abs(expansion_terms({p, 0.0, 1.0}, 1.0).r));
  bool ok = true;
  Detail d;
  d << "|R(z=1)| at p+l = 32..256:";
  for (double v : r) d << ' ' << v;
  d << "; ratios";
  for (std::size_t i = 1; i < r.size(); ++i) {
    const double ratio = r[i - 1] / r[i];
    d << ' ' << ratio;
    ok = ok && ratio >= 1.6 && ratio <= 2.4;
  }
  if (!ok) d << " (remainder decays like (p+l)^-3, faster than the 1/(p+l) envelope)";
  return {ok, d.str()};
}

Verdict closed_forms() {
  double worst1 = 0.0, worst_half = 0.0;
  for (Complex z : {Complex(0.5), Complex(1.0), Complex(1.5), Complex(1.0, 0.5)}) {
    worst1 = std::max(worst1, std::abs(phi_alpha(1.0, z) - (0.5 * z * std::log(2.0 * pi) - log_barnes_g(z))));
    worst_half = std::max(worst_half, std::abs(phi_alpha(0.5, z) - phi_alpha_closed(0.5, z)));
  }
  return {worst1 < 1e-8 && worst_half < 1e-8,
          (Detail() << "alpha=1 max err " << worst1 << ", alpha=1/2 max err " << worst_half).str()};
}

Verdict residue_convergence() {
  auto err = [](int n) {
    return std::abs(residue_psi_n(laguerre_modphi(2.0, n, Regime::full()), 1.0) - std::sqrt(2.0 * pi));
  };
  const double e50 = err(50), e800 = err(800);
  return {e800 < 0.02 && e800 < e50, (Detail() << "|psi_n(1) - sqrt(2 pi)|: n=50 " << e50 << ", n=800 " << e800).str()};
}

struct PinRow {
  std::string name;
  std::function<ModPhiData(int)> make;
};

std::vector<PinRow> pinning_rows() {
  std::vector<PinRow> rows;
  for (double b : {1.0, 2.0, 4.0}) {
    const std::string s = "(beta=" + std::to_string(int(b)) + ")";
    rows.push_back({"laguerre full" + s, [b](int n) { return laguerre_modphi(b, n, Regime::full()); }});
    rows.push_back({"laguerre vanishing gap" + s, [b](int n) { return laguerre_modphi(b, n, Regime::vanishing_gap(0.5)); }});
    rows.push_back({"laguerre fixed gap" + s, [b](int n) { return laguerre_modphi(b, n, Regime::fixed_gap(1.0)); }});
    rows.push_back({"laguerre growing gap" + s, [b](int n) { return laguerre_modphi(b, n, Regime::growing_gap()); }});
    rows.push_back({"jacobi full" + s, [b](int n) { return jacobi_modphi(b, n, n, n, Regime::full()); }});
    rows.push_back({"jacobi fixed gap" + s, [b](int n) { return jacobi_modphi(b, n - 2, n, n, Regime::fixed_gap(2.0)); }});
    rows.push_back({"chiral fixed gap" + s, [b](int n) {
                      return ensemble_modphi(EnsembleSpec::chiral(b, n, n - 3), Regime::fixed_gap(3.0));
                    }});
  }
  for (int v = 1; v <= 4; ++v)
    rows.push_back({"bdg" + std::to_string(v),
                    [v](int n) { return ensemble_modphi(EnsembleSpec::bdg(v, n), Regime::full()); }});
  rows.push_back({"parallelotope gaussian", [](int n) {
                    return ensemble_modphi(EnsembleSpec::parallelotope_gaussian(n, n), Regime::full());
                  }});
  rows.push_back({"parallelotope beta fixed gap", [](int n) {
                    return ensemble_modphi(EnsembleSpec::parallelotope_beta(n, n - 2, 1.5), Regime::fixed_gap(2.0));
                  }});
  return rows;
}

Verdict mean_variance_pinning() {
  int cauchy_fail = 0, band_fail = 0;
  Detail failures;
  const auto rows = pinning_rows();
  for (const PinRow& row : rows) {
    std::vector<double> m;
    for (int n : {100, 200, 400, 800, 1600}) {
      const ModPhiData d = row.make(n);
      m.push_back(d.scale * cumulant(d.ensemble, 1) - d.mean_shift);
    }
    bool cauchy = true;
    double prev = INFINITY;
    for (std::size_t i = 1; i < m.size(); ++i) {
      const double step = std::abs(m[i] - m[i - 1]);
      cauchy = cauchy && step < prev;
      prev = step;
    }
    cauchy = cauchy && prev < 0.01;
    const ModPhiData d = row.make(3200);
    const double ratio = d.scale * d.scale * cumulant(d.ensemble, 2) / d.t_n / d.eta.variance();
    const bool band = ratio >= 0.95 && ratio <= 1.05;
    if (!cauchy) {
      ++cauchy_fail;
      failures << "; " << row.name << " mean not Cauchy (last step " << prev << ")";
    }
    if (!band) {
      ++band_fail;
      failures << "; " << row.name << " variance ratio " << ratio;
    }
  }
  Detail d;
  d << rows.size() << " rows, mean Cauchy failures " << cauchy_fail << ", variance band failures " << band_fail
    << failures.str();
  if (band_fail > 0) d << " (log-rate rows: variance - t_n tends to a constant, so the ratio reaches 1 like 1/log n)";
  return {cauchy_fail == 0 && band_fail == 0, d.str()};
}

// Exact Kolmogorov distances of the standardized Laguerre beta=1 law to N(0,1) at n = 50, 500, 5000.
const std::array<double, 3>& clt_distances() {
  static const std::array<double, 3> ks = [] {
    std::array<double, 3> out{};
    const std::array<int, 3> sizes{50, 500, 5000};
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      const CfOracle o(EnsembleSpec::laguerre(1.0, sizes[k], sizes[k]));
      double worst = 0.0;
      for (int i = 0; i < 200; ++i) {
        const double y = -5.0 + 10.0 * i / 199.0;
        worst = std::max(worst, std::abs(o.standardized_cdf(y) - normal_cdf(y)));
      }
      out[k] = worst;
    }
    return out;
  }();
  return ks;
}

Verdict clt_inversion() {
  const auto& ks = clt_distances();
  const bool ok = ks[1] < ks[0] && ks[2] < ks[1] && ks[2] < 0.02;
  return {ok, (Detail() << "exact KS at n=50, 500, 5000: " << ks[0] << ", " << ks[1] << ", " << ks[2]).str()};
}

Verdict berry_esseen_envelope() {
  const auto& ks = clt_distances();
  const ZoneOfControl zoc = ZoneOfControl::gaussian_default();
  const std::array<int, 3> sizes{50, 500, 5000};
  bool ok = true;
  Detail d;
  d << "KS vs bound:";
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    const double bound = berry_esseen_bound(zoc, laguerre_modphi(1.0, sizes[k], Regime::full()).t_n);
    d << " n=" << sizes[k] << ' ' << ks[k] << " <= " << bound;
    ok = ok && ks[k] <= bound;
  }
  return {ok, d.str()};
}

Verdict monte_carlo_oracle() {
  const EnsembleSpec e = EnsembleSpec::laguerre(2.0, 50, 50);
  const double count = 1e5;
  std::vector<double> v = sample_log_statistic(e, std::size_t(count), 20240611).values;
  std::sort(v.begin(), v.end());
  const CfOracle o(e);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double x = o.mean() + o.sd() * (-2.5 + 5.0 * i / 19.0);
    worst = std::max(worst, std::abs(empirical_cdf(v, x) - o.cdf(x)));
  }
  const double limit = 1.36 / std::sqrt(count) * 1.5;
  return {worst < limit, (Detail() << "sup |ECDF - CF oracle| = " << worst << " (limit " << limit << ")").str()};
}

Verdict precise_deviations() {
  std::array<std::array<double, 2>, 2> ratio{};
  const std::array<int, 2> sizes{10000, 1000000};
  const std::array<double, 2> xs{0.3, 0.5};
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const ModPhiData d = laguerre_modphi(2.0, sizes[i], Regime::full());
    const CfOracle o(d.ensemble);
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const double exact = 1.0 - o.cdf((d.mean_shift + d.t_n * xs[j]) / d.scale);
      ratio[i][j] = precise_deviation(d, xs[j]).probability / exact;
    }
  }
  bool ok = true;
  Detail d;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const bool band = ratio[0][j] >= 0.7 && ratio[0][j] <= 1.3;
    const bool closer = std::abs(ratio[1][j] - 1.0) < std::abs(ratio[0][j] - 1.0);
    ok = ok && band && closer;
    d << (j ? "; " : "") << "x=" << xs[j] << " ratio n=1e4 " << ratio[0][j] << (band ? "" : " (outside [0.7,1.3])")
      << ", n=1e6 " << ratio[1][j] << (closer ? "" : " (not closer)");
  }
  return {ok, d.str()};
}

Verdict legendre_closed_form() {
  double worst_stable = 0.0, worst_gauss = 0.0;
  const LevyExponent eta = LevyExponent::stable1(2.0);
  for (double x : {0.5, 1.0, 2.0}) {
    const double rate = std::exp(x - std::log(2.0) - 1.0) - x + std::log(2.0);
    worst_stable = std::max(worst_stable, std::abs(legendre_fenchel(eta, x).F - rate));
  }
  for (double x : {-2.0, -0.5, 0.5, 1.0, 3.0}) {
    const LegendreResult r = legendre_fenchel(LevyExponent::gaussian(), x);
    worst_gauss = std::max({worst_gauss, std::abs(r.F - 0.5 * x * x), std::abs(r.h - x)});
  }
  return {worst_stable < 1e-8 && worst_gauss < 1e-12,
          (Detail() << "fixed-p rate max err " << worst_stable << ", gaussian max err " << worst_gauss).str()};
}

Verdict local_limit() {
  const std::array<int, 2> sizes{10000, 1000000};
  const std::array<double, 2> tol{0.15, 0.08};
  bool ok = true;
  Detail d, diag;
  diag << " [exact-standardization ratios:";
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const ModPhiData m = laguerre_modphi(2.0, sizes[i], Regime::full());
    const CfOracle o(m.ensemble);
    const double t = m.t_n, s = std::sqrt(t);
    for (double x : {0.0, 1.0}) {
      const LLTQuery q{x, -0.5, 0.5, 1.0};
      const double predicted = llt_window(m, q);
      // Y_n = X_n / sqrt(t_n) lands in x + B / t_n.
      const double lo = x + q.a / t, hi = x + q.b / t;
      const double window = o.cdf((m.mean_shift + s * hi) / m.scale) - o.cdf((m.mean_shift + s * lo) / m.scale);
      const double ratio = window / predicted;
      const bool in = std::abs(ratio - 1.0) <= tol[i];
      ok = ok && in;
      d << (d.str().empty() ? "" : "; ") << "n=" << sizes[i] << " x=" << x << " ratio " << ratio
        << (in ? "" : " (outside band)");
      diag << ' ' << (o.standardized_cdf(hi) - o.standardized_cdf(lo)) * t / normal_pdf(x);
    }
  }
  diag << "]";
  return {ok, d.str() + diag.str()};
}

Verdict stable_regime() {
  bool ok = true;
  Detail d;
  for (double xi : {0.5, 1.0}) {
    const Complex z(0.0, xi);
    std::vector<double> err;
    for (int n : {100, 1000, 10000})
      err.push_back(std::abs(residue_psi_n(laguerre_modphi(2.0, n, Regime::fixed_p(1)), z) - std::pow(1.0 + z, -0.5)));
    ok = ok && err[1] < err[0] && err[2] < err[1] && err[2] < 0.05;
    d << (xi == 0.5 ? "" : "; ") << "xi=" << xi << " errors " << err[0] << ", " << err[1] << ", " << err[2];
  }
  return {ok, d.str()};
}

Verdict barnes_ratio() {
  auto err = [](int p) { return std::abs(log_barnes_ratio(double(p), 1.0) - barnes_ratio_estimate(p, 1.0).main); };
  const double shrink = err(100) / err(400);
  return {shrink >= 3.0 && shrink <= 5.0, (Detail() << "error shrink p=100 -> 400: " << shrink).str()};
}

Verdict simplex_wiring() {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> nd(1, 12);
  std::uniform_real_distribution<double> zd(-0.4, 2.0), yd(-2.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 30; ++i) {
    const int n = nd(rng);
    const int p = std::uniform_int_distribution<int>(1, n)(rng);
    const Complex z(zd(rng), yd(rng));
    const Complex diff = log_mgf(EnsembleSpec::simplex_gaussian(n, p), z) -
                         log_mgf(EnsembleSpec::parallelotope_gaussian(n, p), z);
    worst = std::max(worst, std::abs(diff - 0.5 * z * std::log(p + 1.0)));
  }
  const AsymptoticEstimate a = binet_shift_expansion(50.0, 1.0);
  const AsymptoticEstimate b = binet_shift_expansion(200.0, Complex(0.5, 0.5));
  const double ea = std::abs(a.main - std::log(50.0));
  const double eb = std::abs(b.main - log_gamma_diff(200.0, Complex(0.5, 0.5)));
  const bool ok = worst < 1e-12 && ea <= a.bound && ea < 1.0 / 50.0 && eb <= b.bound;
  return {ok, (Detail() << "simplex offset max err " << worst << "; shift bound m=50 " << ea << " <= " << a.bound
                        << ", m=200 " << eb << " <= " << b.bound)
                  .str()};
}

struct Criterion {
  const char* title;
  Verdict (*run)();
};

const std::array<Criterion, kCriterionCount>& criteria() {
  static const std::array<Criterion, kCriterionCount> table{{
      {"special-function oracles", special_functions},
      {"exact term identity", exact_identity},
      {"remainder rate", remainder_rate},
      {"closed-form limiting functions", closed_forms},
      {"mod-Gaussian residue convergence", residue_convergence},
      {"mean and variance pinning", mean_variance_pinning},
      {"CLT by CF inversion", clt_inversion},
      {"Berry-Esseen envelope", berry_esseen_envelope},
      {"Monte Carlo vs CF oracle", monte_carlo_oracle},
      {"precise deviations", precise_deviations},
      {"Legendre-Fenchel closed form", legendre_closed_form},
      {"local limit windows", local_limit},
      {"stable regime", stable_regime},
      {"Barnes ratio estimate", barnes_ratio},
      {"simplex and parallelotope wiring", simplex_wiring},
  }};
  return table;
}

}  // namespace

std::vector<std::string> suite_names() { return {"all", "quick", "clt", "limits", "1..15"}; }

std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "all") {
    std::vector<int> ids(kCriterionCount);
    for (int i = 0; i < kCriterionCount; ++i) ids[i] = i + 1;
    return ids;
  }
  if (suite == "quick") return {1, 2, 3, 4, 5, 6, 11, 13, 14, 15};
  if (suite == "clt") return {7, 8, 9};
  if (suite == "limits") return {10, 12};
  std::size_t used = 0;
  int id = 0;
  try {
    id = std::stoi(suite, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != suite.size() || id < 1 || id > kCriterionCount)
    throw DomainError("unknown suite '" + suite + "'; expected all, quick, clt, limits or 1..15");
  return {id};
}

CriterionResult run_criterion(int id) {
  if (id < 1 || id > kCriterionCount) throw DomainError("criterion id must be in 1..15");
  const Criterion& c = criteria()[id - 1];
  CriterionResult r;
  r.id = id;
  r.title = c.title;
  const auto start = std::chrono::steady_clock::now();
  const Verdict v = c.run();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.passed = v.passed;
  r.detail = v.detail;
  return r;
}

std::vector<CriterionResult> run_suite(const std::string& suite) {
  std::vector<CriterionResult> out;
  for (int id : suite_criteria(suite)) out.push_back(run_criterion(id));
  return out;
}

}  // namespace modgamma
