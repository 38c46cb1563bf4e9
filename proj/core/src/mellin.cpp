#include "modgamma/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "modgamma/errors.hpp"

namespace modgamma {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kFastPathMinP = 16;

// Neumaier compensated accumulator, applied to real and imaginary parts separately.
class CompensatedSum {
 public:
  void add(Complex v) {
    add_part(re_, cre_, v.real());
    add_part(im_, cim_, v.imag());
  }
  Complex value() const { return {re_ + cre_, im_ + cim_}; }

 private:
  static void add_part(double& s, double& c, double x) {
    double t = s + x;
    c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  double re_ = 0.0, cre_ = 0.0, im_ = 0.0, cim_ = 0.0;
};

bool close_to(double x, double target) { return std::abs(x - target) < 1e-15; }

// weight * L(params; scale * z)
struct LBlock {
  LParams params;
  double scale = 1.0;
  double weight = 1.0;
};

// weight * [log Gamma(a z + b) - log Gamma(b)]
struct GammaRatio {
  double a = 0.0;
  double b = 1.0;
  double weight = 1.0;
};

// log E[stat^z] = slope z + sum of blocks + sum of ratios.
struct MellinPlan {
  double slope = 0.0;
  std::vector<LBlock> blocks;
  std::vector<GammaRatio> ratios;

  void add_block(int p, double l, double alpha, double scale, double weight) {
    if (p > 0) blocks.push_back({LParams{p, l, alpha}, scale, weight});
  }

  std::pair<double, double> strip() const {
    double lo = -kInf, hi = kInf;
    for (const auto& b : blocks) lo = std::max(lo, b.params.boundary() / b.scale);
    for (const auto& r : ratios) {
      if (r.a > 0.0) lo = std::max(lo, -r.b / r.a);
      if (r.a < 0.0) hi = std::min(hi, -r.b / r.a);
    }
    return {lo, hi};
  }
};

double tenfold_l(double beta, double mu) { return (beta * mu / 2.0 + 0.5) / (beta / 2.0) - 1.0; }

void require(bool ok, const std::string& what) {
  if (!ok) throw UnsupportedParameterError(what);
}

void add_volume_core(MellinPlan& plan, const EnsembleSpec& e) {
  plan.add_block(e.p, double(e.n - e.p), 0.5, 0.5, 1.0);
  switch (e.kind) {
    case EnsembleKind::ParallelotopeGaussian:
    case EnsembleKind::SimplexGaussian:
      plan.slope += 0.5 * e.p * std::log(2.0);
      break;
    case EnsembleKind::ParallelotopeBeta:
    case EnsembleKind::ParallelotopeSpherical:
    case EnsembleKind::SimplexBeta:
    case EnsembleKind::SimplexSpherical:
      plan.ratios.push_back({0.5, 0.5 * (e.n + e.nu), -double(e.p)});
      break;
    case EnsembleKind::ParallelotopeBetaPrime:
    case EnsembleKind::SimplexBetaPrime:
      plan.ratios.push_back({-0.5, 0.5 * e.nu, double(e.p)});
      break;
    default:
      break;
  }
}

MellinPlan make_plan(const EnsembleSpec& e) {
  e.validate();
  MellinPlan plan;
  const double alpha = e.beta / 2.0;
  switch (e.kind) {
    case EnsembleKind::Laguerre:
      plan.slope = e.p * std::log(2.0);
      plan.add_block(e.p, e.gap ? *e.gap : double(e.n - e.p), alpha, 1.0, 1.0);
      break;
    case EnsembleKind::Jacobi:
      plan.add_block(e.p, double(e.n1 - e.p), alpha, 1.0, 1.0);
      plan.add_block(e.p, double(e.n1 + e.n2 - e.p), alpha, 1.0, -1.0);
      break;
    case EnsembleKind::Ginibre:
      plan.slope = 0.5 * e.n * std::log(2.0 / e.beta);
      plan.add_block(e.n, 0.0, alpha, 0.5, 1.0);
      break;
    case EnsembleKind::GUE:
    case EnsembleKind::FixedTraceGUE: {
      const int m = e.n / 2;
      if (e.kind == EnsembleKind::GUE) plan.slope = 0.5 * e.n * std::log(2.0);
      plan.ratios.push_back({0.5, 0.5, 1.0});
      plan.add_block(m, 0.5, 1.0, 0.5, 2.0);
      if (e.n % 2 == 0) plan.ratios.push_back({0.5, m + 0.5, -1.0});
      if (e.kind == EnsembleKind::FixedTraceGUE)
        for (int k = 1; k <= e.n; ++k) plan.ratios.push_back({0.5, 0.5 * e.n + double(k - 1) / e.n, -1.0});
      break;
    }
    case EnsembleKind::Chiral:
    case EnsembleKind::BdG1:
    case EnsembleKind::BdG2:
    case EnsembleKind::BdG3:
    case EnsembleKind::BdG4:
      plan.slope = 0.5 * e.p * std::log(2.0 / e.beta);
      plan.add_block(e.p, tenfold_l(e.beta, e.mu), alpha, 0.5, 1.0);
      break;
    case EnsembleKind::ParallelotopeGaussian:
    case EnsembleKind::ParallelotopeBeta:
    case EnsembleKind::ParallelotopeBetaPrime:
    case EnsembleKind::ParallelotopeSpherical:
      add_volume_core(plan, e);
      break;
    case EnsembleKind::SimplexGaussian:
      add_volume_core(plan, e);
      plan.slope += 0.5 * std::log(e.p + 1.0);
      break;
    case EnsembleKind::SimplexBeta:
    case EnsembleKind::SimplexSpherical: {
      add_volume_core(plan, e);
      const double m = 0.5 * (e.n + e.nu);
      const double big = 0.5 * (e.p * (e.n + e.nu - 2.0) + (e.n + e.nu));
      plan.ratios.push_back({0.5, m, -1.0});
      plan.ratios.push_back({0.5 * (e.p + 1), big, 1.0});
      plan.ratios.push_back({0.5 * e.p, big, -1.0});
      break;
    }
    case EnsembleKind::SimplexBetaPrime: {
      add_volume_core(plan, e);
      const double b = 0.5 * (e.p + 1) * e.nu;
      plan.ratios.push_back({-0.5, 0.5 * e.nu, 1.0});
      plan.ratios.push_back({-0.5 * e.p, b, 1.0});
      plan.ratios.push_back({-0.5 * (e.p + 1), b, -1.0});
      break;
    }
  }
  return plan;
}

Complex evaluate_plan(const MellinPlan& plan, Complex z) {
  CompensatedSum acc;
  acc.add(plan.slope * z);
  for (const auto& b : plan.blocks) acc.add(b.weight * l_exact(b.params, b.scale * z));
  for (const auto& r : plan.ratios) acc.add(r.weight * log_gamma_diff(Complex(r.b), r.a * z));
  return acc.value();
}

std::string format_strip(double lo, double hi) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << lo << ", " << hi << ")";
  return os.str();
}

}  // namespace

void LParams::validate() const {
  if (p < 1) throw DomainError("LParams: p must be a positive integer");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("LParams: alpha must be positive");
  if (!(l > -1.0) || !std::isfinite(l)) throw DomainError("LParams: l must exceed -1");
}

namespace {

void check_l_domain(const LParams& params, Complex z) {
  params.validate();
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("l_exact: z is not finite");
  if (!(z.real() > params.boundary())) {
    std::ostringstream os;
    os.precision(17);
    os << "l_exact: Re z = " << z.real() << " must exceed -alpha(1+l) = " << params.boundary();
    throw DomainError(os.str());
  }
}

}  // namespace

Complex l_direct(const LParams& params, Complex z) {
  check_l_domain(params, z);
  CompensatedSum acc;
  for (int k = 1; k <= params.p; ++k) acc.add(log_gamma_diff(Complex(params.alpha * (k + params.l)), z));
  return acc.value();
}

Complex l_exact(const LParams& params, Complex z) {
  check_l_domain(params, z);
  if (z == 0.0) return 0.0;
  const int p = params.p;
  const double l = params.l;
  if (p < kFastPathMinP) return l_direct(params, z);
  if (close_to(params.alpha, 1.0)) return log_barnes_ratio(p + l, z) - log_barnes_ratio(l, z);
  if (close_to(params.alpha, 0.5)) {
    // Even k = 2j give Gamma(j + l/2 + z); odd k = 2j - 1 give Gamma(j + (l-1)/2 + z).
    Complex even = p >= 2 ? l_exact(LParams{p / 2, 0.5 * l, 1.0}, z) : Complex(0.0);
    return even + l_exact(LParams{(p + 1) / 2, 0.5 * (l - 1.0), 1.0}, z);
  }
  if (close_to(params.alpha, 2.0)) {
    // Legendre duplication splits Gamma(2x) into Gamma(x) Gamma(x + 1/2).
    Complex w = 0.5 * z;
    return double(p) * z * std::log(2.0) + l_exact(LParams{p, l, 1.0}, w) +
           l_exact(LParams{p, l + 0.5, 1.0}, w);
  }
  return l_direct(params, z);
}

double l_mean(const LParams& params) {
  params.validate();
  double s = 0.0;
  for (int k = 1; k <= params.p; ++k) s += digamma(params.alpha * (k + params.l));
  return s;
}

double l_variance(const LParams& params) {
  params.validate();
  double s = 0.0;
  for (int k = params.p; k >= 1; --k) s += trigamma(params.alpha * (k + params.l));
  return s;
}

namespace {

const std::map<EnsembleKind, std::string>& kind_names() {
  static const std::map<EnsembleKind, std::string> names = {
      {EnsembleKind::Laguerre, "laguerre"},
      {EnsembleKind::Jacobi, "jacobi"},
      {EnsembleKind::Ginibre, "ginibre"},
      {EnsembleKind::GUE, "gue"},
      {EnsembleKind::FixedTraceGUE, "fixed-trace-gue"},
      {EnsembleKind::Chiral, "chiral"},
      {EnsembleKind::BdG1, "bdg1"},
      {EnsembleKind::BdG2, "bdg2"},
      {EnsembleKind::BdG3, "bdg3"},
      {EnsembleKind::BdG4, "bdg4"},
      {EnsembleKind::ParallelotopeGaussian, "parallelotope-gaussian"},
      {EnsembleKind::ParallelotopeBeta, "parallelotope-beta"},
      {EnsembleKind::ParallelotopeBetaPrime, "parallelotope-beta-prime"},
      {EnsembleKind::ParallelotopeSpherical, "parallelotope-spherical"},
      {EnsembleKind::SimplexGaussian, "simplex-gaussian"},
      {EnsembleKind::SimplexBeta, "simplex-beta"},
      {EnsembleKind::SimplexBetaPrime, "simplex-beta-prime"},
      {EnsembleKind::SimplexSpherical, "simplex-spherical"},
  };
  return names;
}

bool is_volume(EnsembleKind k) {
  return k >= EnsembleKind::ParallelotopeGaussian && k <= EnsembleKind::SimplexSpherical;
}

bool is_tenfold(EnsembleKind k) { return k >= EnsembleKind::Chiral && k <= EnsembleKind::BdG4; }

}  // namespace

std::string to_string(EnsembleKind kind) { return kind_names().at(kind); }

EnsembleKind ensemble_kind_from_string(const std::string& name) {
  for (const auto& [kind, text] : kind_names())
    if (text == name) return kind;
  throw UnsupportedKindError("unknown ensemble kind '" + name + "'");
}

EnsembleSpec EnsembleSpec::laguerre(double beta, int n, int p) {
  EnsembleSpec e;
  e.kind = EnsembleKind::Laguerre;
  e.beta = beta;
  e.n = n;
  e.p = p;
  e.validate();
  return e;
}

EnsembleSpec EnsembleSpec::laguerre_real_gap(double beta, int p, double gap) {
  EnsembleSpec e;
  e.kind = EnsembleKind::Laguerre;
  e.beta = beta;
  e.p = p;
  e.n = p + int(std::ceil(gap));
  e.gap = gap;
  e.validate();
  return e;
}

EnsembleSpec EnsembleSpec::jacobi(double beta, int p, int n1, int n2) {
  EnsembleSpec e;
  e.kind = EnsembleKind::Jacobi;
  e.beta = beta;
  e.p = p;
  e.n1 = n1;
  e.n2 = n2;
  e.n = n1 + n2;
  e.validate();
  return e;
}

EnsembleSpec EnsembleSpec::ginibre(double beta, int n) {
  EnsembleSpec e;
  e.kind = EnsembleKind::Ginibre;
  e.beta = beta;
  e.n = e.p = n;
  e.validate();
  return e;
}

EnsembleSpec EnsembleSpec::gue(int n) {
  EnsembleSpec e;
  e.kind = EnsembleKind::GUE;
  e.n = e.p = n;
  e.validate();
  return e;
}

EnsembleSpec EnsembleSpec::fixed_trace_gue(int n) {
  EnsembleSpec e = gue(n);
  e.kind = EnsembleKind::FixedTraceGUE;
  return e;
}

EnsembleSpec EnsembleSpec::chiral(double beta, int n, int p) {
  EnsembleSpec e;
  e.kind = EnsembleKind::Chiral;
  e.beta = beta;
  e.n = n;
  e.p = p;
  e.mu = n - p + 1.0 - 1.0 / beta;
  e.validate();
  return e;
}

EnsembleSpec EnsembleSpec::bdg(int variant, int n) {
  EnsembleSpec e;
  e.n = n;
  switch (variant) {
    case 1:
      e.kind = EnsembleKind::BdG1;
      e.beta = 1.0;
      e.mu = 1.0;
      e.p = n;
      break;
    case 2:
      require(n % 2 == 0, "BdG2: n must be even");
      e.kind = EnsembleKind::BdG2;
      e.beta = 2.0;
      e.mu = 0.0;
      e.p = n / 2;
      break;
    case 3:
      e.kind = EnsembleKind::BdG3;
      if (n % 2 == 0) {
        e.beta = 4.0;
        e.mu = 0.25;
        e.p = n / 2;
      } else {
        e.beta = 2.0;
        e.mu = 1.25;
        e.p = (n - 1) / 2;
      }
      break;
    case 4:
      e.kind = EnsembleKind::BdG4;
      e.beta = 2.0;
      e.mu = 1.0;
      e.p = n;
      break;
    default:
      throw UnsupportedParameterError("BdG variant must be 1, 2, 3 or 4");
  }
  e.validate();
  return e;
}

namespace {

EnsembleSpec volume(EnsembleKind kind, int n, int p, double nu) {
  EnsembleSpec e;
  e.kind = kind;
  e.beta = 1.0;
  e.n = n;
  e.p = p;
  e.nu = nu;
  e.validate();
  return e;
}

}  // namespace

EnsembleSpec EnsembleSpec::parallelotope_gaussian(int n, int p) {
  return volume(EnsembleKind::ParallelotopeGaussian, n, p, 0.0);
}
EnsembleSpec EnsembleSpec::parallelotope_beta(int n, int p, double nu) {
  return volume(EnsembleKind::ParallelotopeBeta, n, p, nu);
}
EnsembleSpec EnsembleSpec::parallelotope_beta_prime(int n, int p, double nu) {
  return volume(EnsembleKind::ParallelotopeBetaPrime, n, p, nu);
}
EnsembleSpec EnsembleSpec::parallelotope_spherical(int n, int p) {
  return volume(EnsembleKind::ParallelotopeSpherical, n, p, 0.0);
}
EnsembleSpec EnsembleSpec::simplex_gaussian(int n, int p) { return volume(EnsembleKind::SimplexGaussian, n, p, 0.0); }
EnsembleSpec EnsembleSpec::simplex_beta(int n, int p, double nu) {
  return volume(EnsembleKind::SimplexBeta, n, p, nu);
}
EnsembleSpec EnsembleSpec::simplex_beta_prime(int n, int p, double nu) {
  return volume(EnsembleKind::SimplexBetaPrime, n, p, nu);
}
EnsembleSpec EnsembleSpec::simplex_spherical(int n, int p) {
  return volume(EnsembleKind::SimplexSpherical, n, p, 0.0);
}

void EnsembleSpec::validate() const {
  require(std::isfinite(beta) && beta > 0.0, "beta must be a positive real");
  require(n >= 1, "n must be a positive integer");
  switch (kind) {
    case EnsembleKind::Laguerre:
      require(p >= 1, "Laguerre: p must be positive");
      if (gap) {
        require(std::isfinite(*gap) && *gap > -1.0, "Laguerre: real gap must exceed -1");
      } else {
        require(p <= n, "Laguerre: p must not exceed n");
      }
      break;
    case EnsembleKind::Jacobi:
      require(p >= 1 && n1 >= 1 && n2 >= 1, "Jacobi: p, n1, n2 must be positive");
      require(p <= std::min(n1, n2), "Jacobi: p must not exceed min(n1, n2)");
      break;
    case EnsembleKind::Ginibre:
      require(p == n, "Ginibre: square matrices only");
      break;
    case EnsembleKind::GUE:
    case EnsembleKind::FixedTraceGUE:
      require(beta == 2.0, "GUE: beta must be 2");
      break;
    default:
      break;
  }
  if (is_tenfold(kind)) {
    require(beta == 1.0 || beta == 2.0 || beta == 4.0, "tenfold ensembles require beta in {1, 2, 4}");
    require(p >= 1 && p <= n, "tenfold: need 1 <= p <= n");
    require(tenfold_l(beta, mu) > -1.0, "tenfold: beta mu / 2 + 1/2 must be positive");
  }
  if (is_volume(kind)) {
    require(p >= 1 && p <= n, "volume models: need 1 <= p <= n");
    const bool needs_nu = kind == EnsembleKind::ParallelotopeBeta || kind == EnsembleKind::ParallelotopeBetaPrime ||
                          kind == EnsembleKind::SimplexBeta || kind == EnsembleKind::SimplexBetaPrime;
    if (needs_nu) require(std::isfinite(nu) && nu > 0.0, "Beta and Beta-prime models need nu > 0");
  }
}

std::pair<double, double> EnsembleSpec::admissible_strip() const { return make_plan(*this).strip(); }

std::string EnsembleSpec::describe() const {
  std::ostringstream os;
  os << to_string(kind) << "(beta=" << beta << ", n=" << n << ", p=" << p;
  if (kind == EnsembleKind::Jacobi) os << ", n1=" << n1 << ", n2=" << n2;
  if (nu != 0.0) os << ", nu=" << nu;
  if (gap) os << ", gap=" << *gap;
  os << ")";
  return os.str();
}

Complex GammaMomentForm::evaluate(Complex s) const {
  CompensatedSum acc;
  acc.add(log_C + log_D * s);
  auto lg = [s](const GammaFactor& f) {
    return f.a == 0.0 ? Complex(log_gamma(f.b)) : log_gamma(f.a * s + f.b);
  };
  const std::size_t paired = std::min(numerator.size(), denominator.size());
  for (std::size_t i = 0; i < paired; ++i) {
    const auto& u = numerator[i];
    const auto& d = denominator[i];
    if (u.b == d.b)
      acc.add(log_gamma_diff(Complex(u.b), u.a * s) - log_gamma_diff(Complex(d.b), d.a * s));
    else
      acc.add(lg(u) - lg(d));
  }
  for (std::size_t i = paired; i < numerator.size(); ++i) acc.add(lg(numerator[i]));
  for (std::size_t i = paired; i < denominator.size(); ++i) acc.add(-lg(denominator[i]));
  return acc.value();
}

void GammaMomentForm::check_normalized(double tol) const {
  double v = std::abs(evaluate(0.0));
  if (!(v <= tol)) {
    std::ostringstream os;
    os << "GammaMomentForm: log E[X^0] = " << v << " is not 0";
    throw ValidationError(os.str());
  }
}

GammaMomentForm lower_to_gamma_form(const EnsembleSpec& e) {
  const MellinPlan plan = make_plan(e);
  GammaMomentForm form;
  form.log_D = plan.slope;
  // Each factor is pushed together with its normalizer so that evaluation can pair them.
  auto push = [&form](double weight, GammaFactor moving) {
    const GammaFactor fixed{0.0, moving.b};
    const int copies = int(std::lround(std::abs(weight)));
    for (int c = 0; c < copies; ++c) {
      if (weight > 0.0) {
        form.numerator.push_back(moving);
        form.denominator.push_back(fixed);
      } else {
        form.numerator.push_back(fixed);
        form.denominator.push_back(moving);
      }
    }
  };
  for (const auto& b : plan.blocks)
    for (int k = 1; k <= b.params.p; ++k) push(b.weight, {b.scale, b.params.alpha * (k + b.params.l)});
  for (const auto& r : plan.ratios) push(r.weight, {r.a, r.b});
  return form;
}

Complex log_mgf(const EnsembleSpec& e, Complex z) {
  const MellinPlan plan = make_plan(e);
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("log_mgf: z is not finite");
  const auto [lo, hi] = plan.strip();
  if (!(z.real() > lo && z.real() < hi)) {
    std::ostringstream os;
    os.precision(17);
    os << "log_mgf: Re z = " << z.real() << " outside the admissible strip " << format_strip(lo, hi) << " of "
       << e.describe();
    throw DomainError(os.str());
  }
  if (z == 0.0) return 0.0;
  return evaluate_plan(plan, z);
}

double cumulant(const EnsembleSpec& e, int order) {
  if (order != 1 && order != 2) throw DomainError("cumulant: order must be 1 or 2");
  const MellinPlan plan = make_plan(e);
  double acc = order == 1 ? plan.slope : 0.0;
  for (const auto& b : plan.blocks) {
    const double s = order == 1 ? b.scale : b.scale * b.scale;
    acc += b.weight * s * (order == 1 ? l_mean(b.params) : l_variance(b.params));
  }
  for (const auto& r : plan.ratios) {
    if (order == 1)
      acc += r.weight * r.a * digamma(r.b);
    else
      acc += r.weight * r.a * r.a * trigamma(r.b);
  }
  return acc;
}

}  // namespace modgamma
