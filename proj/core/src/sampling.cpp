#include "modgamma/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "modgamma/errors.hpp"
#include "modgamma/quadrature.hpp"

namespace modgamma {
namespace {

using std::numbers::pi;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform on the open interval (0, 1).
double open_uniform(CounterRng& rng) { return (double(rng() >> 11) + 0.5) * 0x1.0p-53; }

// Kahan-Babuska sum of the per-factor logs.
class LogSum {
 public:
  void add(double x) {
    const double t = s_ + x;
    c_ += std::abs(s_) >= std::abs(x) ? (s_ - t) + x : (x - t) + s_;
    s_ = t;
  }
  double value() const { return s_ + c_; }

 private:
  double s_ = 0.0, c_ = 0.0;
};

double tenfold_gap(double beta, double mu) { return (beta * mu / 2.0 + 0.5) / (beta / 2.0) - 1.0; }

double draw(const EnsembleSpec& e, CounterRng& rng) {
  const double alpha = e.beta / 2.0;
  LogSum acc;
  auto gammas = [&](int p, double l, double a, double weight) {
    for (int k = 1; k <= p; ++k) acc.add(weight * sample_log_gamma(a * (k + l), rng));
  };
  switch (e.kind) {
    case EnsembleKind::Laguerre:
      acc.add(e.p * std::log(2.0));
      gammas(e.p, e.gap ? *e.gap : double(e.n - e.p), alpha, 1.0);
      break;
    case EnsembleKind::Jacobi:
      for (int k = 1; k <= e.p; ++k) acc.add(sample_log_beta(alpha * (k + e.n1 - e.p), alpha * e.n2, rng));
      break;
    case EnsembleKind::Ginibre:
      acc.add(0.5 * e.n * std::log(2.0 / e.beta));
      gammas(e.n, 0.0, alpha, 0.5);
      break;
    case EnsembleKind::GUE: {
      const int m = e.n / 2;
      acc.add(0.5 * e.n * std::log(2.0));
      acc.add(0.5 * sample_log_gamma(0.5, rng));
      gammas(m, 0.5, 1.0, 0.5);
      gammas(e.n % 2 == 0 ? m - 1 : m, 0.5, 1.0, 0.5);
      break;
    }
    case EnsembleKind::Chiral:
    case EnsembleKind::BdG1:
    case EnsembleKind::BdG2:
    case EnsembleKind::BdG3:
    case EnsembleKind::BdG4:
      acc.add(0.5 * e.p * std::log(2.0 / e.beta));
      gammas(e.p, tenfold_gap(e.beta, e.mu), alpha, 0.5);
      break;
    case EnsembleKind::ParallelotopeGaussian:
    case EnsembleKind::SimplexGaussian:
      acc.add(0.5 * e.p * std::log(2.0));
      if (e.kind == EnsembleKind::SimplexGaussian) acc.add(0.5 * std::log(e.p + 1.0));
      gammas(e.p, double(e.n - e.p), 0.5, 0.5);
      break;
    case EnsembleKind::ParallelotopeBeta:
    case EnsembleKind::ParallelotopeSpherical:
      for (int k = 1; k <= e.p; ++k)
        acc.add(0.5 * sample_log_beta(0.5 * (k + e.n - e.p), 0.5 * (e.nu + e.p - k), rng));
      break;
    case EnsembleKind::ParallelotopeBetaPrime:
      for (int k = 1; k <= e.p; ++k)
        acc.add(0.5 * (sample_log_gamma(0.5 * (k + e.n - e.p), rng) - sample_log_gamma(0.5 * e.nu, rng)));
      break;
    default:
      throw UnsupportedKindError("sample_log_statistic: " + to_string(e.kind) + " has no independent-product form");
  }
  return acc.value();
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t index) : key_(splitmix(seed ^ splitmix(index))) {}

CounterRng::result_type CounterRng::operator()() { return splitmix(key_ + 0x632be59bd9b4e019ULL * ++counter_); }

double sample_log_gamma(double shape, CounterRng& rng) {
  if (!(shape > 0.0) || !std::isfinite(shape)) throw DomainError("sample_log_gamma: shape must be positive");
  if (shape < 1.0) {
    // G(a) = G(a + 1) U^{1/a}, kept on the log scale so tiny shapes do not underflow.
    const double boost = std::log(open_uniform(rng)) / shape;
    return sample_log_gamma(shape + 1.0, rng) + boost;
  }
  // Marsaglia-Tsang squeeze-free acceptance.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = std::normal_distribution<double>{}(rng);
    const double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    const double v = t * t * t;
    const double log_v = 3.0 * std::log(t);
    if (std::log(open_uniform(rng)) < 0.5 * x * x + d - d * v + d * log_v) return std::log(d) + log_v;
  }
}

double sample_log_beta(double a, double b, CounterRng& rng) {
  if (!(a > 0.0) || !(b >= 0.0)) throw DomainError("sample_log_beta: need a > 0 and b >= 0");
  if (b == 0.0) return 0.0;
  const double ga = sample_log_gamma(a, rng);
  const double gb = sample_log_gamma(b, rng);
  const double hi = std::max(ga, gb);
  return ga - (hi + std::log(std::exp(ga - hi) + std::exp(gb - hi)));
}

bool is_samplable(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::FixedTraceGUE:
    case EnsembleKind::SimplexBeta:
    case EnsembleKind::SimplexBetaPrime:
    case EnsembleKind::SimplexSpherical:
      return false;
    default:
      return true;
  }
}

SampleBatch sample_log_statistic(const EnsembleSpec& e, std::size_t count, std::uint64_t seed) {
  e.validate();
  if (!is_samplable(e.kind))
    throw UnsupportedKindError("sample_log_statistic: " + to_string(e.kind) +
                               " has no independent-product form; use the CF oracle");
  SampleBatch batch{e, count, seed, {}};
  batch.values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    CounterRng rng(seed, i);
    batch.values.push_back(draw(e, rng));
  }
  return batch;
}

double empirical_cdf(std::span<const double> sorted_values, double x) {
  if (sorted_values.empty()) throw EmptyBatchError("empirical_cdf: no values");
  const auto it = std::upper_bound(sorted_values.begin(), sorted_values.end(), x);
  return double(it - sorted_values.begin()) / double(sorted_values.size());
}

double ks_distance(std::span<const double> values, const Cdf& cdf) {
  if (values.empty()) throw EmptyBatchError("ks_distance: no values");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const double n = double(v.size());
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double f = cdf(v[i]);
    d = std::max({d, double(i + 1) / n - f, f - double(i) / n});
  }
  return d;
}

double ks_distance(const SampleBatch& batch, const Cdf& cdf) { return ks_distance(batch.values, cdf); }

TailEstimate empirical_tail(const SampleBatch& batch, double threshold) {
  if (batch.values.empty()) throw EmptyBatchError("empirical_tail: no values");
  TailEstimate t;
  t.n_used = batch.values.size();
  const auto hits = std::count_if(batch.values.begin(), batch.values.end(), [&](double v) { return v >= threshold; });
  t.p_hat = double(hits) / double(t.n_used);
  t.half_width = 1.96 * std::sqrt(t.p_hat * (1.0 - t.p_hat) / double(t.n_used));
  return t;
}

CfOracle::CfOracle(EnsembleSpec e, QuadratureSpec q) : e_(std::move(e)), q_(q) {
  e_.validate();
  q_.validate();
  mean_ = cumulant(e_, 1);
  sd_ = std::sqrt(cumulant(e_, 2));
  // Truncate where |phi| is below double resolution; Gamma-type transforms decay monotonically.
  for (u_max_ = 4.0; std::exp(log_mgf(e_, Complex(0.0, u_max_ / sd_)).real()) > 1e-14; u_max_ *= 2.0)
    if (u_max_ > 1e7)
      throw QuadratureError("CfOracle: characteristic function of " + e_.describe() + " does not decay");
}

Complex CfOracle::standardized_cf(double u) const {
  const double xi = u / sd_;
  return std::exp(log_mgf(e_, Complex(0.0, xi)) - Complex(0.0, xi * mean_));
}

double CfOracle::standardized_cdf(double y) const {
  if (!std::isfinite(y)) return y > 0.0 ? 1.0 : 0.0;
  // P(Y <= y) = 1/2 - (1/pi) int_0^inf Im(exp(-i u y) phi(u)) / u du, in panels shorter than the oscillation.
  auto f = [&](double u) -> Complex { return (std::exp(Complex(0.0, -u * y)) * standardized_cf(u)).imag() / u; };
  const double width = std::min(1.0, pi / (1.0 + std::abs(y)));
  // The phase xi * mean cancels inside standardized_cf, leaving noise ~ eps |mean| / sd in the integrand.
  const double noise = 1e-15 * (1.0 + std::abs(mean_)) / sd_;
  QuadratureSpec q = q_;
  q.abs_tol = std::max(q_.abs_tol / u_max_, 100.0 * noise) * width;
  double total = 0.0;
  for (double a = 0.0; a < u_max_; a += width) total += integrate(f, a, std::min(u_max_, a + width), q).real();
  return std::clamp(0.5 - total / pi, 0.0, 1.0);
}

double CfOracle::cdf(double x) const { return standardized_cdf((x - mean_) / sd_); }

double cf_invert_cdf(const EnsembleSpec& e, double x, const QuadratureSpec& q) { return CfOracle(e, q).cdf(x); }

void write_csv(std::ostream& os, const SampleBatch& batch) {
  std::ostringstream head;
  head << "# ensemble=" << batch.ensemble.describe() << " seed=" << batch.seed << " count=" << batch.count;
  os << head.str() << "\nlog_statistic\n";
  const auto old = os.precision(17);
  for (double v : batch.values) os << v << '\n';
  os.precision(old);
}

}  // namespace modgamma
