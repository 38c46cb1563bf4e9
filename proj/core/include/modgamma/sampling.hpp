#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "modgamma/mellin.hpp"

namespace modgamma {

// Counter-based generator: the stream for (seed, index) is a pure function of both,
// so draws can be sharded without changing the output.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type(0); }
  result_type operator()();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// log of a Gamma(shape, 1) variate, accurate for small shapes.
double sample_log_gamma(double shape, CounterRng& rng);
// log of a Beta(a, b) variate; b = 0 is the point mass at 1.
double sample_log_beta(double a, double b, CounterRng& rng);

struct SampleBatch {
  EnsembleSpec ensemble;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::vector<double> values;  // log determinant or log volume
};

struct TailEstimate {
  double p_hat = 0.0;
  double half_width = 0.0;  // 95% normal-approximation interval
  std::size_t n_used = 0;
};

bool is_samplable(EnsembleKind kind);
// Independent draws from the product representation of the Mellin transform.
SampleBatch sample_log_statistic(const EnsembleSpec& e, std::size_t count, std::uint64_t seed);

using Cdf = std::function<double(double)>;

// sup |F_N - F| evaluated on both sides of every jump.
double ks_distance(std::span<const double> values, const Cdf& cdf);
double ks_distance(const SampleBatch& batch, const Cdf& cdf);
double empirical_cdf(std::span<const double> sorted_values, double x);
TailEstimate empirical_tail(const SampleBatch& batch, double threshold);

// Exact CDF of log(stat) by inverting the characteristic function exp(log_mgf(e, i xi)).
double cf_invert_cdf(const EnsembleSpec& e, double x, const QuadratureSpec& q = {});

// CDF oracle for one ensemble with its moments cached.
class CfOracle {
 public:
  explicit CfOracle(EnsembleSpec e, QuadratureSpec q = {});

  double mean() const { return mean_; }
  double sd() const { return sd_; }
  const EnsembleSpec& ensemble() const { return e_; }
  // P(log stat <= x)
  double cdf(double x) const;
  // P((log stat - mean) / sd <= y)
  double standardized_cdf(double y) const;
  // Characteristic function of the standardized statistic.
  Complex standardized_cf(double u) const;

 private:
  EnsembleSpec e_;
  QuadratureSpec q_;
  double mean_ = 0.0;
  double sd_ = 1.0;
  double u_max_ = 0.0;
};

// Header comment line with ensemble, seed and count, then one value per line at 17 significant digits.
void write_csv(std::ostream& os, const SampleBatch& batch);

}  // namespace modgamma
