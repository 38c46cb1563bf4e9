#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace modgamma::cli {

inline constexpr int kSchemaVersion = 1;

// Every flag of every subcommand; a subcommand reads only its own.
struct RunConfig {
  std::string subcommand;

  // ensemble
  std::string ensemble = "laguerre";
  double beta = 2.0;
  int n = 1;
  int p = 0;  // 0 means p = n
  int n1 = 0;
  int n2 = 0;
  double nu = 0.0;
  int variant = 1;
  double gap = -1.0;  // negative means the integer gap n - p

  // regime, written <ensemble>-<kind>
  std::string regime = "laguerre-full";
  double c = 1.0;
  double exponent = 0.5;
  int fixed_p = 1;
  double ratio = 0.5;
  double tau1 = 0.0;  // 0 means fixed sizes
  double tau2 = 0.0;

  // expansion
  double l = 0.0;
  double alpha = 1.0;

  double z_re = 0.0;
  double z_im = 0.0;
  double x = 0.0;
  double tol = 1e-12;

  // zone of control and local limit window
  double t_n = 0.0;  // 0 means take t_n from the regime
  double zone_gamma = 0.0;
  double zone_v = 1.0;
  double zone_w = 3.0;
  double zone_d = 1.0;
  double zone_k1 = 1.0;
  double zone_k2 = 0.25;
  double a = -0.5;
  double b = 0.5;
  double mu = 1.0;

  // sampling
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
  bool has_seed = false;

  std::string suite = "quick";
  std::string format = "json";
  std::string out;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(RunConfig, subcommand, ensemble, beta, n, p, n1, n2, nu, variant, gap,
                                                regime, c, exponent, fixed_p, ratio, tau1, tau2, l, alpha, z_re, z_im,
                                                x, tol, t_n, zone_gamma, zone_v, zone_w, zone_d, zone_k1, zone_k2, a, b,
                                                mu, count, seed, has_seed, suite, format, out)

// Cross-flag checks that CLI11 cannot express; throws ValidationError.
void validate(const RunConfig& cfg);

// Runs one subcommand and returns {"schema", "subcommand", "result", "config"}.
// `sample` also writes its CSV to cfg.out; `verify` sets result.all_passed.
nlohmann::ordered_json run(const RunConfig& cfg);

}  // namespace modgamma::cli
