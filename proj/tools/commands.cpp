#include "commands.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <utility>

#include "modgamma/errors.hpp"
#include "modgamma/expansion.hpp"
#include "modgamma/modphi.hpp"
#include "modgamma/sampling.hpp"
#include "modgamma/verify.hpp"

namespace modgamma::cli {
namespace {

using json = nlohmann::ordered_json;

json complex_json(Complex v) { return {{"re", v.real()}, {"im", v.imag()}}; }

Complex z_of(const RunConfig& cfg) { return {cfg.z_re, cfg.z_im}; }

EnsembleSpec make_ensemble(const RunConfig& cfg, const std::string& name) {
  const int p = cfg.p > 0 ? cfg.p : cfg.n;
  if (name == "bdg") return EnsembleSpec::bdg(cfg.variant, cfg.n);
  switch (ensemble_kind_from_string(name)) {
    case EnsembleKind::Laguerre:
      return cfg.gap >= 0.0 ? EnsembleSpec::laguerre_real_gap(cfg.beta, p, cfg.gap)
                            : EnsembleSpec::laguerre(cfg.beta, cfg.n, p);
    case EnsembleKind::Jacobi:
      return EnsembleSpec::jacobi(cfg.beta, p, cfg.n1, cfg.n2);
    case EnsembleKind::Ginibre:
      return EnsembleSpec::ginibre(cfg.beta, cfg.n);
    case EnsembleKind::GUE:
      return EnsembleSpec::gue(cfg.n);
    case EnsembleKind::FixedTraceGUE:
      return EnsembleSpec::fixed_trace_gue(cfg.n);
    case EnsembleKind::Chiral:
      return EnsembleSpec::chiral(cfg.beta, cfg.n, p);
    case EnsembleKind::BdG1:
      return EnsembleSpec::bdg(1, cfg.n);
    case EnsembleKind::BdG2:
      return EnsembleSpec::bdg(2, cfg.n);
    case EnsembleKind::BdG3:
      return EnsembleSpec::bdg(3, cfg.n);
    case EnsembleKind::BdG4:
      return EnsembleSpec::bdg(4, cfg.n);
    case EnsembleKind::ParallelotopeGaussian:
      return EnsembleSpec::parallelotope_gaussian(cfg.n, p);
    case EnsembleKind::ParallelotopeBeta:
      return EnsembleSpec::parallelotope_beta(cfg.n, p, cfg.nu);
    case EnsembleKind::ParallelotopeBetaPrime:
      return EnsembleSpec::parallelotope_beta_prime(cfg.n, p, cfg.nu);
    case EnsembleKind::ParallelotopeSpherical:
      return EnsembleSpec::parallelotope_spherical(cfg.n, p);
    case EnsembleKind::SimplexGaussian:
      return EnsembleSpec::simplex_gaussian(cfg.n, p);
    case EnsembleKind::SimplexBeta:
      return EnsembleSpec::simplex_beta(cfg.n, p, cfg.nu);
    case EnsembleKind::SimplexBetaPrime:
      return EnsembleSpec::simplex_beta_prime(cfg.n, p, cfg.nu);
    case EnsembleKind::SimplexSpherical:
      return EnsembleSpec::simplex_spherical(cfg.n, p);
  }
  throw UnsupportedKindError("unknown ensemble '" + name + "'");
}

std::pair<std::string, Regime> parse_regime(const RunConfig& cfg) {
  const std::pair<const char*, Regime::Kind> kinds[] = {
      {"full", Regime::Kind::Full},           {"vanishing-gap", Regime::Kind::VanishingGap},
      {"fixed-gap", Regime::Kind::FixedGap},  {"growing-gap", Regime::Kind::GrowingGap},
      {"fixed-p", Regime::Kind::FixedP},      {"proportional", Regime::Kind::Proportional},
  };
  for (const auto& [name, kind] : kinds) {
    const std::string suffix = std::string("-") + name;
    const std::string& r = cfg.regime;
    if (r.size() <= suffix.size() || r.compare(r.size() - suffix.size(), suffix.size(), suffix) != 0) continue;
    Regime regime;
    switch (kind) {
      case Regime::Kind::Full:
        regime = Regime::full();
        break;
      case Regime::Kind::VanishingGap:
        regime = Regime::vanishing_gap(cfg.c);
        break;
      case Regime::Kind::FixedGap:
        regime = Regime::fixed_gap(cfg.c);
        break;
      case Regime::Kind::GrowingGap:
        regime = Regime::growing_gap(cfg.exponent);
        break;
      case Regime::Kind::FixedP:
        regime = Regime::fixed_p(cfg.fixed_p);
        break;
      case Regime::Kind::Proportional:
        regime = Regime::proportional(cfg.ratio);
        break;
    }
    if (cfg.tau1 > 0.0) regime = regime.with_proportional_sizes(cfg.tau1, cfg.tau2);
    return {r.substr(0, r.size() - suffix.size()), regime};
  }
  throw DomainError("regime '" + cfg.regime +
                    "' must be <ensemble>-<full|vanishing-gap|fixed-gap|growing-gap|fixed-p|proportional>");
}

ModPhiData make_modphi(const RunConfig& cfg) {
  const auto [family, regime] = parse_regime(cfg);
  if (family == "laguerre" && cfg.p == 0 && cfg.gap < 0.0) return laguerre_modphi(cfg.beta, cfg.n, regime);
  return ensemble_modphi(make_ensemble(cfg, family), regime);
}

json modphi_json(const ModPhiData& d) {
  return {{"regime", d.regime_label}, {"ensemble", d.ensemble.describe()}, {"eta", d.eta.describe()},
          {"t_n", d.t_n},         {"mean_shift", d.mean_shift},           {"scale", d.scale},
          {"psi", d.psi_limit.describe()}, {"domain", d.domain.describe()}};
}

json cmd_mellin(const RunConfig& cfg) {
  const EnsembleSpec e = make_ensemble(cfg, cfg.ensemble);
  const Complex v = log_mgf(e, z_of(cfg));
  const auto [lo, hi] = e.admissible_strip();
  return {{"ensemble", e.describe()}, {"z", complex_json(z_of(cfg))}, {"log_mgf", v.real()},
          {"log_mgf_im", v.imag()},   {"cumulant1", cumulant(e, 1)}, {"cumulant2", cumulant(e, 2)},
          {"strip", {lo, hi}}};
}

json cmd_expand(const RunConfig& cfg) {
  const LParams params{cfg.p > 0 ? cfg.p : cfg.n, cfg.l, cfg.alpha};
  params.validate();
  const Complex z = z_of(cfg);
  const ExpansionTerms t = expansion_terms(params, z);
  const Complex exact = l_exact(params, z);
  const double residual = std::abs(t.total() - exact);
  if (residual > cfg.tol)
    throw IdentityMismatchError("expand: |terms - L| = " + std::to_string(residual) + " exceeds --tol");
  return {{"terms",
           {{"t1", complex_json(t.t1)},
            {"t2", complex_json(t.t2)},
            {"t3", complex_json(t.t3)},
            {"t4", complex_json(t.t4)},
            {"t5", complex_json(t.t5)},
            {"r", complex_json(t.r)}}},
          {"r_bound", t.r_bound},
          {"l_exact", complex_json(exact)},
          {"reconstruct", complex_json(t.total())},
          {"residual", residual}};
}

json cmd_modphi(const RunConfig& cfg) {
  const ModPhiData d = make_modphi(cfg);
  json out = modphi_json(d);
  const Complex z = z_of(cfg);
  out["z"] = complex_json(z);
  out["psi_n"] = complex_json(residue_psi_n(d, z));
  out["psi_limit"] = complex_json(d.psi_limit(z));
  return out;
}

json cmd_deviation(const RunConfig& cfg) {
  const ModPhiData d = make_modphi(cfg);
  const DeviationResult r = precise_deviation(d, cfg.x);
  json out = modphi_json(d);
  out["x"] = cfg.x;
  out["h"] = r.h;
  out["F"] = r.F;
  out["probability"] = r.probability;
  out["threshold"] = r.threshold;
  out["lower_tail"] = r.lower_tail;
  out["iterations"] = r.iterations;
  out["residual"] = r.residual;
  if (d.eta.is_gaussian()) {
    const double y = (cfg.x - d.eta.derivative(0.0, 1)) * std::sqrt(d.t_n / d.eta.variance());
    const CltTail c = extended_clt_tail(d, y);
    out["clt"] = {{"y", y},
                  {"probability", c.probability},
                  {"threshold", c.threshold},
                  {"in_normality_zone", c.in_normality_zone},
                  {"warning", c.warning}};
  }
  return out;
}

ZoneOfControl zone_of(const RunConfig& cfg) {
  ZoneOfControl z;
  z.gamma = cfg.zone_gamma;
  z.v = cfg.zone_v;
  z.w = cfg.zone_w;
  z.D = cfg.zone_d;
  z.K1 = cfg.zone_k1;
  z.K2 = cfg.zone_k2;
  return z;
}

json cmd_be_bound(const RunConfig& cfg) {
  const double t = cfg.t_n > 0.0 ? cfg.t_n : make_modphi(cfg).t_n;
  const ZoneOfControl z = zone_of(cfg);
  return {{"t_n", t},
          {"bound", berry_esseen_bound(z, t)},
          {"constant", berry_esseen_gaussian_constant(z.D, z.v)},
          {"zone", {{"gamma", z.gamma}, {"v", z.v}, {"w", z.w}, {"D", z.D}, {"K1", z.K1}, {"K2", z.K2}}}};
}

json cmd_llt(const RunConfig& cfg) {
  const ModPhiData d = make_modphi(cfg);
  const LLTQuery q{cfg.x, cfg.a, cfg.b, cfg.mu};
  json out = modphi_json(d);
  out["x"] = q.x;
  out["window"] = {q.a, q.b};
  out["mu"] = q.mu_exponent;
  out["probability"] = llt_window(d, q);
  return out;
}

std::string values_hash(const std::vector<double>& values) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the bit patterns
  for (double v : values) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i, bits >>= 8) h = (h ^ (bits & 0xff)) * 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json cmd_sample(const RunConfig& cfg) {
  const EnsembleSpec e = make_ensemble(cfg, cfg.ensemble);
  const SampleBatch batch = sample_log_statistic(e, cfg.count, cfg.seed);
  if (cfg.out.empty()) {
    write_csv(std::cout, batch);
  } else {
    std::ofstream f(cfg.out);
    if (!f) throw DomainError("sample: cannot open --out " + cfg.out);
    write_csv(f, batch);
  }
  double mean = 0.0, var = 0.0;
  for (double v : batch.values) mean += v;
  if (!batch.values.empty()) mean /= double(batch.values.size());
  for (double v : batch.values) var += (v - mean) * (v - mean);
  if (batch.values.size() > 1) var /= double(batch.values.size() - 1);
  return {{"ensemble", e.describe()}, {"count", batch.count},
          {"seed", batch.seed},       {"csv", cfg.out.empty() ? "-" : cfg.out},
          {"mean", mean},             {"variance", var},
          {"exact_mean", cumulant(e, 1)}, {"exact_variance", cumulant(e, 2)},
          {"values_hash", values_hash(batch.values)}};
}

json cmd_verify(const RunConfig& cfg) {
  json rows = json::array();
  bool all = true;
  for (int id : suite_criteria(cfg.suite)) {
    const CriterionResult r = run_criterion(id);
    all = all && r.passed;
    rows.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
  }
  return {{"suite", cfg.suite}, {"criteria", rows}, {"all_passed", all}};
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (cfg.format != "json" && cfg.format != "csv") throw DomainError("--format must be json or csv");
  if (cfg.subcommand == "sample") {
    if (!cfg.has_seed) throw DomainError("sample: --seed is required");
    if (cfg.format != "csv" && cfg.out.empty())
      throw DomainError("sample: give --out for the CSV, or --format csv to stream it");
  }
  if (cfg.subcommand == "expand" && !(cfg.tol > 0.0)) throw DomainError("expand: --tol must be positive");
  if (cfg.subcommand == "verify") suite_criteria(cfg.suite);
  if (cfg.n < 1) throw DomainError("--n must be positive");
}

json run(const RunConfig& cfg) {
  validate(cfg);
  json result;
  const std::string& s = cfg.subcommand;
  if (s == "mellin") result = cmd_mellin(cfg);
  else if (s == "expand") result = cmd_expand(cfg);
  else if (s == "modphi") result = cmd_modphi(cfg);
  else if (s == "deviation") result = cmd_deviation(cfg);
  else if (s == "be-bound") result = cmd_be_bound(cfg);
  else if (s == "llt") result = cmd_llt(cfg);
  else if (s == "sample") result = cmd_sample(cfg);
  else if (s == "verify") result = cmd_verify(cfg);
  else throw DomainError("unknown subcommand '" + s + "'");
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["subcommand"] = s;
  doc["result"] = std::move(result);
  doc["config"] = json(nlohmann::json(cfg));
  return doc;
}

}  // namespace modgamma::cli
