// modgamma-cli: exact Mellin transforms, expansions and mod-phi limit checks from the shell.
// Exit codes: 0 success, 1 failed verification or unexpected error, 2 validation error, 3 numerical failure.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "commands.hpp"
#include "modgamma/errors.hpp"

namespace {

using modgamma::cli::RunConfig;
using json = nlohmann::ordered_json;

void add_ensemble_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--ensemble", cfg.ensemble, "laguerre, jacobi, ginibre, gue, fixed-trace-gue, chiral, bdg, bdg1..4, "
                                              "parallelotope-*, simplex-*");
  app->add_option("--beta", cfg.beta, "Dyson index");
  app->add_option("--n", cfg.n, "matrix size or ambient dimension");
  app->add_option("--p", cfg.p, "second size; defaults to n");
  app->add_option("--n1", cfg.n1, "Jacobi first size");
  app->add_option("--n2", cfg.n2, "Jacobi second size");
  app->add_option("--nu", cfg.nu, "volume-model shape");
  app->add_option("--variant", cfg.variant, "BdG class 1..4")->check(CLI::Range(1, 4));
  app->add_option("--gap", cfg.gap, "real Laguerre gap n - p");
}

void add_regime_flags(CLI::App* app, RunConfig& cfg) {
  add_ensemble_flags(app, cfg);
  app->add_option("--regime", cfg.regime, "<ensemble>-<full|vanishing-gap|fixed-gap|growing-gap|fixed-p|proportional>");
  app->add_option("--c", cfg.c, "gap constant of the fixed-gap and vanishing-gap regimes");
  app->add_option("--exponent", cfg.exponent, "growing gap n - p = n^exponent");
  app->add_option("--fixed-p", cfg.fixed_p, "p of the fixed-p regime");
  app->add_option("--ratio", cfg.ratio, "p / n of the proportional regime");
  app->add_option("--tau1", cfg.tau1, "Jacobi n1 / n");
  app->add_option("--tau2", cfg.tau2, "Jacobi n2 / n");
}

void add_z_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--z-re", cfg.z_re, "real part of z");
  app->add_option("--z-im", cfg.z_im, "imaginary part of z");
}

void add_output_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--out", cfg.out, "output path");
}

void flatten(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), os);
  } else {
    os << prefix << ',' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

void emit(const json& doc, const RunConfig& cfg) {
  const bool to_file = !cfg.out.empty() && cfg.subcommand != "sample";
  std::ofstream file;
  if (to_file) {
    file.open(cfg.out);
    if (!file) throw modgamma::DomainError("cannot open --out " + cfg.out);
  }
  std::ostream& os = to_file ? file : std::cout;
  if (cfg.format == "csv") {
    os << "key,value\n";
    flatten(doc["result"], "", os);
  } else {
    os << doc.dump(2) << '\n';
  }
}

void print_table(const json& result) {
  for (const auto& row : result["criteria"])
    std::cerr << "criterion " << row["id"].get<int>() << ' ' << (row["passed"].get<bool>() ? "PASS" : "FAIL") << "  "
              << row["title"].get<std::string>() << ": " << row["detail"].get<std::string>() << '\n';
}

int execute(const RunConfig& cfg, const json* expected) {
  const json doc = modgamma::cli::run(cfg);
  const bool streamed_csv = cfg.subcommand == "sample" && cfg.out.empty();
  if (!streamed_csv) emit(doc, cfg);
  if (cfg.subcommand == "verify") print_table(doc["result"]);
  if (expected && (*expected)["result"] != doc["result"]) {
    std::cerr << "replay: regenerated result differs from the recorded one\n";
    return 3;
  }
  if (cfg.subcommand == "verify" && !doc["result"]["all_passed"].get<bool>()) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Gamma-type transforms and mod-phi limit checks for random-matrix log-determinants"};
  app.require_subcommand(0, 1);
  RunConfig cfg;
  std::string replay;
  app.add_option("--replay", replay, "re-run a JSON output and check the result is identical")
      ->check(CLI::ExistingFile);

  auto* mellin = app.add_subcommand("mellin", "exact log E[stat^z] and cumulants");
  add_ensemble_flags(mellin, cfg);
  add_z_flags(mellin, cfg);
  add_output_flags(mellin, cfg);

  auto* expand = app.add_subcommand("expand", "terms of the log-Gamma product expansion and the identity residual");
  expand->add_option("--p", cfg.p, "number of factors")->required();
  expand->add_option("--l", cfg.l, "shift l");
  expand->add_option("--alpha", cfg.alpha, "step alpha");
  expand->add_option("--tol", cfg.tol, "maximum identity residual");
  add_z_flags(expand, cfg);
  add_output_flags(expand, cfg);

  auto* modphi = app.add_subcommand("modphi", "regime data: eta, t_n, centering and psi at z");
  add_regime_flags(modphi, cfg);
  add_z_flags(modphi, cfg);
  add_output_flags(modphi, cfg);

  auto* deviation = app.add_subcommand("deviation", "precise deviation P(X_n >= t_n x) and the Gaussian tail");
  add_regime_flags(deviation, cfg);
  deviation->add_option("--x", cfg.x, "deviation level")->required();
  add_output_flags(deviation, cfg);

  auto* be = app.add_subcommand("be-bound", "Berry-Esseen bound from a zone of control");
  add_regime_flags(be, cfg);
  be->add_option("--t-n", cfg.t_n, "t_n; taken from the regime when omitted");
  be->add_option("--gamma", cfg.zone_gamma, "zone exponent gamma");
  be->add_option("--v", cfg.zone_v, "zone exponent v");
  be->add_option("--w", cfg.zone_w, "zone exponent w");
  be->add_option("--D", cfg.zone_d, "zone width D");
  be->add_option("--K1", cfg.zone_k1, "zone constant K1");
  be->add_option("--K2", cfg.zone_k2, "zone constant K2");
  add_output_flags(be, cfg);

  auto* llt = app.add_subcommand("llt", "local limit prediction for a shrinking window");
  add_regime_flags(llt, cfg);
  llt->add_option("--x", cfg.x, "window center on the X_n / sqrt(t_n) scale");
  llt->add_option("--a", cfg.a, "window left end");
  llt->add_option("--b", cfg.b, "window right end");
  llt->add_option("--mu", cfg.mu, "window shrink exponent");
  add_output_flags(llt, cfg);

  auto* sample = app.add_subcommand("sample", "exact draws of the log statistic to CSV");
  add_ensemble_flags(sample, cfg);
  sample->add_option("--count", cfg.count, "number of draws")->required();
  sample->add_option("--seed", cfg.seed, "64-bit seed")->required();
  add_output_flags(sample, cfg);

  auto* verify = app.add_subcommand("verify", "run a named acceptance suite");
  verify->add_option("--suite", cfg.suite, "all, quick, clt, limits or a criterion id 1..15");
  add_output_flags(verify, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!replay.empty()) {
      if (app.get_subcommands().size() > 0) throw modgamma::DomainError("--replay takes no subcommand");
      std::ifstream in(replay);
      const json recorded = json::parse(in);
      if (recorded.value("schema", 0) != modgamma::cli::kSchemaVersion)
        throw modgamma::DomainError("replay: unsupported schema");
      return execute(nlohmann::json(recorded.at("config")).get<RunConfig>(), &recorded);
    }
    if (app.get_subcommands().empty()) {
      std::cerr << app.help();
      return 2;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();
    cfg.has_seed = sample->count("--seed") > 0;
    return execute(cfg, nullptr);
  } catch (const modgamma::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const modgamma::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
