// giantwalk: component-exploration random walk on G(n, p).
//
// Subcommands:
//   theory    closed-form constants (rho, lambda*, sigma^2, t1, a)
//   simulate  one seeded replica, trajectory CSV + summary line
//   mc        Monte Carlo experiment with acceptance checks
//   validate  walk distribution vs enumeration or materialized graphs
//
// Exit codes: 0 pass, 1 acceptance-predicate failure, 2 domain error,
// 3 I/O error. GIANTWALK_SEED supplies the master seed when --seed is absent.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "giantwalk/io.hpp"

namespace gw = giantwalk;

namespace {

void print_kv(const char* key, const std::string& value) {
  std::printf("%-24s %s\n", key, value.c_str());
}

void print_kv(const char* key, double value) { print_kv(key, gw::fmt17(value)); }

void print_checks(const gw::MCReport& rep) {
  std::printf("checks:\n");
  for (const gw::CheckResult& c : rep.checks) {
    std::printf("  %-26s %-14.6g in [%.6g, %.6g]  %s\n", c.name.c_str(), c.value, c.lo, c.hi,
                c.pass ? "PASS" : "FAIL");
  }
  std::printf("all checks: %s  (runtime %.2f s)\n", rep.all_pass ? "PASS" : "FAIL",
              rep.runtime_seconds);
}

struct TheoryArgs {
  std::int64_t n = 0;
  double lambda = 0.0;
  bool as_json = false;
};

int run_theory(const TheoryArgs& args) {
  const gw::Params params = gw::Params::from_mean_degree(args.n, args.lambda);
  const gw::TheoryValues theory = gw::theory_values(params);
  if (args.as_json) {
    std::cout << gw::dump_json(gw::theory_json(params, theory));
    return 0;
  }
  print_kv("rho", theory.rho);
  print_kv("lambda_star", theory.lambda_star);
  print_kv("sigma2", theory.sigma2);
  print_kv("sigma", std::sqrt(theory.sigma2));
  print_kv("t1", theory.t1);
  print_kv("a", theory.a);
  return 0;
}

struct SimulateArgs {
  std::int64_t n = 0;
  double lambda = 0.0;
  double p_override = -1.0;  // < 0 means "not forced"
  std::uint64_t seed = 0;
  std::string out_path;
};

int run_simulate(const SimulateArgs& args) {
  if (args.n > 10'000'000) throw std::domain_error("simulate: n > 1e7");
  gw::Params params = gw::Params::from_mean_degree(args.n, args.lambda);
  if (args.p_override >= 0.0) params = params.with_edge_probability(args.p_override);
  const gw::TheoryValues theory = gw::theory_values(params);
  gw::RngStream rng = gw::seed_stream(args.seed, 0);
  const gw::Trajectory traj = gw::run_walk(params, rng);
  const gw::MartingaleSeries series = gw::martingale_series(traj);
  {
    std::ofstream out = gw::open_output(args.out_path);
    gw::write_trajectory_csv(out, traj, series);
    gw::finish_output(out, args.out_path);
  }
  const gw::ReplicaSummary s = gw::summarize_replica(traj, theory);
  std::printf("L1=%lld L2=%lld T0=%lld T1=%lld Z=%lld components=%lld\n",
              static_cast<long long>(s.L1), static_cast<long long>(s.L2),
              static_cast<long long>(s.T0), static_cast<long long>(s.T1),
              static_cast<long long>(s.Z), static_cast<long long>(s.component_count));
  return 0;
}

struct McArgs {
  std::int64_t n = 0;
  double lambda = 0.0;
  std::int64_t replicas = 1;
  std::uint64_t seed = 0;
  int workers = 1;
  bool keep_trajectories = false;
  std::vector<double> var_window;  // empty or {lo, hi}
  std::string json_path;
  std::string csv_path;
  std::string hist_path;
  std::int64_t hist_bins = 40;
};

int run_mc(const McArgs& args) {
  gw::ExperimentConfig config;
  config.params = gw::Params::from_mean_degree(args.n, args.lambda);
  config.replicas = args.replicas;
  config.master_seed = args.seed;
  config.mode = gw::Mode::mc;
  config.worker_count = args.workers;
  config.keep_trajectories = args.keep_trajectories;
  if (!args.var_window.empty()) {
    config.var_window_lo = args.var_window[0];
    config.var_window_hi = args.var_window[1];
  }
  const gw::MCReport rep = gw::run_experiment(config);

  if (args.json_path == "-") {
    std::cout << gw::dump_json(gw::report_json(rep));
  } else {
    std::printf("%s  mc  n=%lld lambda=%s replicas=%lld seed=%llu workers=%d\n",
                std::string(gw::kVersion).c_str(), static_cast<long long>(config.params.n),
                gw::fmt17(config.params.lambda).c_str(), static_cast<long long>(config.replicas),
                static_cast<unsigned long long>(config.master_seed), config.worker_count);
    std::printf("theory: rho=%.8g lambda_star=%.8g sigma=%.8g t1=%.8g a=%.8g\n", rep.theory.rho,
                rep.theory.lambda_star, std::sqrt(rep.theory.sigma2), rep.theory.t1, rep.theory.a);
    std::printf("scales: epsilon=%.6g sigma0=%.6g omega=%.6g t0=%lld\n", rep.scales.epsilon,
                rep.scales.sigma0, rep.scales.omega, static_cast<long long>(rep.scales.t0));
    std::printf("L1: mean=%.10g variance=%.10g min=%.10g max=%.10g  (L2 max %lld)\n",
                rep.L1_moments.mean, rep.L1_moments.variance(), rep.L1_moments.min,
                rep.L1_moments.max, static_cast<long long>(rep.L2_max));
    print_checks(rep);
  }
  if (!args.json_path.empty() && args.json_path != "-")
    gw::write_json_file(args.json_path, gw::report_json(rep));
  if (!args.csv_path.empty()) {
    std::ofstream out = gw::open_output(args.csv_path);
    gw::write_replicas_csv(out, rep);
    gw::finish_output(out, args.csv_path);
  }
  if (!args.hist_path.empty()) {
    std::vector<double> standardized;
    standardized.reserve(rep.replicas.size());
    for (const gw::ReplicaSummary& s : rep.replicas)
      standardized.push_back(gw::standardize(static_cast<double>(s.L1), rep.theory));
    std::ofstream out = gw::open_output(args.hist_path);
    gw::write_histogram_csv(out, gw::histogram(standardized, args.hist_bins));
    gw::finish_output(out, args.hist_path);
  }
  return rep.all_pass ? 0 : 1;
}

struct ValidateArgs {
  std::string mode;
  std::int64_t n = 0;
  double lambda = -1.0;
  double p = -1.0;
  std::int64_t replicas = 1;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string json_path;
};

int run_validate(const ValidateArgs& args) {
  gw::ExperimentConfig config;
  if (args.p >= 0.0 && args.lambda >= 0.0)
    throw std::domain_error("validate: give exactly one of --p, --lambda");
  if (args.p >= 0.0)
    config.params = gw::Params::from_edge_probability(args.n, args.p);
  else if (args.lambda >= 0.0)
    config.params = gw::Params::from_mean_degree(args.n, args.lambda);
  else
    throw std::domain_error("validate: give exactly one of --p, --lambda");
  config.replicas = args.replicas;
  config.master_seed = args.seed;
  config.worker_count = args.workers;

  if (args.mode == "enum") {
    config.mode = gw::Mode::validate_enum;
    const gw::EnumValidationReport rep = gw::validate_enum(config);
    std::printf("validate enum  n=%lld p=%s replicas=%lld seed=%llu\n",
                static_cast<long long>(config.params.n), gw::fmt17(config.params.p).c_str(),
                static_cast<long long>(config.replicas),
                static_cast<unsigned long long>(config.master_seed));
    std::printf("chi_square=%.10g dof=%lld p_value=%.10g (alpha=%g, %lld pooled bins)\n",
                rep.chi.statistic, static_cast<long long>(rep.chi.dof), rep.chi.p_value,
                gw::kValidationAlpha, static_cast<long long>(rep.chi.pooled_bins));
    std::printf("%s  (runtime %.2f s)\n", rep.pass ? "PASS" : "FAIL", rep.runtime_seconds);
    if (!args.json_path.empty()) gw::write_json_file(args.json_path, gw::report_json(rep));
    return rep.pass ? 0 : 1;
  }
  config.mode = gw::Mode::validate_graph;
  const gw::GraphValidationReport rep = gw::validate_graph(config);
  std::printf("validate graph  n=%lld lambda=%s replicas=%lld per side seed=%llu\n",
              static_cast<long long>(config.params.n), gw::fmt17(config.params.lambda).c_str(),
              static_cast<long long>(config.replicas),
              static_cast<unsigned long long>(config.master_seed));
  std::printf("walk L1 mean=%.10g  graph L1 mean=%.10g\n", rep.walk_l1.mean, rep.graph_l1.mean);
  std::printf("ks=%.10g critical=%.10g (alpha=%g)\n", rep.ks, rep.ks_critical,
              gw::kValidationAlpha);
  std::printf("%s  (runtime %.2f s)\n", rep.pass ? "PASS" : "FAIL", rep.runtime_seconds);
  if (!args.json_path.empty()) gw::write_json_file(args.json_path, gw::report_json(rep));
  return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"component-exploration random walk on G(n, p): giant component statistics"};
  app.set_version_flag("--version", std::string(gw::kVersion));
  app.require_subcommand(1);

  TheoryArgs theory_args;
  CLI::App* theory_cmd = app.add_subcommand("theory", "closed-form constants for (lambda, n)");
  theory_cmd->add_option("--lambda", theory_args.lambda, "mean degree, must be > 1")->required();
  theory_cmd->add_option("--n", theory_args.n, "vertex count")->required()->check(CLI::PositiveNumber);
  theory_cmd->add_flag("--json", theory_args.as_json, "emit JSON instead of the table");

  SimulateArgs sim_args;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "one replica; trajectory CSV plus summary");
  sim_cmd->add_option("--lambda", sim_args.lambda, "mean degree, must be > 1")->required();
  sim_cmd->add_option("--n", sim_args.n, "vertex count (at most 1e7)")
      ->required()
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim_args.seed, "master seed")->envname("GIANTWALK_SEED");
  sim_cmd->add_option("--out", sim_args.out_path, "trajectory CSV path")->required();
  // Test-only override pinning p itself (e.g. 0 or 1) regardless of lambda/n.
  sim_cmd->add_option("--p", sim_args.p_override)->check(CLI::Range(0.0, 1.0))->group("");

  McArgs mc_args;
  CLI::App* mc_cmd = app.add_subcommand("mc", "Monte Carlo experiment with acceptance checks");
  mc_cmd->add_option("--lambda", mc_args.lambda, "mean degree, must be > 1")->required();
  mc_cmd->add_option("--n", mc_args.n, "vertex count")->required()->check(CLI::PositiveNumber);
  mc_cmd->add_option("--replicas", mc_args.replicas, "replica count")
      ->required()
      ->check(CLI::PositiveNumber);
  mc_cmd->add_option("--seed", mc_args.seed, "master seed")->envname("GIANTWALK_SEED");
  mc_cmd->add_option("--workers", mc_args.workers, "worker threads")->check(CLI::PositiveNumber);
  mc_cmd->add_flag("--keep-trajectories", mc_args.keep_trajectories,
                   "retain full paths (memory-guarded)");
  mc_cmd->add_option("--var-window", mc_args.var_window,
                     "variance-ratio acceptance window, two values")
      ->expected(2);
  mc_cmd->add_option("--json", mc_args.json_path, "write the JSON report here ('-' for stdout)");
  mc_cmd->add_option("--csv", mc_args.csv_path, "write per-replica CSV here");
  mc_cmd->add_option("--hist", mc_args.hist_path, "write standardized-L1 histogram CSV here");
  mc_cmd->add_option("--bins", mc_args.hist_bins, "histogram bin count")->check(CLI::PositiveNumber);

  ValidateArgs val_args;
  CLI::App* val_cmd = app.add_subcommand("validate", "walk vs oracle distribution comparison");
  val_cmd->add_option("--mode", val_args.mode, "enum (n <= 8) or graph (n <= 1e4)")
      ->required()
      ->check(CLI::IsMember({"enum", "graph"}));
  val_cmd->add_option("--n", val_args.n, "vertex count")->required()->check(CLI::PositiveNumber);
  val_cmd->add_option("--p", val_args.p, "edge probability")->check(CLI::Range(0.0, 1.0));
  val_cmd->add_option("--lambda", val_args.lambda, "mean degree (alternative to --p)");
  val_cmd->add_option("--replicas", val_args.replicas, "replicas per sampler")
      ->required()
      ->check(CLI::PositiveNumber);
  val_cmd->add_option("--seed", val_args.seed, "master seed")->envname("GIANTWALK_SEED");
  val_cmd->add_option("--workers", val_args.workers, "worker threads")->check(CLI::PositiveNumber);
  val_cmd->add_option("--json", val_args.json_path, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad flags are configuration (domain) errors
  }

  try {
    if (theory_cmd->parsed()) return run_theory(theory_args);
    if (sim_cmd->parsed()) return run_simulate(sim_args);
    if (mc_cmd->parsed()) return run_mc(mc_args);
    return run_validate(val_args);
  } catch (const gw::IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
