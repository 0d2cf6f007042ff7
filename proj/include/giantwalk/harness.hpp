#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "giantwalk/exploration.hpp"
#include "giantwalk/oracle.hpp"
#include "giantwalk/rng.hpp"
#include "giantwalk/stats.hpp"
#include "giantwalk/theory.hpp"

namespace giantwalk {

enum class Mode { mc, validate_enum, validate_graph, single_trajectory };

inline const char* mode_name(Mode m) {
  switch (m) {
    case Mode::mc: return "mc";
    case Mode::validate_enum: return "validate_enum";
    case Mode::validate_graph: return "validate_graph";
    case Mode::single_trajectory: return "single_trajectory";
  }
  return "?";
}

// Significance level for the distribution-validation tests.
inline constexpr double kValidationAlpha = 0.001;

// Everything defining one experiment, including the acceptance thresholds.
// The asymptotic/whp claims under test have no finite-n rates, so each
// threshold is an implementer-calibrated constant; they are fields (not
// buried literals) so every report can echo the values it was judged by.
struct ExperimentConfig {
  Params params;
  std::int64_t replicas = 1;
  std::uint64_t master_seed = 0;
  Mode mode = Mode::mc;
  int worker_count = 1;
  bool keep_trajectories = false;

  double mean_slack = 0.02;          // |mean - rho n|/sigma <= 4/sqrt(R) + slack
  double var_window_lo = 0.9;        // var(L1)/sigma^2 window
  double var_window_hi = 1.1;
  double ks_coefficient = 1.95;      // standardized KS <= coeff/sqrt(R)
  double t1_containment_min = 0.95;  // fraction with |T1 - t1| <= t0
  double z_bound_min = 0.95;         // fraction with Z <= sigma0/omega
  double condvar_lo = 0.95;          // median condvar-sum ratio window
  double condvar_hi = 1.05;
  double l2_fraction = 0.05;         // max L2 <= fraction * rho n
};

struct CheckResult {
  std::string name;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool pass = false;
};

struct MCReport {
  ExperimentConfig config;
  TheoryValues theory;
  DiagnosticScales scales;
  MomentAccumulator L1_moments;
  bool variance_defined = false;
  double mean_offset = 0.0;     // (mean - rho n)/sigma
  double variance_ratio = 0.0;  // var(L1)/sigma^2
  double standardized_ks = 0.0;
  double t1_containment_fraction = 0.0;
  double z_bound_fraction = 0.0;
  double condvar_ratio_median = 0.0;
  std::int64_t L2_max = 0;
  double runtime_seconds = 0.0;  // human output only; never serialized
  std::vector<CheckResult> checks;
  bool all_pass = false;
  std::vector<ReplicaSummary> replicas;
  std::vector<Trajectory> trajectories;  // filled only when keep_trajectories
};

namespace detail {

// Run fn(0..R-1), each call writing results only into its own slot. Work is
// handed out by an atomic counter; determinism comes from per-replica seeding
// plus slot storage, not from scheduling, so any worker count gives the same
// aggregate.
template <class Fn>
inline void parallel_replicas(std::int64_t replicas, int workers, Fn&& fn) {
  if (workers <= 1 || replicas <= 1) {
    for (std::int64_t r = 0; r < replicas; ++r) fn(r);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      const std::int64_t r = next.fetch_add(1, std::memory_order_relaxed);
      if (r >= replicas) return;
      try {
        fn(r);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  const auto count = static_cast<int>(std::min<std::int64_t>(workers, replicas));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) pool.emplace_back(body);
  for (auto& worker : pool) worker.join();
  if (error) std::rethrow_exception(error);
}

inline double median_of_sorted(const std::vector<double>& v) {
  const std::size_t m = v.size();
  return m % 2 == 1 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

inline void check_config(const ExperimentConfig& config) {
  if (config.replicas < 1) throw std::domain_error("experiment: replicas must be >= 1");
  if (config.worker_count < 1) throw std::domain_error("experiment: worker_count must be >= 1");
}

}  // namespace detail

// Monte Carlo experiment: R independent replicas on streams
// seed_stream(master_seed, 0..R-1), aggregated in replica-index order.
inline MCReport run_experiment(const ExperimentConfig& config) {
  detail::check_config(config);
  const std::int64_t R = config.replicas;
  if (config.keep_trajectories) {
    const double bytes =
        static_cast<double>(R) * (static_cast<double>(config.params.n) * 8.0 +
                                  4.0 * static_cast<double>(config.params.n + 1) * 8.0);
    if (bytes > 1.5e9)
      throw std::domain_error("experiment: keep_trajectories would need about " +
                              std::to_string(static_cast<long long>(bytes / (1 << 20))) +
                              " MiB; refusing above 1430 MiB");
  }
  const auto start = std::chrono::steady_clock::now();
  MCReport rep;
  rep.config = config;
  rep.theory = theory_values(config.params);
  rep.scales = diagnostic_scales(config.params);
  rep.replicas.resize(static_cast<std::size_t>(R));
  if (config.keep_trajectories) rep.trajectories.resize(static_cast<std::size_t>(R));
  detail::parallel_replicas(R, config.worker_count, [&](std::int64_t r) {
    RngStream rng = seed_stream(config.master_seed, r);
    const auto slot = static_cast<std::size_t>(r);
    if (config.keep_trajectories) {
      Trajectory traj = run_walk(config.params, rng);
      rep.replicas[slot] = summarize_replica(traj, rep.theory);
      rep.trajectories[slot] = std::move(traj);
    } else {
      rep.replicas[slot] = run_replica_summary(config.params, rep.theory, rep.scales, rng);
    }
  });

  const double sigma = std::sqrt(rep.theory.sigma2);
  std::vector<double> standardized;
  std::vector<double> condvar_ratios;
  standardized.reserve(rep.replicas.size());
  condvar_ratios.reserve(rep.replicas.size());
  std::int64_t contained = 0;
  std::int64_t z_ok = 0;
  const double z_bound = rep.scales.omega > 0.0 ? rep.scales.sigma0 / rep.scales.omega : 0.0;
  for (const ReplicaSummary& s : rep.replicas) {
    const auto l1 = static_cast<double>(s.L1);
    rep.L1_moments.update(l1);
    standardized.push_back(standardize(l1, rep.theory));
    condvar_ratios.push_back(s.condvar_sum_ratio);
    if (std::fabs(static_cast<double>(s.T1) - rep.theory.t1) <= static_cast<double>(rep.scales.t0))
      ++contained;
    if (static_cast<double>(s.Z) <= z_bound) ++z_ok;
    rep.L2_max = std::max(rep.L2_max, s.L2);
  }
  std::sort(standardized.begin(), standardized.end());
  std::sort(condvar_ratios.begin(), condvar_ratios.end());
  const auto Rd = static_cast<double>(R);
  rep.variance_defined = rep.L1_moments.count > 1;
  rep.mean_offset = (rep.L1_moments.mean - rep.theory.t1) / sigma;
  rep.variance_ratio = rep.L1_moments.variance() / rep.theory.sigma2;
  rep.standardized_ks = ks_one_sample(standardized);
  rep.t1_containment_fraction = static_cast<double>(contained) / Rd;
  rep.z_bound_fraction = static_cast<double>(z_ok) / Rd;
  rep.condvar_ratio_median = detail::median_of_sorted(condvar_ratios);

  const double mean_bound = 4.0 / std::sqrt(Rd) + config.mean_slack;
  const double ks_bound = config.ks_coefficient / std::sqrt(Rd);
  const double l2_bound = config.l2_fraction * rep.theory.t1;
  rep.checks = {
      CheckResult{"mean_offset", rep.mean_offset, -mean_bound, mean_bound,
                  std::fabs(rep.mean_offset) <= mean_bound},
      CheckResult{"variance_ratio", rep.variance_ratio, config.var_window_lo, config.var_window_hi,
                  rep.variance_ratio >= config.var_window_lo &&
                      rep.variance_ratio <= config.var_window_hi},
      CheckResult{"standardized_ks", rep.standardized_ks, 0.0, ks_bound,
                  rep.standardized_ks <= ks_bound},
      CheckResult{"t1_containment_fraction", rep.t1_containment_fraction,
                  config.t1_containment_min, 1.0,
                  rep.t1_containment_fraction >= config.t1_containment_min},
      CheckResult{"z_bound_fraction", rep.z_bound_fraction, config.z_bound_min, 1.0,
                  rep.z_bound_fraction >= config.z_bound_min},
      CheckResult{"condvar_ratio_median", rep.condvar_ratio_median, config.condvar_lo,
                  config.condvar_hi,
                  rep.condvar_ratio_median >= config.condvar_lo &&
                      rep.condvar_ratio_median <= config.condvar_hi},
      CheckResult{"l2_max", static_cast<double>(rep.L2_max), 0.0, l2_bound,
                  static_cast<double>(rep.L2_max) <= l2_bound},
  };
  rep.all_pass = true;
  for (const CheckResult& c : rep.checks) rep.all_pass = rep.all_pass && c.pass;

  if (config.keep_trajectories) {
    // Spot checks the stored paths buy us: gap sizes partition [0, n].
    for (const Trajectory& traj : rep.trajectories) {
      std::int64_t sum = 0;
      for (const std::int64_t size : component_sizes(traj)) sum += size;
      if (sum != config.params.n)
        throw std::logic_error("experiment: component sizes do not sum to n");
    }
  }
  rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

// Walk L1 counts against the exhaustive pmf, judged by chi-square.
struct EnumValidationReport {
  ExperimentConfig config;
  ExactPmf exact;
  std::vector<std::int64_t> observed;  // counts for L1 = 1..n
  ChiSquareResult chi;
  bool pass = false;
  double runtime_seconds = 0.0;
};

inline EnumValidationReport validate_enum(const ExperimentConfig& config) {
  detail::check_config(config);
  const auto start = std::chrono::steady_clock::now();
  EnumValidationReport rep;
  rep.config = config;
  rep.exact = enumerate_pmf(config.params.n, config.params.p);
  std::vector<std::int64_t> l1s(static_cast<std::size_t>(config.replicas));
  detail::parallel_replicas(config.replicas, config.worker_count, [&](std::int64_t r) {
    RngStream rng = seed_stream(config.master_seed, r);
    l1s[static_cast<std::size_t>(r)] = run_walk_components(config.params, rng).L1;
  });
  rep.observed.assign(static_cast<std::size_t>(config.params.n), 0);
  for (const std::int64_t l1 : l1s) rep.observed[static_cast<std::size_t>(l1 - 1)]++;
  std::vector<double> expected(static_cast<std::size_t>(config.params.n), 0.0);
  for (const auto& [k, mass] : rep.exact.mass) expected[static_cast<std::size_t>(k - 1)] = mass;
  rep.chi = chi_square(rep.observed, expected);
  rep.pass = rep.chi.p_value > kValidationAlpha;
  rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

// Walk L1 sample against a union-find sample of materialized graphs, judged
// by two-sample KS. Walk replicas use streams 0..R-1, graph replicas streams
// R..2R-1, so the two samples are independent under one master seed.
struct GraphValidationReport {
  ExperimentConfig config;
  MomentAccumulator walk_l1;
  MomentAccumulator graph_l1;
  double ks = 0.0;
  double ks_critical = 0.0;
  bool pass = false;
  double runtime_seconds = 0.0;
};

inline GraphValidationReport validate_graph(const ExperimentConfig& config) {
  detail::check_config(config);
  const auto start = std::chrono::steady_clock::now();
  GraphValidationReport rep;
  rep.config = config;
  const std::int64_t R = config.replicas;
  std::vector<double> walk_sample(static_cast<std::size_t>(R));
  std::vector<double> graph_sample(static_cast<std::size_t>(R));
  detail::parallel_replicas(2 * R, config.worker_count, [&](std::int64_t r) {
    RngStream rng = seed_stream(config.master_seed, r);
    if (r < R) {
      walk_sample[static_cast<std::size_t>(r)] =
          static_cast<double>(run_walk_components(config.params, rng).L1);
    } else {
      graph_sample[static_cast<std::size_t>(r - R)] =
          static_cast<double>(sample_graph(config.params.n, config.params.p, rng).L1);
    }
  });
  for (const double v : walk_sample) rep.walk_l1.update(v);
  for (const double v : graph_sample) rep.graph_l1.update(v);
  std::sort(walk_sample.begin(), walk_sample.end());
  std::sort(graph_sample.begin(), graph_sample.end());
  rep.ks = ks_two_sample(walk_sample, graph_sample);
  rep.ks_critical = ks_critical_two_sample(kValidationAlpha, walk_sample.size(), graph_sample.size());
  rep.pass = rep.ks < rep.ks_critical;
  rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace giantwalk
