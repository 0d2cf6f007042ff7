#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "giantwalk/errors.hpp"
#include "giantwalk/exploration.hpp"
#include "giantwalk/harness.hpp"
#include "giantwalk/oracle.hpp"
#include "giantwalk/stats.hpp"
#include "giantwalk/version.hpp"

namespace giantwalk {

// Key order in every JSON document is fixed at insertion, and doubles
// serialize as the shortest exact round-trip, so identical values produce
// byte-identical files -- the determinism contract leans on this.
using ordered_json = nlohmann::ordered_json;

// Shortest decimal that round-trips any double: 17 significant digits.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

inline void finish_output(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

// Trajectory dump, one row per step t = 1..n.
inline void write_trajectory_csv(std::ostream& out, const Trajectory& traj,
                                 const MartingaleSeries& series) {
  out << "t,eta,A,C,U,X,Xtilde\n";
  for (std::size_t t = 1; t < traj.A.size(); ++t) {
    out << t << ',' << traj.eta[t - 1] << ',' << traj.A[t] << ',' << traj.C[t] << ',' << traj.U[t]
        << ',' << traj.X[t] << ',' << fmt17(series.Xtilde[t]) << '\n';
  }
}

inline void write_replicas_csv(std::ostream& out, const MCReport& rep) {
  out << "replica_index,L1,L2,T0,T1,Z,standardized_L1\n";
  for (const ReplicaSummary& s : rep.replicas) {
    out << s.replica_index << ',' << s.L1 << ',' << s.L2 << ',' << s.T0 << ',' << s.T1 << ','
        << s.Z << ',' << fmt17(standardize(static_cast<double>(s.L1), rep.theory)) << '\n';
  }
}

inline void write_histogram_csv(std::ostream& out, const std::vector<HistogramBin>& bins) {
  out << "bin_left,bin_right,count\n";
  for (const HistogramBin& b : bins)
    out << fmt17(b.left) << ',' << fmt17(b.right) << ',' << b.count << '\n';
}

inline ordered_json theory_json(const Params& params, const TheoryValues& theory) {
  ordered_json j;
  j["version"] = std::string(kVersion);
  j["config"] = {{"n", params.n}, {"lambda", params.lambda}, {"p", params.p}};
  j["rho"] = theory.rho;
  j["lambda_star"] = theory.lambda_star;
  j["sigma2"] = theory.sigma2;
  j["sigma"] = std::sqrt(theory.sigma2);
  j["t1"] = theory.t1;
  j["a"] = theory.a;
  return j;
}

inline ordered_json pmf_json(const ExactPmf& pmf) {
  ordered_json j;
  j["n"] = pmf.n;
  j["p"] = pmf.p;
  ordered_json mass = ordered_json::object();
  for (const auto& [k, m] : pmf.mass) mass[std::to_string(k)] = m;  // map keys ascend
  j["pmf"] = mass;
  return j;
}

namespace detail {

// Config echo embedded in reports. worker_count is deliberately absent: the
// report is identical for any worker count and is required to serialize
// byte-identically, so only result-affecting fields appear. Thresholds are
// echoed because every pass flag is judged against them.
inline ordered_json config_json(const ExperimentConfig& config) {
  ordered_json j;
  j["mode"] = mode_name(config.mode);
  j["n"] = config.params.n;
  j["lambda"] = config.params.lambda;
  j["p"] = config.params.p;
  j["replicas"] = config.replicas;
  j["master_seed"] = config.master_seed;
  j["keep_trajectories"] = config.keep_trajectories;
  j["thresholds"] = {{"mean_slack", config.mean_slack},
                     {"var_window_lo", config.var_window_lo},
                     {"var_window_hi", config.var_window_hi},
                     {"ks_coefficient", config.ks_coefficient},
                     {"t1_containment_min", config.t1_containment_min},
                     {"z_bound_min", config.z_bound_min},
                     {"condvar_lo", config.condvar_lo},
                     {"condvar_hi", config.condvar_hi},
                     {"l2_fraction", config.l2_fraction}};
  return j;
}

inline ordered_json checks_json(const std::vector<CheckResult>& checks) {
  ordered_json arr = ordered_json::array();
  for (const CheckResult& c : checks)
    arr.push_back({{"name", c.name}, {"value", c.value}, {"lo", c.lo}, {"hi", c.hi}, {"pass", c.pass}});
  return arr;
}

inline ordered_json header_json(const ExperimentConfig& config) {
  ordered_json j;
  j["version"] = std::string(kVersion);
  j["algorithm_id"] = std::string(RngStream::kAlgorithmId);
  j["master_seed"] = config.master_seed;
  j["config"] = config_json(config);
  return j;
}

}  // namespace detail

// Canonical machine-readable report. runtime_seconds stays out: reruns with
// an identical config must serialize byte-identically.
inline ordered_json report_json(const MCReport& rep) {
  ordered_json j = detail::header_json(rep.config);
  j["theory"] = {{"rho", rep.theory.rho},   {"lambda_star", rep.theory.lambda_star},
                 {"sigma2", rep.theory.sigma2}, {"sigma", std::sqrt(rep.theory.sigma2)},
                 {"t1", rep.theory.t1},     {"a", rep.theory.a}};
  j["scales"] = {{"epsilon", rep.scales.epsilon},
                 {"sigma0", rep.scales.sigma0},
                 {"omega", rep.scales.omega},
                 {"t0", rep.scales.t0}};
  j["l1_moments"] = {{"count", rep.L1_moments.count},
                     {"mean", rep.L1_moments.mean},
                     {"variance", rep.L1_moments.variance()},
                     {"variance_defined", rep.variance_defined},
                     {"min", rep.L1_moments.min},
                     {"max", rep.L1_moments.max}};
  j["stats"] = {{"mean_offset", rep.mean_offset},
                {"variance_ratio", rep.variance_ratio},
                {"standardized_ks", rep.standardized_ks},
                {"t1_containment_fraction", rep.t1_containment_fraction},
                {"z_bound_fraction", rep.z_bound_fraction},
                {"condvar_ratio_median", rep.condvar_ratio_median},
                {"l2_max", rep.L2_max}};
  j["checks"] = detail::checks_json(rep.checks);
  j["all_pass"] = rep.all_pass;
  return j;
}

inline ordered_json report_json(const EnumValidationReport& rep) {
  ordered_json j = detail::header_json(rep.config);
  j["exact_pmf"] = pmf_json(rep.exact)["pmf"];
  ordered_json observed = ordered_json::object();
  for (std::size_t k = 0; k < rep.observed.size(); ++k)
    if (rep.observed[k] != 0) observed[std::to_string(k + 1)] = rep.observed[k];
  j["observed"] = observed;
  j["chi_square"] = {{"statistic", rep.chi.statistic},
                     {"dof", rep.chi.dof},
                     {"p_value", rep.chi.p_value},
                     {"pooled_bins", rep.chi.pooled_bins},
                     {"alpha", kValidationAlpha}};
  j["pass"] = rep.pass;
  return j;
}

inline ordered_json report_json(const GraphValidationReport& rep) {
  ordered_json j = detail::header_json(rep.config);
  j["walk_l1"] = {{"count", rep.walk_l1.count},
                  {"mean", rep.walk_l1.mean},
                  {"variance", rep.walk_l1.variance()},
                  {"min", rep.walk_l1.min},
                  {"max", rep.walk_l1.max}};
  j["graph_l1"] = {{"count", rep.graph_l1.count},
                   {"mean", rep.graph_l1.mean},
                   {"variance", rep.graph_l1.variance()},
                   {"min", rep.graph_l1.min},
                   {"max", rep.graph_l1.max}};
  j["ks_two_sample"] = {{"statistic", rep.ks},
                        {"critical", rep.ks_critical},
                        {"alpha", kValidationAlpha}};
  j["pass"] = rep.pass;
  return j;
}

inline std::string dump_json(const ordered_json& j) { return j.dump(2) + "\n"; }

inline void write_json_file(const std::string& path, const ordered_json& j) {
  std::ofstream out = open_output(path);
  out << dump_json(j);
  finish_output(out, path);
}

}  // namespace giantwalk
