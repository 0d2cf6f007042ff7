#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "giantwalk/rng.hpp"
#include "giantwalk/theory.hpp"

namespace giantwalk {

// Component-exploration walk on G(n, p).
//
// Vertices are active, explored, or unseen. Each step takes one vertex --
// an active one if any exist, otherwise a fresh unseen vertex that starts a
// new component -- marks it explored, and reveals its edges to the unseen
// set. The number of new neighbours eta_t is Bin(U'_{t-1}, p) given the
// past, where U' is the unseen count minus one when a new component starts,
// so the walk has the exact law of the component structure of G(n, p)
// without ever materializing a graph. The walk value X_t = A_t - C_t
// decreases only in steps of 1 and first hits -i exactly when the i-th
// component is finished, so component sizes are the gaps between those
// hitting times and the whole exploration takes exactly n steps.

struct WalkState {
  std::int64_t t = 0;  // steps taken (vertices explored)
  std::int64_t A = 0;  // active vertices
  std::int64_t U = 0;  // unseen vertices; always n - t - A
  std::int64_t C = 0;  // components started
  std::int64_t X = 0;  // walk value A - C
};

inline WalkState initial_state(const Params& params) {
  WalkState s;
  s.U = params.n;
  return s;
}

// Unseen vertices eligible for edge tests at the next step: one fewer than U
// when the step must first activate a fresh vertex.
inline std::int64_t eligible_unseen(std::int64_t U, std::int64_t A) {
  return U - (A == 0 ? 1 : 0);
}

// Advance the walk one step; returns eta_t, the number of vertices revealed.
// The sampler must have been built with the same p as params.p.
inline std::int64_t step(WalkState& state, const Params& params, const BinomialSampler& binom,
                         RngStream& rng) {
  if (state.t >= params.n) throw std::logic_error("step: walk already completed n steps");
  const bool fresh = state.A == 0;
  const std::int64_t eta = binom(rng, eligible_unseen(state.U, state.A));
  state.t += 1;
  state.C += fresh ? 1 : 0;
  state.A += eta - 1 + (fresh ? 1 : 0);  // A becomes eta when a component starts
  state.U = params.n - state.t - state.A;
  state.X = state.A - state.C;
  return eta;
}

inline std::int64_t step(WalkState& state, const Params& params, RngStream& rng) {
  const BinomialSampler binom(params.p);
  return step(state, params, binom, rng);
}

// Full sample path of one replica. A, C, U, X are indexed by t = 0..n;
// eta[t-1] holds eta_t for t = 1..n.
struct Trajectory {
  Params params;
  std::uint64_t master_seed = 0;
  std::int64_t replica_index = 0;
  std::vector<std::int64_t> eta;
  std::vector<std::int64_t> A, C, U, X;
};

inline Trajectory run_walk(const Params& params, RngStream& rng) {
  Trajectory traj;
  traj.params = params;
  traj.master_seed = rng.master_seed();
  traj.replica_index = rng.replica_index();
  const auto n = static_cast<std::size_t>(params.n);
  traj.eta.resize(n);
  traj.A.assign(n + 1, 0);
  traj.C.assign(n + 1, 0);
  traj.U.assign(n + 1, 0);
  traj.X.assign(n + 1, 0);
  traj.U[0] = params.n;
  const BinomialSampler binom(params.p);
  WalkState s = initial_state(params);
  for (std::size_t t = 1; t <= n; ++t) {
    traj.eta[t - 1] = step(s, params, binom, rng);
    traj.A[t] = s.A;
    traj.C[t] = s.C;
    traj.U[t] = s.U;
    traj.X[t] = s.X;
  }
  return traj;
}

// Component sizes as gaps between successive first hits of X to -1, -2, ...;
// returned in decreasing order, so sizes.front() is L1. The sizes always
// partition [0, n], hence sum to n.
inline std::vector<std::int64_t> component_sizes(const Trajectory& traj) {
  std::vector<std::int64_t> sizes;
  std::int64_t last_close = 0;
  std::int64_t min_x = 0;
  for (std::int64_t t = 1; t <= traj.params.n; ++t) {
    if (traj.X[static_cast<std::size_t>(t)] < min_x) {
      min_x = traj.X[static_cast<std::size_t>(t)];
      sizes.push_back(t - last_close);
      last_close = t;
    }
  }
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  return sizes;
}

// Derived per-step series alongside the walk, all indexed by t with zeros at
// t = 0:
//   D_t       = p*U'_{t-1} - 1            conditional mean of eta_t - 1
//   Delta_t   = eta_t - 1 - D_t           centered increment
//   S_t       = sum_{i<=t} (1-p)^{-i} Delta_i    (a martingale)
//   Xtilde_t  = x_t + (1-p)^t S_t         approximating process
//   condvar_t = (1-p)^{-2t} U'_{t-1} p (1-p)     Var(S_t - S_{t-1} | past)
struct MartingaleSeries {
  std::vector<double> D;
  std::vector<double> Delta;
  std::vector<double> S;
  std::vector<double> Xtilde;
  std::vector<double> condvar;
};

// Streams the martingale series in O(1) state, one update per step. Both the
// whole-trajectory post-processor and the summary-only Monte Carlo path run
// exactly this code, so their outputs agree bit for bit.
//
// Xtilde is advanced by the forward form Xtilde_{t+1} = (1-p) Xtilde_t
// + p(n-t) - 1 + Delta_{t+1}, algebraically identical to x_t + (1-p)^t S_t
// but free of the growing (1-p)^{-t} factors, so it stays finite for every
// p in [0, 1]. S itself keeps the scaled form; at the boundary probabilities
// Delta is identically zero and the scaling is skipped.
class SeriesTracker {
 public:
  explicit SeriesTracker(const Params& params)
      : n_(static_cast<double>(params.n)),
        p_(params.p),
        q_(1.0 - params.p),
        inv_q_(1.0 / (1.0 - params.p)) {}

  // Advance from time t-1 to t; uprime = U'_{t-1}, eta = eta_t.
  void update(std::int64_t t_before, std::int64_t uprime, std::int64_t eta) {
    const double up = static_cast<double>(uprime);
    D_ = p_ * up - 1.0;
    Delta_ = static_cast<double>(eta) - 1.0 - D_;
    inv_pow_ *= inv_q_;
    if (Delta_ != 0.0) S_ += inv_pow_ * Delta_;
    const double var = up * p_ * q_;
    condvar_ = var == 0.0 ? 0.0 : inv_pow_ * inv_pow_ * var;
    Xtilde_ = q_ * Xtilde_ + p_ * (n_ - static_cast<double>(t_before)) - 1.0 + Delta_;
  }

  double D() const { return D_; }
  double Delta() const { return Delta_; }
  double S() const { return S_; }
  double Xtilde() const { return Xtilde_; }
  double condvar() const { return condvar_; }

 private:
  double n_;
  double p_;
  double q_;        // 1 - p
  double inv_q_;    // 1/(1-p); inf at p = 1, where every scaled term is zero
  double inv_pow_ = 1.0;  // (1-p)^{-t}
  double D_ = 0.0;
  double Delta_ = 0.0;
  double S_ = 0.0;
  double Xtilde_ = 0.0;
  double condvar_ = 0.0;
};

inline MartingaleSeries martingale_series(const Trajectory& traj) {
  const auto steps = static_cast<std::int64_t>(traj.eta.size());
  MartingaleSeries ms;
  const auto len = static_cast<std::size_t>(steps) + 1;
  ms.D.assign(len, 0.0);
  ms.Delta.assign(len, 0.0);
  ms.S.assign(len, 0.0);
  ms.Xtilde.assign(len, 0.0);
  ms.condvar.assign(len, 0.0);
  SeriesTracker tracker(traj.params);
  for (std::int64_t t = 1; t <= steps; ++t) {
    const auto i = static_cast<std::size_t>(t);
    tracker.update(t - 1, eligible_unseen(traj.U[i - 1], traj.A[i - 1]), traj.eta[i - 1]);
    ms.D[i] = tracker.D();
    ms.Delta[i] = tracker.Delta();
    ms.S[i] = tracker.S();
    ms.Xtilde[i] = tracker.Xtilde();
    ms.condvar[i] = tracker.condvar();
  }
  return ms;
}

// Running largest/second-largest component size and count.
struct ComponentStats {
  std::int64_t L1 = 0;
  std::int64_t L2 = 0;
  std::int64_t count = 0;

  void add(std::int64_t size) {
    ++count;
    if (size > L1) {
      L2 = L1;
      L1 = size;
    } else if (size > L2) {
      L2 = size;
    }
  }
};

// One replica's scalar outputs: component extremes plus the hitting-time and
// martingale diagnostics used by the acceptance predicates.
struct ReplicaSummary {
  std::int64_t replica_index = 0;
  std::int64_t L1 = 0;
  std::int64_t L2 = 0;
  std::int64_t component_count = 0;
  std::int64_t Z = 0;   // components finished within the early window t <= t0
  std::int64_t T0 = 0;  // first t with X_t = -Z (closure of component Z)
  std::int64_t T1 = 0;  // first t with X_t = -Z-1; n when never hit (see t1_hit)
  bool t1_hit = true;
  double sup_dev_Xtilde_f = 0.0;   // sup_{t <= t1} |Xtilde_t - f(t)|
  double sup_coupling = 0.0;       // sup_t |X_t - Xtilde_t|
  double condvar_sum = 0.0;        // sum_{0 < t < round(t1)} condvar_t
  double condvar_sum_ratio = 0.0;  // condvar_sum / (n rho / (1-rho))
  double Xtilde_at_t1 = 0.0;       // Xtilde at t = round(t1)
  double lin_dev = 0.0;  // sup_{|t - round(t1)| <= t0} |Xtilde_t - Xtilde_{t1} - a(t1 - t)|
};

// Folds per-step observations into a ReplicaSummary without storing the path.
class SummaryTracker {
 public:
  SummaryTracker(const Params& params, const TheoryValues& theory, const DiagnosticScales& scales)
      : n_(params.n),
        p_(params.p),
        t0_(scales.t0),
        rt1_(static_cast<std::int64_t>(std::nearbyint(theory.t1))),
        t1_real_(theory.t1),
        a_(theory.a),
        bracket_limit_(static_cast<double>(params.n) * theory.rho / (1.0 - theory.rho)),
        decay_step_(std::exp(-params.p)),
        lin_lo_(std::max<std::int64_t>(0, rt1_ - t0_)),
        lin_hi_(std::min<std::int64_t>(params.n, rt1_ + t0_)) {
    if (lin_lo_ == 0) observe_lin(0, 0.0);  // t = 0 contributes Xtilde_0 = 0
  }

  // Observations after step t completed; X, Xtilde, condvar at time t.
  void consume(std::int64_t t, std::int64_t X, double Xtilde, double condvar) {
    if (X < min_x_) {  // a new minimum of X closes one component
      min_x_ = X;
      components_.add(t - last_close_);
      last_close_ = t;
      if (t <= t0_) {
        Z_ = components_.count;
        T0_ = t;
      } else if (!t1_seen_) {
        t1_seen_ = true;
        T1_ = t;
      }
    }
    decay_ *= decay_step_;
    if ((t & 1023) == 0) decay_ = std::exp(-p_ * static_cast<double>(t));  // cap drift
    const double td = static_cast<double>(t);
    if (td <= t1_real_) {
      const double f = static_cast<double>(n_) - td - static_cast<double>(n_) * decay_;
      sup_dev_f_ = std::max(sup_dev_f_, std::fabs(Xtilde - f));
    }
    sup_coupling_ = std::max(sup_coupling_, std::fabs(static_cast<double>(X) - Xtilde));
    if (t < rt1_) condvar_sum_ += condvar;
    if (t >= lin_lo_ && t <= lin_hi_) observe_lin(t, Xtilde);
  }

  ReplicaSummary finalize(std::int64_t replica_index) const {
    ReplicaSummary out;
    out.replica_index = replica_index;
    out.L1 = components_.L1;
    out.L2 = components_.L2;
    out.component_count = components_.count;
    out.Z = Z_;
    out.T0 = T0_;
    out.T1 = t1_seen_ ? T1_ : n_;
    out.t1_hit = t1_seen_;
    out.sup_dev_Xtilde_f = sup_dev_f_;
    out.sup_coupling = sup_coupling_;
    out.condvar_sum = condvar_sum_;
    out.condvar_sum_ratio = bracket_limit_ > 0.0 ? condvar_sum_ / bracket_limit_ : 0.0;
    out.Xtilde_at_t1 = Xtilde_at_rt1_;
    out.lin_dev = std::max(lin_max_ - lin_at_rt1_, lin_at_rt1_ - lin_min_);
    return out;
  }

 private:
  void observe_lin(std::int64_t t, double Xtilde) {
    // dev(t) = Xtilde_t - Xtilde_{t1} - a(t1 - t) = g(t) - g(t1), g = Xtilde + a*t,
    // so one pass over the window suffices even though t1 comes in the middle.
    const double g = Xtilde + a_ * static_cast<double>(t);
    lin_min_ = std::min(lin_min_, g);
    lin_max_ = std::max(lin_max_, g);
    if (t == rt1_) {
      lin_at_rt1_ = g;
      Xtilde_at_rt1_ = Xtilde;
    }
  }

  std::int64_t n_;
  double p_;
  std::int64_t t0_;
  std::int64_t rt1_;
  double t1_real_;
  double a_;
  double bracket_limit_;
  double decay_step_;
  std::int64_t lin_lo_;
  std::int64_t lin_hi_;

  ComponentStats components_;
  std::int64_t last_close_ = 0;
  std::int64_t min_x_ = 0;
  std::int64_t Z_ = 0;
  std::int64_t T0_ = 0;
  std::int64_t T1_ = 0;
  bool t1_seen_ = false;
  double decay_ = 1.0;  // exp(-p*t), advanced incrementally
  double sup_dev_f_ = 0.0;
  double sup_coupling_ = 0.0;
  double condvar_sum_ = 0.0;
  double Xtilde_at_rt1_ = 0.0;
  double lin_min_ = std::numeric_limits<double>::infinity();
  double lin_max_ = -std::numeric_limits<double>::infinity();
  double lin_at_rt1_ = 0.0;
};

// Streaming replica: runs the walk and folds the summary, O(1) memory.
inline ReplicaSummary run_replica_summary(const Params& params, const TheoryValues& theory,
                                          const DiagnosticScales& scales, RngStream& rng) {
  const BinomialSampler binom(params.p);
  SeriesTracker series(params);
  SummaryTracker summary(params, theory, scales);
  WalkState s = initial_state(params);
  for (std::int64_t t = 1; t <= params.n; ++t) {
    const std::int64_t uprime = eligible_unseen(s.U, s.A);
    const std::int64_t eta = step(s, params, binom, rng);
    series.update(t - 1, uprime, eta);
    summary.consume(t, s.X, series.Xtilde(), series.condvar());
  }
  return summary.finalize(rng.replica_index());
}

// Same summary computed from a stored path; used by tests to pin the
// streaming fold against the arrays, and by trajectory-keeping runs.
inline ReplicaSummary summarize_replica(const Trajectory& traj, const TheoryValues& theory) {
  if (static_cast<std::int64_t>(traj.eta.size()) != traj.params.n)
    throw std::logic_error("summarize_replica: complete trajectory required");
  const DiagnosticScales scales = diagnostic_scales(traj.params);
  SeriesTracker series(traj.params);
  SummaryTracker summary(traj.params, theory, scales);
  for (std::int64_t t = 1; t <= traj.params.n; ++t) {
    const auto i = static_cast<std::size_t>(t);
    series.update(t - 1, eligible_unseen(traj.U[i - 1], traj.A[i - 1]), traj.eta[i - 1]);
    summary.consume(t, traj.X[i], series.Xtilde(), series.condvar());
  }
  return summary.finalize(traj.replica_index);
}

// Component extremes only; the cheap path for distribution-validation runs
// where no theory values exist (any p, including lambda <= 1).
inline ComponentStats run_walk_components(const Params& params, RngStream& rng) {
  const BinomialSampler binom(params.p);
  WalkState s = initial_state(params);
  ComponentStats out;
  std::int64_t last_close = 0;
  std::int64_t min_x = 0;
  for (std::int64_t t = 1; t <= params.n; ++t) {
    step(s, params, binom, rng);
    if (s.X < min_x) {
      min_x = s.X;
      out.add(t - last_close);
      last_close = t;
    }
  }
  return out;
}

}  // namespace giantwalk
