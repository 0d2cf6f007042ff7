#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace giantwalk {

// Model parameters for G(n, p). The usual parametrization is the sparse one,
// p = lambda/n with lambda > 1 held fixed; the walk itself is happy with any
// p in [0, 1] (the degenerate boundaries are exercised by tests), so range
// checks here are permissive and the supercriticality requirement is enforced
// by the theory entry points below, which have no meaning otherwise.
struct Params {
  std::int64_t n = 0;
  double p = 0.0;
  double lambda = 0.0;  // mean degree, n*p

  static Params from_mean_degree(std::int64_t n, double lambda) {
    if (n < 1) throw std::domain_error("params: n must be >= 1");
    if (!std::isfinite(lambda) || lambda < 0.0)
      throw std::domain_error("params: lambda must be finite and >= 0");
    const double p = lambda / static_cast<double>(n);
    if (p > 1.0) throw std::domain_error("params: lambda/n exceeds 1");
    return Params{n, p, lambda};
  }

  static Params from_edge_probability(std::int64_t n, double p) {
    if (n < 1) throw std::domain_error("params: n must be >= 1");
    if (!(p >= 0.0) || !(p <= 1.0)) throw std::domain_error("params: p must lie in [0, 1]");
    return Params{n, p, p * static_cast<double>(n)};
  }

  // Override p while keeping lambda as the nominal mean degree used for
  // theory/diagnostic scales; only the degenerate test paths use this.
  Params with_edge_probability(double p_forced) const {
    if (!(p_forced >= 0.0) || !(p_forced <= 1.0))
      throw std::domain_error("params: p must lie in [0, 1]");
    Params out = *this;
    out.p = p_forced;
    return out;
  }

  bool supercritical() const { return lambda > 1.0; }
};

// Survival probability of the Poisson(lambda) branching process: the unique
// root in (0, 1) of 1 - rho = exp(-lambda*rho). Supercritical lambda only;
// lambda <= 1 is rejected rather than mapped to rho = 0, since a silent zero
// would mask a misconfigured experiment.
inline double solve_rho(double lambda) {
  if (!std::isfinite(lambda)) throw std::domain_error("solve_rho: lambda must be finite");
  if (lambda <= 1.0) throw std::domain_error("solve_rho: requires lambda > 1");
  auto g = [lambda](double r) { return 1.0 - r - std::exp(-lambda * r); };
  // g ~ (lambda-1)*r > 0 just above the trivial root at 0 and
  // g(1) = -exp(-lambda) < 0, so [1e-12, 1] brackets the nontrivial root
  // unless lambda is within ~1e-12 of critical, where the root itself sits
  // below the bracket and the small-eps expansion is already exact to O(eps^2).
  double lo = 1e-12, hi = 1.0;
  if (g(lo) <= 0.0) return 2.0 * (lambda - 1.0) / (lambda * lambda);
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  // Newton polish; g'(r) = -1 + lambda*exp(-lambda*r).
  double r = 0.5 * (lo + hi);
  for (int i = 0; i < 5; ++i) {
    const double e = std::exp(-lambda * r);
    const double step = (1.0 - r - e) / (-1.0 + lambda * e);
    const double next = r - step;
    if (!(next > 0.0) || !(next < 1.0)) break;
    r = next;
    if (std::fabs(step) < 1e-16) break;
  }
  return r;
}

// Dual branching parameter lambda* = lambda*(1 - rho) < 1, the mean degree of
// the graph left after removing the giant; satisfies
// lambda* exp(-lambda*) = lambda exp(-lambda).
inline double dual_lambda(double lambda, double rho) {
  if (lambda <= 1.0) throw std::domain_error("dual_lambda: requires lambda > 1");
  if (!(rho > 0.0) || !(rho < 1.0)) throw std::domain_error("dual_lambda: rho must lie in (0, 1)");
  return lambda * (1.0 - rho);
}

// Asymptotic variance of the giant component size: rho(1-rho)n / (1-lambda*)^2.
inline double sigma2(double lambda, std::int64_t n) {
  const double rho = solve_rho(lambda);
  const double a = 1.0 - dual_lambda(lambda, rho);
  return rho * (1.0 - rho) * static_cast<double>(n) / (a * a);
}

// The closed-form constants bundled for reports and downstream checks.
struct TheoryValues {
  double rho = 0.0;          // giant component density
  double lambda_star = 0.0;  // dual branching parameter
  double sigma2 = 0.0;       // asymptotic variance of L1
  double t1 = 0.0;           // positive zero of f: rho * n (kept real)
  double a = 0.0;            // -f'(t1) = 1 - lambda*
};

inline TheoryValues theory_values(const Params& params) {
  TheoryValues out;
  out.rho = solve_rho(params.lambda);
  out.lambda_star = dual_lambda(params.lambda, out.rho);
  out.a = 1.0 - out.lambda_star;
  out.sigma2 = out.rho * (1.0 - out.rho) * static_cast<double>(params.n) / (out.a * out.a);
  out.t1 = out.rho * static_cast<double>(params.n);
  return out;
}

// Idealized continuous trajectory f(t) = n - t - n*exp(-p*t) and its slope
// f'(t) = -1 + n*p*exp(-p*t). The walk concentrates around f; f'(0) = lambda-1
// and f'(t1) = -(1 - lambda*).
struct IdealPoint {
  double f = 0.0;
  double fprime = 0.0;
};

inline IdealPoint trajectory_f(const Params& params, double t) {
  const double n = static_cast<double>(params.n);
  if (!(t >= 0.0) || !(t <= n)) throw std::domain_error("trajectory_f: t must lie in [0, n]");
  const double decay = std::exp(-params.p * t);
  return IdealPoint{n - t - n * decay, -1.0 + n * params.p * decay};
}

// Discrete drift curve x_t = n - t - n*(1-p)^t: the exact one-step mean path,
// satisfying x_{t+1} = (1-p)x_t + p(n-t) - 1 with x_0 = 0, and staying within
// O(1) of f on [0, n]. (1-p)^t goes through log1p so p ~ 1e-6, t ~ 1e6 keeps
// full precision; p = 1 is split off because log1p(-1) = -inf.
inline double trajectory_x(const Params& params, std::int64_t t) {
  if (t < 0 || t > params.n) throw std::domain_error("trajectory_x: t must lie in [0, n]");
  const double n = static_cast<double>(params.n);
  const double td = static_cast<double>(t);
  if (params.p == 1.0) return t == 0 ? 0.0 : n - td;
  return n - td - n * std::exp(td * std::log1p(-params.p));
}

// Scales of the early-window diagnostics, eps = lambda - 1: the window length
// t0 = round(omega*sigma0/eps) is long enough for the walk to escape once it
// survives, short enough that the drift is still ~eps per step. omega must
// grow slowly with omega^6 = o(eps^3 n); the 1/7 exponent is the concrete
// reproducible choice. Subcritical params get t0 = 0 (no early window), which
// degrades the T0/T1/Z diagnostics gracefully instead of throwing in library
// paths that never consult theory.
struct DiagnosticScales {
  double epsilon = 0.0;  // lambda - 1
  double sigma0 = 0.0;   // sqrt(eps * n)
  double omega = 0.0;    // (eps^3 * n)^(1/7)
  std::int64_t t0 = 0;   // round(omega * sigma0 / eps), clamped to [0, n]
};

inline DiagnosticScales diagnostic_scales(const Params& params) {
  DiagnosticScales s;
  s.epsilon = params.lambda - 1.0;
  if (!params.supercritical()) return s;
  const double n = static_cast<double>(params.n);
  s.sigma0 = std::sqrt(s.epsilon * n);
  s.omega = std::pow(s.epsilon * s.epsilon * s.epsilon * n, 1.0 / 7.0);
  // std::nearbyint under the default FP environment rounds half to even.
  s.t0 = static_cast<std::int64_t>(std::nearbyint(s.omega * s.sigma0 / s.epsilon));
  if (s.t0 > params.n) s.t0 = params.n;
  return s;
}

// Limit of the summed conditional variances of the scaled martingale
// increments along the giant exploration:
// sum_{t<t1} (1-p)^{-2t} U'_{t-1} p (1-p)  ->  n*rho/(1-rho).
inline double martingale_bracket_limit(const Params& params) {
  const double rho = solve_rho(params.lambda);
  return static_cast<double>(params.n) * rho / (1.0 - rho);
}

}  // namespace giantwalk
