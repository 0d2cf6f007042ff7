#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "giantwalk/theory.hpp"

namespace giantwalk {

// Single-pass moments with a parallel merge (Welford update, Chan merge).
struct MomentAccumulator {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations from the running mean
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();

  void update(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
    min = std::min(min, x);
    max = std::max(max, x);
  }

  // Sample variance; 0 when undefined (count < 2), callers check count.
  double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
};

inline MomentAccumulator merge(const MomentAccumulator& a, const MomentAccumulator& b) {
  if (a.count == 0) return b;  // exact identity element
  if (b.count == 0) return a;
  MomentAccumulator out;
  out.count = a.count + b.count;
  const double delta = b.mean - a.mean;
  out.mean = a.mean + delta * static_cast<double>(b.count) / static_cast<double>(out.count);
  out.m2 = a.m2 + b.m2 +
           delta * delta * static_cast<double>(a.count) * static_cast<double>(b.count) /
               static_cast<double>(out.count);
  out.min = std::min(a.min, b.min);
  out.max = std::max(a.max, b.max);
  return out;
}

// The statistic of the central claim: (L1 - rho*n)/sigma.
inline double standardize(double l1, const TheoryValues& theory) {
  return (l1 - theory.t1) / std::sqrt(theory.sigma2);
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

namespace detail {

inline void require_sorted(const std::vector<double>& v, const char* who) {
  if (!std::is_sorted(v.begin(), v.end())) throw std::domain_error(std::string(who) + ": sample must be sorted");
}

}  // namespace detail

// One-sample Kolmogorov-Smirnov statistic against N(0,1):
// D = sup_x |ECDF(x) - Phi(x)|, evaluated on both sides of every jump.
inline double ks_one_sample(const std::vector<double>& sample) {
  if (sample.empty()) throw std::domain_error("ks_one_sample: empty sample");
  detail::require_sorted(sample, "ks_one_sample");
  const double m = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double cdf = normal_cdf(sample[i]);
    d = std::max(d, std::max(cdf - static_cast<double>(i) / m,
                             static_cast<double>(i + 1) / m - cdf));
  }
  return d;
}

// Two-sample KS statistic, sup over all jump points of either ECDF.
inline double ks_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw std::domain_error("ks_two_sample: empty sample");
  detail::require_sorted(a, "ks_two_sample");
  detail::require_sorted(b, "ks_two_sample");
  const double ma = static_cast<double>(a.size());
  const double mb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;  // count all ties at v on both sides
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / ma - static_cast<double>(j) / mb));
  }
  return d;
}

// Asymptotic Kolmogorov critical values: reject at level alpha when
// D > c(alpha)/sqrt(m) (one-sample) or D > c(alpha)*sqrt((m+k)/(m*k))
// (two-sample), with c(alpha) = sqrt(-ln(alpha/2)/2).
inline double kolmogorov_coefficient(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) throw std::domain_error("kolmogorov_coefficient: alpha in (0,1)");
  return std::sqrt(-std::log(alpha / 2.0) / 2.0);
}

inline double ks_critical_one_sample(double alpha, std::size_t m) {
  return kolmogorov_coefficient(alpha) / std::sqrt(static_cast<double>(m));
}

inline double ks_critical_two_sample(double alpha, std::size_t m, std::size_t k) {
  const double md = static_cast<double>(m), kd = static_cast<double>(k);
  return kolmogorov_coefficient(alpha) * std::sqrt((md + kd) / (md * kd));
}

// Regularized upper incomplete gamma Q(a, x): series for the lower tail when
// x < a+1, modified Lentz continued fraction otherwise.
inline double gamma_q(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) throw std::domain_error("gamma_q: requires a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  const double log_prefactor = -x + a * std::log(x) - std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int i = 0; i < 1000; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return 1.0 - sum * std::exp(log_prefactor);
  }
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::exp(log_prefactor) * h;
}

// Pearson chi-square of observed counts against expected probabilities over
// the same ordered bins. Bins whose expected count is below 5 are pooled into
// the following bin (the trailing remainder folds backwards into the last
// emitted bin), the standard validity rule.
struct ChiSquareResult {
  double statistic = 0.0;
  std::int64_t dof = 0;
  double p_value = 1.0;
  std::int64_t pooled_bins = 0;  // bins after pooling
};

inline ChiSquareResult chi_square(const std::vector<std::int64_t>& observed,
                                  const std::vector<double>& expected_probs) {
  if (observed.size() != expected_probs.size() || observed.empty())
    throw std::domain_error("chi_square: observed/expected size mismatch");
  double total_prob = 0.0;
  std::int64_t total_count = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (observed[i] < 0 || !(expected_probs[i] >= 0.0))
      throw std::domain_error("chi_square: negative entries");
    total_prob += expected_probs[i];
    total_count += observed[i];
  }
  if (total_count == 0 || total_prob <= 0.0) throw std::domain_error("chi_square: empty sample");
  std::vector<double> exp_pooled;
  std::vector<double> obs_pooled;
  double e_acc = 0.0, o_acc = 0.0;
  const double scale = static_cast<double>(total_count) / total_prob;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    e_acc += expected_probs[i] * scale;
    o_acc += static_cast<double>(observed[i]);
    if (e_acc >= 5.0) {
      exp_pooled.push_back(e_acc);
      obs_pooled.push_back(o_acc);
      e_acc = o_acc = 0.0;
    }
  }
  if (e_acc > 0.0 || o_acc > 0.0) {
    if (exp_pooled.empty()) {
      exp_pooled.push_back(e_acc);
      obs_pooled.push_back(o_acc);
    } else {
      exp_pooled.back() += e_acc;
      obs_pooled.back() += o_acc;
    }
  }
  ChiSquareResult out;
  out.pooled_bins = static_cast<std::int64_t>(exp_pooled.size());
  for (std::size_t i = 0; i < exp_pooled.size(); ++i) {
    const double diff = obs_pooled[i] - exp_pooled[i];
    out.statistic += diff * diff / exp_pooled[i];
  }
  out.dof = out.pooled_bins - 1;
  out.p_value = out.dof > 0 ? gamma_q(static_cast<double>(out.dof) / 2.0, out.statistic / 2.0) : 1.0;
  return out;
}

// Equal-width histogram over [min, max]; empty bins are kept so the bins
// tile the range for plotting.
struct HistogramBin {
  double left = 0.0;
  double right = 0.0;
  std::int64_t count = 0;
};

inline std::vector<HistogramBin> histogram(const std::vector<double>& sample, std::int64_t bin_count) {
  if (sample.empty()) throw std::domain_error("histogram: empty sample");
  if (bin_count < 1) throw std::domain_error("histogram: bin_count must be >= 1");
  const auto [lo_it, hi_it] = std::minmax_element(sample.begin(), sample.end());
  const double lo = *lo_it, hi = *hi_it;
  if (lo == hi) return {HistogramBin{lo, hi, static_cast<std::int64_t>(sample.size())}};
  const auto bins = static_cast<std::size_t>(bin_count);
  std::vector<HistogramBin> out(bins);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out[b].left = lo + width * static_cast<double>(b);
    out[b].right = lo + width * static_cast<double>(b + 1);
  }
  out.back().right = hi;
  for (const double x : sample) {
    auto b = static_cast<std::size_t>((x - lo) / width);
    if (b >= bins) b = bins - 1;  // x == hi lands in the last bin
    ++out[b].count;
  }
  return out;
}

}  // namespace giantwalk
