#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "giantwalk/exploration.hpp"
#include "giantwalk/rng.hpp"

namespace giantwalk {

// Ground truth for the walk's component-size law by independent means:
// materialized G(n, p) graphs via union-find, and exhaustive enumeration of
// all labeled graphs for tiny n.

class DisjointSets {
 public:
  explicit DisjointSets(std::int64_t n) : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 1) {
    for (std::size_t i = 0; i < parent_.size(); ++i) parent_[i] = static_cast<std::int64_t>(i);
  }

  std::int64_t find(std::int64_t v) {
    while (parent_[static_cast<std::size_t>(v)] != v) {
      auto& p = parent_[static_cast<std::size_t>(v)];
      p = parent_[static_cast<std::size_t>(p)];  // path halving
      v = p;
    }
    return v;
  }

  void unite(std::int64_t a, std::int64_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[static_cast<std::size_t>(a)] < size_[static_cast<std::size_t>(b)]) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    size_[static_cast<std::size_t>(a)] += size_[static_cast<std::size_t>(b)];
  }

  std::int64_t component_size(std::int64_t v) { return size_[static_cast<std::size_t>(find(v))]; }

 private:
  std::vector<std::int64_t> parent_;
  std::vector<std::int64_t> size_;
};

// Sample G(n, p) directly: every one of the C(n,2) edges tossed independently
// in (i, j) lexicographic order. Quadratic, so capped at validation scale.
inline ComponentStats sample_graph(std::int64_t n, double p, RngStream& rng) {
  if (n < 1) throw std::domain_error("sample_graph: n must be >= 1");
  if (n > 10000) throw std::domain_error("sample_graph: n > 10000 (quadratic edge loop; validation scale only)");
  if (!(p >= 0.0) || !(p <= 1.0)) throw std::domain_error("sample_graph: p must lie in [0, 1]");
  DisjointSets dsu(n);
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = i + 1; j < n; ++j)
      if (rng.uniform() < p) dsu.unite(i, j);
  ComponentStats out;
  for (std::int64_t v = 0; v < n; ++v)
    if (dsu.find(v) == v) out.add(dsu.component_size(v));
  return out;
}

// Exact distribution of the largest component size.
struct ExactPmf {
  std::int64_t n = 0;
  double p = 0.0;
  std::map<std::int64_t, double> mass;  // size k -> P(L1 = k), zero-mass keys omitted
};

namespace detail {

// Largest component of an adjacency-bitmask graph on n <= 8 vertices.
inline int largest_component(const std::array<std::uint8_t, 8>& adj, int n) {
  std::uint32_t seen = 0;
  int best = 0;
  for (int v = 0; v < n; ++v) {
    if (seen & (1u << v)) continue;
    std::uint32_t comp = 1u << v;
    std::uint32_t frontier = comp;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f;) {
        const int u = std::countr_zero(f);
        f &= f - 1;
        next |= adj[static_cast<std::size_t>(u)];
      }
      frontier = next & ~comp;
      comp |= frontier;
    }
    seen |= comp;
    best = std::max(best, std::popcount(comp));
  }
  return best;
}

}  // namespace detail

// Exhaustive pmf of L1 over all 2^C(n,2) labeled graphs. Subsets are visited
// in Gray-code order so each step flips a single edge in the adjacency masks;
// graphs are tallied as exact integer counts by (edge count, L1) and the
// p-weights enter only in the final 29x8 reduction, which keeps the masses
// summing to 1 at full double precision.
inline ExactPmf enumerate_pmf(std::int64_t n, double p) {
  if (n < 1) throw std::domain_error("enumerate_pmf: n must be >= 1");
  if (n > 8) throw std::domain_error("enumerate_pmf: n > 8 (exhaustive enumeration refused)");
  if (!(p >= 0.0) || !(p <= 1.0)) throw std::domain_error("enumerate_pmf: p must lie in [0, 1]");
  const int nv = static_cast<int>(n);
  const int ne = nv * (nv - 1) / 2;
  std::array<std::pair<int, int>, 28> edges{};
  {
    int e = 0;
    for (int i = 0; i < nv; ++i)
      for (int j = i + 1; j < nv; ++j) edges[static_cast<std::size_t>(e++)] = {i, j};
  }
  // counts[e][k] = number of graphs with e edges and L1 = k
  std::vector<std::array<std::uint64_t, 9>> counts(static_cast<std::size_t>(ne) + 1,
                                                   std::array<std::uint64_t, 9>{});
  std::array<std::uint8_t, 8> adj{};
  counts[0][static_cast<std::size_t>(detail::largest_component(adj, nv))]++;
  const std::uint64_t total = 1ull << ne;
  for (std::uint64_t i = 1; i < total; ++i) {
    const auto [u, v] = edges[static_cast<std::size_t>(std::countr_zero(i))];
    adj[static_cast<std::size_t>(u)] ^= static_cast<std::uint8_t>(1u << v);
    adj[static_cast<std::size_t>(v)] ^= static_cast<std::uint8_t>(1u << u);
    const std::uint64_t mask = i ^ (i >> 1);
    counts[static_cast<std::size_t>(std::popcount(mask))]
          [static_cast<std::size_t>(detail::largest_component(adj, nv))]++;
  }
  // p^e and (1-p)^(ne-e) by repeated multiplication; exact at p = 0 and 1.
  std::vector<double> pow_p(static_cast<std::size_t>(ne) + 1, 1.0);
  std::vector<double> pow_q(static_cast<std::size_t>(ne) + 1, 1.0);
  for (std::size_t e = 1; e <= static_cast<std::size_t>(ne); ++e) {
    pow_p[e] = pow_p[e - 1] * p;
    pow_q[e] = pow_q[e - 1] * (1.0 - p);
  }
  ExactPmf pmf;
  pmf.n = n;
  pmf.p = p;
  for (int k = 1; k <= nv; ++k) {
    double mass = 0.0;
    for (std::size_t e = 0; e <= static_cast<std::size_t>(ne); ++e) {
      const auto c = counts[e][static_cast<std::size_t>(k)];
      if (c != 0) mass += static_cast<double>(c) * pow_p[e] * pow_q[static_cast<std::size_t>(ne) - e];
    }
    if (mass != 0.0) pmf.mass[k] = mass;
  }
  return pmf;
}

}  // namespace giantwalk
