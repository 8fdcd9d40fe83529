// SPDX-License-Identifier: Apache-2.0
#pragma once

// Erasure-pattern statistics for l uniformly random failures among the q^m nodes.
//
// A pattern splits into groups along axis lines; a partition type records how many
// groups of each size occur. Its probability is
//
//   P(A) = C(q^(m-1), w) w! prod_i C(q, l_i)^(g_i) / (g_1! ... g_nu! C(q^m, l)),
//
// and the expected bandwidth is the P-weighted sum of the per-pattern bandwidth bound.

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <future>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "grmrepair/grm.hpp"
#include "grmrepair/repair_multi.hpp"
#include "grmrepair/repair_single.hpp"

namespace grmrepair {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline BigInt factorial(std::uint64_t n) {
  BigInt r = 1;
  for (std::uint64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

/// {(group size l_i, multiplicity g_i)}, sizes strictly decreasing.
struct PartitionType {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> parts;

  std::uint64_t l() const {
    std::uint64_t s = 0;
    for (auto [li, gi] : parts) s += li * gi;
    return s;
  }
  std::uint64_t w() const {
    std::uint64_t s = 0;
    for (auto [li, gi] : parts) s += gi;
    return s;
  }
  std::string to_string() const {
    std::string s;
    for (auto [li, gi] : parts)
      for (std::uint64_t k = 0; k < gi; ++k) s += (s.empty() ? "" : "+") + std::to_string(li);
    return s;
  }
  friend bool operator==(const PartitionType&, const PartitionType&) = default;
};

/// All integer partitions of l, largest part first.
inline std::vector<PartitionType> integer_partitions(std::uint64_t l) {
  std::vector<PartitionType> out;
  std::vector<std::uint64_t> cur;
  auto rec = [&](auto& self, std::uint64_t rest, std::uint64_t max_part) -> void {
    if (rest == 0) {
      PartitionType pt;
      for (auto x : cur) {
        if (!pt.parts.empty() && pt.parts.back().first == x) ++pt.parts.back().second;
        else pt.parts.push_back({x, 1});
      }
      out.push_back(std::move(pt));
      return;
    }
    for (std::uint64_t k = std::min(rest, max_part); k >= 1; --k) {
      cur.push_back(k);
      self(self, rest - k, k);
      cur.pop_back();
    }
  };
  rec(rec, l, l);
  return out;
}

/// The partition type of a concrete grouping.
inline PartitionType partition_of(const std::vector<std::size_t>& group_sizes) {
  std::map<std::uint64_t, std::uint64_t, std::greater<>> count;
  for (auto s : group_sizes) ++count[s];
  PartitionType pt;
  for (auto [li, gi] : count) pt.parts.push_back({li, gi});
  return pt;
}

inline Rational partition_probability(const CodeParams& cp, const PartitionType& pt) {
  const std::uint64_t q = cp.q(), lines = detail::ipow(q, cp.m - 1);
  BigInt num = binomial(lines, pt.w()) * factorial(pt.w());
  BigInt den = binomial(cp.n(), pt.l());
  for (auto [li, gi] : pt.parts) {
    num *= boost::multiprecision::pow(binomial(q, li), static_cast<unsigned>(gi));
    den *= factorial(gi);
  }
  if (den == 0) throw std::invalid_argument("more erasures than nodes");
  return Rational(num, den);
}

/// Common subspace dimension s with p^t - p^(s+1) <= mu <= p^t - p^s - 1, and the
/// largest l for which every group size keeps s_i = s in each model.
struct RegimeParams {
  std::uint32_t s = 0;
  std::uint64_t distributed_cap = 0;  // p^t - p^s - mu - 1
  std::uint64_t centralized_cap = 0;  // floor((p^t + p^s - mu - 2) / (2 p^s - 1))

  std::uint64_t cap(RepairModel m) const { return m == RepairModel::distributed ? distributed_cap : centralized_cap; }
};

inline RegimeParams regime(const CodeParams& cp) {
  RegimeParams r;
  r.s = single_subspace_dim(cp);
  const std::uint64_t q = cp.q(), ps = detail::ipow(cp.p, r.s);
  r.distributed_cap = q - ps - cp.mu - 1;
  r.centralized_cap = (q + ps - cp.mu - 2) / (2 * ps - 1);
  return r;
}

/// How each group's subspace dimension is chosen when pricing a pattern.
enum class ExpectationMode {
  regime,     // common s; the regime cap for the model must admit l
  common_s,   // common s from the single-erasure formula, no cap check
  per_group,  // each group's own s_i from the model's construction
};

inline const char* to_string(ExpectationMode m) {
  switch (m) {
    case ExpectationMode::regime: return "regime";
    case ExpectationMode::common_s: return "common_s";
    case ExpectationMode::per_group: return "per_group";
  }
  return "?";
}

inline std::uint64_t group_bandwidth(const CodeParams& cp, RepairModel model, std::uint64_t size, std::uint32_t s) {
  const std::uint64_t per = (cp.q() - size) * (cp.t - s);
  return model == RepairModel::distributed ? size * per : per;
}

/// Bandwidth bound of a pattern with the given partition type.
inline std::uint64_t partition_bandwidth(const CodeParams& cp, const PartitionType& pt, RepairModel model, ExpectationMode mode) {
  const std::uint32_t common = mode == ExpectationMode::per_group ? 0 : single_subspace_dim(cp);
  std::uint64_t b = 0;
  for (auto [li, gi] : pt.parts) {
    const std::uint32_t s = mode == ExpectationMode::per_group ? subspace_dim(cp, model, li) : common;
    b += gi * group_bandwidth(cp, model, li, s);
  }
  return b;
}

inline void check_regime(const CodeParams& cp, std::uint64_t l, RepairModel model) {
  const auto r = regime(cp);
  if (l > r.cap(model)) {
    const std::string ineq = model == RepairModel::distributed ? "l <= p^t - p^s - mu - 1" : "l <= (p^t + p^s - mu - 2)/(2p^s - 1)";
    throw InfeasibleScheme("regime violated: " + ineq + " fails (l = " + std::to_string(l) + ", cap = " + std::to_string(r.cap(model)) + ")");
  }
}

inline Rational exact_expected_bandwidth(const CodeParams& cp, std::uint64_t l, RepairModel model,
                                         ExpectationMode mode = ExpectationMode::regime) {
  if (l == 0) throw std::invalid_argument("l must be >= 1");
  if (mode == ExpectationMode::regime) check_regime(cp, l, model);
  Rational e = 0;
  for (const auto& pt : integer_partitions(l)) {
    const Rational prob = partition_probability(cp, pt);
    if (prob == 0) continue;
    e += prob * Rational(BigInt(partition_bandwidth(cp, pt, model, mode)));
  }
  return e;
}

struct MonteCarloResult {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::uint64_t samples = 0;
};

/// Uniform l-subsets of nodes, grouped along axis 1 and priced by the bound formula.
/// The budget is split over a fixed number of independently seeded chunks, so the result
/// depends only on (seed, samples).
inline MonteCarloResult monte_carlo_expectation(const CodeParams& cp, std::uint64_t l, RepairModel model, std::uint64_t samples,
                                                std::uint64_t seed, ExpectationMode mode = ExpectationMode::regime) {
  if (samples == 0) throw std::invalid_argument("samples must be >= 1");
  if (l == 0) throw std::invalid_argument("l must be >= 1");
  if (mode == ExpectationMode::regime) check_regime(cp, l, model);
  const std::uint64_t n = cp.n(), q = cp.q();
  if (l > n) throw std::invalid_argument("more erasures than nodes");
  constexpr std::uint64_t kChunks = 8;

  struct Partial {
    double sum = 0, sum_sq = 0;
    std::uint64_t count = 0;
  };
  auto run_chunk = [&](std::uint64_t chunk) {
    Partial part;
    std::seed_seq sseq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(chunk)};
    std::mt19937_64 rng(sseq);
    std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
    std::map<PartitionType, std::uint64_t, bool (*)(const PartitionType&, const PartitionType&)> cache(
        [](const PartitionType& a, const PartitionType& b) { return a.parts < b.parts; });
    const std::uint64_t quota = samples / kChunks + (chunk < samples % kChunks ? 1 : 0);
    std::vector<std::uint64_t> nodes;
    for (std::uint64_t k = 0; k < quota; ++k) {
      nodes.clear();
      while (nodes.size() < l) {
        const auto v = pick(rng);
        if (std::find(nodes.begin(), nodes.end(), v) == nodes.end()) nodes.push_back(v);
      }
      std::map<std::uint64_t, std::size_t> lines;  // line id = rank / q (axis 1 is the low digit)
      for (auto v : nodes) ++lines[v / q];
      std::vector<std::size_t> sizes;
      for (auto [id, c] : lines) sizes.push_back(c);
      const auto pt = partition_of(sizes);
      auto it = cache.find(pt);
      if (it == cache.end()) it = cache.emplace(pt, partition_bandwidth(cp, pt, model, mode)).first;
      const double b = static_cast<double>(it->second);
      part.sum += b;
      part.sum_sq += b * b;
      ++part.count;
    }
    return part;
  };

  std::vector<std::future<Partial>> futures;
  for (std::uint64_t c = 0; c < kChunks; ++c) futures.push_back(std::async(std::launch::async, run_chunk, c));
  Partial total;
  for (auto& fut : futures) {
    const auto part = fut.get();
    total.sum += part.sum;
    total.sum_sq += part.sum_sq;
    total.count += part.count;
  }
  MonteCarloResult r;
  r.samples = total.count;
  r.mean = total.sum / static_cast<double>(total.count);
  const double var = total.count > 1 ? std::max(0.0, (total.sum_sq - total.sum * r.mean) / static_cast<double>(total.count - 1)) : 0.0;
  r.stderr_ = std::sqrt(var / static_cast<double>(total.count));
  return r;
}

/// Exact expectation of the measured bandwidth of the simulator's plans, by enumerating
/// every l-subset. Only for small codes.
inline Rational measured_expected_bandwidth(const GrmCode& code, std::uint64_t l, RepairModel model) {
  const std::size_t n = code.n();
  if (binomial(n, l) > 200000) throw GuardExceeded("measured expectation: too many erasure patterns");
  std::vector<std::size_t> idx(l);
  std::iota(idx.begin(), idx.end(), 0);
  BigInt total = 0, count = 0;
  while (true) {
    const auto pattern = make_erasure_pattern(code, idx);
    const auto grouping = group_erasures(code, pattern, 0);
    if (model == RepairModel::distributed) total += planned_bandwidth(build_distributed_plan(code, grouping));
    else total += matrix_bandwidth(build_repair_matrix(code, grouping));
    ++count;
    std::size_t i = l;
    while (i > 0 && idx[i - 1] == n - l + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < l; ++j) idx[j] = idx[j - 1] + 1;
  }
  return Rational(total, count);
}

struct CurveRow {
  std::uint64_t l = 0;
  std::uint64_t trivial_kt = 0;
  std::uint64_t worst = 0;              // l (q-1)(t-s)
  std::uint64_t best_distributed = 0;   // l (q-l)(t-s)
  std::uint64_t best_centralized = 0;   // (q-l)(t-s)
};

/// Bound curves for l = 1..lmax under the common-s regime of both models.
inline std::vector<CurveRow> bound_curves(const CodeParams& cp, std::uint64_t lmax) {
  cp.validate();
  const auto r = regime(cp);
  const std::uint64_t d = min_distance(cp);
  const std::uint64_t q = cp.q(), ts = cp.t - r.s;
  std::vector<CurveRow> rows;
  for (std::uint64_t l = 1; l <= lmax; ++l) {
    if (l > r.distributed_cap || l > r.centralized_cap)
      throw InfeasibleScheme("l = " + std::to_string(l) + " exceeds the regime caps (distributed " + std::to_string(r.distributed_cap) +
                             ", centralized " + std::to_string(r.centralized_cap) + ")");
    if (l + 1 > d) throw InfeasibleScheme("l = " + std::to_string(l) + " exceeds d - 1");
    rows.push_back({l, trivial_k_bandwidth(cp), l * (q - 1) * ts, l * (q - l) * ts, (q - l) * ts});
  }
  return rows;
}

}  // namespace grmrepair
