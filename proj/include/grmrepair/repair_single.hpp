// SPDX-License-Identifier: Apache-2.0
#pragma once

// Single-erasure trace repair for GRM codes.
//
// For a failed node a* and a chosen axis coordinate, the t repair polynomials are
//   p_i(x) = prod_{j != axis} (1 - (x_j - a*_j)^(q-1)) * L_V(xi_i (x_axis - a*_axis)) / (x_axis - a*_axis)
// with V an F_p-subspace of dimension s = floor(log_p(q - mu - 1)). They are dual
// codewords, vanish off the axis line through a*, take the values c_0 xi_i at a*, and
// at each of the q-1 helpers on the line span at most t - s dimensions over F_p.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "grmrepair/cluster.hpp"
#include "grmrepair/grm.hpp"
#include "grmrepair/poly.hpp"
#include "grmrepair/subspace.hpp"

namespace grmrepair {

namespace detail {

/// prod_{j != axis} (1 - (x_j - beta_j)^(q-1)): 1 on the axis line through beta, 0 elsewhere.
inline MultiPoly line_indicator(const GrmCode& code, std::size_t axis, std::span<const Element> beta) {
  const Field& f = code.field();
  MultiPoly acc = MultiPoly::constant(f, code.m(), f.one());
  for (std::size_t j = 0; j < code.m(); ++j) {
    if (j == axis) continue;
    const MultiPoly shifted = MultiPoly::variable(f, code.m(), j) - MultiPoly::constant(f, code.m(), beta[j]);
    acc = acc * (MultiPoly::constant(f, code.m(), f.one()) - shifted.pow(code.q() - 1));
  }
  return acc;
}

/// True iff x agrees with beta on every coordinate except `axis`.
inline bool on_line(std::span<const Element> x, std::span<const Element> beta, std::size_t axis) {
  for (std::size_t j = 0; j < x.size(); ++j)
    if (j != axis && x[j] != beta[j]) return false;
  return true;
}

/// Ranks of the q nodes on the axis line through `through`, in axis-value order.
inline std::vector<std::size_t> line_nodes(const GrmCode& code, std::size_t axis, std::span<const Element> through) {
  std::vector<Element> x(through.begin(), through.end());
  std::vector<std::size_t> out;
  for (std::uint32_t v = 0; v < code.q(); ++v) {
    x[axis] = Element{v};
    out.push_back(code.node_rank(x));
  }
  return out;
}

}  // namespace detail

struct SingleRepairPlan {
  GrmCode code;
  std::size_t target = 0;
  std::vector<Element> target_coords;
  std::size_t axis = 0;
  std::uint32_t s = 0;
  Subspace subspace;
  LinearizedPoly lpoly;
  Element c0;
  std::vector<Element> xi;                   // basis of F_q over F_p
  std::vector<Element> target_values;        // p_i(a*) = c0 xi_i
  std::vector<Element> dual_recovery_basis;  // dual basis of target_values
  std::vector<std::size_t> helper_set;       // the q-1 other nodes on the axis line
  std::vector<SpanResult> helper_spans;      // span of {p_i(h)} per helper, aligned with helper_set
  bool degenerate = false;                   // t = 1

  std::uint64_t bound() const { return (code.q() - 1) * (code.field().t() - s); }
};

/// floor(log_p(q - mu - 1)); requires mu <= q - 2.
inline std::uint32_t single_subspace_dim(const CodeParams& cp) {
  if (cp.mu + 2 > cp.q())
    throw InfeasibleScheme("single-erasure scheme needs mu <= q-2 (mu = " + std::to_string(cp.mu) + ", q = " + std::to_string(cp.q()) + ")");
  return detail::floor_log(cp.p, cp.q() - cp.mu - 1);
}

/// Builds the plan. `subspace` defaults to span{1, xi, ..., xi^(s-1)}; a caller-supplied
/// subspace may have any dimension up to s.
inline SingleRepairPlan build_single_plan(const GrmCode& code, std::size_t target, std::size_t axis,
                                          std::optional<Subspace> subspace = std::nullopt);

namespace detail {
inline SingleRepairPlan single_plan_skeleton(const GrmCode& code, std::size_t target, std::size_t axis,
                                             std::optional<Subspace> subspace) {
  const Field& f = code.field();
  if (axis >= code.m()) throw std::invalid_argument("axis out of range");
  if (target >= code.n()) throw std::invalid_argument("target node out of range");
  const std::uint32_t s_max = single_subspace_dim(code.params());
  Subspace v = subspace ? *subspace : Subspace::canonical(f, s_max);
  if (v.dim() > s_max)
    throw InfeasibleScheme("subspace dimension " + std::to_string(v.dim()) + " exceeds s = " + std::to_string(s_max));
  const std::uint32_t s = static_cast<std::uint32_t>(v.dim());

  const std::int64_t degree = static_cast<std::int64_t>((code.m() - 1) * (code.q() - 1) + detail::ipow(f.p(), s) - 1);
  if (degree > code.params().mu_dual()) throw DegreeViolation("repair polynomial degree exceeds mu_dual");

  LinearizedPoly lp(f, v);
  SingleRepairPlan plan{code, target, code.node_coords(target), axis, s, v, lp, lp.c0(), f.canonical_basis(), {}, {}, {}, {}, f.t() == 1};
  for (const auto& x : plan.xi) plan.target_values.push_back(f.mul(plan.c0, x));
  plan.dual_recovery_basis = dual_basis(f, plan.target_values);
  for (auto node : detail::line_nodes(code, axis, plan.target_coords))
    if (node != target) plan.helper_set.push_back(node);
  return plan;
}
}  // namespace detail


/// p_i(node) in closed form.
inline Element eval_repair_poly(const SingleRepairPlan& plan, std::size_t i, std::size_t node) {
  const Field& f = plan.code.field();
  const auto x = plan.code.node_coords(node);
  if (!detail::on_line(x, plan.target_coords, plan.axis)) return f.zero();
  const Element y = f.sub(x[plan.axis], plan.target_coords[plan.axis]);
  if (y.rank == 0) return plan.target_values.at(i);
  return f.div(plan.lpoly.eval(f.mul(plan.xi.at(i), y)), y);
}

/// The t repair polynomials in expanded, reduced form. The division by (x_axis - a*_axis)
/// is done termwise on the linearized expansion: c_k (xi_i y)^(p^k) / y = c_k xi_i^(p^k) y^(p^k - 1).
inline std::vector<MultiPoly> repair_polynomials(const SingleRepairPlan& plan) {
  const Field& f = plan.code.field();
  const std::size_t m = plan.code.m();
  const MultiPoly indicator = detail::line_indicator(plan.code, plan.axis, plan.target_coords);
  const MultiPoly y = MultiPoly::variable(f, m, plan.axis) - MultiPoly::constant(f, m, plan.target_coords[plan.axis]);
  std::vector<MultiPoly> y_pows;  // y^(p^k - 1)
  std::uint64_t pk = 1;
  for (std::size_t k = 0; k < plan.lpoly.coeffs().size(); ++k, pk *= f.p()) y_pows.push_back(y.pow(pk - 1));
  std::vector<MultiPoly> out;
  for (const auto& xi : plan.xi) {
    MultiPoly core(f, m);
    pk = 1;
    for (std::size_t k = 0; k < y_pows.size(); ++k, pk *= f.p())
      core += y_pows[k].scaled(f.mul(plan.lpoly.coeffs()[k], f.pow(xi, pk)));
    out.push_back(indicator * core);
  }
  return out;
}

/// {p_i(node) : i in [t]}.
inline std::vector<Element> repair_values(const SingleRepairPlan& plan, std::size_t node) {
  std::vector<Element> v;
  for (std::size_t i = 0; i < plan.xi.size(); ++i) v.push_back(eval_repair_poly(plan, i, node));
  return v;
}

inline SingleRepairPlan build_single_plan(const GrmCode& code, std::size_t target, std::size_t axis,
                                          std::optional<Subspace> subspace) {
  SingleRepairPlan plan = detail::single_plan_skeleton(code, target, axis, std::move(subspace));
  for (auto h : plan.helper_set) plan.helper_spans.push_back(span_basis(code.field(), repair_values(plan, h)));
  return plan;
}

/// The helper's side of the protocol, computed from its own symbol.
inline HelperResponse helper_respond(const SingleRepairPlan& plan, std::size_t helper, Element symbol) {
  const Field& f = plan.code.field();
  if (helper == plan.target) throw std::invalid_argument("the failed node cannot act as a helper");
  const auto span = span_basis(f, repair_values(plan, helper));
  HelperResponse r{helper, span.basis, {}};
  for (const auto& b : span.basis) r.traces.push_back(f.trace(f.mul(symbol, b)));
  return r;
}

/// Rebuilds the erased symbol from helper traces:
/// Tr(c* c0 xi_i) = -sum_h Tr(c_h p_i(h)), then c* = sum_i Tr(c* c0 xi_i) eta_i.
inline Element recover_single(const SingleRepairPlan& plan, std::span<const HelperResponse> responses) {
  const Field& f = plan.code.field();
  const std::uint32_t p = f.p();
  std::map<std::size_t, const HelperResponse*> by_node;
  for (const auto& r : responses) by_node[r.helper] = &r;
  FpVector traces(plan.xi.size(), 0);
  for (std::size_t k = 0; k < plan.helper_set.size(); ++k) {
    const std::size_t h = plan.helper_set[k];
    const SpanResult& span = plan.helper_spans[k];
    if (span.dim == 0) continue;
    const auto it = by_node.find(h);
    if (it == by_node.end()) throw IncompleteDownload("missing response from helper " + std::to_string(h));
    const HelperResponse& r = *it->second;
    if (r.traces.size() != span.dim || r.basis_sent != span.basis)
      throw IncompleteDownload("helper " + std::to_string(h) + " answered against the wrong basis");
    for (std::size_t i = 0; i < traces.size(); ++i)
      for (std::size_t j = 0; j < span.dim; ++j) traces[i] = fp::sub(traces[i], fp::mul(span.coords[i][j], r.traces[j], p), p);
  }
  Element c = f.zero();
  for (std::size_t i = 0; i < traces.size(); ++i) c = f.add(c, f.scale(traces[i], plan.dual_recovery_basis[i]));
  return c;
}

struct SingleRepairResult {
  Element recovered;
  BandwidthReport report;
  std::vector<HelperResponse> responses;
};

/// Runs the protocol against a cluster in which the target is erased.
inline SingleRepairResult run_single_repair(const SingleRepairPlan& plan, Cluster& cluster) {
  SingleRepairResult out;
  out.report.model = "single";
  out.report.bound = static_cast<double>(plan.bound());
  out.report.degenerate = plan.degenerate;
  for (std::size_t k = 0; k < plan.helper_set.size(); ++k) {
    const std::size_t h = plan.helper_set[k];
    const SpanResult& span = plan.helper_spans[k];
    if (span.dim == 0) continue;
    out.responses.push_back(cluster.respond(h, span.basis));
    out.report.add(h, span.dim);
  }
  out.recovered = recover_single(plan, out.responses);
  return out;
}

/// Sum of per-helper span dimensions, without touching any data.
inline std::uint64_t planned_bandwidth(const SingleRepairPlan& plan) {
  std::uint64_t b = 0;
  for (const auto& span : plan.helper_spans) b += span.dim;
  return b;
}

/// Baseline: the all-ones dual codeword gives c_target = -sum_{j != target} c_j.
inline std::pair<Element, BandwidthReport> trivial_repair_all(const GrmCode& code, Cluster& cluster, std::size_t target) {
  if (code.params().mu_dual() < 0) throw InfeasibleScheme("mu = m(q-1): the dual code has no all-ones codeword");
  const Field& f = code.field();
  BandwidthReport rep;
  rep.model = "trivial";
  rep.bound = static_cast<double>((code.n() - 1) * f.t());
  Element acc = f.zero();
  for (std::size_t j = 0; j < code.n(); ++j) {
    if (j == target) continue;
    acc = f.sub(acc, cluster.read_symbol(j));
    rep.add(j, f.t());
  }
  return {acc, rep};
}

/// (n - d + 1) t: reading k = n - d + 1 whole symbols.
inline std::uint64_t trivial_k_bandwidth(const CodeParams& cp) {
  return detail::checked_mul(cp.n() - min_distance(cp) + 1, cp.t);
}

/// (n-1) log_p((n-1) / (n - d_dual + (d_dual - 1)/q)).
inline double lower_bound(const CodeParams& cp) {
  const long double n = static_cast<long double>(cp.n());
  const long double dd = static_cast<long double>(dual_min_distance(cp));
  const long double q = static_cast<long double>(cp.q());
  const long double ratio = (n - 1) / (n - dd + (dd - 1) / q);
  return static_cast<double>((n - 1) * std::log(ratio) / std::log(static_cast<long double>(cp.p)));
}

/// One plan per axis; their helper sets are pairwise disjoint.
inline std::vector<SingleRepairPlan> disjoint_repair_sets(const GrmCode& code, std::size_t target) {
  std::vector<SingleRepairPlan> plans;
  for (std::size_t axis = 0; axis < code.m(); ++axis) plans.push_back(build_single_plan(code, target, axis));
  return plans;
}

}  // namespace grmrepair
