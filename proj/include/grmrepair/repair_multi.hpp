// SPDX-License-Identifier: Apache-2.0
#pragma once

// Repair of several erased nodes.
//
// Failures are grouped by the axis line they sit on (equal coordinates everywhere but
// the axis). Group i with axis values a_{i1..il} on the line through beta_i gets t*l_i
// dual codewords, indexed (e, i, u):
//
//   distributed:  1_line(beta_i) * L_{V_i}(xi_e (x_a - a_iu)) / (x_a - a_iu) * prod_{v != u} (x_a - a_iv)
//   centralized:  1_line(beta_i) * L_{V_i}(xi_e H_i(x) x_a^(u-1)) / H_i(x),  H_i = prod_v (x_a - a_iv)
//
// Both families are stored as an n x lt repair matrix whose columns are ordered group by
// group, member by member, basis element by basis element.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "grmrepair/cluster.hpp"
#include "grmrepair/grm.hpp"
#include "grmrepair/poly.hpp"
#include "grmrepair/repair_single.hpp"
#include "grmrepair/subspace.hpp"

namespace grmrepair {

enum class RepairModel { distributed, centralized };

inline const char* to_string(RepairModel m) { return m == RepairModel::distributed ? "distributed" : "centralized"; }

struct ErasurePattern {
  std::vector<std::size_t> nodes;
  std::size_t size() const { return nodes.size(); }
};

/// Validates distinctness, range, and the repairability guard l <= d - 1.
inline ErasurePattern make_erasure_pattern(const GrmCode& code, std::vector<std::size_t> nodes) {
  if (nodes.empty()) throw std::invalid_argument("erasure pattern is empty");
  std::set<std::size_t> seen;
  for (auto v : nodes) {
    if (v >= code.n()) throw std::invalid_argument("erased node " + std::to_string(v) + " out of range");
    if (!seen.insert(v).second) throw std::invalid_argument("erased node " + std::to_string(v) + " listed twice");
  }
  const auto d = min_distance(code.params());
  if (nodes.size() + 1 > d)
    throw InfeasibleScheme(std::to_string(nodes.size()) + " erasures exceed d - 1 = " + std::to_string(d - 1));
  return {std::move(nodes)};
}

struct ErasureGroup {
  std::vector<Element> line;         // a point of the line; the axis coordinate is zero
  std::vector<Element> axis_values;  // sorted, distinct
  std::vector<std::size_t> nodes;    // aligned with axis_values
  std::size_t size() const { return nodes.size(); }
};

struct Grouping {
  std::size_t axis = 0;
  std::vector<ErasureGroup> groups;  // in order of first appearance in the pattern
  std::size_t total() const {
    std::size_t l = 0;
    for (const auto& g : groups) l += g.size();
    return l;
  }
  std::vector<std::size_t> sizes() const {
    std::vector<std::size_t> s;
    for (const auto& g : groups) s.push_back(g.size());
    return s;
  }
};

/// Partitions the pattern into maximal groups agreeing off the axis.
inline Grouping group_erasures(const GrmCode& code, const ErasurePattern& pattern, std::size_t axis) {
  if (axis >= code.m()) throw std::invalid_argument("axis out of range");
  Grouping g{axis, {}};
  std::map<std::vector<Element>, std::size_t> index;
  for (auto node : pattern.nodes) {
    auto x = code.node_coords(node);
    const Element a = x[axis];
    x[axis] = Element{0};
    auto [it, fresh] = index.emplace(x, g.groups.size());
    if (fresh) g.groups.push_back({x, {}, {}});
    auto& grp = g.groups[it->second];
    grp.axis_values.push_back(a);
    grp.nodes.push_back(node);
  }
  for (auto& grp : g.groups) {
    std::vector<std::size_t> order(grp.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return grp.axis_values[a] < grp.axis_values[b]; });
    ErasureGroup sorted{grp.line, {}, {}};
    for (auto k : order) {
      sorted.axis_values.push_back(grp.axis_values[k]);
      sorted.nodes.push_back(grp.nodes[k]);
    }
    grp = std::move(sorted);
  }
  return g;
}

/// floor(log_p(p^t - mu - l_i)); requires p^t - mu - l_i >= 1.
inline std::uint32_t distributed_subspace_dim(const CodeParams& cp, std::uint64_t group_size) {
  if (cp.q() < cp.mu + group_size + 1)
    throw InfeasibleScheme("distributed scheme needs p^t - mu - l_i >= 1 (l_i = " + std::to_string(group_size) + ")");
  return detail::floor_log(cp.p, cp.q() - cp.mu - group_size);
}

/// floor(log_p((p^t + l_i - mu - 2) / (2 l_i - 1))); requires the ratio to be >= 1.
inline std::uint32_t centralized_subspace_dim(const CodeParams& cp, std::uint64_t group_size) {
  const std::int64_t num = static_cast<std::int64_t>(cp.q() + group_size) - static_cast<std::int64_t>(cp.mu) - 2;
  const std::int64_t den = 2 * static_cast<std::int64_t>(group_size) - 1;
  if (group_size == 0 || num < den)
    throw InfeasibleScheme("centralized scheme needs (p^t + l_i - mu - 2)/(2 l_i - 1) >= 1 (l_i = " + std::to_string(group_size) + ")");
  return detail::floor_log(cp.p, static_cast<std::uint64_t>(num / den));
}

inline std::uint32_t subspace_dim(const CodeParams& cp, RepairModel model, std::uint64_t group_size) {
  return model == RepairModel::distributed ? distributed_subspace_dim(cp, group_size) : centralized_subspace_dim(cp, group_size);
}

/// The construction's bandwidth bound: sum_i l_i (q - l_i)(t - s_i) or sum_i (q - l_i)(t - s_i).
inline std::uint64_t grouping_bound(const CodeParams& cp, const Grouping& g, RepairModel model) {
  std::uint64_t b = 0;
  for (const auto& grp : g.groups) {
    const std::uint64_t l = grp.size(), s = subspace_dim(cp, model, l);
    const std::uint64_t per = (cp.q() - l) * (cp.t - s);
    b += model == RepairModel::distributed ? l * per : per;
  }
  return b;
}

/// The axis (0-based) whose grouping minimizes the model's bound; ties go to the lower axis.
inline std::size_t best_axis(const GrmCode& code, const ErasurePattern& pattern, RepairModel model) {
  std::optional<std::pair<std::uint64_t, std::size_t>> best;
  for (std::size_t axis = 0; axis < code.m(); ++axis) {
    try {
      const auto b = grouping_bound(code.params(), group_erasures(code, pattern, axis), model);
      if (!best || b < best->first) best = {{b, axis}};
    } catch (const InfeasibleScheme&) {
    }
  }
  if (!best) throw InfeasibleScheme("no axis admits a feasible " + std::string(to_string(model)) + " scheme");
  return best->second;
}

struct RepairColumn {
  std::size_t group = 0;
  std::size_t u = 0;  // member index within the group
  std::size_t e = 0;  // basis index
};

/// An n x lt matrix of dual codewords for the failed set I.
struct RepairMatrix {
  GrmCode code;
  RepairModel model = RepairModel::centralized;
  Grouping grouping;
  std::vector<std::uint32_t> s;  // per group
  std::vector<Subspace> subspaces;
  std::vector<LinearizedPoly> lpolys;
  std::vector<std::size_t> failed;  // I, group-major in member order
  std::vector<RepairColumn> columns;
  std::vector<std::vector<Element>> rows;  // rows[j][h]

  std::size_t width() const { return columns.size(); }
  std::uint64_t bound() const { return grouping_bound(code.params(), grouping, model); }
  bool is_failed(std::size_t node) const { return std::find(failed.begin(), failed.end(), node) != failed.end(); }
  std::vector<Element> column(std::size_t h) const {
    std::vector<Element> c;
    for (const auto& r : rows) c.push_back(r[h]);
    return c;
  }
};

namespace detail {

inline Element matrix_entry(const RepairMatrix& mat, const RepairColumn& col, std::span<const Element> x) {
  const Field& f = mat.code.field();
  const auto& grp = mat.grouping.groups[col.group];
  const std::size_t axis = mat.grouping.axis;
  if (!on_line(x, grp.line, axis)) return f.zero();
  const auto& lp = mat.lpolys[col.group];
  const Element xi = f.basis_element(static_cast<std::uint32_t>(col.e));
  const Element xa = x[axis];
  if (mat.model == RepairModel::distributed) {
    Element h = f.one();
    for (std::size_t v = 0; v < grp.size(); ++v)
      if (v != col.u) h = f.mul(h, f.sub(xa, grp.axis_values[v]));
    return f.mul(lp.eval_divided(xi, f.sub(xa, grp.axis_values[col.u])), h);
  }
  Element h = f.one();
  for (const auto& a : grp.axis_values) h = f.mul(h, f.sub(xa, a));
  return lp.eval_divided(f.mul(xi, f.pow(xa, col.u)), h);
}

inline RepairMatrix assemble_matrix(const GrmCode& code, const Grouping& grouping, RepairModel model) {
  const Field& f = code.field();
  const auto& cp = code.params();
  RepairMatrix mat{code, model, grouping, {}, {}, {}, {}, {}, {}};
  for (std::size_t i = 0; i < grouping.groups.size(); ++i) {
    const auto& grp = grouping.groups[i];
    for (auto a : grp.axis_values)
      if (std::count(grp.axis_values.begin(), grp.axis_values.end(), a) != 1)
        throw std::invalid_argument("group has repeated axis values");
    std::uint32_t s = 0;
    try {
      s = subspace_dim(cp, model, grp.size());
    } catch (const InfeasibleScheme& e) {
      throw InfeasibleScheme("group " + std::to_string(i + 1) + ": " + e.what());
    }
    const std::uint64_t l = grp.size(), ps = ipow(cp.p, s);
    const std::uint64_t degree = model == RepairModel::distributed ? (cp.m - 1) * (cp.q() - 1) + ps - 1 + l - 1
                                                                   : (cp.m - 1) * (cp.q() - 1) + ps * (2 * l - 1) - l;
    if (static_cast<std::int64_t>(degree) > cp.mu_dual())
      throw DegreeViolation("group " + std::to_string(i + 1) + ": repair polynomial degree exceeds mu_dual");
    mat.s.push_back(s);
    mat.subspaces.push_back(Subspace::canonical(f, s));
    mat.lpolys.emplace_back(f, mat.subspaces.back());
    for (std::size_t u = 0; u < grp.size(); ++u) {
      mat.failed.push_back(grp.nodes[u]);
      for (std::size_t e = 0; e < f.t(); ++e) mat.columns.push_back({i, u, e});
    }
  }
  mat.rows.assign(code.n(), std::vector<Element>(mat.columns.size(), f.zero()));
  for (std::size_t i = 0; i < grouping.groups.size(); ++i) {
    for (auto node : line_nodes(code, grouping.axis, grouping.groups[i].line)) {
      const auto x = code.node_coords(node);
      for (std::size_t h = 0; h < mat.columns.size(); ++h)
        if (mat.columns[h].group == i) mat.rows[node][h] = matrix_entry(mat, mat.columns[h], x);
    }
  }
  return mat;
}

}  // namespace detail

/// Per replacement node in the distributed model: its t columns and the dual basis of
/// their values at the failed node.
struct ReplacementRecord {
  std::size_t node = 0;
  std::vector<std::size_t> columns;
  std::vector<Element> dual_basis;
  std::vector<std::size_t> helpers;  // surviving nodes on the group's line
  std::vector<SpanResult> spans;     // aligned with helpers
};

struct DistributedPlan {
  RepairMatrix matrix;
  std::vector<ReplacementRecord> replacements;  // aligned with matrix.failed

  std::uint64_t bound() const { return matrix.bound(); }
};

inline DistributedPlan build_distributed_plan(const GrmCode& code, const Grouping& grouping) {
  DistributedPlan plan{detail::assemble_matrix(code, grouping, RepairModel::distributed), {}};
  const RepairMatrix& mat = plan.matrix;
  const Field& f = code.field();
  for (std::size_t r = 0; r < mat.failed.size(); ++r) {
    ReplacementRecord rec;
    rec.node = mat.failed[r];
    std::vector<Element> at_target;
    for (std::size_t h = 0; h < mat.width(); ++h) {
      const auto& col = mat.columns[h];
      if (mat.failed[r] != grouping.groups[col.group].nodes[col.u]) continue;
      rec.columns.push_back(h);
      at_target.push_back(mat.rows[rec.node][h]);
    }
    rec.dual_basis = dual_basis(f, at_target);
    const auto& grp = grouping.groups[mat.columns[rec.columns[0]].group];
    for (auto node : detail::line_nodes(code, grouping.axis, grp.line)) {
      if (mat.is_failed(node)) continue;
      std::vector<Element> vals;
      for (auto h : rec.columns) vals.push_back(mat.rows[node][h]);
      rec.helpers.push_back(node);
      rec.spans.push_back(span_basis(f, vals));
    }
    plan.replacements.push_back(std::move(rec));
  }
  return plan;
}

/// Centralized multiple-repair matrix.
inline RepairMatrix build_repair_matrix(const GrmCode& code, const Grouping& grouping) {
  return detail::assemble_matrix(code, grouping, RepairModel::centralized);
}

/// The lt column polynomials in expanded, reduced form, aligned with mat.columns.
inline std::vector<MultiPoly> repair_matrix_polynomials(const RepairMatrix& mat) {
  const Field& f = mat.code.field();
  const std::size_t m = mat.code.m(), axis = mat.grouping.axis;
  const MultiPoly xa = MultiPoly::variable(f, m, axis);
  const auto lin = [&](Element a) { return xa - MultiPoly::constant(f, m, a); };
  std::vector<MultiPoly> out;
  for (const auto& col : mat.columns) {
    const auto& grp = mat.grouping.groups[col.group];
    const auto& c = mat.lpolys[col.group].coeffs();
    const Element xi = f.basis_element(static_cast<std::uint32_t>(col.e));
    MultiPoly core(f, m);
    std::uint64_t pk = 1;
    if (mat.model == RepairModel::distributed) {
      MultiPoly others = MultiPoly::constant(f, m, f.one());
      for (std::size_t v = 0; v < grp.size(); ++v)
        if (v != col.u) others = others * lin(grp.axis_values[v]);
      const MultiPoly y = lin(grp.axis_values[col.u]);
      for (std::size_t k = 0; k < c.size(); ++k, pk *= f.p()) core += y.pow(pk - 1).scaled(f.mul(c[k], f.pow(xi, pk)));
      core = core * others;
    } else {
      MultiPoly h = MultiPoly::constant(f, m, f.one());
      for (const auto& a : grp.axis_values) h = h * lin(a);
      for (std::size_t k = 0; k < c.size(); ++k, pk *= f.p())
        core += (h.pow(pk - 1) * xa.pow(col.u * pk)).scaled(f.mul(c[k], f.pow(xi, pk)));
    }
    out.push_back(detail::line_indicator(mat.code, axis, grp.line) * core);
  }
  return out;
}

/// Sum over surviving rows of dim_Fp(set(row)).
inline std::uint64_t matrix_bandwidth(const RepairMatrix& mat) {
  std::uint64_t b = 0;
  for (std::size_t j = 0; j < mat.rows.size(); ++j)
    if (!mat.is_failed(j)) b += rank_over_fp(mat.code.field(), mat.rows[j]);
  return b;
}

inline std::uint64_t planned_bandwidth(const DistributedPlan& plan) {
  std::uint64_t b = 0;
  for (const auto& r : plan.replacements)
    for (const auto& s : r.spans) b += s.dim;
  return b;
}

/// lt x lt matrix over F_p of y -> M[I,:] y, rows indexed by (failed node, coordinate).
inline FpMatrix failed_block_matrix(const RepairMatrix& mat) {
  const Field& f = mat.code.field();
  const std::size_t t = f.t();
  FpMatrix r(mat.failed.size() * t, FpVector(mat.width(), 0));
  for (std::size_t i = 0; i < mat.failed.size(); ++i)
    for (std::size_t h = 0; h < mat.width(); ++h) {
      const auto c = f.coords(mat.rows[mat.failed[i]][h]);
      for (std::size_t k = 0; k < t; ++k) r[i * t + k][h] = c[k];
    }
  return r;
}

struct VerificationRecord {
  bool columns_dual = false;
  std::optional<bool> degrees_ok;  // set when polynomials were audited
  bool full_rank = false;
  std::size_t rank = 0;
  std::uint64_t bandwidth = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

struct VerifyOptions {
  std::size_t samples = 50;
  std::uint64_t seed = 1;
  const std::vector<MultiPoly>* polynomials = nullptr;
};

/// Checks the three defining properties of a multiple-repair matrix:
/// (1) dual columns, (2) full F_p-rank of M[I,:], (3) bandwidth from row spans.
inline VerificationRecord verify_repair_matrix(const RepairMatrix& mat, const VerifyOptions& opt = {}) {
  const GrmCode& code = mat.code;
  const Field& f = code.field();
  VerificationRecord rec;

  // (1) Orthogonal to the monomial basis (complete by linearity) and to random codewords.
  rec.columns_dual = true;
  std::vector<Codeword> primal;
  for (const auto& e : code.monomials()) primal.push_back(code.encode(CoeffMap{{e, f.one()}}));
  for (std::size_t k = 0; k < opt.samples; ++k) primal.push_back(code.random_codeword(opt.seed * 1000003 + k).second);
  for (std::size_t h = 0; h < mat.width() && rec.columns_dual; ++h) {
    const auto col = mat.column(h);
    for (const auto& c : primal)
      if (code.inner_product(c, col).rank != 0) {
        rec.columns_dual = false;
        break;
      }
  }
  if (opt.polynomials) {
    bool ok = opt.polynomials->size() == mat.width();
    for (std::size_t h = 0; ok && h < mat.width(); ++h) {
      const auto& poly = (*opt.polynomials)[h];
      ok = poly.total_degree() <= code.params().mu_dual() && code.evaluate_all(poly) == mat.column(h);
    }
    rec.degrees_ok = ok;
    if (!ok) rec.violations.push_back("property 1: column polynomial degree audit failed");
  }
  if (!rec.columns_dual) rec.violations.push_back("property 1: a column is not a dual codeword");

  // (2)
  rec.rank = rank_fp(failed_block_matrix(mat), f.p());
  rec.full_rank = rec.rank == mat.width() && mat.width() == mat.failed.size() * f.t();
  if (!rec.full_rank) rec.violations.push_back("property 2: M[I,:] is not of full F_p-rank (rank " + std::to_string(rec.rank) + ")");

  // (3)
  rec.bandwidth = matrix_bandwidth(mat);
  return rec;
}

struct MultiRepairResult {
  std::map<std::size_t, Element> recovered;
  BandwidthReport report;
};

/// Every replacement repairs its own node from its own downloads; shared helpers are
/// charged once per replacement.
inline MultiRepairResult run_distributed_repair(const DistributedPlan& plan, Cluster& cluster) {
  const Field& f = plan.matrix.code.field();
  const std::uint32_t p = f.p();
  MultiRepairResult out;
  out.report.model = "distributed";
  out.report.bound = static_cast<double>(plan.bound());
  for (const auto& rec : plan.replacements) {
    FpVector traces(rec.columns.size(), 0);
    for (std::size_t k = 0; k < rec.helpers.size(); ++k) {
      const auto& span = rec.spans[k];
      if (span.dim == 0) continue;
      const auto resp = cluster.respond(rec.helpers[k], span.basis);
      out.report.add(rec.helpers[k], span.dim);
      for (std::size_t e = 0; e < traces.size(); ++e)
        for (std::size_t j = 0; j < span.dim; ++j) traces[e] = fp::sub(traces[e], fp::mul(span.coords[e][j], resp.traces[j], p), p);
    }
    Element c = f.zero();
    for (std::size_t e = 0; e < traces.size(); ++e) c = f.add(c, f.scale(traces[e], rec.dual_basis[e]));
    out.recovered[rec.node] = c;
  }
  return out;
}

/// One repair center downloads each helper's row traces once, assembles
/// sum_{i in I} Tr(c_i M[i,h]) = -sum_{j not in I} Tr(c_j M[j,h]) for all h, and inverts
/// the trace map over the failed block.
inline MultiRepairResult run_centralized_repair(const RepairMatrix& mat, Cluster& cluster) {
  const Field& f = mat.code.field();
  const std::uint32_t p = f.p(), t = f.t();
  MultiRepairResult out;
  out.report.model = "centralized";
  out.report.bound = static_cast<double>(mat.bound());
  const std::size_t width = mat.width();
  FpVector rhs(width, 0);
  for (std::size_t j = 0; j < mat.rows.size(); ++j) {
    if (mat.is_failed(j)) continue;
    const auto span = span_basis(f, mat.rows[j]);
    if (span.dim == 0) continue;
    const auto resp = cluster.respond(j, span.basis);
    out.report.add(j, span.dim);
    for (std::size_t h = 0; h < width; ++h)
      for (std::size_t s = 0; s < span.dim; ++s) rhs[h] = fp::sub(rhs[h], fp::mul(span.coords[h][s], resp.traces[s], p), p);
  }
  // phi[h][(i,k)] = Tr(xi^k M[I_i, h])
  FpMatrix phi(width, FpVector(mat.failed.size() * t, 0));
  for (std::size_t h = 0; h < width; ++h)
    for (std::size_t i = 0; i < mat.failed.size(); ++i)
      for (std::uint32_t k = 0; k < t; ++k)
        phi[h][i * t + k] = f.trace(f.mul(f.basis_element(k), mat.rows[mat.failed[i]][h]));
  FpVector x;
  try {
    x = solve_fp(phi, rhs, p);
  } catch (const SingularMatrix& e) {
    throw VerificationError(std::string("centralized repair: trace map is not invertible: ") + e.what());
  }
  for (std::size_t i = 0; i < mat.failed.size(); ++i)
    out.recovered[mat.failed[i]] = f.from_coords(std::span<const std::uint32_t>(x).subspan(i * t, t));
  return out;
}

}  // namespace grmrepair
