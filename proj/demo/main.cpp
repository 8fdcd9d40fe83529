// SPDX-License-Identifier: Apache-2.0
// Encode a random codeword of GRM(11,2) over F_16, lose one node, rebuild it from traces.
#include <iostream>

#include "grmrepair/grmrepair.hpp"

using namespace grmrepair;

int main() {
  const Field f(2, 4);
  const GrmCode code(f, 2, 11);
  const auto [coeffs, cw] = code.random_codeword(7);

  const std::size_t target = code.node_rank(std::vector<Element>{f.element(3), f.element(9)});
  const auto plan = build_single_plan(code, target, 1);

  Cluster cluster(f, cw);
  cluster.erase(target);
  const auto res = run_single_repair(plan, cluster);

  std::cout << "n = " << code.n() << ", k = " << code.dimension() << ", d = " << min_distance(code.params()) << '\n';
  std::cout << "node " << target << ": stored " << cw[target].rank << ", recovered " << res.recovered.rank << '\n';
  std::cout << "downloaded " << res.report.downloaded_fp_symbols << " bits from " << res.report.per_helper.size() << " helpers"
            << " (bound " << plan.bound() << ", lower bound " << lower_bound(code.params()) << ", naive "
            << trivial_k_bandwidth(code.params()) << ")\n";

  // three failures on one line, repaired together
  std::vector<std::size_t> lost;
  for (std::uint32_t a = 0; a < 3; ++a) lost.push_back(code.node_rank(std::vector<Element>{f.element(a), f.element(5)}));
  const auto grouping = group_erasures(code, make_erasure_pattern(code, lost), 0);
  const auto mat = build_repair_matrix(code, grouping);
  Cluster multi(f, cw);
  for (auto v : lost) multi.erase(v);
  const auto mres = run_centralized_repair(mat, multi);
  bool ok = true;
  for (auto v : lost) ok &= mres.recovered.at(v) == cw[v];
  std::cout << "centralized repair of 3 nodes: " << (ok ? "exact" : "WRONG") << ", " << mres.report.downloaded_fp_symbols << " bits\n";
  return ok && res.recovered == cw[target] ? 0 : 1;
}
