// SPDX-License-Identifier: Apache-2.0
#pragma once

// In-process storage cluster: one codeword symbol per node, erasures, and a meter
// counting every F_p symbol that leaves a node.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "grmrepair/field.hpp"
#include "grmrepair/grm.hpp"

namespace grmrepair {

/// Downloaded F_p symbols, per helper node and in total.
struct BandwidthReport {
  std::uint64_t downloaded_fp_symbols = 0;
  std::map<std::size_t, std::uint64_t> per_helper;
  double bound = 0.0;
  std::string model;
  bool degenerate = false;

  void add(std::size_t helper, std::uint64_t count) {
    if (count == 0) return;
    per_helper[helper] += count;
    downloaded_fp_symbols += count;
  }
};

/// What a helper sends: traces of its symbol against a basis of its repair values.
struct HelperResponse {
  std::size_t helper = 0;
  std::vector<Element> basis_sent;
  std::vector<std::uint32_t> traces;
};

class Cluster {
 public:
  Cluster(Field field, Codeword symbols) : field_(std::move(field)), symbols_(std::move(symbols)) {}

  std::size_t size() const { return symbols_.size(); }
  const Field& field() const { return field_; }

  void erase(std::size_t node) { erased_.insert(node); }
  void restore(std::size_t node) { erased_.erase(node); }
  bool is_erased(std::size_t node) const { return erased_.count(node) != 0; }
  const std::set<std::size_t>& erased() const { return erased_; }

  /// Tr(c_node * b) for each b; one F_p symbol per basis element is metered.
  HelperResponse respond(std::size_t node, std::span<const Element> basis) {
    const Element c = live_symbol(node);
    HelperResponse r{node, {basis.begin(), basis.end()}, {}};
    for (const auto& b : basis) r.traces.push_back(field_.trace(field_.mul(c, b)));
    meter(node, basis.size());
    return r;
  }

  /// The whole symbol: t F_p symbols.
  Element read_symbol(std::size_t node) {
    const Element c = live_symbol(node);
    meter(node, field_.t());
    return c;
  }

  std::uint64_t downloaded() const { return downloaded_; }
  const std::map<std::size_t, std::uint64_t>& per_node() const { return per_node_; }
  void reset_meter() {
    downloaded_ = 0;
    per_node_.clear();
  }

  /// Ground truth for test harnesses; not a metered read.
  Element peek(std::size_t node) const { return symbols_.at(node); }

 private:
  Element live_symbol(std::size_t node) const {
    if (node >= symbols_.size()) throw std::out_of_range("node out of range");
    if (is_erased(node)) throw IncompleteDownload("node " + std::to_string(node) + " is erased");
    return symbols_[node];
  }
  void meter(std::size_t node, std::uint64_t count) {
    if (count == 0) return;
    downloaded_ += count;
    per_node_[node] += count;
  }

  Field field_;
  Codeword symbols_;
  std::set<std::size_t> erased_;
  std::uint64_t downloaded_ = 0;
  std::map<std::size_t, std::uint64_t> per_node_;
};

}  // namespace grmrepair
