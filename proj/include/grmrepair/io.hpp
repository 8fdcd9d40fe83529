// SPDX-License-Identifier: Apache-2.0
#pragma once

// File formats: field spec (JSON), codewords (CSV), coefficient maps (JSON) and repair
// matrices (CSV). Field elements are written as their integer rank.

#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "grmrepair/field.hpp"
#include "grmrepair/grm.hpp"
#include "grmrepair/repair_multi.hpp"

namespace grmrepair::io {

using Json = nlohmann::ordered_json;

inline Json field_spec_json(const FieldSpec& s) { return Json{{"p", s.p}, {"t", s.t}, {"modulus", s.modulus}}; }

inline FieldSpec field_spec_from_json(const Json& j) {
  FieldSpec s;
  s.p = j.at("p").get<std::uint32_t>();
  s.t = j.at("t").get<std::uint32_t>();
  s.modulus = j.contains("modulus") ? j.at("modulus").get<std::vector<std::uint32_t>>() : default_modulus(s.p, s.t);
  return s;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

inline FieldSpec read_field_spec(const std::string& path) { return field_spec_from_json(Json::parse(read_text(path))); }

/// A codeword with optional erasures; an empty symbol cell marks an erased node.
struct StoredCodeword {
  std::vector<std::optional<Element>> symbols;

  std::vector<std::size_t> erased() const {
    std::vector<std::size_t> r;
    for (std::size_t j = 0; j < symbols.size(); ++j)
      if (!symbols[j]) r.push_back(j);
    return r;
  }
  /// Erased symbols become zero; callers erase them in the cluster.
  Codeword filled() const {
    Codeword c;
    for (const auto& s : symbols) c.push_back(s.value_or(Element{0}));
    return c;
  }
};

inline std::string codeword_csv(const GrmCode& code, const StoredCodeword& cw) {
  std::ostringstream os;
  os << "node_rank";
  for (std::size_t i = 1; i <= code.m(); ++i) os << ",x" << i;
  os << ",symbol_rank\n";
  for (std::size_t j = 0; j < code.n(); ++j) {
    os << j;
    for (const auto& x : code.node_coords(j)) os << ',' << x.rank;
    os << ',';
    if (cw.symbols.at(j)) os << cw.symbols[j]->rank;
    os << '\n';
  }
  return os.str();
}

inline std::string codeword_csv(const GrmCode& code, const Codeword& cw) {
  StoredCodeword s;
  for (const auto& e : cw) s.symbols.emplace_back(e);
  return codeword_csv(code, s);
}

inline StoredCodeword parse_codeword_csv(const GrmCode& code, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("node_rank", 0) != 0) throw std::invalid_argument("codeword CSV: missing header");
  StoredCodeword cw;
  cw.symbols.assign(code.n(), std::nullopt);
  std::vector<bool> seen(code.n(), false);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (cells.size() != code.m() + 2) throw std::invalid_argument("codeword CSV: wrong column count in '" + line + "'");
    const std::size_t rank = std::stoull(cells[0]);
    if (rank >= code.n() || seen[rank]) throw std::invalid_argument("codeword CSV: bad or repeated node " + cells[0]);
    std::vector<Element> x;
    for (std::size_t i = 0; i < code.m(); ++i) x.push_back(Element{static_cast<std::uint32_t>(std::stoul(cells[1 + i]))});
    if (code.node_rank(x) != rank) throw std::invalid_argument("codeword CSV: coordinates do not match node " + cells[0]);
    seen[rank] = true;
    if (!cells.back().empty()) cw.symbols[rank] = code.field().element(static_cast<std::uint32_t>(std::stoul(cells.back())));
  }
  for (std::size_t j = 0; j < code.n(); ++j)
    if (!seen[j]) throw std::invalid_argument("codeword CSV: node " + std::to_string(j) + " missing");
  return cw;
}

inline Json coefficients_json(const CoeffMap& coeffs) {
  Json arr = Json::array();
  for (const auto& [e, c] : coeffs) arr.push_back(Json{{"exps", e}, {"coeff", c.rank}});
  return arr;
}

inline CoeffMap coefficients_from_json(const Field& field, const Json& j) {
  CoeffMap m;
  for (const auto& item : j) {
    const Element c = field.element(item.at("coeff").get<std::uint32_t>());
    const auto e = item.at("exps").get<Exponents>();
    auto [it, fresh] = m.emplace(e, c);
    if (!fresh) it->second = field.add(it->second, c);
  }
  return m;
}

/// One row per node: node_rank followed by the lt entries.
inline std::string matrix_csv(const RepairMatrix& mat) {
  std::ostringstream os;
  os << "node_rank";
  for (const auto& col : mat.columns) os << ",g" << col.group + 1 << "_u" << col.u + 1 << "_e" << col.e + 1;
  os << '\n';
  for (std::size_t j = 0; j < mat.rows.size(); ++j) {
    os << j;
    for (const auto& v : mat.rows[j]) os << ',' << v.rank;
    os << '\n';
  }
  return os.str();
}

inline Json report_json(const BandwidthReport& r) {
  Json per = Json::array();
  for (auto [node, count] : r.per_helper) per.push_back(Json{{"node", node}, {"dim", count}});
  return Json{{"model", r.model}, {"bandwidth_fp_symbols", r.downloaded_fp_symbols}, {"bound", r.bound}, {"degenerate", r.degenerate}, {"per_helper", per}};
}

}  // namespace grmrepair::io
