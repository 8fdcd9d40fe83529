// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <filesystem>

#include "cli_commands.hpp"

using namespace grmrepair;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("grmrepair_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                                                 ::testing::UnitTest::GetInstance()->current_test_info()->name())) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

cli::GlobalOptions opts(std::uint32_t p, std::uint32_t t, std::uint64_t m, std::uint64_t mu, std::uint64_t seed = 1) {
  cli::GlobalOptions g;
  g.p = p;
  g.t = t;
  g.m = m;
  g.mu = mu;
  g.seed = seed;
  return g;
}

}  // namespace

TEST(FieldSpecJson, RoundTripAndDefaultModulus) {
  const FieldSpec s{3, 2, default_modulus(3, 2)};
  const auto back = io::field_spec_from_json(io::field_spec_json(s));
  EXPECT_EQ(back.p, 3u);
  EXPECT_EQ(back.t, 2u);
  EXPECT_EQ(back.modulus, s.modulus);
  const auto defaulted = io::field_spec_from_json(io::Json::parse(R"({"p": 2, "t": 4})"));
  EXPECT_EQ(defaulted.modulus, (std::vector<std::uint32_t>{1, 0, 0, 1, 1}));
  EXPECT_THROW(io::field_spec_from_json(io::Json::parse(R"({"p": 2})")), io::Json::exception);
}

TEST(CodewordCsv, RoundTripWithErasures) {
  const Field f(3, 2);
  const GrmCode code(f, 2, 3);
  const auto cw = code.random_codeword(5).second;
  io::StoredCodeword stored;
  for (const auto& e : cw) stored.symbols.emplace_back(e);
  stored.symbols[4].reset();
  stored.symbols[80].reset();
  const auto text = io::codeword_csv(code, stored);
  EXPECT_EQ(text.substr(0, text.find('\n')), "node_rank,x1,x2,symbol_rank");
  const auto back = io::parse_codeword_csv(code, text);
  EXPECT_EQ(back.erased(), (std::vector<std::size_t>{4, 80}));
  for (std::size_t j = 0; j < code.n(); ++j) {
    if (j != 4 && j != 80) EXPECT_EQ(*back.symbols[j], cw[j]);
  }
}

TEST(CodewordCsv, RejectsMalformedInput) {
  const Field f(2, 2);
  const GrmCode code(f, 2, 1);
  const auto good = io::codeword_csv(code, code.random_codeword(1).second);
  EXPECT_THROW(io::parse_codeword_csv(code, "rank,x1\n"), std::invalid_argument);
  // wrong coordinates for node 1
  std::string bad = good;
  bad.replace(bad.find("\n1,1,0,"), 7, "\n1,2,0,");
  EXPECT_THROW(io::parse_codeword_csv(code, bad), std::invalid_argument);
  // missing last row
  EXPECT_THROW(io::parse_codeword_csv(code, good.substr(0, good.rfind("15,"))), std::invalid_argument);
  // duplicated row
  EXPECT_THROW(io::parse_codeword_csv(code, good + "0,0,0,1\n"), std::invalid_argument);
  // extra column
  std::string wide = good;
  wide.replace(wide.find("\n0,0,0,"), 7, "\n0,0,0,0,");
  EXPECT_THROW(io::parse_codeword_csv(code, wide), std::invalid_argument);
}

TEST(CoefficientJson, RoundTripMergesDuplicates) {
  const Field f(2, 4);
  const GrmCode code(f, 2, 11);
  const auto [coeffs, cw] = code.random_codeword(9);
  const auto back = io::coefficients_from_json(f, io::coefficients_json(coeffs));
  EXPECT_EQ(code.encode(back), cw);
  const auto merged = io::coefficients_from_json(f, io::Json::parse(R"([{"exps":[1,0],"coeff":3},{"exps":[1,0],"coeff":5}])"));
  ASSERT_EQ(merged.size(), 1u);
  EXPECT_EQ(merged.begin()->second, f.add(Element{3}, Element{5}));
}

TEST(NodeSyntax, RanksAndTuples) {
  const Field f(2, 4);
  const GrmCode code(f, 3, 4);
  EXPECT_EQ(cli::parse_node(code, "(0,0,0)"), 0u);
  EXPECT_EQ(cli::parse_node(code, "(1,0,0)"), 1u);
  EXPECT_EQ(cli::parse_node(code, " (0, 1, 0) "), 16u);
  EXPECT_EQ(cli::parse_nodes(code, "(0,0,0), 5,(2,2,2),4095"), (std::vector<std::size_t>{0, 5, 546, 4095}));
  EXPECT_THROW(cli::parse_node(code, "4096"), std::invalid_argument);
  EXPECT_THROW(cli::parse_nodes(code, "(1,2"), std::invalid_argument);
  EXPECT_THROW(cli::parse_node(code, "(1,2)"), std::exception);
  EXPECT_EQ(cli::node_label(code, 546), "(2,2,2)");
}

TEST(MatrixCsv, ShapeAndHeader) {
  const Field f(2, 2);
  const GrmCode code(f, 2, 1);
  const auto mat = build_repair_matrix(code, group_erasures(code, make_erasure_pattern(code, {0, 1, 6}), 0));
  const auto text = io::matrix_csv(mat);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("node_rank,g1_u1_e1,g1_u1_e2,", 0), 0u);
  EXPECT_EQ(std::count(line.begin(), line.end(), ','), 6);
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, code.n());
}

TEST(Commands, EncodeEraseRepairRoundTrip) {
  TempDir dir;
  const auto g = opts(2, 4, 2, 11, 3);
  const auto enc = cli::cmd_encode(g, "");
  ASSERT_EQ(enc.exit_code, cli::kOk);
  io::write_text(dir.file("cw.csv"), enc.output);
  const auto er = cli::cmd_erase(g, dir.file("cw.csv"), "(0,0),(1,0),17");
  io::write_text(dir.file("er.csv"), er.output);

  for (const std::string model : {"distributed", "centralized"}) {
    cli::MultiOptions mo;
    mo.codeword_path = dir.file("er.csv");
    mo.model = model;
    mo.axis = "best";
    std::string matrix;
    const auto r = cli::cmd_repair_multi(g, mo, &matrix);
    EXPECT_EQ(r.exit_code, cli::kOk) << model;
    const auto j = io::Json::parse(r.output);
    const auto original = io::parse_codeword_csv(GrmCode(Field(2, 4), 2, 11), enc.output);
    for (const auto& rec : j["recovered"]) EXPECT_EQ(rec["symbol"].get<std::uint32_t>(), original.symbols[rec["node"].get<std::size_t>()]->rank);
    EXPECT_LE(j["bandwidth_fp_symbols"].get<std::uint64_t>(), j["bound"].get<std::uint64_t>());
    EXPECT_FALSE(matrix.empty());
  }

  cli::SingleOptions so;
  so.codeword_path = dir.file("cw.csv");
  so.target = "(3,5)";
  const auto r = cli::cmd_repair_single(g, so);
  EXPECT_EQ(r.exit_code, cli::kOk);
  const auto j = io::Json::parse(r.output);
  EXPECT_TRUE(j["matches_original"].get<bool>());
  EXPECT_EQ(j["bandwidth_fp_symbols"], 30);
  EXPECT_EQ(j["per_helper"].size(), 15u);
}

TEST(Commands, SingleRepairNeedsAllOtherNodes) {
  TempDir dir;
  const auto g = opts(2, 4, 2, 11);
  io::write_text(dir.file("cw.csv"), cli::cmd_encode(g, "").output);
  io::write_text(dir.file("er.csv"), cli::cmd_erase(g, dir.file("cw.csv"), "0,1").output);
  cli::SingleOptions so;
  so.codeword_path = dir.file("er.csv");
  so.target = "0";
  EXPECT_THROW(cli::cmd_repair_single(g, so), IncompleteDownload);
}

TEST(Commands, UserSubspace) {
  cli::SingleOptions so;
  so.target = "0";
  so.axis = 2;
  so.subspace = "1,6";  // span{1, xi^5} with xi^5 = 6 under x^4 + x^3 + 1
  const auto j = io::Json::parse(cli::cmd_repair_single(opts(2, 4, 2, 11), so).output);
  EXPECT_EQ(j["s"], 2);
  EXPECT_EQ(j["bandwidth_fp_symbols"], 30);
  so.subspace = "1,2,4";
  EXPECT_THROW(cli::cmd_repair_single(opts(2, 4, 2, 11), so), InfeasibleScheme);
  so.subspace = "";
  so.axis = 3;
  EXPECT_THROW(cli::cmd_repair_single(opts(2, 4, 2, 11), so), std::invalid_argument);
}

TEST(Commands, ParamsReport) {
  const auto j = io::Json::parse(cli::cmd_params(opts(2, 4, 2, 11)).output);
  EXPECT_EQ(j["n"], 256);
  EXPECT_EQ(j["k_grm"], 78);
  EXPECT_EQ(j["d"], 80);
  EXPECT_EQ(j["mu_dual"], 18);
  EXPECT_EQ(j["d_dual"], 13);
  EXPECT_EQ(j["s"], 2);
  EXPECT_EQ(j["single_bound"], 30);
  EXPECT_EQ(j["trivial_k_bandwidth"], 708);
  const auto full = io::Json::parse(cli::cmd_params(opts(2, 2, 2, 5)).output);
  EXPECT_TRUE(full["s"].is_null());
}

TEST(Commands, ExpectRegimeAndModes) {
  cli::ExpectOptions eo;
  eo.l = 2;
  eo.samples = 1000;
  EXPECT_THROW(cli::cmd_expect(opts(2, 4, 2, 11), eo), InfeasibleScheme);
  eo.mode = "common_s";
  const auto j = io::Json::parse(cli::cmd_expect(opts(2, 4, 2, 11), eo).output);
  EXPECT_EQ(j["exact"], "1016/17");
  EXPECT_EQ(j["partitions"].size(), 2u);
  eo.mode = "bogus";
  EXPECT_THROW(cli::cmd_expect(opts(2, 4, 2, 11), eo), std::invalid_argument);
  eo.mode = "common_s";
  eo.measured = true;
  const auto m = io::Json::parse(cli::cmd_expect(opts(2, 2, 2, 1), eo).output);
  EXPECT_TRUE(m.contains("measured"));
}

TEST(Commands, MultiRepairErrors) {
  const auto g = opts(2, 4, 2, 11);
  cli::MultiOptions mo;
  EXPECT_THROW(cli::cmd_repair_multi(g, mo), std::invalid_argument);
  mo.erasures = "0,0";
  EXPECT_THROW(cli::cmd_repair_multi(g, mo), std::invalid_argument);
  mo.erasures = "0,1";
  mo.model = "both";
  EXPECT_THROW(cli::cmd_repair_multi(g, mo), std::invalid_argument);
  mo.model = "distributed";
  mo.axis = "0";
  EXPECT_THROW(cli::cmd_repair_multi(g, mo), std::invalid_argument);
}

TEST(Commands, ReproductionCommands) {
  const auto t = cli::cmd_table1();
  EXPECT_EQ(t.exit_code, cli::kOk);
  EXPECT_NE(t.output.find("status,match"), std::string::npos);
  EXPECT_NE(t.output.find("bandwidth,30"), std::string::npos);
  const auto e = cli::cmd_demo_example2(cli::GlobalOptions{}, 5);
  EXPECT_EQ(e.exit_code, cli::kOk);
  const auto j = io::Json::parse(e.output);
  EXPECT_EQ(j["distributed"]["bandwidth_fp_symbols"], 71);
  EXPECT_EQ(j["centralized"]["bound"], 71);
  EXPECT_EQ(j["centralized"]["erratum"]["printed_total"], 43);
}

TEST(Commands, CurvesRejectOutOfRegime) {
  EXPECT_THROW(cli::cmd_curves(opts(2, 4, 2, 11), 1), InfeasibleScheme);
  const auto c = cli::cmd_curves(opts(16, 4, 2, 65536 - 4096), 2);
  EXPECT_EQ(c.output, "l,trivial_kt,worst,best_distributed,best_centralized\n1,16106127364,131070,131070,131070\n2,16106127364,262140,262136,131068\n");
}
