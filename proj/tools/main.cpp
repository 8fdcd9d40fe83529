// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>
#include <iostream>

#include "cli_commands.hpp"

using namespace grmrepair;

namespace {

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) std::cout << text;
  else io::write_text(out_path, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Reed-Muller codes: encoding, erasure repair and bandwidth analysis"};
  app.require_subcommand(1);
  app.fallthrough();

  cli::GlobalOptions g;
  std::string out_path;
  app.add_option("--field", g.field_path, "field spec JSON {p, t, modulus}")->check(CLI::ExistingFile);
  app.add_option("--p", g.p, "characteristic")->capture_default_str();
  app.add_option("--t", g.t, "extension degree")->capture_default_str();
  app.add_option("--m", g.m, "number of variables")->capture_default_str();
  app.add_option("--mu", g.mu, "total degree")->capture_default_str();
  app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
  app.add_option("--out", out_path, "output file (default stdout)");

  auto* params = app.add_subcommand("params", "code parameters, bounds and regime caps");

  std::string coeffs_path;
  auto* encode = app.add_subcommand("encode", "encode coefficients (or a random message) to a codeword CSV");
  encode->add_option("--coeffs", coeffs_path, "coefficient JSON [{exps, coeff}]")->check(CLI::ExistingFile);

  std::string codeword_path, erasures;
  auto* erase = app.add_subcommand("erase", "blank out symbols of a codeword CSV");
  erase->add_option("--codeword", codeword_path)->required()->check(CLI::ExistingFile);
  erase->add_option("--erasures", erasures, "node ranks or (x1,..,xm) tuples")->required();

  cli::SingleOptions so;
  std::string report_path;
  auto* single = app.add_subcommand("repair-single", "repair one erased node");
  single->add_option("--codeword", so.codeword_path, "codeword CSV (default: random codeword from --seed)")->check(CLI::ExistingFile);
  single->add_option("--target", so.target, "node rank or (x1,..,xm)")->required();
  single->add_option("--axis", so.axis, "line direction, 1..m (default m)");
  single->add_option("--subspace", so.subspace, "comma-separated element ranks spanning V");
  single->add_option("--report", report_path, "alias for --out");

  cli::MultiOptions mo;
  auto* multi = app.add_subcommand("repair-multi", "repair several erased nodes");
  multi->add_option("--codeword", mo.codeword_path, "codeword CSV; blank cells are erasures")->check(CLI::ExistingFile);
  multi->add_option("--erasures", mo.erasures, "node ranks or (x1,..,xm) tuples");
  multi->add_option("--model", mo.model)->check(CLI::IsMember({"distributed", "centralized"}))->capture_default_str();
  multi->add_option("--axis", mo.axis, "1..m or best")->capture_default_str();
  multi->add_option("--matrix-out", mo.matrix_out, "write the repair matrix as CSV");
  multi->add_option("--report", report_path, "alias for --out");

  cli::ExpectOptions eo;
  auto* expect = app.add_subcommand("expect", "expected bandwidth under uniformly random erasures");
  expect->add_option("--l", eo.l, "number of erasures")->required();
  expect->add_option("--model", eo.model)->check(CLI::IsMember({"distributed", "centralized"}))->capture_default_str();
  expect->add_option("--samples", eo.samples, "Monte Carlo samples")->capture_default_str();
  expect->add_option("--mode", eo.mode)->check(CLI::IsMember({"regime", "common_s", "per_group"}))->capture_default_str();
  expect->add_flag("--measured", eo.measured, "also average the constructed schemes over every l-subset");

  std::uint64_t lmax = 8;
  auto* curves = app.add_subcommand("curves", "bound curves for l = 1..lmax as CSV");
  curves->add_option("--lmax", lmax)->capture_default_str();

  auto* table1 = app.add_subcommand("table1", "repair polynomial table for GRM(11,2)/F16 with a diff against the reference");
  auto* example2 = app.add_subcommand("demo-example2", "five erasures on GRM(4,3)/F16 in both models");
  auto* verify = app.add_subcommand("verify", "self-check over a built-in parameter matrix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? cli::kOk : cli::kUsage;
  }
  if (!report_path.empty()) out_path = report_path;

  try {
    cli::CommandResult r;
    std::string matrix;
    if (*params) r = cli::cmd_params(g);
    else if (*encode) r = cli::cmd_encode(g, coeffs_path);
    else if (*erase) r = cli::cmd_erase(g, codeword_path, erasures);
    else if (*single) r = cli::cmd_repair_single(g, so);
    else if (*multi) r = cli::cmd_repair_multi(g, mo, mo.matrix_out.empty() ? nullptr : &matrix);
    else if (*expect) r = cli::cmd_expect(g, eo);
    else if (*curves) r = cli::cmd_curves(g, lmax);
    else if (*table1) r = cli::cmd_table1();
    else if (*example2) r = cli::cmd_demo_example2(g);
    else if (*verify) r = cli::cmd_verify(g);
    if (!mo.matrix_out.empty() && *multi) io::write_text(mo.matrix_out, matrix);
    emit(out_path, r.output);
    return r.exit_code;
  } catch (const InfeasibleScheme& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return cli::kInfeasible;
  } catch (const DegreeViolation& e) {
    std::cerr << "degree violation: " << e.what() << '\n';
    return cli::kInfeasible;
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return cli::kVerificationFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kUsage;
  }
}
