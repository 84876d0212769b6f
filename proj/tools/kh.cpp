// Command-line entry point: compute, jones, twist-scan, torus-scan, verify.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kh/acceptance.hpp"
#include "kh/error.hpp"
#include "kh/experiments.hpp"
#include "kh/homology.hpp"
#include "kh/jones_oracle.hpp"

#ifndef KH_FIXTURES_DIR
#define KH_FIXTURES_DIR "fixtures"
#endif

namespace {

struct InputArgs {
  std::string pd_file;
  std::string braid;
  int strands = 0;
};

void add_input(CLI::App* cmd, InputArgs& in) {
  cmd->add_option("--pd", in.pd_file, "PD code file");
  cmd->add_option("--braid", in.braid, "braid word, e.g. \"1 1 -2\"");
  cmd->add_option("--strands", in.strands, "strand count for --braid");
}

kh::LinkDiagram read_input(const InputArgs& in) {
  if (!in.pd_file.empty() && !in.braid.empty()) {
    throw kh::Error(kh::Errc::MalformedSyntax, "give either --pd or --braid, not both");
  }
  if (!in.pd_file.empty()) {
    std::ifstream f(in.pd_file);
    if (!f) throw kh::Error(kh::Errc::MalformedSyntax, "cannot open " + in.pd_file);
    std::stringstream ss;
    ss << f.rdbuf();
    return kh::parse_pd(ss.str());
  }
  if (!in.braid.empty()) {
    if (in.strands < 1) throw kh::Error(kh::Errc::MalformedSyntax, "--braid needs --strands");
    return kh::braid_closure(kh::parse_braid_word(in.braid), in.strands);
  }
  throw kh::Error(kh::Errc::MalformedSyntax, "no diagram given; use --pd or --braid");
}

int print_report(const kh::ScanReport& report, const std::string& out) {
  std::cout << (out == "csv" ? kh::scan_csv(report) : kh::scan_text(report));
  for (const auto& v : report.verdicts) {
    if (!v.pass) std::cerr << "verdict " << v.name << " failed: " << v.detail << "\n";
  }
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational Khovanov homology, Jones polynomials and twist-family scans"};
  app.require_subcommand(1);

  InputArgs in;
  int budget = kh::kDefaultBudget;
  int threads = 1;
  int max_n = 12;
  int torus_p = 2;
  bool parallel_rows = false;
  std::string out = "text";
  std::string fixtures = KH_FIXTURES_DIR;

  auto* compute = app.add_subcommand("compute", "normalised Khovanov table");
  auto* jones = app.add_subcommand("jones", "Jones polynomial from homology and from the bracket");
  auto* twist = app.add_subcommand("twist-scan", "scan D_n over n = 0..max-n");
  auto* torus = app.add_subcommand("torus-scan", "scan T(p, n) over n = 0..max-n");
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");

  for (auto* cmd : {compute, jones, twist}) add_input(cmd, in);
  for (auto* cmd : {compute, jones, twist, torus, verify}) {
    cmd->add_option("--budget", budget, "crossing limit")->check(CLI::PositiveNumber);
  }
  for (auto* cmd : {compute, twist, torus}) {
    cmd->add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 256));
  }
  for (auto* cmd : {twist, torus}) {
    cmd->add_option("--max-n", max_n, "largest twist count")->check(CLI::NonNegativeNumber);
    cmd->add_option("--out", out, "csv or text")->check(CLI::IsMember({"csv", "text"}));
    cmd->add_flag("--parallel-rows", parallel_rows, "one row per thread");
  }
  torus->add_option("--strands,-p", torus_p, "p in T(p, n)")->check(CLI::Range(2, 8));
  verify->add_option("--fixtures", fixtures, "fixture directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    kh::ScanOptions so;
    so.budget = budget;
    so.threads = threads;
    so.parallel_rows = parallel_rows;

    if (*compute) {
      kh::HomologyOptions ho;
      ho.threads = threads;
      std::cout << kh::to_text(kh::khovanov_homology(read_input(in), budget, ho));
      return 0;
    }
    if (*jones) {
      const auto d = read_input(in);
      const auto from_kh = kh::jones_from_kh(kh::khovanov_homology(d, budget));
      const auto from_bracket = kh::jones_polynomial(d, budget);
      const bool agree = from_kh == from_bracket;
      std::cout << "format=1\n"
                << "from_homology=" << from_kh << "\n"
                << "from_bracket=" << from_bracket << "\n"
                << "agree=" << (agree ? "true" : "false") << "\n";
      return agree ? 0 : 1;
    }
    if (*twist) return print_report(kh::twist_scan(read_input(in), max_n, so), out);
    if (*torus) return print_report(kh::torus_scan(torus_p, max_n, so), out);
    if (*verify) {
      kh::AcceptanceOptions ao;
      ao.fixtures_dir = fixtures;
      ao.budget = budget;
      bool all = true;
      kh::run_acceptance(ao, [&all](const kh::CriterionResult& r) {
        std::cout << kh::result_line(r) << std::endl;
        std::cerr << "criterion " << r.id << " took " << r.seconds << " s\n";
        all = all && r.pass;
      });
      return all ? 0 : 1;
    }
  } catch (const kh::Error& e) {
    std::cerr << "kh: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
