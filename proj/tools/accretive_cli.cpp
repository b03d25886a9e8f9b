// Command-line driver: analyze, sweep, selftest and spectrum dumps.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "accretive/config.hpp"
#include "accretive/pipeline.hpp"
#include "accretive/report.hpp"
#include "accretive/selftest.hpp"

namespace {

using namespace accretive;

AnalysisConfig load(const std::string& path) {
  AnalysisConfig cfg = load_config(path);
  apply_seed_override(cfg, std::getenv("ACCRETIVE_SEED"));
  return cfg;
}

void print_checks(const VerificationReport& report) {
  for (const CheckResult* c : report.all_checks()) {
    std::printf("%-8s n=%-4d %-32s", std::string(to_string(c->status)).c_str(), c->n, c->id.c_str());
    if (c->evaluated()) std::printf(" margin=% .3e tol=%.1e", c->margin, c->tolerance);
    if (!c->note.empty() && c->status != CheckStatus::Pass) std::printf("  (%s)", c->note.c_str());
    std::printf("\n");
  }
  for (const StageError& e : report.errors)
    std::printf("error    n=%-4d stage=%s %s: %s\n", e.n, e.stage.c_str(), e.code.c_str(), e.message.c_str());
}

void print_sweep(const VerificationReport& report) {
  std::printf("%6s %12s %12s %12s %12s %10s %12s\n", "n", "C0", "theta", "norm_B", "aperture", "mu_hat",
              "min_margin");
  for (const SizeReport& s : report.sizes) {
    double worst = 0.0;
    bool any = false;
    for (const CheckResult& c : s.checks) {
      if (!c.evaluated()) continue;
      worst = any ? std::min(worst, c.margin + c.tolerance) : c.margin + c.tolerance;
      any = true;
    }
    auto cell = [](bool have, double v) {
      char buf[32];
      if (have)
        std::snprintf(buf, sizeof buf, "%12.5g", v);
      else
        std::snprintf(buf, sizeof buf, "%12s", "-");
      return std::string(buf);
    };
    std::printf("%6d %s %s %s %s %s %s\n", s.n, cell(bool(s.constants), s.constants ? s.constants->C0 : 0).c_str(),
                cell(bool(s.sector), s.sector ? s.sector->theta : 0).c_str(),
                cell(bool(s.norms), s.norms ? s.norms->norm_B : 0).c_str(),
                cell(bool(s.norms), s.norms ? s.norms->aperture : 0).c_str(),
                cell(bool(s.fit), s.fit ? s.fit->fit.mu_hat : 0).c_str(), cell(any, worst).c_str());
  }
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(item, &used);
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
      sizes.push_back(n);
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, "bad size '" + item + "' in --sizes");
    }
  }
  return sizes;
}

ReportFormat parse_format(const std::string& f) {
  if (f == "json") return ReportFormat::Json;
  if (f == "csv") return ReportFormat::Csv;
  return ReportFormat::Both;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Accretive operator spectral analysis"};
  app.require_subcommand(1);

  std::string config_path, out_dir, sizes_text, dump_dir, format = "both";

  auto* analyze = app.add_subcommand("analyze", "Run every enabled check and write the report");
  analyze->add_option("--config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
  analyze->add_option("--out", out_dir, "Output directory")->required();
  analyze->add_option("--format", format, "json, csv or both")->check(CLI::IsMember({"json", "csv", "both"}));

  auto* sweep = app.add_subcommand("sweep", "Run the analysis over a list of grid sizes");
  sweep->add_option("--config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--sizes", sizes_text, "Comma-separated grid sizes, e.g. 32,64,128,256")->required();
  sweep->add_option("--out", out_dir, "Optional output directory for the report");

  auto* selftest = app.add_subcommand("selftest", "Run the closed-form cases");

  auto* spectrum = app.add_subcommand("spectrum", "Write eigenvalue and s-number CSV files only");
  spectrum->add_option("--config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
  spectrum->add_option("--dump", dump_dir, "Directory for the CSV files")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*selftest) {
      int failed = 0;
      for (const SelftestCase& c : run_selftest()) {
        std::printf("%s  %s  [%s]\n", c.pass ? "pass" : "FAIL", c.name.c_str(), c.detail.c_str());
        failed += c.pass ? 0 : 1;
      }
      std::printf("%d case(s) failed\n", failed);
      return failed == 0 ? 0 : 1;
    }

    AnalysisConfig cfg = load(config_path);
    if (*spectrum) {
      for (const auto& path : write_spectra_csv(compute_spectra(cfg), dump_dir)) std::printf("wrote %s\n", path.c_str());
      return 0;
    }
    if (*sweep) {
      cfg.sizes = parse_sizes(sizes_text);
      validate(cfg);
    }
    const VerificationReport report = run_analysis(cfg);
    if (*sweep) print_sweep(report);
    print_checks(report);
    if (!out_dir.empty()) {
      for (const auto& path : emit_report(report, out_dir, parse_format(format)))
        std::printf("wrote %s\n", path.c_str());
    }
    std::printf("%s\n", report.pass() ? "all enabled checks pass" : "some checks failed");
    return report.pass() ? 0 : 1;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
