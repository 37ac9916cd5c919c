// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include <CLI11.hpp>

#include "bsc/common.hpp"
#include "commands.hpp"

namespace {

void add_optimize_flags(CLI::App* app, bsc::cli::OptimizeArgs& o) {
  app->add_option("--method", o.method, "bs-hf or bs-cisd")
      ->check(CLI::IsMember({"bs-hf", "bs-cisd"}))
      ->capture_default_str();
  app->add_option("--restarts", o.restarts, "random restarts")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--max-iter", o.max_iter, "iterations per restart")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--lambda", o.lambda, "projection-ratio penalty")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app->add_option("--init-scale", o.init_scale, "initial parameters uniform in [-s, s]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--optimizer", o.minimizer, "bfgs or simplex")
      ->check(CLI::IsMember({"bfgs", "simplex"}))
      ->capture_default_str();
  app->add_option("--alpha-mask", o.alpha_mask, "excitation or full")
      ->check(CLI::IsMember({"excitation", "full"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace bsc::cli;
  CLI::App app{"Boson-sampling-assisted variational chemistry"};
  app.set_config("--config", "", "TOML config file; flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  Common common;
  app.add_option("--seed", common.seed, "RNG seed")->capture_default_str();
  app.add_option("--threads", common.threads, "worker cap")->check(CLI::PositiveNumber)->capture_default_str();

  IngestArgs ingest;
  auto* c_ingest = app.add_subcommand("ingest", "parse and validate a Hamiltonian, write JSON");
  c_ingest->add_option("input", ingest.input, "FCIDUMP or Hamiltonian JSON")->required();
  c_ingest->add_option("-o,--output", ingest.output, "output JSON");

  ExactArgs exact;
  auto* c_exact = app.add_subcommand("exact", "determinant, HF, CISD and FCI energies");
  c_exact->add_option("input", exact.input, "Hamiltonian file")->required();
  c_exact->add_option("-o,--output", exact.output, "report JSON");
  c_exact->add_option("--restarts", exact.restarts, "HF restarts")->check(CLI::PositiveNumber)->capture_default_str();

  OptimizeArgs optimize;
  auto* c_opt = app.add_subcommand("optimize", "variational optimization");
  c_opt->add_option("input", optimize.input, "Hamiltonian file")->required();
  c_opt->add_option("-o,--output", optimize.output, "result JSON (- for stdout)")->required();
  c_opt->add_option("--trace-dir", optimize.trace_dir, "directory for per-restart trace CSVs");
  add_optimize_flags(c_opt, optimize);

  MeasureArgs measure;
  auto* c_meas = app.add_subcommand("measure", "shot-based energy estimate at optimized parameters");
  c_meas->add_option("params", measure.params, "optimize result JSON")->required();
  c_meas->add_option("-o,--output", measure.output, "report JSON (- for stdout)")->required();
  c_meas->add_option("--shots-h", measure.shots_h, "Hamiltonian shot budget")->capture_default_str();
  c_meas->add_option("--shots-v", measure.shots_v, "denominator shot budget")->capture_default_str();
  c_meas->add_option("--calibration-shots", measure.calibration_shots, "lossy calibration shots (default shots-v)");
  c_meas->add_option("--loss", measure.loss, "per-mode photon loss probability")->capture_default_str();
  c_meas->add_option("--chi", measure.chi, "lower bound on the projection ratio");
  c_meas->add_option("--shot-log", measure.shot_log, "per-shot CSV");

  ScanArgs scan;
  auto* c_scan = app.add_subcommand("scan", "potential energy scan over a manifest");
  c_scan->add_option("manifest", scan.manifest, "manifest JSON")->required();
  c_scan->add_option("-o,--output", scan.output, "CSV (- for stdout)")->capture_default_str();
  add_optimize_flags(c_scan, scan.optimize);

  ReportArgs report;
  auto* c_report = app.add_subcommand("report", "summarize a scan CSV against FCI");
  c_report->add_option("input", report.input, "scan CSV")->required();
  c_report->add_option("-o,--output", report.output, "summary JSON");
  c_report->add_option("--threshold", report.threshold, "accuracy threshold in Hartree")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*c_ingest) return cmd_ingest(ingest, common);
    if (*c_exact) return cmd_exact(exact, common);
    if (*c_opt) return cmd_optimize(optimize, common);
    if (*c_meas) return cmd_measure(measure, common);
    if (*c_scan) return cmd_scan(scan, common);
    if (*c_report) return cmd_report(report, common);
  } catch (const bsc::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const bsc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
