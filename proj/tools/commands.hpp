// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace bsc::cli {

struct Common {
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct IngestArgs {
  std::string input;
  std::string output;
};

struct ExactArgs {
  std::string input;
  std::string output;  // empty: stdout only
  int restarts = 4;
};

struct OptimizeArgs {
  std::string input;
  std::string output;     // result JSON, "-" for stdout
  std::string trace_dir;  // per-restart CSVs; empty disables
  std::string method = "bs-hf";
  std::string alpha_mask = "excitation";
  std::string minimizer = "bfgs";
  int restarts = 10;
  int max_iter = 1000;
  double lambda = 0.0;
  double init_scale = 0.1;
};

struct MeasureArgs {
  std::string params;  // optimize result JSON
  std::string output;
  std::string shot_log;
  std::uint64_t shots_h = 100000;
  std::uint64_t shots_v = 100000;
  std::uint64_t calibration_shots = 0;  // 0: same as shots_v
  double loss = 0.0;                    // photon loss probability per mode
  std::optional<double> chi;
};

struct ScanArgs {
  std::string manifest;
  std::string output;
  OptimizeArgs optimize;
};

struct ReportArgs {
  std::string input;
  std::string output;
  double threshold = 1.6e-3;
};

/// Looks `file` up as given, then under BSC_DATA_DIR, then under the data
/// directory configured at build time. Throws ValidationError if absent.
std::filesystem::path locate_input(const std::string& file);
std::filesystem::path data_dir();

int cmd_ingest(const IngestArgs& a, const Common& c);
int cmd_exact(const ExactArgs& a, const Common& c);
int cmd_optimize(const OptimizeArgs& a, const Common& c);
int cmd_measure(const MeasureArgs& a, const Common& c);
int cmd_scan(const ScanArgs& a, const Common& c);
int cmd_report(const ReportArgs& a, const Common& c);

}  // namespace bsc::cli
