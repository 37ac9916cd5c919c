// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bsc/solver/optimize.hpp"
#include "bsc/solver/problem.hpp"

namespace bsc::solver {

struct ManifestEntry {
  std::string label;
  std::string file;
  Method method = Method::BsHf;
};

/// Parses [{"label": ..., "file": ..., "method": "bs-hf" | "bs-cisd"}].
std::vector<ManifestEntry> parse_manifest(const std::string& text);
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);

/// Resolves a manifest file against the manifest's directory first and then
/// `data_dir` (may be empty). Returns nullopt if neither exists.
std::optional<std::filesystem::path> resolve_data_file(const std::string& file, const std::filesystem::path& base,
                                                       const std::filesystem::path& data_dir);

struct ScanRow {
  std::string label;
  Method method = Method::BsHf;
  double e_bsc = 0.0;
  double e_hf = 0.0;
  double e_cisd = 0.0;
  double e_fci = 0.0;
  double q_ratio = 0.0;
  bool converged = false;
  bool failed = false;
  std::string error;
};

/// Per geometry: BS-C optimization plus the HF, CISD and FCI references. A
/// failing geometry is recorded with failed = true and the scan continues.
std::vector<ScanRow> scan_pes(const std::vector<ManifestEntry>& entries, const OptimizeConfig& config,
                              const std::filesystem::path& base, const std::filesystem::path& data_dir);

/// Header label,e_bsc,e_hf,e_cisd,e_fci,q_ratio,converged; energies with
/// 10 decimals; failed rows carry "nan" values and converged = "failed".
void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows);

}  // namespace bsc::solver
