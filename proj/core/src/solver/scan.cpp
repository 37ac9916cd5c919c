// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#include "bsc/solver/scan.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "bsc/hamlib/hamiltonian.hpp"
#include "bsc/solver/reference.hpp"

namespace bsc::solver {

std::vector<ManifestEntry> parse_manifest(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("manifest is not valid JSON: ") + e.what(), 0);
  }
  if (!j.is_array()) throw ParseError("manifest must be a JSON list", 0);
  std::vector<ManifestEntry> out;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("label") || !e.contains("file") || !e.contains("method")) {
      throw ParseError("manifest entries need label, file and method", 0);
    }
    try {
      out.push_back({e.at("label").get<std::string>(), e.at("file").get<std::string>(),
                     method_from_string(e.at("method").get<std::string>())});
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(std::string("bad manifest entry: ") + ex.what(), 0);
    }
  }
  return out;
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open manifest " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str());
}

std::optional<std::filesystem::path> resolve_data_file(const std::string& file, const std::filesystem::path& base,
                                                       const std::filesystem::path& data_dir) {
  const std::filesystem::path p(file);
  if (p.is_absolute()) return std::filesystem::exists(p) ? std::optional(p) : std::nullopt;
  if (std::filesystem::exists(base / p)) return base / p;
  if (!data_dir.empty() && std::filesystem::exists(data_dir / p)) return data_dir / p;
  return std::nullopt;
}

std::vector<ScanRow> scan_pes(const std::vector<ManifestEntry>& entries, const OptimizeConfig& config,
                              const std::filesystem::path& base, const std::filesystem::path& data_dir) {
  std::vector<ScanRow> rows;
  for (const auto& e : entries) {
    ScanRow row;
    row.label = e.label;
    row.method = e.method;
    try {
      const auto path = resolve_data_file(e.file, base, data_dir);
      if (!path) throw ValidationError("file not found: " + e.file);
      const auto h = hamlib::load_hamiltonian(*path);
      const auto refs = reference_energies(h, config);
      row.e_hf = refs.hf;
      row.e_cisd = refs.cisd;
      row.e_fci = refs.fci;
      const auto out = optimize(make_problem(h, e.method), config);
      row.e_bsc = out.best.energy;
      row.q_ratio = out.best.projection_ratio;
      row.converged = out.best.converged;
    } catch (const Error& ex) {
      row.failed = true;
      row.error = ex.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows) {
  out << "label,e_bsc,e_hf,e_cisd,e_fci,q_ratio,converged\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.10f", v);
    return std::string(buf);
  };
  for (const auto& r : rows) {
    if (r.failed) {
      out << r.label << ",nan,nan,nan,nan,nan,failed\n";
      continue;
    }
    out << r.label << ',' << num(r.e_bsc) << ',' << num(r.e_hf) << ',' << num(r.e_cisd) << ',' << num(r.e_fci) << ','
        << num(r.q_ratio) << ',' << (r.converged ? "true" : "false") << '\n';
  }
}

}  // namespace bsc::solver
