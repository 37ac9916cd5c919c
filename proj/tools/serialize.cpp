// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#include "serialize.hpp"

#include <cstdio>

namespace bsc::cli {

using nlohmann::json;

void check_schema(const json& j, const std::string& what) {
  if (!j.is_object() || !j.contains("schema_version") || !j["schema_version"].is_string()) {
    throw ParseError(what + ": missing schema_version", 0);
  }
  const auto v = j["schema_version"].get<std::string>();
  if (v.substr(0, v.find('.')) != "1") throw ParseError(what + ": unsupported schema version " + v, 0);
}

json to_json(const solver::AnsatzParams& p) { return {{"alpha", p.alpha}, {"beta", p.beta}}; }

solver::AnsatzParams params_from_json(const json& j) {
  try {
    return {j.at("alpha").get<std::vector<double>>(), j.at("beta").get<std::vector<double>>()};
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad parameter block: ") + e.what(), 0);
  }
}

json to_json(const solver::VqeResult& r, bool with_trace) {
  json j{{"energy", r.energy},
         {"projection_ratio", r.projection_ratio},
         {"iterations", r.iterations},
         {"restart", r.restart},
         {"converged", r.converged},
         {"status", r.status},
         {"params", to_json(r.params)}};
  if (with_trace) {
    json t = json::array();
    for (const auto& p : r.trace) t.push_back({p.iteration, p.energy, p.projection_ratio});
    j["trace"] = t;
  }
  return j;
}

json to_json(const solver::ReferenceEnergies& r) {
  return {{"determinant", r.determinant}, {"hf", r.hf}, {"cisd", r.cisd}, {"fci", r.fci}};
}

json to_json(const homodyne::EstimateReport& r) {
  return {{"mean", r.mean},
          {"standard_error", r.standard_error()},
          {"numerator", r.numerator},
          {"denominator", r.denominator},
          {"empirical_variance", r.empirical_variance},
          {"variance_bound", r.variance_bound},
          {"bias_bound", r.bias_bound},
          {"numerator_shots", r.numerator_shots},
          {"denominator_shots", r.denominator_shots},
          {"m_h", r.m_h},
          {"m_v", r.m_v},
          {"k_h", r.k_h},
          {"k_v", r.k_v},
          {"chi", r.chi},
          {"projection_ratio", r.projection_ratio},
          {"projection_ratio_stderr", r.projection_ratio_stderr},
          {"projection_shots", r.projection_shots}};
}

json to_json(const lossmit::MitigationCounts& c) {
  return {{"n1", c.n1}, {"n2", c.n2}, {"n3", c.n3}, {"total", c.total}};
}

json to_json(const lossmit::MitigatedEstimate& e) {
  return {{"corrected", e.corrected},
          {"corrected_stderr", e.corrected_stderr},
          {"raw", e.raw},
          {"raw_stderr", e.raw_stderr},
          {"counts", to_json(e.counts)},
          {"hybrid_shots", e.hybrid_shots},
          {"gated_shots", e.gated_shots}};
}

std::string energy_text(double e) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", e);
  return buf;
}

}  // namespace bsc::cli
