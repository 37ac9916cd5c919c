// Copyright 2026 The bsc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <json.hpp>

#include "bsc/homodyne/estimator.hpp"
#include "bsc/lossmit/loss.hpp"
#include "bsc/solver/optimize.hpp"
#include "bsc/solver/reference.hpp"

namespace bsc::cli {

inline constexpr const char* kSchemaVersion = "1.0";

/// Throws ParseError unless j["schema_version"] has major version 1.
void check_schema(const nlohmann::json& j, const std::string& what);

nlohmann::json to_json(const solver::AnsatzParams& p);
solver::AnsatzParams params_from_json(const nlohmann::json& j);

nlohmann::json to_json(const solver::VqeResult& r, bool with_trace);
nlohmann::json to_json(const solver::ReferenceEnergies& r);
nlohmann::json to_json(const homodyne::EstimateReport& r);
nlohmann::json to_json(const lossmit::MitigationCounts& c);
nlohmann::json to_json(const lossmit::MitigatedEstimate& e);

/// Fixed-point text with 10 decimals, used for every printed energy.
std::string energy_text(double e);

}  // namespace bsc::cli
