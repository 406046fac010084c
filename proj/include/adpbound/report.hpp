#pragma once

// Report serialization. Numbers are written with 17 significant digits so
// every double round-trips; non-finite values become null. Output depends
// only on the report contents.

#include "adpbound/adp.hpp"
#include "adpbound/strings.hpp"
#include "adpbound/surrogate.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace adpbound {

using Json = nlohmann::ordered_json;

std::string format_number(double v);

/// Pretty-printed JSON (2-space indent) with 17-digit numbers and a trailing newline.
std::string dump_json(const Json& doc);

/// Header plus one row per object. Columns are the scalar and scalar-array
/// fields of the first row; arrays are joined with ';' (nested rows with '|').
/// Nested objects and arrays of objects are omitted.
std::string dump_csv(const std::vector<Json>& rows);

/// The stable bound report: eta, sigma, skipped_terms, bound_finite_K,
/// bound_asymptotic, optimal_value, adp_value, ratio, monotone_certificate,
/// worst_slack, theorem2_verified, prop1_verified, flags.
Json to_json(const AdpBoundReport& report);

Json to_json(const CurvatureReport& report);
Json to_json(const std::vector<InequalityCheck>& checks);
Json to_json(const MdpModel& model, const BellmanSolution& solution);
Json to_json(const AdpRun& run);

}  // namespace adpbound
