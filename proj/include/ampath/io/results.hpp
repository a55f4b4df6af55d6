#pragma once

#include <ampath/experiments.hpp>
#include <ampath/metrics.hpp>
#include <ampath/pgf.hpp>

#include <json.hpp>

#include <string>
#include <string_view>

namespace ampath::io {

/// Shortest decimal form that parses back to the same double.
std::string format_number(double v);

//==============================================================================
// Toolpath JSON: {structure, legs: [{pair, waypoints: [[x, y], ...],
// elapsed_s}], config_digest}

nlohmann::ordered_json structure_to_json(const StructureSpec& s);
StructureSpec structure_from_json(const nlohmann::json& j);

nlohmann::ordered_json toolpath_to_json(const Toolpath& toolpath, PlannerKind planner, std::string_view config_digest);

/// Throws ConfigError on schema violations.
Toolpath toolpath_from_json(const nlohmann::json& j);

nlohmann::ordered_json partial_to_json(
    const StructureSpec& structure, const PartialFailure& partial, std::string_view config_digest);

//==============================================================================
// CSV tables. Every table starts with a header row.

/// One row per leg, then a "mean" row and the toolpath total run time.
std::string metrics_csv(const MetricsReport& report);

inline constexpr std::string_view kComparisonHeader =
    "planner,structure,arrangement,density,trials,success_rate,roughness_deg,num_turns,offset_mm,rmse_mm,"
    "path_deviation,mean_run_time_s,total_run_time_s";

struct ComparisonContext
{
  std::string structure;
  std::string arrangement;
  std::size_t density = 0;
};

std::string comparison_row(PlannerKind planner, const ComparisonContext& ctx, const Summary& s);
std::string comparison_csv(const ComparisonResult& result, const ComparisonContext& ctx);

std::string sweep_csv(const SweepResult& result);
std::string saturation_csv(const SaturationResult& result);

/// Per-trial ledger with derived seeds. env_seed is "-" when the arrangement
/// has no placement randomness.
std::string ledger_csv(std::span<const TrialRecord> records, ArrangementKind arrangement);

} // namespace ampath::io
