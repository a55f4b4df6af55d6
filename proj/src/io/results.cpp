#include <ampath/io/config.hpp>
#include <ampath/io/results.hpp>

#include <fmt/format.h>

namespace ampath::io {

std::string format_number(double v)
{
  if (v == 0.0)
    return "0";
  return fmt::format("{}", v);
}

//==============================================================================
nlohmann::ordered_json structure_to_json(const StructureSpec& s)
{
  nlohmann::ordered_json vertices = nlohmann::ordered_json::array();
  for (Point2 p : s.vertices)
    vertices.push_back({p.x, p.y});
  return {{"vertices", vertices}, {"closed", s.closed}};
}

namespace {

Point2 point_from_json(const nlohmann::json& j)
{
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError("toolpath json: point must be [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

} // namespace

StructureSpec structure_from_json(const nlohmann::json& j)
{
  if (!j.is_object() || !j.contains("vertices") || !j.contains("closed"))
    throw ConfigError("toolpath json: structure needs vertices and closed");
  StructureSpec s;
  for (const auto& p : j.at("vertices"))
    s.vertices.push_back(point_from_json(p));
  s.closed = j.at("closed").get<bool>();
  return s;
}

nlohmann::ordered_json toolpath_to_json(const Toolpath& toolpath, PlannerKind planner, std::string_view config_digest)
{
  nlohmann::ordered_json legs = nlohmann::ordered_json::array();
  for (const Leg& leg : toolpath.legs)
  {
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (Point2 p : leg.path.waypoints)
      pts.push_back({p.x, p.y});
    legs.push_back({{"pair", leg.pair}, {"waypoints", pts}, {"elapsed_s", leg.path.elapsed_s}});
  }
  return {{"structure", structure_to_json(toolpath.structure)},
          {"planner", std::string(to_string(planner))},
          {"legs", legs},
          {"config_digest", std::string(config_digest)}};
}

Toolpath toolpath_from_json(const nlohmann::json& j)
{
  try
  {
    Toolpath t;
    t.structure = structure_from_json(j.at("structure"));
    PlannerKind kind = PlannerKind::dijkstra;
    if (j.contains("planner"))
    {
      const auto parsed = parse_planner_kind(j.at("planner").get<std::string>());
      if (!parsed)
        throw ConfigError("toolpath json: unknown planner");
      kind = *parsed;
    }
    for (const auto& leg : j.at("legs"))
    {
      Leg l;
      l.pair = leg.at("pair").get<std::size_t>();
      l.path.planner = kind;
      l.path.elapsed_s = leg.at("elapsed_s").get<double>();
      for (const auto& p : leg.at("waypoints"))
        l.path.waypoints.push_back(point_from_json(p));
      t.legs.push_back(std::move(l));
    }
    if (t.legs.size() != t.structure.leg_count())
      throw ConfigError("toolpath json: leg count does not match structure");
    return t;
  }
  catch (const nlohmann::json::exception& e)
  {
    throw ConfigError(std::string("toolpath json: ") + e.what());
  }
}

nlohmann::ordered_json partial_to_json(
    const StructureSpec& structure, const PartialFailure& partial, std::string_view config_digest)
{
  nlohmann::ordered_json legs = nlohmann::ordered_json::array();
  for (const Leg& leg : partial.completed)
  {
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (Point2 p : leg.path.waypoints)
      pts.push_back({p.x, p.y});
    legs.push_back({{"pair", leg.pair}, {"waypoints", pts}, {"elapsed_s", leg.path.elapsed_s}});
  }
  return {{"structure", structure_to_json(structure)},
          {"legs", legs},
          {"failing_pair", partial.failing_pair},
          {"reason", std::string(to_string(partial.reason))},
          {"config_digest", std::string(config_digest)}};
}

//==============================================================================
namespace {

std::string metric_cells(const LegMetrics& m)
{
  return fmt::format("{},{},{},{},{},{}", format_number(m.roughness_deg), format_number(m.num_turns),
      format_number(m.offset_mm), format_number(m.rmse_mm), format_number(m.path_deviation),
      format_number(m.run_time_s));
}

// Metric means are undefined without a success; those cells stay empty.
std::string summary_cells(const Summary& s)
{
  if (s.successes == 0)
    return ",,,,,,";
  return fmt::format("{},{},{},{},{},{},{}", format_number(s.mean.roughness_deg), format_number(s.mean.num_turns),
      format_number(s.mean.offset_mm), format_number(s.mean.rmse_mm), format_number(s.mean.path_deviation),
      format_number(s.mean.run_time_s), format_number(s.mean_total_run_time_s));
}

} // namespace

std::string metrics_csv(const MetricsReport& report)
{
  std::string out = "leg,roughness_deg,num_turns,offset_mm,rmse_mm,path_deviation,run_time_s\n";
  for (std::size_t i = 0; i < report.per_leg.size(); ++i)
    out += fmt::format("{},{}\n", i, metric_cells(report.per_leg[i]));
  out += fmt::format("mean,{}\n", metric_cells(report.aggregate_mean));
  out += fmt::format("total_run_time_s,,,,,,{}\n", format_number(report.aggregate_total_run_time_s));
  return out;
}

std::string comparison_row(PlannerKind planner, const ComparisonContext& ctx, const Summary& s)
{
  return fmt::format("{},{},{},{},{},{},{}", to_string(planner), ctx.structure, ctx.arrangement, ctx.density,
      s.trials, format_number(s.success_rate), summary_cells(s));
}

std::string comparison_csv(const ComparisonResult& result, const ComparisonContext& ctx)
{
  std::string out(kComparisonHeader);
  out += '\n';
  for (const ComparisonRow& row : result.rows)
    out += comparison_row(row.planner, ctx, row.summary) + '\n';
  return out;
}

std::string sweep_csv(const SweepResult& result)
{
  std::string out = fmt::format(
      "planner,param,value,trials,successes,success_rate,roughness_deg,num_turns,offset_mm,rmse_mm,"
      "path_deviation,mean_run_time_s,total_run_time_s\n");
  for (const SweepPoint& p : result.points)
  {
    const Summary& s = p.summary;
    out += fmt::format("{},{},{},{},{},{},{}\n", to_string(result.planner), to_string(result.parameter),
        format_number(p.value), s.trials, s.successes, format_number(s.success_rate), summary_cells(s));
  }
  return out;
}

std::string saturation_csv(const SaturationResult& result)
{
  std::string out = "density,planner,success_rate\n";
  for (std::size_t d = 0; d < result.densities.size(); ++d)
  {
    for (std::size_t p = 0; p < result.planners.size(); ++p)
    {
      out += fmt::format("{},{},{}\n", result.densities[d], to_string(result.planners[p]),
          format_number(result.success_rate[d][p]));
    }
  }
  out += fmt::format("saturation_density,{},\n",
      result.saturation_density ? std::to_string(*result.saturation_density) : std::string("none"));
  out += fmt::format("ladder_exhausted,{},\n", result.ladder_exhausted ? "true" : "false");
  return out;
}

std::string ledger_csv(std::span<const TrialRecord> records, ArrangementKind arrangement)
{
  std::string out =
      "value_index,value,planner,trial,trial_seed,env_seed,planner_seed,success,failure,roughness_deg,num_turns,"
      "offset_mm,rmse_mm,path_deviation,mean_run_time_s,total_run_time_s\n";
  for (const TrialRecord& r : records)
  {
    const std::string env = arrangement == ArrangementKind::random
        ? std::to_string(environment_seed(r.trial_seed))
        : std::string("-");
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", r.value_index, format_number(r.value),
        to_string(r.planner), r.trial_index, r.trial_seed, env, planner_seed(r.trial_seed), r.success ? 1 : 0,
        r.failure.empty() ? std::string("-") : r.failure,
        r.success ? metric_cells(r.mean) : std::string(",,,,,"),
        r.success ? format_number(r.total_run_time_s) : std::string());
  }
  return out;
}

} // namespace ampath::io
