#pragma once

#include <ampath/environment.hpp>
#include <ampath/experiments.hpp>
#include <ampath/metrics.hpp>
#include <ampath/pgf.hpp>
#include <ampath/planners.hpp>

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ampath::io {

class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig
{
  std::size_t trials = 20;
  SweepParameter parameter = SweepParameter::grid_size;
  std::vector<double> values;
  std::vector<std::size_t> ladder = doubling_ladder(2, 1024);
  std::vector<PlannerKind> planners{std::begin(kAllPlanners), std::end(kAllPlanners)};
  bool paired_seeds = false;
  unsigned workers = 1;
};

/// Fully resolved settings for one command.
struct RunConfig
{
  std::uint64_t seed = 0;
  Workspace workspace;
  double clearance = 20.0;
  std::string structure_name = "open-default";
  StructureSpec structure = StructureSpec::open_default();
  ArrangementSpec arrangement{ArrangementKind::none, 0, 0, 50.0};
  PlannerKind planner = PlannerKind::dijkstra;
  std::vector<PlannerConfig> planner_configs = default_planner_configs();
  MetricOptions metrics;
  ExperimentConfig experiment;
  bool record_timing = true;

  static std::vector<PlannerConfig> default_planner_configs();

  PlannerConfig planner_config(PlannerKind kind) const;
  PlannerConfig& planner_config_ref(PlannerKind kind);

  /// Trial template for this config with the selected planner.
  TrialSpec trial_template() const;

  /// Throws ConfigError on the first violated invariant.
  void validate() const;
};

/// Parses YAML config text on top of `base`. Errors name `source` and the
/// 1-based line of the offending node.
RunConfig parse_config(std::string_view text, std::string_view source, RunConfig base = {});

RunConfig load_config_file(const std::filesystem::path& path, RunConfig base = {});

/// Canonical echo of every setting; parse_config accepts it back.
nlohmann::ordered_json to_json(const RunConfig& config);

/// FNV-1a digest of the canonical echo, hex encoded.
std::string config_digest(const RunConfig& config);

/// "random:256", "periodic:128", "none".
ArrangementSpec parse_obstacles_flag(std::string_view text, double margin);

/// "2:20:2" (inclusive range) or "2,4,8".
std::vector<double> parse_values_flag(std::string_view text);

std::vector<PlannerKind> parse_planner_list(std::string_view text);

} // namespace ampath::io
