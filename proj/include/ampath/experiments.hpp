#pragma once

#include <ampath/environment.hpp>
#include <ampath/metrics.hpp>
#include <ampath/pgf.hpp>
#include <ampath/planners.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ampath {

class ExperimentError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

//==============================================================================
/// Everything needed to replay one framework run.
struct TrialSpec
{
  StructureSpec structure = StructureSpec::open_default();
  Workspace workspace;
  double clearance = 20.0;
  ArrangementSpec arrangement;
  PlannerConfig planner;
  MetricOptions metrics;
  std::uint64_t trial_seed = 0;
  bool record_timing = true;
  unsigned leg_workers = 1;
};

/// Seed of the obstacle placement stream of a trial.
std::uint64_t environment_seed(std::uint64_t trial_seed);
/// Seed handed to the planner (each leg derives its own stream from it).
std::uint64_t planner_seed(std::uint64_t trial_seed);
/// Seed of trial `trial` at sweep value / ladder rung `value`.
std::uint64_t trial_seed(std::uint64_t batch_seed, std::size_t value, std::size_t trial);

/// Obstacles of the trial's environment; the structure vertices are the
/// keepout set for random placement.
Environment build_environment(const TrialSpec& spec);

struct TrialResult
{
  std::vector<Point2> obstacles;
  std::optional<PgfOutcome> outcome; // absent when the environment failed to build
  std::optional<MetricsReport> metrics;
  std::string failure; // empty on success

  bool success() const { return metrics.has_value(); }
};

/// Never throws for environment or planner errors; they become a recorded
/// failure.
TrialResult run_trial(const TrialSpec& spec);

//==============================================================================
/// One row of a batch ledger.
struct TrialRecord
{
  std::size_t value_index = 0;
  double value = 0.0;
  PlannerKind planner = PlannerKind::dijkstra;
  std::size_t trial_index = 0;
  std::uint64_t trial_seed = 0;
  bool success = false;
  std::string failure;
  LegMetrics mean;             // per-leg mean, valid on success
  double total_run_time_s = 0; // sum over legs, valid on success
};

/// Aggregate over a set of ledger rows; metric means use successes only.
struct Summary
{
  std::size_t trials = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  LegMetrics mean;                   // mean over successful trials of per-leg means
  double mean_total_run_time_s = 0;  // mean over successful trials of toolpath run time
};

Summary summarize(std::span<const TrialRecord> records);

TrialRecord make_record(const TrialResult& result, const TrialSpec& spec);

//==============================================================================
enum class SweepParameter
{
  num_obstacles,
  grid_size,
  expansion_length,
  num_neighbors,
  max_edge_length
};

std::string_view to_string(SweepParameter p);
std::optional<SweepParameter> parse_sweep_parameter(std::string_view text);

/// Copy of base with the parameter set to value. Throws ExperimentError when
/// the parameter does not affect base.planner.kind.
TrialSpec apply_parameter(const TrialSpec& base, SweepParameter p, double value);

struct SweepSpec
{
  SweepParameter parameter = SweepParameter::num_obstacles;
  std::vector<double> values;
  std::size_t trials_per_value = 20;
  TrialSpec base;
  std::uint64_t batch_seed = 0;
  /// Reuse the same trial seeds at every value (common random numbers)
  /// instead of deriving them from the value index.
  bool paired_seeds = false;
  unsigned workers = 1;
};

struct SweepPoint
{
  double value = 0.0;
  Summary summary;
};

struct SweepResult
{
  SweepParameter parameter = SweepParameter::num_obstacles;
  PlannerKind planner = PlannerKind::dijkstra;
  std::vector<SweepPoint> points;
  std::vector<TrialRecord> ledger;
};

SweepResult sweep(const SweepSpec& spec);

//==============================================================================
/// 2, 4, 8, ... up to and including max_density.
std::vector<std::size_t> doubling_ladder(std::size_t first, std::size_t max_density);

/// Throws ExperimentError unless each rung doubles the previous one.
void validate_ladder(std::span<const std::size_t> ladder);

/// Smallest ladder density whose success rate is at most one half. Throws
/// ExperimentError("ladder exhausted") when no rung qualifies.
std::size_t find_half_success_density(
    const TrialSpec& base,
    std::span<const std::size_t> ladder,
    std::size_t trials,
    std::uint64_t batch_seed,
    unsigned workers = 1);

struct SaturationSpec
{
  TrialSpec base;
  std::vector<PlannerKind> planners;
  std::vector<std::size_t> ladder;
  std::size_t trials = 20;
  std::uint64_t batch_seed = 0;
  unsigned workers = 1;
  /// Per-kind planner parameters; base.planner supplies defaults.
  std::vector<PlannerConfig> planner_configs;
};

struct SaturationResult
{
  std::vector<std::size_t> densities;
  std::vector<PlannerKind> planners;
  std::vector<std::vector<double>> success_rate; // [density][planner]
  std::optional<std::size_t> saturation_density;
  bool ladder_exhausted = false; // some planner still succeeded at the last rung
  std::vector<TrialRecord> ledger;
};

/// Climbs the ladder until no planner succeeds in any trial. Trials at a
/// density share seeds across planners, so every planner faces the same
/// obstacle fields.
SaturationResult saturate(const SaturationSpec& spec);

struct ComparisonSpec
{
  TrialSpec base; // base.arrangement.count is the density
  std::vector<PlannerKind> planners;
  std::size_t trials = 20;
  std::uint64_t batch_seed = 0;
  unsigned workers = 1;
  std::vector<PlannerConfig> planner_configs;
};

struct ComparisonRow
{
  PlannerKind planner = PlannerKind::dijkstra;
  Summary summary;
};

struct ComparisonResult
{
  std::vector<ComparisonRow> rows;
  std::vector<TrialRecord> ledger;
};

ComparisonResult compare(const ComparisonSpec& spec);

/// Planner configuration for `kind`: the matching entry of configs if any,
/// otherwise fallback with its kind replaced.
PlannerConfig config_for(PlannerKind kind, std::span<const PlannerConfig> configs, const PlannerConfig& fallback);

} // namespace ampath
