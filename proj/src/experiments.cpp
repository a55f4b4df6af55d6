#include <ampath/experiments.hpp>
#include <ampath/parallel.hpp>
#include <ampath/random.hpp>

#include <algorithm>
#include <cmath>
#include <exception>

namespace ampath {

std::uint64_t environment_seed(std::uint64_t trial_seed)
{
  return derive_seed(trial_seed, 0);
}

std::uint64_t planner_seed(std::uint64_t trial_seed)
{
  return derive_seed(trial_seed, 1);
}

std::uint64_t trial_seed(std::uint64_t batch_seed, std::size_t value, std::size_t trial)
{
  return derive_seed(derive_seed(batch_seed, value), trial);
}

Environment build_environment(const TrialSpec& spec)
{
  ArrangementSpec arrangement = spec.arrangement;
  arrangement.seed = environment_seed(spec.trial_seed);
  return Environment(spec.workspace,
      make_arrangement(arrangement, spec.workspace, spec.structure.vertices, spec.clearance),
      spec.clearance);
}

namespace {

void strip_timing(std::vector<Leg>& legs)
{
  for (Leg& leg : legs)
    leg.path.elapsed_s = 0.0;
}

} // namespace

TrialResult run_trial(const TrialSpec& spec)
{
  TrialResult result;
  try
  {
    const Environment env = build_environment(spec);
    result.obstacles.assign(env.obstacles().begin(), env.obstacles().end());

    PlannerConfig cfg = spec.planner;
    cfg.seed = planner_seed(spec.trial_seed);
    PgfOutcome outcome = generate_toolpath(spec.structure, env, cfg, spec.leg_workers);

    if (auto* toolpath = std::get_if<Toolpath>(&outcome))
    {
      if (!spec.record_timing)
        strip_timing(toolpath->legs);
      result.metrics = assess(*toolpath, spec.metrics);
    }
    else
    {
      auto& partial = std::get<PartialFailure>(outcome);
      if (!spec.record_timing)
        strip_timing(partial.completed);
      result.failure = std::string(to_string(partial.reason)) + "@leg" + std::to_string(partial.failing_pair);
    }
    result.outcome = std::move(outcome);
  }
  catch (const std::exception& e)
  {
    result.metrics.reset();
    result.failure = std::string("error: ") + e.what();
  }
  return result;
}

//==============================================================================
TrialRecord make_record(const TrialResult& result, const TrialSpec& spec)
{
  TrialRecord r;
  r.planner = spec.planner.kind;
  r.trial_seed = spec.trial_seed;
  r.success = result.success();
  r.failure = result.failure;
  if (result.metrics)
  {
    r.mean = result.metrics->aggregate_mean;
    r.total_run_time_s = result.metrics->aggregate_total_run_time_s;
  }
  return r;
}

Summary summarize(std::span<const TrialRecord> records)
{
  Summary s;
  s.trials = records.size();
  std::vector<LegMetrics> ok;
  double total = 0.0;
  for (const TrialRecord& r : records)
  {
    if (!r.success)
      continue;
    ok.push_back(r.mean);
    total += r.total_run_time_s;
  }
  s.successes = ok.size();
  s.success_rate = s.trials == 0 ? 0.0 : static_cast<double>(s.successes) / static_cast<double>(s.trials);
  if (!ok.empty())
  {
    s.mean = mean_of(ok);
    s.mean_total_run_time_s = total / static_cast<double>(ok.size());
  }
  else
  {
    s.mean = LegMetrics{0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  }
  return s;
}

//==============================================================================
std::string_view to_string(SweepParameter p)
{
  switch (p)
  {
    case SweepParameter::num_obstacles: return "num-obstacles";
    case SweepParameter::grid_size: return "grid-size";
    case SweepParameter::expansion_length: return "expansion-length";
    case SweepParameter::num_neighbors: return "num-neighbors";
    case SweepParameter::max_edge_length: return "max-edge-length";
  }
  return "unknown";
}

std::optional<SweepParameter> parse_sweep_parameter(std::string_view text)
{
  for (SweepParameter p : {SweepParameter::num_obstacles, SweepParameter::grid_size,
           SweepParameter::expansion_length, SweepParameter::num_neighbors, SweepParameter::max_edge_length})
  {
    if (text == to_string(p))
      return p;
  }
  return std::nullopt;
}

namespace {

std::size_t as_count(double value, std::string_view what)
{
  if (!(value >= 0.0) || std::floor(value) != value)
    throw ExperimentError(std::string(what) + " values must be non-negative integers");
  return static_cast<std::size_t>(value);
}

} // namespace

TrialSpec apply_parameter(const TrialSpec& base, SweepParameter p, double value)
{
  TrialSpec t = base;
  const PlannerKind kind = base.planner.kind;
  auto require = [&](bool ok) {
    if (!ok)
      throw ExperimentError(std::string(to_string(p)) + " does not apply to planner " + std::string(to_string(kind)));
  };

  switch (p)
  {
    case SweepParameter::num_obstacles:
      t.arrangement.count = as_count(value, "num-obstacles");
      break;
    case SweepParameter::grid_size:
      require(kind == PlannerKind::dijkstra || kind == PlannerKind::astar);
      t.planner.grid_size = value;
      break;
    case SweepParameter::expansion_length:
      require(kind == PlannerKind::rrt);
      t.planner.expansion_length = value;
      break;
    case SweepParameter::num_neighbors:
      require(kind == PlannerKind::prm);
      t.planner.num_neighbors = as_count(value, "num-neighbors");
      break;
    case SweepParameter::max_edge_length:
      require(kind == PlannerKind::prm);
      t.planner.max_edge_length = value;
      break;
  }
  return t;
}

namespace {

// Runs the specs in order on `workers` threads; ledger order follows specs.
std::vector<TrialRecord> run_batch(const std::vector<TrialSpec>& specs, unsigned workers)
{
  std::vector<TrialRecord> records(specs.size());
  parallel_for(specs.size(), workers, [&](std::size_t i) {
    records[i] = make_record(run_trial(specs[i]), specs[i]);
  });
  return records;
}

void check_monotone(std::span<const double> values)
{
  if (values.empty())
    throw ExperimentError("sweep needs at least one value");
  if (values.size() < 2)
    return;
  const bool up = values[1] > values[0];
  for (std::size_t i = 1; i < values.size(); ++i)
  {
    if (up ? !(values[i] > values[i - 1]) : !(values[i] < values[i - 1]))
      throw ExperimentError("sweep values must be strictly monotone");
  }
}

} // namespace

SweepResult sweep(const SweepSpec& spec)
{
  check_monotone(spec.values);
  if (spec.trials_per_value == 0)
    throw ExperimentError("trials_per_value must be at least 1");

  std::vector<TrialSpec> specs;
  std::vector<TrialRecord> meta;
  for (std::size_t v = 0; v < spec.values.size(); ++v)
  {
    const TrialSpec at = apply_parameter(spec.base, spec.parameter, spec.values[v]);
    for (std::size_t t = 0; t < spec.trials_per_value; ++t)
    {
      TrialSpec trial = at;
      trial.trial_seed = trial_seed(spec.batch_seed, spec.paired_seeds ? 0 : v, t);
      specs.push_back(trial);
      TrialRecord m;
      m.value_index = v;
      m.value = spec.values[v];
      m.trial_index = t;
      meta.push_back(m);
    }
  }

  SweepResult result;
  result.parameter = spec.parameter;
  result.planner = spec.base.planner.kind;
  result.ledger = run_batch(specs, spec.workers);
  for (std::size_t i = 0; i < meta.size(); ++i)
  {
    result.ledger[i].value_index = meta[i].value_index;
    result.ledger[i].value = meta[i].value;
    result.ledger[i].trial_index = meta[i].trial_index;
  }

  const std::span<const TrialRecord> all = result.ledger;
  for (std::size_t v = 0; v < spec.values.size(); ++v)
  {
    result.points.push_back({spec.values[v],
        summarize(all.subspan(v * spec.trials_per_value, spec.trials_per_value))});
  }
  return result;
}

//==============================================================================
std::vector<std::size_t> doubling_ladder(std::size_t first, std::size_t max_density)
{
  if (first == 0)
    throw ExperimentError("ladder must start above zero");
  std::vector<std::size_t> out;
  for (std::size_t d = first; d <= max_density; d *= 2)
    out.push_back(d);
  return out;
}

void validate_ladder(std::span<const std::size_t> ladder)
{
  if (ladder.empty())
    throw ExperimentError("density ladder is empty");
  if (ladder.front() == 0)
    throw ExperimentError("ladder must start above zero");
  for (std::size_t i = 1; i < ladder.size(); ++i)
  {
    if (ladder[i] != 2 * ladder[i - 1])
      throw ExperimentError("density ladder must double at every rung");
  }
}

std::size_t find_half_success_density(
    const TrialSpec& base,
    std::span<const std::size_t> ladder,
    std::size_t trials,
    std::uint64_t batch_seed,
    unsigned workers)
{
  validate_ladder(ladder);
  for (std::size_t rung = 0; rung < ladder.size(); ++rung)
  {
    std::vector<TrialSpec> specs;
    for (std::size_t t = 0; t < trials; ++t)
    {
      TrialSpec s = apply_parameter(base, SweepParameter::num_obstacles, static_cast<double>(ladder[rung]));
      s.trial_seed = trial_seed(batch_seed, rung, t);
      specs.push_back(s);
    }
    const auto records = run_batch(specs, workers);
    if (summarize(records).success_rate <= 0.5)
      return ladder[rung];
  }
  throw ExperimentError("ladder exhausted");
}

PlannerConfig config_for(PlannerKind kind, std::span<const PlannerConfig> configs, const PlannerConfig& fallback)
{
  for (const PlannerConfig& c : configs)
  {
    if (c.kind == kind)
      return c;
  }
  PlannerConfig c = fallback;
  c.kind = kind;
  return c;
}

namespace {

// All planners at one density over shared trial seeds; rows ordered by
// planner, then trial.
std::vector<TrialRecord> run_density(
    const TrialSpec& base,
    std::size_t rung,
    std::size_t density,
    std::span<const PlannerKind> planners,
    std::span<const PlannerConfig> configs,
    std::size_t trials,
    std::uint64_t batch_seed,
    unsigned workers)
{
  std::vector<TrialSpec> specs;
  for (PlannerKind kind : planners)
  {
    for (std::size_t t = 0; t < trials; ++t)
    {
      TrialSpec s = base;
      s.arrangement.count = density;
      s.planner = config_for(kind, configs, base.planner);
      s.trial_seed = trial_seed(batch_seed, rung, t);
      specs.push_back(s);
    }
  }
  auto records = run_batch(specs, workers);
  for (std::size_t i = 0; i < records.size(); ++i)
  {
    records[i].value_index = rung;
    records[i].value = static_cast<double>(density);
    records[i].trial_index = i % trials;
  }
  return records;
}

} // namespace

SaturationResult saturate(const SaturationSpec& spec)
{
  if (spec.planners.empty())
    throw ExperimentError("saturation needs at least one planner");
  if (spec.trials == 0)
    throw ExperimentError("saturation needs at least one trial");
  validate_ladder(spec.ladder);

  SaturationResult result;
  result.planners = spec.planners;
  for (std::size_t rung = 0; rung < spec.ladder.size(); ++rung)
  {
    const std::size_t density = spec.ladder[rung];
    auto records = run_density(spec.base, rung, density, spec.planners, spec.planner_configs,
        spec.trials, spec.batch_seed, spec.workers);

    const std::span<const TrialRecord> rows = records;
    std::vector<double> rates;
    bool any = false;
    for (std::size_t p = 0; p < spec.planners.size(); ++p)
    {
      const Summary s = summarize(rows.subspan(p * spec.trials, spec.trials));
      rates.push_back(s.success_rate);
      any = any || s.successes > 0;
    }
    result.densities.push_back(density);
    result.success_rate.push_back(std::move(rates));
    result.ledger.insert(result.ledger.end(), records.begin(), records.end());

    if (!any)
      return result;
    result.saturation_density = density;
  }
  result.ladder_exhausted = true;
  return result;
}

ComparisonResult compare(const ComparisonSpec& spec)
{
  if (spec.planners.empty())
    throw ExperimentError("comparison needs at least one planner");
  if (spec.trials == 0)
    throw ExperimentError("comparison needs at least one trial");

  ComparisonResult result;
  result.ledger = run_density(spec.base, 0, spec.base.arrangement.count, spec.planners,
      spec.planner_configs, spec.trials, spec.batch_seed, spec.workers);
  const std::span<const TrialRecord> rows = result.ledger;
  for (std::size_t p = 0; p < spec.planners.size(); ++p)
    result.rows.push_back({spec.planners[p], summarize(rows.subspan(p * spec.trials, spec.trials))});
  return result;
}

} // namespace ampath
