#include <ampath/io/commands.hpp>
#include <ampath/io/moves.hpp>
#include <ampath/io/results.hpp>
#include <ampath/io/svg.hpp>
#include <ampath/random.hpp>

#include <fmt/format.h>

#include <fstream>
#include <ostream>
#include <sstream>

namespace ampath::io {

std::string_view to_string(Command c)
{
  switch (c)
  {
    case Command::plan: return "plan";
    case Command::sweep: return "sweep";
    case Command::saturate: return "saturate";
    case Command::compare: return "compare";
  }
  return "unknown";
}

std::optional<Command> parse_command(std::string_view text)
{
  for (Command c : {Command::plan, Command::sweep, Command::saturate, Command::compare})
  {
    if (text == to_string(c))
      return c;
  }
  return std::nullopt;
}

const BundleFile* ResultBundle::find(std::string_view name) const
{
  for (const BundleFile& f : files)
  {
    if (f.name == name)
      return &f;
  }
  return nullptr;
}

namespace {

using nlohmann::ordered_json;

ordered_json manifest_head(Command command, const RunConfig& config)
{
  return {{"tool", "ampath"},
          {"version", std::string(kToolVersion)},
          {"command", std::string(to_string(command))},
          {"rng", std::string(kRngAlgorithm)},
          {"config_digest", config_digest(config)},
          {"config", to_json(config)}};
}

ordered_json seed_ledger(std::span<const TrialRecord> records)
{
  ordered_json out = ordered_json::array();
  for (const TrialRecord& r : records)
  {
    out.push_back({{"value_index", r.value_index},
                   {"planner", std::string(to_string(r.planner))},
                   {"trial", r.trial_index},
                   {"trial_seed", r.trial_seed}});
  }
  return out;
}

void finish(ResultBundle& bundle, ordered_json manifest)
{
  ordered_json names = ordered_json::array();
  for (const BundleFile& f : bundle.files)
    names.push_back(f.name);
  names.push_back("manifest.json");
  manifest["files"] = names;
  bundle.files.push_back({"manifest.json", manifest.dump(2) + "\n"});
}

std::string arrangement_label(const ArrangementSpec& a)
{
  return std::string(to_string(a.kind));
}

// Batches need obstacles to vary; an empty arrangement becomes random.
TrialSpec batch_template(const RunConfig& config)
{
  TrialSpec t = config.trial_template();
  t.leg_workers = 1;
  return t;
}

//==============================================================================
ResultBundle run_plan(const RunConfig& config)
{
  ResultBundle bundle;
  TrialSpec spec = config.trial_template();
  spec.trial_seed = trial_seed(config.seed, 0, 0);
  const std::string digest = config_digest(config);

  const TrialResult result = run_trial(spec);
  const std::span<const Leg> no_legs;
  std::span<const Leg> drawn = no_legs;

  ordered_json manifest = manifest_head(Command::plan, config);
  ordered_json seeds = {{"trial_seed", spec.trial_seed},
                        {"env_seed", environment_seed(spec.trial_seed)},
                        {"planner_seed", planner_seed(spec.trial_seed)}};
  ordered_json legs = ordered_json::array();
  for (std::size_t k = 0; k < spec.structure.leg_count(); ++k)
    legs.push_back(leg_seed(planner_seed(spec.trial_seed), k));
  seeds["leg_seeds"] = legs;
  manifest["seeds"] = seeds;
  manifest["success"] = result.success();
  manifest["failure"] = result.failure;

  if (!result.outcome)
  {
    // Environment construction failed; nothing was planned.
    bundle.exit_code = kExitPlanning;
  }
  else if (const auto* toolpath = std::get_if<Toolpath>(&*result.outcome))
  {
    bundle.files.push_back({"toolpath.json", toolpath_to_json(*toolpath, spec.planner.kind, digest).dump(2) + "\n"});
    bundle.files.push_back({"metrics.csv", metrics_csv(*result.metrics)});
    bundle.files.push_back({"toolpath.moves", export_toolpath(*toolpath, MoveFormat::text)});
    bundle.files.push_back({"toolpath.moves.json", export_toolpath(*toolpath, MoveFormat::json)});
    drawn = toolpath->legs;
  }
  else
  {
    const auto& partial = std::get<PartialFailure>(*result.outcome);
    bundle.files.push_back({"partial_toolpath.json", partial_to_json(spec.structure, partial, digest).dump(2) + "\n"});
    drawn = partial.completed;
    bundle.exit_code = kExitPlanning;
  }

  bundle.files.push_back({"toolpath.svg",
      render_toolpath_svg(spec.workspace, result.obstacles, spec.clearance, spec.structure, drawn)});
  finish(bundle, std::move(manifest));
  return bundle;
}

ResultBundle run_sweep(const RunConfig& config)
{
  if (config.experiment.values.empty())
    throw ConfigError("sweep needs experiment.values (--values)");

  SweepSpec spec;
  spec.parameter = config.experiment.parameter;
  spec.values = config.experiment.values;
  spec.trials_per_value = config.experiment.trials;
  spec.base = batch_template(config);
  if (spec.parameter == SweepParameter::num_obstacles && spec.base.arrangement.kind == ArrangementKind::none)
    spec.base.arrangement.kind = ArrangementKind::random;
  spec.batch_seed = config.seed;
  spec.paired_seeds = config.experiment.paired_seeds;
  spec.workers = config.experiment.workers;

  SweepResult result;
  try
  {
    result = sweep(spec);
  }
  catch (const ExperimentError& e)
  {
    throw ConfigError(e.what());
  }

  ResultBundle bundle;
  bundle.files.push_back({"sweep.csv", sweep_csv(result)});
  bundle.files.push_back({"ledger.csv", ledger_csv(result.ledger, spec.base.arrangement.kind)});

  Series success{std::string(to_string(result.planner)), {}, {}};
  Series runtime = success;
  for (const SweepPoint& p : result.points)
  {
    success.x.push_back(p.value);
    success.y.push_back(p.summary.success_rate);
    runtime.x.push_back(p.value);
    runtime.y.push_back(p.summary.mean_total_run_time_s);
  }
  const bool log_x = spec.parameter == SweepParameter::num_obstacles;
  const std::string param(to_string(spec.parameter));
  bundle.files.push_back({"sweep_success.svg",
      render_line_chart(std::span(&success, 1), {"Success rate vs " + param, param, "success rate", log_x})});
  bundle.files.push_back({"sweep_runtime.svg",
      render_line_chart(std::span(&runtime, 1), {"Run time vs " + param, param, "run time (s)", log_x})});

  ordered_json manifest = manifest_head(Command::sweep, config);
  manifest["seeds"] = seed_ledger(result.ledger);
  finish(bundle, std::move(manifest));
  return bundle;
}

ResultBundle run_saturate(const RunConfig& config)
{
  SaturationSpec spec;
  spec.base = batch_template(config);
  if (spec.base.arrangement.kind == ArrangementKind::none)
    throw ConfigError("saturate needs a random or periodic arrangement (--arrangement)");
  spec.planners = config.experiment.planners;
  spec.ladder = config.experiment.ladder;
  spec.trials = config.experiment.trials;
  spec.batch_seed = config.seed;
  spec.workers = config.experiment.workers;
  spec.planner_configs = config.planner_configs;

  SaturationResult result;
  try
  {
    result = saturate(spec);
  }
  catch (const ExperimentError& e)
  {
    throw ConfigError(e.what());
  }

  ResultBundle bundle;
  bundle.files.push_back({"saturation.csv", saturation_csv(result)});
  bundle.files.push_back({"ledger.csv", ledger_csv(result.ledger, spec.base.arrangement.kind)});

  std::vector<Series> series;
  for (std::size_t p = 0; p < result.planners.size(); ++p)
  {
    Series s{std::string(to_string(result.planners[p])), {}, {}};
    for (std::size_t d = 0; d < result.densities.size(); ++d)
    {
      s.x.push_back(static_cast<double>(result.densities[d]));
      s.y.push_back(result.success_rate[d][p]);
    }
    series.push_back(std::move(s));
  }
  bundle.files.push_back({"saturation.svg",
      render_line_chart(series, {fmt::format("Success rate vs obstacles ({}, {})", config.structure_name,
                                     arrangement_label(spec.base.arrangement)),
                                    "number of obstacles", "success rate", true})});

  ordered_json manifest = manifest_head(Command::saturate, config);
  manifest["saturation_density"] =
      result.saturation_density ? ordered_json(*result.saturation_density) : ordered_json(nullptr);
  manifest["seeds"] = seed_ledger(result.ledger);
  finish(bundle, std::move(manifest));
  return bundle;
}

ResultBundle run_compare(const RunConfig& config)
{
  ComparisonSpec spec;
  spec.base = batch_template(config);
  spec.planners = config.experiment.planners;
  spec.trials = config.experiment.trials;
  spec.batch_seed = config.seed;
  spec.workers = config.experiment.workers;
  spec.planner_configs = config.planner_configs;

  const ComparisonResult result = compare(spec);
  const ComparisonContext ctx{config.structure_name, arrangement_label(spec.base.arrangement),
      spec.base.arrangement.kind == ArrangementKind::none ? 0 : spec.base.arrangement.count};

  ResultBundle bundle;
  bundle.files.push_back({"comparison.csv", comparison_csv(result, ctx)});
  bundle.files.push_back({"ledger.csv", ledger_csv(result.ledger, spec.base.arrangement.kind)});

  const std::vector<std::string> categories{"roughness", "turns", "offset", "RMSE", "deviation", "run time"};
  std::vector<Series> series;
  for (const ComparisonRow& row : result.rows)
  {
    const LegMetrics& m = row.summary.mean;
    series.push_back({std::string(to_string(row.planner)), {},
        {m.roughness_deg, m.num_turns, m.offset_mm, m.rmse_mm, m.path_deviation, m.run_time_s}});
  }
  bundle.files.push_back({"comparison.svg",
      render_bar_chart(categories, series,
          {fmt::format("Mean leg metrics ({}, {}, {} obstacles)", ctx.structure, ctx.arrangement, ctx.density),
              "metric (each scaled to its maximum)", "relative value", false})});

  ordered_json manifest = manifest_head(Command::compare, config);
  manifest["seeds"] = seed_ledger(result.ledger);
  finish(bundle, std::move(manifest));
  return bundle;
}

} // namespace

ResultBundle run_command(Command command, const RunConfig& config)
{
  config.validate();
  switch (command)
  {
    case Command::plan: return run_plan(config);
    case Command::sweep: return run_sweep(config);
    case Command::saturate: return run_saturate(config);
    case Command::compare: return run_compare(config);
  }
  throw ConfigError("unknown command");
}

void write_bundle(const ResultBundle& bundle, const std::filesystem::path& dir)
{
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw IoError(fmt::format("{}: {}", dir.string(), ec.message()));
  for (const BundleFile& f : bundle.files)
  {
    const auto path = dir / f.name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << f.content;
    if (!out)
      throw IoError(fmt::format("{}: write failed", path.string()));
  }
}

int execute(Command command, const RunConfig& config, const std::filesystem::path& out, std::ostream& log)
{
  ResultBundle bundle;
  try
  {
    bundle = run_command(command, config);
  }
  catch (const ConfigError& e)
  {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try
  {
    write_bundle(bundle, out);
  }
  catch (const IoError& e)
  {
    log << "i/o error: " << e.what() << '\n';
    return kExitIo;
  }

  for (const BundleFile& f : bundle.files)
    log << (out / f.name).string() << '\n';
  if (bundle.exit_code == kExitPlanning)
    log << "planning failed; partial outputs written\n";
  return bundle.exit_code;
}

std::pair<Command, RunConfig> load_manifest(const std::filesystem::path& manifest)
{
  std::ifstream in(manifest);
  if (!in)
    throw IoError(fmt::format("{}: cannot open manifest", manifest.string()));
  nlohmann::json j;
  try
  {
    in >> j;
  }
  catch (const nlohmann::json::exception& e)
  {
    throw ConfigError(fmt::format("{}: {}", manifest.string(), e.what()));
  }
  if (!j.contains("command") || !j.contains("config"))
    throw ConfigError(fmt::format("{}: manifest needs command and config", manifest.string()));
  const auto command = parse_command(j["command"].get<std::string>());
  if (!command)
    throw ConfigError(fmt::format("{}: unknown command in manifest", manifest.string()));
  // JSON is valid YAML, so the echo goes through the regular config parser.
  RunConfig config = parse_config(j["config"].dump(), manifest.string());
  return {*command, std::move(config)};
}

int replay(const std::filesystem::path& manifest, const std::filesystem::path& out, std::ostream& log)
{
  try
  {
    const auto [command, config] = load_manifest(manifest);
    return execute(command, config, out, log);
  }
  catch (const ConfigError& e)
  {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  catch (const IoError& e)
  {
    log << "i/o error: " << e.what() << '\n';
    return kExitIo;
  }
}

int export_moves(const std::filesystem::path& toolpath_json, std::string_view format,
    const std::filesystem::path& out, std::ostream& log)
{
  MoveFormat fmt_kind;
  if (format == "moves" || format == "text")
    fmt_kind = MoveFormat::text;
  else if (format == "json")
    fmt_kind = MoveFormat::json;
  else
  {
    log << "config error: unknown export format '" << format << "'\n";
    return kExitConfig;
  }

  std::ifstream in(toolpath_json);
  if (!in)
  {
    log << "i/o error: cannot open " << toolpath_json.string() << '\n';
    return kExitIo;
  }
  std::string content;
  try
  {
    nlohmann::json j;
    in >> j;
    if (j.contains("failing_pair"))
      throw ExportError("cannot export a partial toolpath");
    content = export_toolpath(toolpath_from_json(j), fmt_kind);
  }
  catch (const nlohmann::json::exception& e)
  {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  catch (const ConfigError& e)
  {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  catch (const ExportError& e)
  {
    log << "export error: " << e.what() << '\n';
    return kExitPlanning;
  }

  std::ofstream o(out, std::ios::binary | std::ios::trunc);
  o << content;
  if (!o)
  {
    log << "i/o error: cannot write " << out.string() << '\n';
    return kExitIo;
  }
  log << out.string() << '\n';
  return kExitOk;
}

} // namespace ampath::io
