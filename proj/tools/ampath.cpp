#include <ampath/io/commands.hpp>
#include <ampath/io/config.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace ampath;
using namespace ampath::io;

struct Overrides
{
  std::string config_file;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> structure;
  std::optional<std::string> planner;
  std::optional<std::string> planners;
  std::optional<std::string> obstacles;
  std::optional<std::string> arrangement;
  std::optional<double> clearance;
  std::optional<double> margin;
  std::optional<double> grid_size;
  std::optional<double> expansion_length;
  std::optional<double> path_resolution;
  std::optional<double> goal_sample_rate;
  std::optional<double> max_edge_length;
  std::optional<std::size_t> max_iterations;
  std::optional<std::size_t> num_samples;
  std::optional<std::size_t> num_neighbors;
  std::optional<std::string> param;
  std::optional<std::string> values;
  std::optional<std::string> ladder;
  std::optional<std::size_t> trials;
  std::optional<unsigned> workers;
  std::optional<std::string> deviation_sample;
  bool paired_seeds = false;
  bool no_timing = false;
  std::string out = "out";
};

void add_run_options(CLI::App& app, Overrides& o)
{
  app.add_option("-c,--config", o.config_file, "YAML config file");
  app.add_option("--seed", o.seed, "batch seed");
  app.add_option("--structure,--preset", o.structure, "structure preset (open-default, hexagon-default)");
  app.add_option("--planner", o.planner, "dijkstra, astar, rrt or prm");
  app.add_option("--planners", o.planners, "comma-separated planner list");
  app.add_option("--obstacles", o.obstacles, "none, random:N or periodic:N");
  app.add_option("--arrangement", o.arrangement, "none, random or periodic (keeps the count)");
  app.add_option("--clearance", o.clearance, "robot clearance radius in mm");
  app.add_option("--margin", o.margin, "obstacle margin from the workspace boundary in mm");
  app.add_option("--grid-size", o.grid_size, "grid pitch in mm");
  app.add_option("--expansion-length", o.expansion_length, "RRT step in mm");
  app.add_option("--path-resolution", o.path_resolution, "collision sampling step in mm");
  app.add_option("--goal-sample-rate", o.goal_sample_rate, "RRT goal bias");
  app.add_option("--max-iterations", o.max_iterations, "RRT iteration cap");
  app.add_option("--num-samples", o.num_samples, "PRM samples");
  app.add_option("--num-neighbors", o.num_neighbors, "PRM neighbour count");
  app.add_option("--max-edge-length", o.max_edge_length, "PRM edge length cap in mm");
  app.add_option("--param", o.param, "sweep parameter");
  app.add_option("--values", o.values, "sweep values, a:b:step or a,b,c");
  app.add_option("--ladder", o.ladder, "obstacle counts, a:b:step or a,b,c");
  app.add_option("--trials", o.trials, "trials per point");
  app.add_option("--workers", o.workers, "worker threads");
  app.add_option("--deviation-sample", o.deviation_sample, "rmse sample set: midpoint or endpoint");
  app.add_flag("--paired-seeds", o.paired_seeds, "reuse trial seeds across sweep values");
  app.add_flag("--no-timing", o.no_timing, "record zero run times for byte-stable output");
  app.add_option("-o,--out", o.out, "output directory");
}

std::size_t to_count(double v)
{
  if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v)))
    throw ConfigError("--ladder entries must be non-negative integers");
  return static_cast<std::size_t>(v);
}

RunConfig resolve(const Overrides& o)
{
  RunConfig c;
  if (!o.config_file.empty())
    c = load_config_file(o.config_file);

  if (o.seed)
    c.seed = *o.seed;
  if (o.structure)
  {
    const auto preset = StructureSpec::preset(*o.structure);
    if (!preset)
      throw ConfigError("--structure: unknown preset '" + *o.structure + "'");
    c.structure = *preset;
    c.structure_name = *o.structure;
  }
  if (o.planner)
  {
    const auto kind = parse_planner_kind(*o.planner);
    if (!kind)
      throw ConfigError("--planner: unknown planner '" + *o.planner + "'");
    c.planner = *kind;
  }
  if (o.planners)
    c.experiment.planners = parse_planner_list(*o.planners);
  if (o.margin)
    c.arrangement.margin = *o.margin;
  if (o.obstacles)
    c.arrangement = parse_obstacles_flag(*o.obstacles, c.arrangement.margin);
  if (o.arrangement)
  {
    const auto kind = parse_arrangement_kind(*o.arrangement);
    if (!kind)
      throw ConfigError("--arrangement: unknown kind '" + *o.arrangement + "'");
    c.arrangement.kind = *kind;
  }
  if (o.clearance)
    c.clearance = *o.clearance;

  for (PlannerConfig& p : c.planner_configs)
  {
    if (o.grid_size)
      p.grid_size = *o.grid_size;
    if (o.expansion_length)
      p.expansion_length = *o.expansion_length;
    if (o.path_resolution)
      p.path_resolution = *o.path_resolution;
    if (o.goal_sample_rate)
      p.goal_sample_rate = *o.goal_sample_rate;
    if (o.max_iterations)
      p.max_iterations = *o.max_iterations;
    if (o.num_samples)
      p.num_samples = *o.num_samples;
    if (o.num_neighbors)
      p.num_neighbors = *o.num_neighbors;
    if (o.max_edge_length)
      p.max_edge_length = *o.max_edge_length;
  }

  if (o.param)
  {
    const auto p = parse_sweep_parameter(*o.param);
    if (!p)
      throw ConfigError("--param: unknown parameter '" + *o.param + "'");
    c.experiment.parameter = *p;
  }
  if (o.values)
    c.experiment.values = parse_values_flag(*o.values);
  if (o.ladder)
  {
    c.experiment.ladder.clear();
    for (double v : parse_values_flag(*o.ladder))
      c.experiment.ladder.push_back(to_count(v));
  }
  if (o.trials)
    c.experiment.trials = *o.trials;
  if (o.workers)
    c.experiment.workers = *o.workers;
  if (o.paired_seeds)
    c.experiment.paired_seeds = true;
  if (o.deviation_sample)
  {
    const auto s = parse_deviation_sample(*o.deviation_sample);
    if (!s)
      throw ConfigError("--deviation-sample: expected midpoint or endpoint");
    c.metrics.deviation_sample = *s;
  }
  if (o.no_timing)
    c.record_timing = false;

  c.validate();
  return c;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Toolpath planning and planner benchmarking"};
  app.require_subcommand(1);

  Overrides o;
  std::optional<Command> command;
  for (Command c : {Command::plan, Command::sweep, Command::saturate, Command::compare})
  {
    static const char* help[] = {"plan one toolpath", "sweep a planner parameter",
        "find the saturation density", "compare planners at one density"};
    CLI::App* sub = app.add_subcommand(std::string(to_string(c)), help[static_cast<int>(c)]);
    add_run_options(*sub, o);
    sub->callback([&command, c] { command = c; });
  }

  std::string manifest;
  std::string replay_out = "replay";
  CLI::App* replay_cmd = app.add_subcommand("replay", "re-run a bundle from its manifest");
  replay_cmd->add_option("manifest", manifest, "manifest.json")->required();
  replay_cmd->add_option("-o,--out", replay_out, "output directory");

  std::string toolpath_file;
  std::string format = "moves";
  std::string export_out;
  CLI::App* export_cmd = app.add_subcommand("export", "convert a toolpath JSON to linear moves");
  export_cmd->add_option("toolpath", toolpath_file, "toolpath.json")->required();
  export_cmd->add_option("--format", format, "moves or json");
  export_cmd->add_option("-o,--out", export_out, "output file")->required();

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e)
  {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  if (replay_cmd->parsed())
    return replay(manifest, replay_out, std::cerr);
  if (export_cmd->parsed())
    return export_moves(toolpath_file, format, export_out, std::cerr);

  if (!o.config_file.empty() && !std::filesystem::is_regular_file(o.config_file))
  {
    std::cerr << "i/o error: cannot open " << o.config_file << '\n';
    return kExitIo;
  }

  RunConfig config;
  try
  {
    config = resolve(o);
  }
  catch (const ConfigError& e)
  {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  return execute(*command, config, o.out, std::cerr);
}
