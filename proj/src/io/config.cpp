#include <ampath/io/config.hpp>

#include <yaml-cpp/yaml.h>

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace ampath::io {

std::vector<PlannerConfig> RunConfig::default_planner_configs()
{
  std::vector<PlannerConfig> out;
  for (PlannerKind k : kAllPlanners)
  {
    PlannerConfig c;
    c.kind = k;
    out.push_back(c);
  }
  return out;
}

PlannerConfig RunConfig::planner_config(PlannerKind kind) const
{
  return config_for(kind, planner_configs, PlannerConfig{});
}

PlannerConfig& RunConfig::planner_config_ref(PlannerKind kind)
{
  for (PlannerConfig& c : planner_configs)
  {
    if (c.kind == kind)
      return c;
  }
  planner_configs.push_back(planner_config(kind));
  return planner_configs.back();
}

TrialSpec RunConfig::trial_template() const
{
  TrialSpec t;
  t.structure = structure;
  t.workspace = workspace;
  t.clearance = clearance;
  t.arrangement = arrangement;
  t.planner = planner_config(planner);
  t.metrics = metrics;
  t.record_timing = record_timing;
  return t;
}

void RunConfig::validate() const
{
  try
  {
    workspace.validate();
    if (!(clearance > 0.0))
      throw ConfigError("clearance must be positive");
    structure.validate(workspace);
    if (arrangement.kind != ArrangementKind::none && arrangement.count == 0)
      throw ConfigError("obstacle count must be at least 1");
    if (arrangement.margin < 0.0)
      throw ConfigError("obstacle margin must be non-negative");
    for (const PlannerConfig& c : planner_configs)
      c.validate();
    if (experiment.trials == 0)
      throw ConfigError("experiment.trials must be at least 1");
    if (experiment.planners.empty())
      throw ConfigError("experiment.planners must not be empty");
    if (experiment.workers == 0)
      throw ConfigError("experiment.workers must be at least 1");
    validate_ladder(experiment.ladder);
    if (!(metrics.turn_tolerance_deg >= 0.0))
      throw ConfigError("metrics.turn_tolerance_deg must be non-negative");
  }
  catch (const ConfigError&)
  {
    throw;
  }
  catch (const std::exception& e)
  {
    throw ConfigError(e.what());
  }
}

//==============================================================================
namespace {

class Reader
{
public:
  explicit Reader(std::string_view source) : source_(source) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& what) const
  {
    const auto mark = node.Mark();
    if (mark.is_null())
      throw ConfigError(fmt::format("{}: {}", source_, what));
    throw ConfigError(fmt::format("{}:{}: {}", source_, mark.line + 1, what));
  }

  void only_keys(const YAML::Node& map, std::initializer_list<std::string_view> allowed, std::string_view where) const
  {
    if (!map.IsMap())
      fail(map, fmt::format("'{}' must be a mapping", where));
    for (const auto& kv : map)
    {
      const auto key = kv.first.as<std::string>();
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        fail(kv.first, fmt::format("unknown key '{}' in {}", key, where));
    }
  }

  template <typename T>
  T get(const YAML::Node& node, std::string_view what) const
  {
    try
    {
      return node.as<T>();
    }
    catch (const YAML::Exception&)
    {
      fail(node, fmt::format("invalid value for {}", what));
    }
  }

  double number(const YAML::Node& node, std::string_view what) const
  {
    const double v = get<double>(node, what);
    if (!std::isfinite(v))
      fail(node, fmt::format("{} must be finite", what));
    return v;
  }

  std::size_t count(const YAML::Node& node, std::string_view what) const
  {
    const double v = number(node, what);
    if (v < 0.0 || std::floor(v) != v)
      fail(node, fmt::format("{} must be a non-negative integer", what));
    return static_cast<std::size_t>(v);
  }

  std::uint64_t seed(const YAML::Node& node, std::string_view what) const
  {
    return get<std::uint64_t>(node, what);
  }

  bool boolean(const YAML::Node& node, std::string_view what) const
  {
    return get<bool>(node, what);
  }

private:
  std::string source_;
};

Point2 read_point(const Reader& r, const YAML::Node& node)
{
  if (!node.IsSequence() || node.size() != 2)
    r.fail(node, "vertex must be a [x, y] pair");
  return {r.number(node[0], "vertex x"), r.number(node[1], "vertex y")};
}

void read_planner_fields(const Reader& r, const YAML::Node& map, PlannerConfig& c, std::string_view where)
{
  r.only_keys(map, {"path_resolution", "grid_size", "expansion_length", "goal_sample_rate", "max_iterations",
                       "num_samples", "num_neighbors", "max_edge_length"},
      where);
  const auto check = [&](const YAML::Node& n, auto&& validate_fn) {
    try
    {
      validate_fn();
    }
    catch (const PlannerError& e)
    {
      r.fail(n, e.what());
    }
  };
  for (const auto& kv : map)
  {
    const auto key = kv.first.as<std::string>();
    const YAML::Node& v = kv.second;
    PlannerConfig next = c;
    if (key == "path_resolution") next.path_resolution = r.number(v, key);
    else if (key == "grid_size") next.grid_size = r.number(v, key);
    else if (key == "expansion_length") next.expansion_length = r.number(v, key);
    else if (key == "goal_sample_rate") next.goal_sample_rate = r.number(v, key);
    else if (key == "max_iterations") next.max_iterations = r.count(v, key);
    else if (key == "num_samples") next.num_samples = r.count(v, key);
    else if (key == "num_neighbors") next.num_neighbors = r.count(v, key);
    else if (key == "max_edge_length") next.max_edge_length = r.number(v, key);
    check(v, [&] { next.validate(); });
    c = next;
  }
}

PlannerKind read_planner_kind(const Reader& r, const YAML::Node& node)
{
  const auto text = r.get<std::string>(node, "planner");
  const auto kind = parse_planner_kind(text);
  if (!kind)
    r.fail(node, fmt::format("unknown planner '{}'", text));
  return *kind;
}

} // namespace

RunConfig parse_config(std::string_view text, std::string_view source, RunConfig cfg)
{
  const Reader r(source);
  YAML::Node root;
  try
  {
    root = YAML::Load(std::string(text));
  }
  catch (const YAML::ParserException& e)
  {
    throw ConfigError(fmt::format("{}:{}: {}", source, e.mark.line + 1, e.msg));
  }
  if (root.IsNull())
    return cfg;

  r.only_keys(root, {"seed", "workspace", "clearance", "structure", "obstacles", "planner", "planners", "metrics",
                        "experiment", "output"},
      "config");

  if (const auto n = root["seed"])
    cfg.seed = r.seed(n, "seed");

  if (const auto ws = root["workspace"])
  {
    r.only_keys(ws, {"min_x", "min_y", "max_x", "max_y"}, "workspace");
    if (ws["min_x"]) cfg.workspace.min_x = r.number(ws["min_x"], "workspace.min_x");
    if (ws["min_y"]) cfg.workspace.min_y = r.number(ws["min_y"], "workspace.min_y");
    if (ws["max_x"]) cfg.workspace.max_x = r.number(ws["max_x"], "workspace.max_x");
    if (ws["max_y"]) cfg.workspace.max_y = r.number(ws["max_y"], "workspace.max_y");
    try
    {
      cfg.workspace.validate();
    }
    catch (const EnvironmentError& e)
    {
      r.fail(ws, e.what());
    }
  }

  if (const auto n = root["clearance"])
  {
    cfg.clearance = r.number(n, "clearance");
    if (!(cfg.clearance > 0.0))
      r.fail(n, "clearance must be positive");
  }

  if (const auto s = root["structure"])
  {
    r.only_keys(s, {"preset", "name", "vertices", "closed"}, "structure");
    if (const auto p = s["preset"])
    {
      const auto name = r.get<std::string>(p, "structure.preset");
      const auto preset = StructureSpec::preset(name);
      if (!preset)
        r.fail(p, fmt::format("unknown structure preset '{}'", name));
      cfg.structure = *preset;
      cfg.structure_name = name;
    }
    if (const auto v = s["vertices"])
    {
      if (!v.IsSequence())
        r.fail(v, "structure.vertices must be a list of [x, y] pairs");
      cfg.structure.vertices.clear();
      for (const auto& p : v)
        cfg.structure.vertices.push_back(read_point(r, p));
      cfg.structure_name = "custom";
    }
    if (const auto c = s["closed"])
      cfg.structure.closed = r.boolean(c, "structure.closed");
    if (const auto n = s["name"])
      cfg.structure_name = r.get<std::string>(n, "structure.name");
    try
    {
      cfg.structure.validate(cfg.workspace);
    }
    catch (const std::invalid_argument& e)
    {
      r.fail(s, e.what());
    }
  }

  if (const auto o = root["obstacles"])
  {
    r.only_keys(o, {"kind", "count", "margin"}, "obstacles");
    if (const auto k = o["kind"])
    {
      const auto text = r.get<std::string>(k, "obstacles.kind");
      const auto kind = parse_arrangement_kind(text);
      if (!kind)
        r.fail(k, fmt::format("unknown obstacle arrangement '{}'", text));
      cfg.arrangement.kind = *kind;
    }
    if (const auto c = o["count"])
      cfg.arrangement.count = r.count(c, "obstacles.count");
    if (const auto m = o["margin"])
      cfg.arrangement.margin = r.number(m, "obstacles.margin");
    if (cfg.arrangement.kind != ArrangementKind::none && cfg.arrangement.count == 0)
      r.fail(o, "obstacles.count must be at least 1");
  }

  if (const auto p = root["planner"])
    cfg.planner = read_planner_kind(r, p);

  if (const auto ps = root["planners"])
  {
    r.only_keys(ps, {"common", "dijkstra", "astar", "rrt", "prm"}, "planners");
    if (const auto common = ps["common"])
    {
      for (PlannerConfig& c : cfg.planner_configs)
        read_planner_fields(r, common, c, "planners.common");
    }
    for (PlannerKind k : kAllPlanners)
    {
      const std::string key(to_string(k));
      if (const auto section = ps[key])
        read_planner_fields(r, section, cfg.planner_config_ref(k), "planners." + key);
    }
  }

  if (const auto m = root["metrics"])
  {
    r.only_keys(m, {"turn_tolerance_deg", "deviation_sample"}, "metrics");
    if (const auto t = m["turn_tolerance_deg"])
      cfg.metrics.turn_tolerance_deg = r.number(t, "metrics.turn_tolerance_deg");
    if (const auto d = m["deviation_sample"])
    {
      const auto text = r.get<std::string>(d, "metrics.deviation_sample");
      const auto sample = parse_deviation_sample(text);
      if (!sample)
        r.fail(d, fmt::format("deviation_sample must be midpoint or endpoint, got '{}'", text));
      cfg.metrics.deviation_sample = *sample;
    }
  }

  if (const auto e = root["experiment"])
  {
    r.only_keys(e, {"trials", "param", "values", "ladder", "planners", "paired_seeds", "workers"}, "experiment");
    ExperimentConfig& x = cfg.experiment;
    if (const auto t = e["trials"])
    {
      x.trials = r.count(t, "experiment.trials");
      if (x.trials == 0)
        r.fail(t, "experiment.trials must be at least 1");
    }
    if (const auto p = e["param"])
    {
      const auto text = r.get<std::string>(p, "experiment.param");
      const auto param = parse_sweep_parameter(text);
      if (!param)
        r.fail(p, fmt::format("unknown sweep parameter '{}'", text));
      x.parameter = *param;
    }
    if (const auto v = e["values"])
    {
      x.values.clear();
      if (v.IsScalar())
      {
        try
        {
          x.values = parse_values_flag(v.as<std::string>());
        }
        catch (const ConfigError& err)
        {
          r.fail(v, err.what());
        }
      }
      else
      {
        for (const auto& item : v)
          x.values.push_back(r.number(item, "experiment.values"));
      }
    }
    if (const auto l = e["ladder"])
    {
      x.ladder.clear();
      for (const auto& item : l)
        x.ladder.push_back(r.count(item, "experiment.ladder"));
      try
      {
        validate_ladder(x.ladder);
      }
      catch (const ExperimentError& err)
      {
        r.fail(l, err.what());
      }
    }
    if (const auto p = e["planners"])
    {
      x.planners.clear();
      for (const auto& item : p)
        x.planners.push_back(read_planner_kind(r, item));
      if (x.planners.empty())
        r.fail(p, "experiment.planners must not be empty");
    }
    if (const auto p = e["paired_seeds"])
      x.paired_seeds = r.boolean(p, "experiment.paired_seeds");
    if (const auto w = e["workers"])
    {
      x.workers = static_cast<unsigned>(r.count(w, "experiment.workers"));
      if (x.workers == 0)
        r.fail(w, "experiment.workers must be at least 1");
    }
  }

  if (const auto out = root["output"])
  {
    r.only_keys(out, {"record_timing"}, "output");
    if (const auto t = out["record_timing"])
      cfg.record_timing = r.boolean(t, "output.record_timing");
  }

  cfg.validate();
  return cfg;
}

RunConfig load_config_file(const std::filesystem::path& path, RunConfig base)
{
  std::ifstream in(path);
  if (!in)
    throw ConfigError(fmt::format("{}: cannot open config file", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.string(), std::move(base));
}

//==============================================================================
nlohmann::ordered_json to_json(const RunConfig& c)
{
  using nlohmann::ordered_json;
  ordered_json j;
  j["seed"] = c.seed;
  j["workspace"] = {{"min_x", c.workspace.min_x}, {"min_y", c.workspace.min_y},
                    {"max_x", c.workspace.max_x}, {"max_y", c.workspace.max_y}};
  j["clearance"] = c.clearance;

  ordered_json vertices = ordered_json::array();
  for (Point2 p : c.structure.vertices)
    vertices.push_back({p.x, p.y});
  j["structure"] = {{"name", c.structure_name}, {"vertices", vertices}, {"closed", c.structure.closed}};
  j["obstacles"] = {{"kind", std::string(to_string(c.arrangement.kind))},
                    {"count", c.arrangement.count},
                    {"margin", c.arrangement.margin}};
  j["planner"] = std::string(to_string(c.planner));

  ordered_json planners;
  for (PlannerKind k : kAllPlanners)
  {
    const PlannerConfig p = c.planner_config(k);
    planners[std::string(to_string(k))] = {
        {"path_resolution", p.path_resolution},
        {"grid_size", p.grid_size},
        {"expansion_length", p.expansion_length},
        {"goal_sample_rate", p.goal_sample_rate},
        {"max_iterations", p.max_iterations},
        {"num_samples", p.num_samples},
        {"num_neighbors", p.num_neighbors},
        {"max_edge_length", p.max_edge_length},
    };
  }
  j["planners"] = planners;
  j["metrics"] = {{"turn_tolerance_deg", c.metrics.turn_tolerance_deg},
                  {"deviation_sample", std::string(to_string(c.metrics.deviation_sample))}};

  ordered_json names = ordered_json::array();
  for (PlannerKind k : c.experiment.planners)
    names.push_back(std::string(to_string(k)));
  j["experiment"] = {{"trials", c.experiment.trials},
                     {"param", std::string(to_string(c.experiment.parameter))},
                     {"values", c.experiment.values},
                     {"ladder", c.experiment.ladder},
                     {"planners", names},
                     {"paired_seeds", c.experiment.paired_seeds},
                     {"workers", c.experiment.workers}};
  j["output"] = {{"record_timing", c.record_timing}};
  return j;
}

std::string config_digest(const RunConfig& config)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : to_json(config).dump())
  {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

//==============================================================================
ArrangementSpec parse_obstacles_flag(std::string_view text, double margin)
{
  ArrangementSpec spec;
  spec.margin = margin;
  const auto colon = text.find(':');
  const auto kind = parse_arrangement_kind(text.substr(0, colon));
  if (!kind)
    throw ConfigError(fmt::format("--obstacles: unknown arrangement '{}'", text.substr(0, colon)));
  spec.kind = *kind;
  if (spec.kind == ArrangementKind::none)
    return spec;
  if (colon == std::string_view::npos)
    throw ConfigError("--obstacles: expected kind:count, e.g. random:256");
  try
  {
    std::size_t used = 0;
    const std::string num(text.substr(colon + 1));
    const long long n = std::stoll(num, &used);
    if (used != num.size() || n <= 0)
      throw std::invalid_argument("count");
    spec.count = static_cast<std::size_t>(n);
  }
  catch (const std::exception&)
  {
    throw ConfigError(fmt::format("--obstacles: invalid count in '{}'", text));
  }
  return spec;
}

std::vector<double> parse_values_flag(std::string_view text)
{
  auto to_double = [&](std::string_view s) {
    try
    {
      std::size_t used = 0;
      const std::string str(s);
      const double v = std::stod(str, &used);
      if (used != str.size())
        throw std::invalid_argument("trailing");
      return v;
    }
    catch (const std::exception&)
    {
      throw ConfigError(fmt::format("invalid number '{}' in values '{}'", s, text));
    }
  };

  std::vector<double> out;
  if (text.find(':') != std::string_view::npos)
  {
    const auto a = text.find(':');
    const auto b = text.find(':', a + 1);
    if (b == std::string_view::npos)
      throw ConfigError(fmt::format("range '{}' must be start:stop:step", text));
    const double start = to_double(text.substr(0, a));
    const double stop = to_double(text.substr(a + 1, b - a - 1));
    const double step = to_double(text.substr(b + 1));
    if (!(step > 0.0) || stop < start)
      throw ConfigError(fmt::format("range '{}' needs step > 0 and stop >= start", text));
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i)
      out.push_back(start + static_cast<double>(i) * step);
    return out;
  }

  std::size_t pos = 0;
  while (pos <= text.size())
  {
    const auto comma = text.find(',', pos);
    const auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    out.push_back(to_double(item));
    if (comma == std::string_view::npos)
      break;
    pos = comma + 1;
  }
  return out;
}

std::vector<PlannerKind> parse_planner_list(std::string_view text)
{
  std::vector<PlannerKind> out;
  std::size_t pos = 0;
  while (pos <= text.size())
  {
    const auto comma = text.find(',', pos);
    const auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    const auto kind = parse_planner_kind(item);
    if (!kind)
      throw ConfigError(fmt::format("unknown planner '{}'", item));
    out.push_back(*kind);
    if (comma == std::string_view::npos)
      break;
    pos = comma + 1;
  }
  return out;
}

} // namespace ampath::io
