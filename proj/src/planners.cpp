#include <ampath/planners.hpp>
#include <ampath/random.hpp>

#include "grid_search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>
#include <tuple>

namespace ampath {

std::string_view to_string(PlannerKind kind)
{
  switch (kind)
  {
    case PlannerKind::dijkstra: return "dijkstra";
    case PlannerKind::astar: return "astar";
    case PlannerKind::rrt: return "rrt";
    case PlannerKind::prm: return "prm";
  }
  return "unknown";
}

std::optional<PlannerKind> parse_planner_kind(std::string_view text)
{
  for (PlannerKind k : kAllPlanners)
  {
    if (text == to_string(k))
      return k;
  }
  if (text == "a*" || text == "a-star")
    return PlannerKind::astar;
  return std::nullopt;
}

std::string_view to_string(FailureReason reason)
{
  switch (reason)
  {
    case FailureReason::no_route: return "no_route";
    case FailureReason::iteration_cap: return "iteration_cap";
    case FailureReason::invalid_query: return "invalid_query";
  }
  return "unknown";
}

std::optional<FailureReason> parse_failure_reason(std::string_view text)
{
  for (FailureReason r : {FailureReason::no_route, FailureReason::iteration_cap, FailureReason::invalid_query})
  {
    if (text == to_string(r))
      return r;
  }
  return std::nullopt;
}

void PlannerConfig::validate() const
{
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw PlannerError(std::string(name) + " must be positive");
  };
  positive(path_resolution, "path_resolution");
  positive(grid_size, "grid_size");
  positive(expansion_length, "expansion_length");
  positive(max_edge_length, "max_edge_length");
  if (!(goal_sample_rate >= 0.0 && goal_sample_rate <= 1.0))
    throw PlannerError("goal_sample_rate must lie in [0, 1]");
  if (max_iterations == 0)
    throw PlannerError("max_iterations must be positive");
  if (num_neighbors == 0)
    throw PlannerError("num_neighbors must be positive");
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Path make_path(std::vector<Point2> waypoints, PlannerKind kind, Clock::time_point t0)
{
  return Path{std::move(waypoints), kind, seconds_since(t0)};
}

Failure make_failure(FailureReason reason, Clock::time_point t0)
{
  return Failure{reason, seconds_since(t0)};
}

// Appends p unless it coincides with the current last waypoint.
void push_distinct(std::vector<Point2>& pts, Point2 p)
{
  if (pts.empty() || distance(pts.back(), p) >= kLengthTolerance)
    pts.push_back(p);
}

void finish_exact(std::vector<Point2>& pts, Point2 goal)
{
  if (!pts.empty() && distance(pts.back(), goal) < kLengthTolerance)
    pts.back() = goal;
  else
    pts.push_back(goal);
}

PlanOutcome plan_grid(Point2 start, Point2 goal, const Environment& env, const PlannerConfig& cfg, bool heuristic)
{
  const auto t0 = Clock::now();
  const PlannerKind kind = heuristic ? PlannerKind::astar : PlannerKind::dijkstra;
  cfg.validate();
  if (!env.is_free(start) || !env.is_free(goal))
    return make_failure(FailureReason::invalid_query, t0);

  const detail::GridGraph graph(env, cfg.grid_size, cfg.path_resolution);
  const auto source = graph.attach(start, env, cfg.path_resolution);
  const auto target = graph.attach(goal, env, cfg.path_resolution);
  if (!source || !target)
    return make_failure(FailureReason::no_route, t0);

  const auto route = detail::grid_shortest_path(graph, *source, *target, heuristic);
  if (!route)
    return make_failure(FailureReason::no_route, t0);

  std::vector<Point2> pts{start};
  for (std::size_t n : route->nodes)
    push_distinct(pts, graph.position(n));
  finish_exact(pts, goal);
  if (pts.size() == 1)
    pts.push_back(goal);
  return make_path(std::move(pts), kind, t0);
}

} // namespace

PlanOutcome plan_dijkstra(Point2 start, Point2 goal, const Environment& env, const PlannerConfig& cfg)
{
  return plan_grid(start, goal, env, cfg, false);
}

PlanOutcome plan_astar(Point2 start, Point2 goal, const Environment& env, const PlannerConfig& cfg)
{
  return plan_grid(start, goal, env, cfg, true);
}

//==============================================================================
PlanOutcome plan_rrt(Point2 start, Point2 goal, const Environment& env, const PlannerConfig& cfg)
{
  const auto t0 = Clock::now();
  cfg.validate();
  if (!env.is_free(start) || !env.is_free(goal))
    return make_failure(FailureReason::invalid_query, t0);

  const double step = cfg.expansion_length;
  const double res = cfg.path_resolution;
  const Workspace& ws = env.workspace();

  std::vector<Point2> nodes{start};
  std::vector<std::size_t> parent{0};

  auto extract = [&](std::size_t leaf) {
    std::vector<Point2> pts;
    for (std::size_t n = leaf;; n = parent[n])
    {
      pts.push_back(nodes[n]);
      if (n == 0)
        break;
    }
    std::reverse(pts.begin(), pts.end());
    finish_exact(pts, goal);
    return pts;
  };

  auto reaches_goal = [&](Point2 p) {
    return distance(p, goal) <= step && segment_free({p, goal}, env, res);
  };

  if (reaches_goal(start))
    return make_path({start, goal}, PlannerKind::rrt, t0);

  Rng rng(cfg.seed);
  for (std::size_t iter = 0; iter < cfg.max_iterations; ++iter)
  {
    Point2 sample = goal;
    if (rng.uniform01() >= cfg.goal_sample_rate)
      sample = {rng.uniform(ws.min_x, ws.max_x), rng.uniform(ws.min_y, ws.max_y)};

    std::size_t nearest = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < nodes.size(); ++n)
    {
      const double d2 = squared_distance(nodes[n], sample);
      if (d2 < best)
      {
        best = d2;
        nearest = n;
      }
    }

    const Point2 from = nodes[nearest];
    const double d = std::sqrt(best);
    if (d < kLengthTolerance)
      continue;
    const Point2 to = d <= step ? sample : from + (sample - from) * (step / d);
    if (!segment_free({from, to}, env, res))
      continue;

    nodes.push_back(to);
    parent.push_back(nearest);
    if (reaches_goal(to))
      return make_path(extract(nodes.size() - 1), PlannerKind::rrt, t0);
  }
  return make_failure(FailureReason::iteration_cap, t0);
}

//==============================================================================
Roadmap build_roadmap(Point2 start, Point2 goal, const Environment& env, const PlannerConfig& cfg)
{
  const Workspace& ws = env.workspace();
  Roadmap map;
  map.nodes.reserve(cfg.num_samples + 2);

  Rng rng(cfg.seed);
  const std::uint64_t max_draws = 10'000ULL * std::max<std::size_t>(cfg.num_samples, 1);
  std::uint64_t draws = 0;
  while (map.nodes.size() < cfg.num_samples)
  {
    if (draws++ >= max_draws)
      throw PlannerError("free-space sampling exhausted");
    const Point2 p{rng.uniform(ws.min_x, ws.max_x), rng.uniform(ws.min_y, ws.max_y)};
    if (env.is_free(p))
      map.nodes.push_back(p);
  }
  map.nodes.push_back(start);
  map.nodes.push_back(goal);

  const std::size_t n = map.nodes.size();
  const std::size_t k = std::min(cfg.num_neighbors, n - 1);
  map.candidates.resize(n);
  map.edges.resize(n);

  std::vector<std::pair<double, std::size_t>> order;
  order.reserve(n);
  for (std::size_t u = 0; u < n; ++u)
  {
    order.clear();
    for (std::size_t v = 0; v < n; ++v)
    {
      if (v != u)
        order.emplace_back(squared_distance(map.nodes[u], map.nodes[v]), v);
    }
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end());
    for (std::size_t c = 0; c < k; ++c)
      map.candidates[u].push_back(order[c].second);
  }

  const double max_edge2 = cfg.max_edge_length * cfg.max_edge_length;
  for (std::size_t u = 0; u < n; ++u)
  {
    for (std::size_t v : map.candidates[u])
    {
      if (squared_distance(map.nodes[u], map.nodes[v]) > max_edge2)
        continue;
      if (std::find(map.edges[u].begin(), map.edges[u].end(), v) != map.edges[u].end())
        continue;
      if (!segment_free({map.nodes[u], map.nodes[v]}, env, cfg.path_resolution))
        continue;
      map.edges[u].push_back(v);
      map.edges[v].push_back(u);
    }
  }
  for (auto& adj : map.edges)
    std::sort(adj.begin(), adj.end());
  return map;
}

PlanOutcome plan_prm(Point2 start, Point2 goal, const Environment& env, const PlannerConfig& cfg)
{
  const auto t0 = Clock::now();
  cfg.validate();
  if (!env.is_free(start) || !env.is_free(goal))
    return make_failure(FailureReason::invalid_query, t0);

  const Roadmap map = build_roadmap(start, goal, env, cfg);
  const std::size_t n = map.nodes.size();
  const std::size_t source = n - 2;
  const std::size_t target = n - 1;

  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, inf);
  std::vector<std::size_t> parent(n, n);
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  dist[source] = 0.0;
  open.emplace(0.0, source);
  while (!open.empty())
  {
    const auto [d, u] = open.top();
    open.pop();
    if (d > dist[u])
      continue;
    if (u == target)
      break;
    for (std::size_t v : map.edges[u])
    {
      const double nd = d + distance(map.nodes[u], map.nodes[v]);
      if (nd < dist[v])
      {
        dist[v] = nd;
        parent[v] = u;
        open.emplace(nd, v);
      }
    }
  }
  if (dist[target] == inf)
    return make_failure(FailureReason::no_route, t0);

  std::vector<Point2> pts;
  for (std::size_t u = target; u != n; u = parent[u])
    pts.push_back(map.nodes[u]);
  std::reverse(pts.begin(), pts.end());
  return make_path(std::move(pts), PlannerKind::prm, t0);
}

PlanOutcome plan(Point2 start, Point2 goal, const Environment& env, const PlannerConfig& cfg)
{
  switch (cfg.kind)
  {
    case PlannerKind::dijkstra: return plan_dijkstra(start, goal, env, cfg);
    case PlannerKind::astar: return plan_astar(start, goal, env, cfg);
    case PlannerKind::rrt: return plan_rrt(start, goal, env, cfg);
    case PlannerKind::prm: return plan_prm(start, goal, env, cfg);
  }
  throw PlannerError("unknown planner kind");
}

} // namespace ampath
