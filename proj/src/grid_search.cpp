#include "grid_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <tuple>

namespace ampath::detail {

GridGraph::GridGraph(const Environment& env, double pitch, double resolution)
  : env_(&env), ws_(env.workspace()), pitch_(pitch), resolution_(resolution)
{
  check_axis_ = densify_steps({{0, 0}, {pitch_, 0}}, resolution_) > 1;
  check_diagonal_ = densify_steps({{0, 0}, {pitch_, pitch_}}, resolution_) > 1;
  cols_ = static_cast<std::size_t>(std::floor(ws_.width() / pitch_ + kLengthTolerance)) + 1;
  rows_ = static_cast<std::size_t>(std::floor(ws_.height() / pitch_ + kLengthTolerance)) + 1;
  free_.resize(cols_ * rows_);
  for (std::size_t n = 0; n < free_.size(); ++n)
    free_[n] = env.is_free(position(n)) ? 1 : 0;
}

Point2 GridGraph::position(std::size_t node) const
{
  const std::size_t i = node % cols_;
  const std::size_t j = node / cols_;
  return {ws_.min_x + static_cast<double>(i) * pitch_, ws_.min_y + static_cast<double>(j) * pitch_};
}

void GridGraph::neighbors(std::size_t node, std::vector<Edge>& out) const
{
  out.clear();
  const auto i = static_cast<long>(node % cols_);
  const auto j = static_cast<long>(node / cols_);
  const auto cols = static_cast<long>(cols_);
  const auto rows = static_cast<long>(rows_);
  auto ok = [&](long x, long y) {
    return x >= 0 && y >= 0 && x < cols && y < rows && free_[static_cast<std::size_t>(y * cols + x)] != 0;
  };
  const double diagonal = pitch_ * std::numbers::sqrt2;

  for (long dj = -1; dj <= 1; ++dj)
  {
    for (long di = -1; di <= 1; ++di)
    {
      if (di == 0 && dj == 0)
        continue;
      if (!ok(i + di, j + dj))
        continue;
      const bool diag = di != 0 && dj != 0;
      if (diag && !(ok(i + di, j) && ok(i, j + dj)))
        continue;
      const auto to = static_cast<std::size_t>((j + dj) * cols + (i + di));
      if ((diag ? check_diagonal_ : check_axis_) && !segment_free({position(node), position(to)}, *env_, resolution_))
        continue;
      out.push_back({to, diag ? diagonal : pitch_});
    }
  }
}

std::optional<std::size_t> GridGraph::attach(Point2 p, const Environment& env, double resolution) const
{
  std::vector<std::pair<double, std::size_t>> candidates;
  candidates.reserve(free_.size());
  for (std::size_t n = 0; n < free_.size(); ++n)
  {
    if (free_[n] != 0)
      candidates.emplace_back(squared_distance(p, position(n)), n);
  }
  std::sort(candidates.begin(), candidates.end());
  for (const auto& [d2, n] : candidates)
  {
    if (segment_free({p, position(n)}, env, resolution))
      return n;
  }
  return std::nullopt;
}

//==============================================================================
std::optional<GridRoute> grid_shortest_path(
    const GridGraph& graph, std::size_t source, std::size_t target, bool use_heuristic)
{
  constexpr double inf = std::numeric_limits<double>::infinity();
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

  const Point2 goal = graph.position(target);
  auto h = [&](std::size_t n) { return use_heuristic ? distance(graph.position(n), goal) : 0.0; };

  std::vector<double> g(graph.size(), inf);
  std::vector<std::size_t> parent(graph.size(), none);
  std::vector<std::uint8_t> closed(graph.size(), 0);

  // (primary key, secondary key, node); Dijkstra uses (g, 0, n), A* (f, h, n).
  using Entry = std::tuple<double, double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

  g[source] = 0.0;
  open.emplace(h(source), h(source), source);

  std::vector<GridGraph::Edge> adj;
  while (!open.empty())
  {
    const auto [key, tie, node] = open.top();
    open.pop();
    if (closed[node] != 0)
      continue;
    closed[node] = 1;
    if (node == target)
      break;

    graph.neighbors(node, adj);
    for (const auto& e : adj)
    {
      const double candidate = g[node] + e.cost;
      if (candidate < g[e.to])
      {
        g[e.to] = candidate;
        parent[e.to] = node;
        // Rounding can make the heuristic inconsistent by an ulp; reopen.
        closed[e.to] = 0;
        const double he = h(e.to);
        open.emplace(candidate + he, he, e.to);
      }
    }
  }

  if (g[target] == inf)
    return std::nullopt;

  GridRoute route;
  route.cost = g[target];
  for (std::size_t n = target; n != none; n = parent[n])
    route.nodes.push_back(n);
  std::reverse(route.nodes.begin(), route.nodes.end());
  return route;
}

} // namespace ampath::detail
