#pragma once

// Independent reference implementations used as test oracles. They avoid the
// library's search and sampling code on purpose.

#include <ampath/environment.hpp>
#include <ampath/geometry.hpp>

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace oracle {

using ampath::Point2;

inline bool point_free(Point2 p, const ampath::Workspace& ws, std::span<const Point2> obstacles, double clearance)
{
  if (p.x < ws.min_x || p.x > ws.max_x || p.y < ws.min_y || p.y > ws.max_y)
    return false;
  for (Point2 o : obstacles)
  {
    if (std::hypot(p.x - o.x, p.y - o.y) <= clearance)
      return false;
  }
  return true;
}

inline bool segment_clear(Point2 a, Point2 b, const ampath::Workspace& ws, std::span<const Point2> obstacles,
    double clearance, double res)
{
  const double len = std::hypot(b.x - a.x, b.y - a.y);
  const auto k = static_cast<long>(std::ceil(len / res));
  if (k == 0)
    return point_free(a, ws, obstacles, clearance);
  for (long j = 0; j <= k; ++j)
  {
    const double t = static_cast<double>(j) / static_cast<double>(k);
    const Point2 p = j == k ? b : Point2{a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
    if (!point_free(p, ws, obstacles, clearance))
      return false;
  }
  return true;
}

/// 8-connected lattice over ws: node free by the point test, diagonal moves
/// need both axis neighbours free, moves longer than res need a clear segment.
struct Lattice
{
  std::size_t cols = 0;
  std::size_t rows = 0;
  double pitch = 0;
  ampath::Workspace ws;
  std::vector<bool> free;

  struct Arc
  {
    std::size_t from;
    std::size_t to;
    double cost;
  };
  std::vector<Arc> arcs;

  Point2 at(std::size_t i, std::size_t j) const
  {
    return {ws.min_x + static_cast<double>(i) * pitch, ws.min_y + static_cast<double>(j) * pitch};
  }
  std::size_t id(std::size_t i, std::size_t j) const { return j * cols + i; }
};

inline Lattice build_lattice(
    const ampath::Workspace& ws, std::span<const Point2> obstacles, double clearance, double pitch, double res)
{
  Lattice g;
  g.ws = ws;
  g.pitch = pitch;
  g.cols = static_cast<std::size_t>(std::floor(ws.width() / pitch + 1e-9)) + 1;
  g.rows = static_cast<std::size_t>(std::floor(ws.height() / pitch + 1e-9)) + 1;
  g.free.resize(g.cols * g.rows);
  for (std::size_t j = 0; j < g.rows; ++j)
    for (std::size_t i = 0; i < g.cols; ++i)
      g.free[g.id(i, j)] = point_free(g.at(i, j), ws, obstacles, clearance);

  auto open = [&](long i, long j) {
    return i >= 0 && j >= 0 && i < static_cast<long>(g.cols) && j < static_cast<long>(g.rows)
        && g.free[g.id(static_cast<std::size_t>(i), static_cast<std::size_t>(j))];
  };
  for (long j = 0; j < static_cast<long>(g.rows); ++j)
  {
    for (long i = 0; i < static_cast<long>(g.cols); ++i)
    {
      if (!open(i, j))
        continue;
      for (long dj = -1; dj <= 1; ++dj)
      {
        for (long di = -1; di <= 1; ++di)
        {
          if ((di == 0 && dj == 0) || !open(i + di, j + dj))
            continue;
          const bool diag = di != 0 && dj != 0;
          if (diag && !(open(i + di, j) && open(i, j + dj)))
            continue;
          const auto a = g.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
          const auto b = g.at(static_cast<std::size_t>(i + di), static_cast<std::size_t>(j + dj));
          if (!segment_clear(a, b, ws, obstacles, clearance, res))
            continue;
          g.arcs.push_back({g.id(static_cast<std::size_t>(i), static_cast<std::size_t>(j)),
              g.id(static_cast<std::size_t>(i + di), static_cast<std::size_t>(j + dj)),
              diag ? pitch * std::sqrt(2.0) : pitch});
        }
      }
    }
  }
  return g;
}

/// Bellman-Ford relaxation until no distance changes.
inline std::optional<double> shortest_cost(const Lattice& g, std::size_t source, std::size_t target)
{
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(g.free.size(), inf);
  dist[source] = 0;
  for (std::size_t round = 0; round < g.free.size(); ++round)
  {
    bool changed = false;
    for (const auto& arc : g.arcs)
    {
      if (dist[arc.from] + arc.cost < dist[arc.to])
      {
        dist[arc.to] = dist[arc.from] + arc.cost;
        changed = true;
      }
    }
    if (!changed)
      break;
  }
  if (dist[target] == inf)
    return std::nullopt;
  return dist[target];
}

/// Cost of a waypoint list when every step is one lattice move.
inline double lattice_cost(std::span<const Point2> pts, double pitch)
{
  double cost = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
  {
    const bool diag = std::abs(pts[i].x - pts[i - 1].x) > 1e-9 && std::abs(pts[i].y - pts[i - 1].y) > 1e-9;
    cost += diag ? pitch * std::sqrt(2.0) : pitch;
  }
  return cost;
}

/// Two concentric obstacle rings around c, dense enough to seal it.
inline std::vector<Point2> sealing_rings(Point2 c, double r_inner, double r_outer, double spacing)
{
  std::vector<Point2> out;
  for (double r : {r_inner, r_outer})
  {
    const auto n = static_cast<int>(std::ceil(2 * 3.141592653589793 * r / spacing));
    for (int k = 0; k < n; ++k)
    {
      const double t = 2 * 3.141592653589793 * k / n;
      out.push_back({c.x + r * std::cos(t), c.y + r * std::sin(t)});
    }
  }
  return out;
}

} // namespace oracle
