#pragma once

#include <ampath/environment.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace ampath::detail {

/// Occupancy lattice over the workspace with node (i, j) at
/// (min_x + i * pitch, min_y + j * pitch). Edges longer than `resolution`
/// must also pass segment_free.
class GridGraph
{
public:
  GridGraph(const Environment& env, double pitch, double resolution);

  std::size_t cols() const { return cols_; }
  std::size_t rows() const { return rows_; }
  std::size_t size() const { return cols_ * rows_; }
  double pitch() const { return pitch_; }

  std::size_t index(std::size_t i, std::size_t j) const { return j * cols_ + i; }
  Point2 position(std::size_t node) const;
  bool free(std::size_t node) const { return free_[node] != 0; }

  struct Edge
  {
    std::size_t to;
    double cost;
  };

  /// Appends the traversable 8-neighbours of node to out (cleared first).
  void neighbors(std::size_t node, std::vector<Edge>& out) const;

  /// Nearest free node whose stub segment from p is collision free, ties by
  /// node index.
  std::optional<std::size_t> attach(Point2 p, const Environment& env, double resolution) const;

private:
  const Environment* env_;
  Workspace ws_;
  double pitch_;
  double resolution_;
  bool check_axis_;
  bool check_diagonal_;
  std::size_t cols_;
  std::size_t rows_;
  std::vector<std::uint8_t> free_;
};

struct GridRoute
{
  std::vector<std::size_t> nodes;
  double cost = 0.0;
};

/// Best-first search; with use_heuristic the queue is ordered by (f, h, index)
/// using Euclidean distance to the target, otherwise by (g, index).
std::optional<GridRoute> grid_shortest_path(
    const GridGraph& graph, std::size_t source, std::size_t target, bool use_heuristic);

} // namespace ampath::detail
