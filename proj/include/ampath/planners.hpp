#pragma once

#include <ampath/environment.hpp>
#include <ampath/geometry.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <variant>
#include <vector>

namespace ampath {

class PlannerError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class PlannerKind
{
  dijkstra,
  astar,
  rrt,
  prm
};

std::string_view to_string(PlannerKind kind);
std::optional<PlannerKind> parse_planner_kind(std::string_view text);

inline constexpr PlannerKind kAllPlanners[] = {
    PlannerKind::dijkstra, PlannerKind::astar, PlannerKind::rrt, PlannerKind::prm};

//==============================================================================
/// Parameters for all four planners. Defaults are the tuned values
/// (resolution 20 mm, grid 12 mm, RRT step 20 mm, PRM 500 samples /
/// 10 neighbours / 410 mm edges); the RRT goal bias and iteration cap follow
/// the usual PythonRobotics defaults.
struct PlannerConfig
{
  PlannerKind kind = PlannerKind::dijkstra;
  double path_resolution = 20.0;
  double grid_size = 12.0;
  double expansion_length = 20.0;
  double goal_sample_rate = 0.05;
  std::size_t max_iterations = 500;
  std::size_t num_samples = 500;
  std::size_t num_neighbors = 10;
  double max_edge_length = 410.0;
  std::uint64_t seed = 0;

  /// Throws PlannerError naming the first invalid field.
  void validate() const;
};

struct Path
{
  std::vector<Point2> waypoints;
  PlannerKind planner = PlannerKind::dijkstra;
  double elapsed_s = 0.0;

  double length() const { return polyline_length(waypoints); }
};

enum class FailureReason
{
  no_route,
  iteration_cap,
  invalid_query
};

std::string_view to_string(FailureReason reason);
std::optional<FailureReason> parse_failure_reason(std::string_view text);

struct Failure
{
  FailureReason reason = FailureReason::no_route;
  double elapsed_s = 0.0;
};

using PlanOutcome = std::variant<Path, Failure>;

inline bool succeeded(const PlanOutcome& o) { return std::holds_alternative<Path>(o); }

//==============================================================================
// Grid planners search the 8-connected lattice with node (i, j) at
// (min_x + i * grid_size, min_y + j * grid_size). Axis moves cost grid_size,
// diagonal moves grid_size * sqrt(2); a diagonal move also needs both
// axis-adjacent nodes free, and a move longer than path_resolution must pass
// segment_free. Start and goal attach to the nearest free node
// reachable by a collision-free stub, and the exact query points are kept as
// the first and last waypoints.

PlanOutcome plan_dijkstra(Point2 start, Point2 goal, const Environment& env, const PlannerConfig& cfg);

/// Same graph and costs as plan_dijkstra with a Euclidean heuristic; the
/// returned route has the same cost, though ties may resolve differently.
PlanOutcome plan_astar(Point2 start, Point2 goal, const Environment& env, const PlannerConfig& cfg);

/// Goal-biased RRT. Every extension is at most expansion_length long.
PlanOutcome plan_rrt(Point2 start, Point2 goal, const Environment& env, const PlannerConfig& cfg);

/// k-nearest PRM with Dijkstra over the roadmap.
PlanOutcome plan_prm(Point2 start, Point2 goal, const Environment& env, const PlannerConfig& cfg);

/// Dispatches on cfg.kind.
PlanOutcome plan(Point2 start, Point2 goal, const Environment& env, const PlannerConfig& cfg);

//==============================================================================
/// PRM roadmap, exposed for inspection.
struct Roadmap
{
  std::vector<Point2> nodes; // samples, then start, then goal
  std::vector<std::vector<std::size_t>> candidates; // k nearest, pre-filter
  std::vector<std::vector<std::size_t>> edges;      // undirected, post-filter
};

Roadmap build_roadmap(Point2 start, Point2 goal, const Environment& env, const PlannerConfig& cfg);

} // namespace ampath
