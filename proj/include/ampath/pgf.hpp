#pragma once

#include <ampath/environment.hpp>
#include <ampath/planners.hpp>

#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace ampath {

//==============================================================================
/// Fixed vertices of a printed structure. Open structures print the chain
/// v0 -> v1 -> ... -> v(n-1); closed ones add the leg v(n-1) -> v0.
struct StructureSpec
{
  std::vector<Point2> vertices;
  bool closed = false;

  std::size_t leg_count() const;

  /// Start and end vertex of leg k.
  std::pair<Point2, Point2> leg(std::size_t k) const;

  /// Throws std::invalid_argument when fewer than two vertices are given,
  /// vertices repeat, or a vertex lies outside ws.
  void validate(const Workspace& ws) const;

  /// Wall from (100, 100) to (700, 700).
  static StructureSpec open_default();

  /// Six-vertex hexagon starting at (700, 480).
  static StructureSpec hexagon_default();

  /// "open-default" or "hexagon-default".
  static std::optional<StructureSpec> preset(std::string_view name);

  friend bool operator==(const StructureSpec&, const StructureSpec&) = default;
};

struct Leg
{
  std::size_t pair = 0;
  Path path;
};

struct Toolpath
{
  StructureSpec structure;
  std::vector<Leg> legs;

  std::size_t waypoint_count() const;
};

struct PartialFailure
{
  std::vector<Leg> completed;
  std::size_t failing_pair = 0;
  FailureReason reason = FailureReason::no_route;
};

using PgfOutcome = std::variant<Toolpath, PartialFailure>;

/// Seed of the planner stream used for leg k.
std::uint64_t leg_seed(std::uint64_t planner_seed, std::size_t leg);

/// Plans every vertex pair in order and concatenates the normalized legs.
/// Stops at the first failing pair. With workers > 1 legs are planned
/// concurrently; the result matches sequential execution except for timing.
PgfOutcome generate_toolpath(
    const StructureSpec& structure,
    const Environment& env,
    const PlannerConfig& cfg,
    unsigned workers = 1);

/// Drops consecutive waypoints closer than 1e-9 mm, keeping both endpoints.
Path normalize(Path path);

} // namespace ampath
