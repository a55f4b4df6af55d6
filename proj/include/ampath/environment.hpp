#pragma once

#include <ampath/geometry.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace ampath {

class EnvironmentError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

//==============================================================================
struct Workspace
{
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 800.0;
  double max_y = 800.0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
  Point2 center() const { return {0.5 * (min_x + max_x), 0.5 * (min_y + max_y)}; }
  bool contains(Point2 p) const;

  /// Throws EnvironmentError unless max > min on both axes.
  void validate() const;

  friend bool operator==(const Workspace&, const Workspace&) = default;
};

//==============================================================================
/// Workspace with point obstacles. A point collides when it lies within
/// `clearance` of any obstacle or outside the workspace. Immutable once built.
class Environment
{
public:
  Environment(Workspace workspace, std::vector<Point2> obstacles, double clearance);

  const Workspace& workspace() const { return workspace_; }
  std::span<const Point2> obstacles() const { return obstacles_; }
  double clearance() const { return clearance_; }

  bool is_free(Point2 p) const;

private:
  Workspace workspace_;
  std::vector<Point2> obstacles_;
  double clearance_;

  // Uniform bucket index over the workspace, cell edge = clearance.
  double cell_ = 0.0;
  std::size_t cols_ = 0;
  std::size_t rows_ = 0;
  std::vector<std::uint32_t> cell_start_;
  std::vector<std::uint32_t> cell_items_;
};

bool is_free(Point2 p, const Environment& env);

/// True iff every densified sample of s is free.
bool segment_free(const Segment& s, const Environment& env, double resolution);

//==============================================================================
enum class ArrangementKind
{
  none,
  random,
  periodic
};

std::string_view to_string(ArrangementKind kind);
std::optional<ArrangementKind> parse_arrangement_kind(std::string_view text);

struct ArrangementSpec
{
  ArrangementKind kind = ArrangementKind::random;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  double margin = 50.0;
};

/// Uniform rejection sampling inside the workspace shrunk by spec.margin.
/// A draw is rejected when it lies within `clearance` of a keepout point or
/// of an obstacle already placed. Throws EnvironmentError("workspace
/// saturated") when the count cannot fit, or after 10,000 x count draws.
std::vector<Point2> random_arrangement(
    const ArrangementSpec& spec,
    const Workspace& ws,
    std::span<const Point2> keepout,
    double clearance);

/// Row-major near-square lattice spanning the workspace minus the margin.
std::vector<Point2> periodic_arrangement(const ArrangementSpec& spec, const Workspace& ws);

/// Dispatches on spec.kind; `none` yields no obstacles. Lattice cells within
/// `clearance` of a keepout point are left empty.
std::vector<Point2> make_arrangement(
    const ArrangementSpec& spec,
    const Workspace& ws,
    std::span<const Point2> keepout,
    double clearance);

} // namespace ampath
