#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace ampath {

/// Absolute tolerance for coordinate comparisons (mm).
inline constexpr double kLengthTolerance = 1e-9;

class GeometryError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

//==============================================================================
struct Point2
{
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(Point2 a, double s) { return {a.x * s, a.y * s}; }

double distance(Point2 a, Point2 b);
double squared_distance(Point2 a, Point2 b);

//==============================================================================
struct Segment
{
  Point2 a;
  Point2 b;

  double length() const;
  Point2 midpoint() const;
  Segment reversed() const { return {b, a}; }
};

//==============================================================================
/// Planar direction in degrees, always held in (-180, 180].
class Angle
{
public:
  constexpr Angle() = default;

  static Angle degrees(double value);
  static Angle radians(double value);

  double deg() const { return value_; }
  double rad() const;

private:
  explicit Angle(double normalized) : value_(normalized) {}

  double value_ = 0.0;
};

/// Wraps an angle in degrees into (-180, 180].
double wrap_degrees(double value);

/// Direction of s.b - s.a, counterclockwise from +x. Throws GeometryError on
/// a zero-length segment.
Angle heading(const Segment& s);

/// Signed change of direction from prev to next, wrapped into (-180, 180].
Angle turn_angle(Angle prev, Angle next);

/// Distance from p to the closest point of the closed segment s.
double point_segment_distance(Point2 p, const Segment& s);

/// Number of equal sub-steps used by densify: ceil(length / resolution).
std::size_t densify_steps(const Segment& s, double resolution);

/// Points a = p_0 .. p_k = b with equal spacing no larger than resolution.
/// A zero-length segment yields the single point a.
std::vector<Point2> densify(const Segment& s, double resolution);

double polyline_length(std::span<const Point2> points);

} // namespace ampath
