#include <ampath/geometry.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ampath {

double distance(Point2 a, Point2 b)
{
  return std::hypot(b.x - a.x, b.y - a.y);
}

double squared_distance(Point2 a, Point2 b)
{
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  return dx * dx + dy * dy;
}

double Segment::length() const
{
  return distance(a, b);
}

Point2 Segment::midpoint() const
{
  return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
}

//==============================================================================
double wrap_degrees(double value)
{
  double r = std::fmod(value, 360.0);
  if (r <= -180.0)
    r += 360.0;
  else if (r > 180.0)
    r -= 360.0;
  return r;
}

Angle Angle::degrees(double value)
{
  return Angle(wrap_degrees(value));
}

Angle Angle::radians(double value)
{
  return degrees(value * 180.0 / std::numbers::pi);
}

double Angle::rad() const
{
  return value_ * std::numbers::pi / 180.0;
}

Angle heading(const Segment& s)
{
  const double dx = s.b.x - s.a.x;
  const double dy = s.b.y - s.a.y;
  if (std::hypot(dx, dy) < kLengthTolerance)
    throw GeometryError("degenerate segment");
  return Angle::radians(std::atan2(dy, dx));
}

Angle turn_angle(Angle prev, Angle next)
{
  return Angle::degrees(next.deg() - prev.deg());
}

//==============================================================================
double point_segment_distance(Point2 p, const Segment& s)
{
  const double dx = s.b.x - s.a.x;
  const double dy = s.b.y - s.a.y;
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0)
    return distance(p, s.a);

  double t = ((p.x - s.a.x) * dx + (p.y - s.a.y) * dy) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, Point2{s.a.x + t * dx, s.a.y + t * dy});
}

std::size_t densify_steps(const Segment& s, double resolution)
{
  if (!(resolution > 0.0))
    throw GeometryError("densify resolution must be positive");
  const double len = s.length();
  if (len < kLengthTolerance)
    return 0;
  return static_cast<std::size_t>(std::ceil(len / resolution));
}

std::vector<Point2> densify(const Segment& s, double resolution)
{
  const std::size_t k = densify_steps(s, resolution);
  if (k == 0)
    return {s.a};

  std::vector<Point2> out;
  out.reserve(k + 1);
  const Point2 d = s.b - s.a;
  for (std::size_t j = 0; j < k; ++j)
  {
    const double t = static_cast<double>(j) / static_cast<double>(k);
    out.push_back(s.a + d * t);
  }
  out.push_back(s.b);
  return out;
}

double polyline_length(std::span<const Point2> points)
{
  double total = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i)
    total += distance(points[i - 1], points[i]);
  return total;
}

} // namespace ampath
