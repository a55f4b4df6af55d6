#include <ampath/metrics.hpp>

#include <algorithm>
#include <cmath>

namespace ampath {

std::string_view to_string(DeviationSample s)
{
  return s == DeviationSample::midpoint ? "midpoint" : "endpoint";
}

std::optional<DeviationSample> parse_deviation_sample(std::string_view text)
{
  if (text == "midpoint")
    return DeviationSample::midpoint;
  if (text == "endpoint")
    return DeviationSample::endpoint;
  return std::nullopt;
}

namespace {

void require_segments(std::span<const Point2> leg)
{
  if (leg.size() < 2)
    throw MetricsError("leg needs at least one segment");
}

Segment chord(std::span<const Point2> leg)
{
  return {leg.front(), leg.back()};
}

template <typename Fn>
void for_each_turn(std::span<const Point2> leg, Fn&& fn)
{
  Angle prev = heading({leg[0], leg[1]});
  for (std::size_t i = 2; i < leg.size(); ++i)
  {
    const Angle next = heading({leg[i - 1], leg[i]});
    fn(std::abs(turn_angle(prev, next).deg()));
    prev = next;
  }
}

} // namespace

double roughness(std::span<const Point2> leg)
{
  require_segments(leg);
  if (leg.size() == 2)
    return 0.0;
  double sum = 0.0;
  for_each_turn(leg, [&](double turn) { sum += turn; });
  return sum / static_cast<double>(leg.size() - 2);
}

std::size_t num_turns(std::span<const Point2> leg, double tol_deg)
{
  require_segments(leg);
  std::size_t turns = 0;
  if (leg.size() > 2)
    for_each_turn(leg, [&](double turn) { turns += turn > tol_deg ? 1 : 0; });
  return turns;
}

double offset(std::span<const Point2> leg)
{
  require_segments(leg);
  const Segment c = chord(leg);
  double worst = 0.0;
  for (Point2 p : leg)
    worst = std::max(worst, point_segment_distance(p, c));
  return worst;
}

double rmse(std::span<const Point2> leg, DeviationSample sample)
{
  require_segments(leg);
  const Segment c = chord(leg);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < leg.size(); ++i)
  {
    const Point2 at = sample == DeviationSample::midpoint ? Segment{leg[i], leg[i + 1]}.midpoint() : leg[i + 1];
    const double y = point_segment_distance(at, c);
    sum += y * y;
  }
  return std::sqrt(sum / static_cast<double>(leg.size() - 1));
}

double path_deviation(std::span<const Point2> leg)
{
  require_segments(leg);
  const double straight = chord(leg).length();
  if (straight < kLengthTolerance)
    throw MetricsError("zero-length chord");
  return polyline_length(leg) / straight;
}

LegMetrics leg_metrics(const Path& path, const MetricOptions& options)
{
  const std::span<const Point2> leg = path.waypoints;
  LegMetrics m;
  m.roughness_deg = roughness(leg);
  m.num_turns = static_cast<double>(num_turns(leg, options.turn_tolerance_deg));
  m.offset_mm = offset(leg);
  m.rmse_mm = rmse(leg, options.deviation_sample);
  m.path_deviation = path_deviation(leg);
  m.run_time_s = path.elapsed_s;
  return m;
}

LegMetrics mean_of(std::span<const LegMetrics> legs)
{
  LegMetrics sum{0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  if (legs.empty())
    return sum;
  for (const LegMetrics& m : legs)
  {
    sum.roughness_deg += m.roughness_deg;
    sum.num_turns += m.num_turns;
    sum.offset_mm += m.offset_mm;
    sum.rmse_mm += m.rmse_mm;
    sum.path_deviation += m.path_deviation;
    sum.run_time_s += m.run_time_s;
  }
  const auto n = static_cast<double>(legs.size());
  return {sum.roughness_deg / n, sum.num_turns / n, sum.offset_mm / n,
          sum.rmse_mm / n, sum.path_deviation / n, sum.run_time_s / n};
}

MetricsReport assess(const Toolpath& toolpath, const MetricOptions& options)
{
  MetricsReport report;
  report.per_leg.reserve(toolpath.legs.size());
  for (const Leg& leg : toolpath.legs)
  {
    report.per_leg.push_back(leg_metrics(leg.path, options));
    report.aggregate_total_run_time_s += leg.path.elapsed_s;
  }
  report.aggregate_mean = mean_of(report.per_leg);
  return report;
}

} // namespace ampath
