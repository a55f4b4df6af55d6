#pragma once

#include <ampath/geometry.hpp>
#include <ampath/pgf.hpp>

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace ampath {

class MetricsError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

/// Where RMSE deviation samples are taken: one per segment, at its midpoint
/// or at its end waypoint.
enum class DeviationSample
{
  midpoint,
  endpoint
};

std::string_view to_string(DeviationSample s);
std::optional<DeviationSample> parse_deviation_sample(std::string_view text);

struct MetricOptions
{
  double turn_tolerance_deg = 1e-6;
  DeviationSample deviation_sample = DeviationSample::midpoint;
};

//==============================================================================
struct LegMetrics
{
  double roughness_deg = 0.0;
  double num_turns = 0.0; // a count per leg; fractional once averaged
  double offset_mm = 0.0;
  double rmse_mm = 0.0;
  double path_deviation = 1.0;
  double run_time_s = 0.0;

  friend bool operator==(const LegMetrics&, const LegMetrics&) = default;
};

struct MetricsReport
{
  std::vector<LegMetrics> per_leg;
  LegMetrics aggregate_mean;
  double aggregate_total_run_time_s = 0.0;
};

// All metrics take a normalized leg: waypoints p_0..p_m with no zero-length
// segments. The chord is the straight segment p_0 -> p_m.

/// Mean absolute turn angle between consecutive segments, in degrees.
double roughness(std::span<const Point2> leg);

/// Number of consecutive segment pairs whose |turn| exceeds tol_deg.
std::size_t num_turns(std::span<const Point2> leg, double tol_deg = 1e-6);

/// Largest waypoint distance to the chord.
double offset(std::span<const Point2> leg);

/// Root mean square of per-segment distances to the chord.
double rmse(std::span<const Point2> leg, DeviationSample sample = DeviationSample::midpoint);

/// Polyline length over chord length. Throws on a zero-length chord.
double path_deviation(std::span<const Point2> leg);

LegMetrics leg_metrics(const Path& path, const MetricOptions& options = {});

/// Component-wise mean of the given legs.
LegMetrics mean_of(std::span<const LegMetrics> legs);

MetricsReport assess(const Toolpath& toolpath, const MetricOptions& options = {});

} // namespace ampath
