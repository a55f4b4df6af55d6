#include <ampath/environment.hpp>
#include <ampath/random.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ampath {

bool Workspace::contains(Point2 p) const
{
  return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
}

void Workspace::validate() const
{
  if (!std::isfinite(min_x) || !std::isfinite(min_y) || !std::isfinite(max_x) || !std::isfinite(max_y))
    throw EnvironmentError("workspace bounds must be finite");
  if (!(max_x > min_x) || !(max_y > min_y))
    throw EnvironmentError("workspace requires max > min on both axes");
}

//==============================================================================
Environment::Environment(Workspace workspace, std::vector<Point2> obstacles, double clearance)
  : workspace_(workspace), obstacles_(std::move(obstacles)), clearance_(clearance)
{
  workspace_.validate();
  if (!(clearance_ > 0.0) || !std::isfinite(clearance_))
    throw EnvironmentError("clearance must be positive");
  for (const Point2& o : obstacles_)
  {
    if (!workspace_.contains(o))
      throw EnvironmentError("obstacle outside workspace");
  }

  cell_ = clearance_;
  cols_ = static_cast<std::size_t>(std::floor(workspace_.width() / cell_)) + 1;
  rows_ = static_cast<std::size_t>(std::floor(workspace_.height() / cell_)) + 1;

  // Counting sort of obstacle indices into cells.
  std::vector<std::size_t> cell_of(obstacles_.size());
  cell_start_.assign(cols_ * rows_ + 1, 0);
  for (std::size_t i = 0; i < obstacles_.size(); ++i)
  {
    const auto cx = std::min(cols_ - 1, static_cast<std::size_t>((obstacles_[i].x - workspace_.min_x) / cell_));
    const auto cy = std::min(rows_ - 1, static_cast<std::size_t>((obstacles_[i].y - workspace_.min_y) / cell_));
    cell_of[i] = cy * cols_ + cx;
    ++cell_start_[cell_of[i] + 1];
  }
  for (std::size_t c = 1; c < cell_start_.size(); ++c)
    cell_start_[c] += cell_start_[c - 1];
  cell_items_.resize(obstacles_.size());
  std::vector<std::uint32_t> fill(cell_start_.begin(), cell_start_.end() - 1);
  for (std::size_t i = 0; i < obstacles_.size(); ++i)
    cell_items_[fill[cell_of[i]]++] = static_cast<std::uint32_t>(i);
}

bool Environment::is_free(Point2 p) const
{
  if (!workspace_.contains(p))
    return false;

  const double c2 = clearance_ * clearance_;
  const auto cx = static_cast<long>((p.x - workspace_.min_x) / cell_);
  const auto cy = static_cast<long>((p.y - workspace_.min_y) / cell_);
  for (long y = std::max(0L, cy - 1); y <= std::min<long>(static_cast<long>(rows_) - 1, cy + 1); ++y)
  {
    for (long x = std::max(0L, cx - 1); x <= std::min<long>(static_cast<long>(cols_) - 1, cx + 1); ++x)
    {
      const std::size_t cell = static_cast<std::size_t>(y) * cols_ + static_cast<std::size_t>(x);
      for (std::uint32_t k = cell_start_[cell]; k < cell_start_[cell + 1]; ++k)
      {
        if (squared_distance(p, obstacles_[cell_items_[k]]) <= c2)
          return false;
      }
    }
  }
  return true;
}

bool is_free(Point2 p, const Environment& env)
{
  return env.is_free(p);
}

bool segment_free(const Segment& s, const Environment& env, double resolution)
{
  const std::size_t k = densify_steps(s, resolution);
  if (k == 0)
    return env.is_free(s.a);

  // Same samples as densify(), without the allocation.
  const Point2 d = s.b - s.a;
  for (std::size_t j = 0; j < k; ++j)
  {
    if (!env.is_free(s.a + d * (static_cast<double>(j) / static_cast<double>(k))))
      return false;
  }
  return env.is_free(s.b);
}

//==============================================================================
std::string_view to_string(ArrangementKind kind)
{
  switch (kind)
  {
    case ArrangementKind::none: return "none";
    case ArrangementKind::random: return "random";
    case ArrangementKind::periodic: return "periodic";
  }
  return "unknown";
}

std::optional<ArrangementKind> parse_arrangement_kind(std::string_view text)
{
  if (text == "none")
    return ArrangementKind::none;
  if (text == "random")
    return ArrangementKind::random;
  if (text == "periodic")
    return ArrangementKind::periodic;
  return std::nullopt;
}

namespace {

Workspace shrink(const Workspace& ws, double margin)
{
  Workspace inner{ws.min_x + margin, ws.min_y + margin, ws.max_x - margin, ws.max_y - margin};
  if (inner.max_x < inner.min_x || inner.max_y < inner.min_y)
    throw EnvironmentError("arrangement margin exceeds workspace");
  return inner;
}

// Upper bound on points with pairwise separation > d inside a w x h box:
// disjoint discs of radius d/2 in the box grown by d/2, at the hexagonal
// packing density.
double packing_bound(double w, double h, double d)
{
  const double area = (w + d) * (h + d);
  const double disc = std::numbers::pi * 0.25 * d * d;
  return area * (std::numbers::pi / (2.0 * std::sqrt(3.0))) / disc;
}

} // namespace

std::vector<Point2> random_arrangement(
    const ArrangementSpec& spec,
    const Workspace& ws,
    std::span<const Point2> keepout,
    double clearance)
{
  if (spec.kind != ArrangementKind::random)
    throw EnvironmentError("random_arrangement requires kind = random");
  if (spec.count == 0)
    throw EnvironmentError("arrangement count must be at least 1");
  if (!(clearance > 0.0))
    throw EnvironmentError("clearance must be positive");
  ws.validate();
  const Workspace inner = shrink(ws, spec.margin);

  if (static_cast<double>(spec.count) > packing_bound(inner.width(), inner.height(), clearance))
    throw EnvironmentError("workspace saturated");

  // Hash grid over placed obstacles, cell edge = clearance.
  const double cell = clearance;
  const auto cols = static_cast<std::size_t>(std::floor(inner.width() / cell)) + 1;
  const auto rows = static_cast<std::size_t>(std::floor(inner.height() / cell)) + 1;
  std::vector<std::vector<std::uint32_t>> buckets(cols * rows);
  const double c2 = clearance * clearance;

  std::vector<Point2> out;
  out.reserve(spec.count);
  Rng rng(spec.seed);
  const std::uint64_t max_draws = 10'000ULL * spec.count;

  for (std::uint64_t draw = 0; out.size() < spec.count; ++draw)
  {
    if (draw >= max_draws)
      throw EnvironmentError("workspace saturated");

    const Point2 p{rng.uniform(inner.min_x, inner.max_x), rng.uniform(inner.min_y, inner.max_y)};

    const bool near_keepout = std::any_of(keepout.begin(), keepout.end(),
        [&](Point2 k) { return squared_distance(p, k) <= c2; });
    if (near_keepout)
      continue;

    const auto cx = std::min(cols - 1, static_cast<std::size_t>((p.x - inner.min_x) / cell));
    const auto cy = std::min(rows - 1, static_cast<std::size_t>((p.y - inner.min_y) / cell));
    bool crowded = false;
    for (std::size_t y = cy > 0 ? cy - 1 : 0; y <= std::min(rows - 1, cy + 1) && !crowded; ++y)
    {
      for (std::size_t x = cx > 0 ? cx - 1 : 0; x <= std::min(cols - 1, cx + 1) && !crowded; ++x)
      {
        for (std::uint32_t idx : buckets[y * cols + x])
        {
          if (squared_distance(p, out[idx]) <= c2)
          {
            crowded = true;
            break;
          }
        }
      }
    }
    if (crowded)
      continue;

    buckets[cy * cols + cx].push_back(static_cast<std::uint32_t>(out.size()));
    out.push_back(p);
  }
  return out;
}

std::vector<Point2> periodic_arrangement(const ArrangementSpec& spec, const Workspace& ws)
{
  if (spec.kind != ArrangementKind::periodic)
    throw EnvironmentError("periodic_arrangement requires kind = periodic");
  if (spec.count == 0)
    throw EnvironmentError("arrangement count must be at least 1");
  ws.validate();
  const Workspace inner = shrink(ws, spec.margin);

  const auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(spec.count))));
  const std::size_t rows = (spec.count + cols - 1) / cols;

  auto axis = [](double lo, double hi, std::size_t n, std::size_t i) {
    if (n == 1)
      return 0.5 * (lo + hi);
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  };

  std::vector<Point2> out;
  out.reserve(spec.count);
  for (std::size_t r = 0; r < rows && out.size() < spec.count; ++r)
  {
    for (std::size_t c = 0; c < cols && out.size() < spec.count; ++c)
      out.push_back({axis(inner.min_x, inner.max_x, cols, c), axis(inner.min_y, inner.max_y, rows, r)});
  }
  return out;
}

std::vector<Point2> make_arrangement(
    const ArrangementSpec& spec,
    const Workspace& ws,
    std::span<const Point2> keepout,
    double clearance)
{
  switch (spec.kind)
  {
    case ArrangementKind::none: return {};
    case ArrangementKind::random: return random_arrangement(spec, ws, keepout, clearance);
    case ArrangementKind::periodic:
    {
      auto lattice = periodic_arrangement(spec, ws);
      const double c2 = clearance * clearance;
      std::erase_if(lattice, [&](Point2 p) {
        return std::any_of(keepout.begin(), keepout.end(), [&](Point2 k) { return squared_distance(p, k) <= c2; });
      });
      return lattice;
    }
  }
  return {};
}

} // namespace ampath
