#include <ampath/parallel.hpp>
#include <ampath/pgf.hpp>
#include <ampath/random.hpp>

#include <stdexcept>

namespace ampath {

std::size_t StructureSpec::leg_count() const
{
  if (vertices.size() < 2)
    return 0;
  return closed ? vertices.size() : vertices.size() - 1;
}

std::pair<Point2, Point2> StructureSpec::leg(std::size_t k) const
{
  if (k >= leg_count())
    throw std::out_of_range("leg index out of range");
  return {vertices[k], vertices[(k + 1) % vertices.size()]};
}

void StructureSpec::validate(const Workspace& ws) const
{
  if (vertices.size() < 2)
    throw std::invalid_argument("structure needs at least two vertices");
  for (std::size_t i = 0; i < vertices.size(); ++i)
  {
    if (!ws.contains(vertices[i]))
      throw std::invalid_argument("structure vertex " + std::to_string(i) + " lies outside the workspace");
    for (std::size_t j = 0; j < i; ++j)
    {
      if (distance(vertices[i], vertices[j]) < kLengthTolerance)
        throw std::invalid_argument("structure vertices " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
    }
  }
}

StructureSpec StructureSpec::open_default()
{
  return {{{100.0, 100.0}, {700.0, 700.0}}, false};
}

StructureSpec StructureSpec::hexagon_default()
{
  return {{{700.0, 480.0}, {480.0, 700.0}, {180.0, 619.0}, {100.0, 319.0}, {319.0, 100.0}, {619.0, 180.0}}, true};
}

std::optional<StructureSpec> StructureSpec::preset(std::string_view name)
{
  if (name == "open-default")
    return open_default();
  if (name == "hexagon-default")
    return hexagon_default();
  return std::nullopt;
}

std::size_t Toolpath::waypoint_count() const
{
  std::size_t n = 0;
  for (const Leg& leg : legs)
    n += leg.path.waypoints.size();
  return n;
}

//==============================================================================
std::uint64_t leg_seed(std::uint64_t planner_seed, std::size_t leg)
{
  return derive_seed(planner_seed, leg);
}

PgfOutcome generate_toolpath(
    const StructureSpec& structure,
    const Environment& env,
    const PlannerConfig& cfg,
    unsigned workers)
{
  structure.validate(env.workspace());
  cfg.validate();

  const std::size_t legs = structure.leg_count();
  std::vector<PlanOutcome> outcomes(legs, Failure{});

  auto plan_leg = [&](std::size_t k) {
    PlannerConfig leg_cfg = cfg;
    leg_cfg.seed = leg_seed(cfg.seed, k);
    const auto [from, to] = structure.leg(k);
    outcomes[k] = plan(from, to, env, leg_cfg);
  };

  if (workers <= 1)
  {
    for (std::size_t k = 0; k < legs; ++k)
    {
      plan_leg(k);
      if (!succeeded(outcomes[k]))
        break;
    }
  }
  else
  {
    parallel_for(legs, workers, plan_leg);
  }

  std::vector<Leg> done;
  for (std::size_t k = 0; k < legs; ++k)
  {
    if (const auto* failure = std::get_if<Failure>(&outcomes[k]))
      return PartialFailure{std::move(done), k, failure->reason};
    done.push_back({k, normalize(std::get<Path>(std::move(outcomes[k])))});
  }
  return Toolpath{structure, std::move(done)};
}

Path normalize(Path path)
{
  auto& pts = path.waypoints;
  if (pts.size() < 2)
    return path;

  const Point2 last = pts.back();
  std::vector<Point2> out;
  out.reserve(pts.size());
  out.push_back(pts.front());
  for (std::size_t i = 1; i + 1 < pts.size(); ++i)
  {
    if (distance(out.back(), pts[i]) >= kLengthTolerance)
      out.push_back(pts[i]);
  }
  if (out.size() > 1 && distance(out.back(), last) < kLengthTolerance)
    out.back() = last;
  else
    out.push_back(last);
  pts = std::move(out);
  return path;
}

} // namespace ampath
