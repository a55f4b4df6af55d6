#include <ampath/pgf.hpp>
#include <ampath/random.hpp>

#include <doctest.h>
#include <oracles.hpp>

using namespace ampath;

namespace {

const Workspace kWs{};

PlannerConfig config(PlannerKind kind, std::uint64_t seed = 5)
{
  PlannerConfig c;
  c.kind = kind;
  c.seed = seed;
  return c;
}

} // namespace

TEST_CASE("structure presets")
{
  const auto open = StructureSpec::open_default();
  CHECK(open.vertices == std::vector<Point2>{{100, 100}, {700, 700}});
  CHECK(open.leg_count() == 1);

  const auto hex = StructureSpec::hexagon_default();
  REQUIRE(hex.vertices.size() == 6);
  CHECK(hex.closed);
  CHECK(hex.vertices[0] == Point2{700, 480});
  CHECK(hex.vertices[1] == Point2{480, 700});
  CHECK(hex.vertices[2] == Point2{180, 619});
  CHECK(hex.vertices[3] == Point2{100, 319});
  CHECK(hex.vertices[4] == Point2{319, 100});
  CHECK(hex.vertices[5] == Point2{619, 180});
  CHECK(hex.leg_count() == 6);
  CHECK(hex.leg(5).first == Point2{619, 180});
  CHECK(hex.leg(5).second == Point2{700, 480});

  CHECK(StructureSpec::preset("open-default") == open);
  CHECK(StructureSpec::preset("hexagon-default") == hex);
  CHECK_FALSE(StructureSpec::preset("triangle").has_value());
}

TEST_CASE("structure validation")
{
  CHECK_THROWS_AS((StructureSpec{{{1, 1}}, false}.validate(kWs)), std::invalid_argument);
  CHECK_THROWS_AS((StructureSpec{{{1, 1}, {1, 1}}, false}.validate(kWs)), std::invalid_argument);
  CHECK_THROWS_AS((StructureSpec{{{1, 1}, {900, 1}}, false}.validate(kWs)), std::invalid_argument);
  CHECK_NOTHROW((StructureSpec{{{1, 1}, {2, 1}, {3, 5}}, true}.validate(kWs)));
  CHECK(StructureSpec{{{1, 1}, {2, 1}, {3, 5}}, false}.leg_count() == 2);
}

TEST_CASE("normalize examples")
{
  Path p;
  p.waypoints = {{0, 0}, {0, 0}, {1, 0}};
  CHECK(normalize(p).waypoints == std::vector<Point2>{{0, 0}, {1, 0}});
  p.waypoints = {{0, 0}, {1e-12, 0}, {1, 0}};
  CHECK(normalize(p).waypoints == std::vector<Point2>{{0, 0}, {1, 0}});
  p.waypoints = {{0, 0}, {1, 0}, {1, 1}};
  CHECK(normalize(p).waypoints == p.waypoints);
  // A near-duplicate of the goal is replaced by the exact goal.
  p.waypoints = {{0, 0}, {1, 1 - 1e-12}, {1, 1}};
  CHECK(normalize(p).waypoints == std::vector<Point2>{{0, 0}, {1, 1}});
}

TEST_CASE("property: normalize is idempotent and keeps endpoints")
{
  Rng rng(61);
  for (int n = 0; n < 500; ++n)
  {
    Path p;
    Point2 cur{rng.uniform(0, 10), rng.uniform(0, 10)};
    for (int k = 0; k < 12; ++k)
    {
      p.waypoints.push_back(cur);
      if (rng.uniform01() < 0.5)
        cur = cur + Point2{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    }
    const Path once = normalize(p);
    CHECK(normalize(once).waypoints == once.waypoints);
    CHECK(once.waypoints.front() == p.waypoints.front());
    CHECK(once.waypoints.back() == p.waypoints.back());
    for (std::size_t i = 1; i < once.waypoints.size(); ++i)
      CHECK(distance(once.waypoints[i - 1], once.waypoints[i]) >= 1e-9);
  }
}

TEST_CASE("open structure in an empty environment")
{
  const Environment env(kWs, {}, 20);
  const auto out = generate_toolpath(StructureSpec::open_default(), env, config(PlannerKind::dijkstra));
  const auto& tp = std::get<Toolpath>(out);
  REQUIRE(tp.legs.size() == 1);
  CHECK(tp.legs[0].path.waypoints.front() == Point2{100, 100});
  CHECK(tp.legs[0].path.waypoints.back() == Point2{700, 700});
  CHECK(tp.waypoint_count() == tp.legs[0].path.waypoints.size());
}

TEST_CASE("hexagon in an empty environment has six continuous legs")
{
  const Environment env(kWs, {}, 20);
  for (PlannerKind k : kAllPlanners)
  {
    const auto out = generate_toolpath(StructureSpec::hexagon_default(), env, config(k));
    const auto& tp = std::get<Toolpath>(out);
    REQUIRE(tp.legs.size() == 6);
    CHECK(tp.legs[5].path.waypoints.back() == Point2{700, 480});
    for (std::size_t i = 0; i < 6; ++i)
    {
      CHECK(tp.legs[i].pair == i);
      CHECK(tp.legs[i].path.waypoints.back() == tp.legs[(i + 1) % 6].path.waypoints.front());
    }
  }
}

TEST_CASE("a sealed vertex stops the framework at its first pair")
{
  const auto rings = oracle::sealing_rings({480, 700}, 40, 70, 8);
  const Environment env(kWs, rings, 20);
  const auto out = generate_toolpath(StructureSpec::hexagon_default(), env, config(PlannerKind::dijkstra));
  const auto& partial = std::get<PartialFailure>(out);
  CHECK(partial.failing_pair == 0);
  CHECK(partial.completed.empty());
  CHECK(partial.reason == FailureReason::no_route);

  // Rotating the vertex list moves the failure to a later pair and keeps the
  // legs planned before it.
  StructureSpec rotated = StructureSpec::hexagon_default();
  std::rotate(rotated.vertices.begin(), rotated.vertices.begin() + 2, rotated.vertices.end());
  const auto later = std::get<PartialFailure>(generate_toolpath(rotated, env, config(PlannerKind::dijkstra)));
  CHECK(later.failing_pair == 4);
  CHECK(later.completed.size() == 4);
}

TEST_CASE("an occupied vertex is an invalid query")
{
  const Environment env(kWs, {{700, 700}}, 20);
  const auto out = generate_toolpath(StructureSpec::open_default(), env, config(PlannerKind::astar));
  CHECK(std::get<PartialFailure>(out).reason == FailureReason::invalid_query);
}

TEST_CASE("property: replay and concurrent legs match sequential planning")
{
  Rng rng(71);
  for (int inst = 0; inst < 6; ++inst)
  {
    std::vector<Point2> obstacles;
    const auto hex = StructureSpec::hexagon_default();
    while (obstacles.size() < 60)
    {
      const Point2 p{rng.uniform(50, 750), rng.uniform(50, 750)};
      bool near = false;
      for (Point2 v : hex.vertices)
        near = near || distance(p, v) <= 20;
      if (!near)
        obstacles.push_back(p);
    }
    const Environment env(kWs, obstacles, 20);
    for (PlannerKind k : kAllPlanners)
    {
      const PlannerConfig c = config(k, rng.next());
      const auto a = generate_toolpath(hex, env, c, 1);
      const auto b = generate_toolpath(hex, env, c, 1);
      const auto par = generate_toolpath(hex, env, c, 3);
      REQUIRE(a.index() == b.index());
      REQUIRE(a.index() == par.index());
      auto legs = [](const PgfOutcome& o) {
        const auto* tp = std::get_if<Toolpath>(&o);
        return tp ? tp->legs : std::get<PartialFailure>(o).completed;
      };
      const auto la = legs(a);
      const auto lb = legs(b);
      const auto lp = legs(par);
      REQUIRE(la.size() == lb.size());
      REQUIRE(la.size() == lp.size());
      for (std::size_t i = 0; i < la.size(); ++i)
      {
        CHECK(la[i].path.waypoints == lb[i].path.waypoints);
        CHECK(la[i].path.waypoints == lp[i].path.waypoints);
      }
      if (const auto* pa = std::get_if<PartialFailure>(&a))
      {
        CHECK(pa->failing_pair == std::get<PartialFailure>(par).failing_pair);
        CHECK(pa->reason == std::get<PartialFailure>(par).reason);
      }
    }
  }
}

TEST_CASE("leg seeds differ per leg")
{
  CHECK(leg_seed(9, 0) != leg_seed(9, 1));
  CHECK(leg_seed(9, 0) == leg_seed(9, 0));
}
