#include <ampath/planners.hpp>
#include <ampath/random.hpp>

#include <doctest.h>
#include <oracles.hpp>

#include <cmath>
#include <numbers>

using namespace ampath;

namespace {

const Workspace kWs{};

PlannerConfig config(PlannerKind kind, std::uint64_t seed = 1)
{
  PlannerConfig c;
  c.kind = kind;
  c.seed = seed;
  return c;
}

Path path_of(const PlanOutcome& o)
{
  REQUIRE(succeeded(o));
  return std::get<Path>(o);
}

FailureReason reason_of(const PlanOutcome& o)
{
  REQUIRE_FALSE(succeeded(o));
  return std::get<Failure>(o).reason;
}

void check_sound(const Path& p, Point2 start, Point2 goal, const Environment& env, double res)
{
  REQUIRE(p.waypoints.size() >= 2);
  CHECK(p.waypoints.front() == start);
  CHECK(p.waypoints.back() == goal);
  for (std::size_t i = 1; i < p.waypoints.size(); ++i)
  {
    CHECK(oracle::segment_clear(p.waypoints[i - 1], p.waypoints[i], env.workspace(), env.obstacles(),
        env.clearance(), res));
  }
}

std::vector<Point2> random_points(Rng& rng, std::size_t n, const Workspace& ws)
{
  std::vector<Point2> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back({rng.uniform(ws.min_x, ws.max_x), rng.uniform(ws.min_y, ws.max_y)});
  return out;
}

} // namespace

TEST_CASE("planner kind names")
{
  for (PlannerKind k : kAllPlanners)
    CHECK(parse_planner_kind(to_string(k)) == k);
  CHECK(parse_planner_kind("a*") == PlannerKind::astar);
  CHECK_FALSE(parse_planner_kind("rrt*").has_value());
}

TEST_CASE("config validation")
{
  PlannerConfig c;
  CHECK_NOTHROW(c.validate());
  c.grid_size = 0;
  CHECK_THROWS_AS(c.validate(), PlannerError);
  c = {};
  c.goal_sample_rate = 1.5;
  CHECK_THROWS_AS(c.validate(), PlannerError);
  c = {};
  c.path_resolution = -1;
  CHECK_THROWS_AS(c.validate(), PlannerError);
  c = {};
  c.max_iterations = 0;
  CHECK_THROWS_AS(c.validate(), PlannerError);
  c = {};
  c.num_neighbors = 0;
  CHECK_THROWS_AS(c.validate(), PlannerError);
}

//==============================================================================
TEST_CASE("dijkstra in free space runs the diagonal plus snap stubs")
{
  const Environment env(kWs, {}, 20);
  const Point2 s{100, 100};
  const Point2 g{700, 700};
  const Path p = path_of(plan_dijkstra(s, g, env, config(PlannerKind::dijkstra)));
  // Nearest nodes are (96, 96) and (696, 696): 50 diagonal moves between them.
  const double stub = std::sqrt(32.0);
  CHECK(p.length() == doctest::Approx(600 * std::numbers::sqrt2 + 2 * stub).epsilon(1e-12));
  CHECK(p.waypoints[1] == Point2{96, 96});
  CHECK(p.waypoints[p.waypoints.size() - 2] == Point2{696, 696});
  CHECK(p.planner == PlannerKind::dijkstra);
}

TEST_CASE("grid planners in a sealed instance report no route")
{
  const auto rings = oracle::sealing_rings({400, 400}, 80, 140, 10);
  const Environment env(kWs, rings, 20);
  for (PlannerKind k : {PlannerKind::dijkstra, PlannerKind::astar, PlannerKind::prm})
    CHECK(reason_of(plan({100, 100}, {400, 400}, env, config(k))) == FailureReason::no_route);
  CHECK(reason_of(plan({100, 100}, {400, 400}, env, config(PlannerKind::rrt))) == FailureReason::iteration_cap);
}

TEST_CASE("occupied endpoints are invalid queries")
{
  const Environment env(kWs, {{100, 100}}, 20);
  for (PlannerKind k : kAllPlanners)
  {
    CHECK(reason_of(plan({105, 100}, {700, 700}, env, config(k))) == FailureReason::invalid_query);
    CHECK(reason_of(plan({700, 700}, {900, 700}, env, config(k))) == FailureReason::invalid_query);
  }
}

TEST_CASE("adjacent grid nodes give a single step")
{
  const Environment env(kWs, {}, 20);
  for (PlannerKind k : {PlannerKind::dijkstra, PlannerKind::astar})
  {
    const Path p = path_of(plan({120, 120}, {132, 120}, env, config(k)));
    REQUIRE(p.waypoints.size() == 2);
    CHECK(p.length() == 12.0);
  }
}

TEST_CASE("no corner cutting past a blocked axis neighbour")
{
  // Node (1, 0) is blocked; (0, 0) to (1, 1) must detour.
  const Workspace ws{0, 0, 48, 48};
  const Environment env(ws, {{14, -0.0}}, 5);
  PlannerConfig c = config(PlannerKind::dijkstra);
  const Path p = path_of(plan_dijkstra({0, 0}, {12, 12}, env, c));
  CHECK(p.length() == doctest::Approx(24.0));
}

TEST_CASE("grid moves longer than the resolution are collision checked")
{
  // Pitch 40 > resolution 20: the move (0,0)-(40,0) has a midpoint sample at
  // (20, 0) which the obstacle blocks although both nodes are free.
  const Workspace ws{0, 0, 80, 80};
  const Environment env(ws, {{20, 0}}, 10);
  PlannerConfig c = config(PlannerKind::dijkstra);
  c.grid_size = 40;
  const Path p = path_of(plan_dijkstra({0, 0}, {40, 0}, env, c));
  check_sound(p, {0, 0}, {40, 0}, env, c.path_resolution);
  CHECK(p.length() > 40.0);
}

TEST_CASE("property: grid planners match the Bellman-Ford oracle")
{
  Rng rng(31);
  const Workspace ws{0, 0, 180, 180};
  for (int inst = 0; inst < 60; ++inst)
  {
    const auto obstacles = random_points(rng, 1 + rng.next() % 25, ws);
    const double clearance = rng.uniform(5, 20);
    const Environment env(ws, obstacles, clearance);
    PlannerConfig cfg = config(PlannerKind::dijkstra);
    cfg.grid_size = inst % 3 == 0 ? 20.0 : 12.0;
    const auto lattice = oracle::build_lattice(ws, obstacles, clearance, cfg.grid_size, cfg.path_resolution);

    std::vector<std::size_t> free_nodes;
    for (std::size_t n = 0; n < lattice.free.size(); ++n)
      if (lattice.free[n])
        free_nodes.push_back(n);
    if (free_nodes.size() < 2)
      continue;
    const std::size_t a = free_nodes[rng.next() % free_nodes.size()];
    const std::size_t b = free_nodes[rng.next() % free_nodes.size()];
    const Point2 pa = lattice.at(a % lattice.cols, a / lattice.cols);
    const Point2 pb = lattice.at(b % lattice.cols, b / lattice.cols);

    const auto expected = oracle::shortest_cost(lattice, a, b);
    const auto dj = plan_dijkstra(pa, pb, env, cfg);
    cfg.kind = PlannerKind::astar;
    const auto as = plan_astar(pa, pb, env, cfg);
    CHECK(succeeded(dj) == expected.has_value());
    CHECK(succeeded(as) == expected.has_value());
    if (!expected)
      continue;
    const auto& pd = std::get<Path>(dj);
    const auto& pa_path = std::get<Path>(as);
    CHECK(std::abs(oracle::lattice_cost(pd.waypoints, cfg.grid_size) - *expected) < 1e-9);
    CHECK(std::abs(oracle::lattice_cost(pa_path.waypoints, cfg.grid_size) - *expected) < 1e-9);
    CHECK(std::abs(pd.length() - *expected) < 1e-9);
  }
}

//==============================================================================
TEST_CASE("rrt in free space respects the step length")
{
  const Environment env(kWs, {}, 20);
  for (std::uint64_t seed = 0; seed < 10; ++seed)
  {
    const PlannerConfig c = config(PlannerKind::rrt, seed);
    const Path p = path_of(plan_rrt({100, 100}, {700, 700}, env, c));
    check_sound(p, {100, 100}, {700, 700}, env, c.path_resolution);
    for (std::size_t i = 1; i < p.waypoints.size(); ++i)
      CHECK(distance(p.waypoints[i - 1], p.waypoints[i]) <= c.expansion_length + 1e-6);
  }
}

TEST_CASE("prm in free space succeeds with defaults")
{
  const Environment env(kWs, {}, 20);
  const PlannerConfig c = config(PlannerKind::prm, 3);
  const Path p = path_of(plan_prm({100, 100}, {700, 700}, env, c));
  check_sound(p, {100, 100}, {700, 700}, env, c.path_resolution);
}

TEST_CASE("prm with an empty roadmap cannot bridge a long gap")
{
  const Environment env(kWs, {}, 20);
  PlannerConfig c = config(PlannerKind::prm);
  c.num_samples = 0;
  CHECK(reason_of(plan_prm({100, 100}, {700, 700}, env, c)) == FailureReason::no_route);
  // A short gap is one direct edge.
  const Path p = path_of(plan_prm({100, 100}, {300, 100}, env, c));
  CHECK(p.waypoints.size() == 2);
}

TEST_CASE("property: prm roadmap structure")
{
  Rng rng(41);
  const auto obstacles = random_points(rng, 60, {50, 50, 750, 750});
  const Environment env(kWs, obstacles, 20);
  PlannerConfig c = config(PlannerKind::prm, 9);
  c.num_samples = 200;
  const Point2 s{10, 10};
  const Point2 g{790, 790};
  const Roadmap map = build_roadmap(s, g, env, c);
  REQUIRE(map.nodes.size() == 202);
  CHECK(map.nodes[200] == s);
  CHECK(map.nodes[201] == g);
  for (std::size_t u = 0; u < map.nodes.size(); ++u)
  {
    CHECK(env.is_free(map.nodes[u]));
    CHECK(map.candidates[u].size() <= c.num_neighbors);
    for (std::size_t v : map.edges[u])
    {
      CHECK(v != u);
      CHECK(distance(map.nodes[u], map.nodes[v]) <= c.max_edge_length);
      CHECK(segment_free({map.nodes[u], map.nodes[v]}, env, c.path_resolution));
      const auto& back = map.edges[v];
      CHECK(std::find(back.begin(), back.end(), u) != back.end());
    }
    // Candidates are the true k nearest by brute force.
    std::vector<std::pair<double, std::size_t>> all;
    for (std::size_t v = 0; v < map.nodes.size(); ++v)
      if (v != u)
        all.emplace_back(squared_distance(map.nodes[u], map.nodes[v]), v);
    std::sort(all.begin(), all.end());
    for (std::size_t k = 0; k < map.candidates[u].size(); ++k)
      CHECK(map.candidates[u][k] == all[k].second);
  }
}

//==============================================================================
TEST_CASE("property: every planner is sound and deterministic on random instances")
{
  Rng rng(51);
  for (int inst = 0; inst < 40; ++inst)
  {
    const auto obstacles = random_points(rng, rng.next() % 120, {50, 50, 750, 750});
    const Environment env(kWs, obstacles, 20);
    Point2 s;
    Point2 g;
    do
      s = {rng.uniform(0, 800), rng.uniform(0, 800)};
    while (!env.is_free(s));
    do
      g = {rng.uniform(0, 800), rng.uniform(0, 800)};
    while (!env.is_free(g) || g == s);

    for (PlannerKind k : kAllPlanners)
    {
      PlannerConfig c = config(k, rng.next());
      if (k == PlannerKind::prm)
        c.num_samples = 200;
      const auto first = plan(s, g, env, c);
      const auto second = plan(s, g, env, c);
      REQUIRE(succeeded(first) == succeeded(second));
      if (!succeeded(first))
        continue;
      const Path& p = std::get<Path>(first);
      CHECK(p.waypoints == std::get<Path>(second).waypoints);
      CHECK(p.planner == k);
      check_sound(p, s, g, env, c.path_resolution);
    }
  }
}
