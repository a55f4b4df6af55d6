#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
  const fs::path dir = fs::temp_directory_path() / ("ampath_cli_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir.parent_path());
  return dir;
}

int run(const std::string& args)
{
  const char* cli = std::getenv("AMPATH_CLI");
  REQUIRE_MESSAGE(cli != nullptr, "AMPATH_CLI is not set");
  const std::string cmd = std::string(cli) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check_identical_dirs(const fs::path& a, const fs::path& b)
{
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(a))
  {
    ++files;
    const auto other = b / entry.path().filename();
    REQUIRE_MESSAGE(fs::exists(other), other.string());
    CHECK_MESSAGE(slurp(entry.path()) == slurp(other), entry.path().filename().string());
  }
  CHECK(files == static_cast<std::size_t>(std::distance(fs::directory_iterator(b), fs::directory_iterator())));
}

} // namespace

TEST_CASE("plan writes a bundle")
{
  const auto out = scratch("plan");
  CHECK(run("plan --preset open-default --planner dijkstra --obstacles random:256 --seed 1 -o " + out.string()) == 0);
  for (const char* name : {"toolpath.json", "metrics.csv", "toolpath.svg", "toolpath.moves", "manifest.json"})
    CHECK_MESSAGE(fs::exists(out / name), name);
  const auto j = nlohmann::json::parse(slurp(out / "toolpath.json"));
  CHECK(j.at("legs").size() == 1);
}

TEST_CASE("hexagon plan over a periodic field has six legs")
{
  const auto out = scratch("hex");
  CHECK(run("plan --preset hexagon-default --planner astar --obstacles periodic:128 -o " + out.string()) == 0);
  const auto j = nlohmann::json::parse(slurp(out / "toolpath.json"));
  CHECK(j.at("legs").size() == 6);
}

TEST_CASE("empty obstacle set gives a near-straight path")
{
  const auto out = scratch("empty");
  CHECK(run("plan --obstacles none --planner dijkstra -o " + out.string()) == 0);
  const std::string csv = slurp(out / "metrics.csv");
  const auto mean = csv.substr(csv.find("mean,"));
  std::vector<double> v;
  std::stringstream ss(mean.substr(5));
  for (std::string cell; std::getline(ss, cell, ',') && v.size() < 5;)
    v.push_back(std::stod(cell));
  REQUIRE(v.size() == 5);
  // Only the grid snap stubs (at most one pitch diagonal) leave the chord.
  CHECK(v[1] <= 2);
  CHECK(v[2] < 12 * std::sqrt(2.0));
  CHECK(v[3] < 12 * std::sqrt(2.0));
  CHECK(v[4] < 1.05);
}

TEST_CASE("planning failure exits 3 with partial outputs")
{
  const auto out = scratch("fail");
  CHECK(run("plan --planner rrt --max-iterations 1 -o " + out.string()) == 3);
  CHECK(fs::exists(out / "partial_toolpath.json"));
  CHECK(fs::exists(out / "manifest.json"));
}

TEST_CASE("config errors exit 2")
{
  const auto out = scratch("bad");
  CHECK(run("plan --planner warp -o " + out.string()) == 2);
  CHECK(run("plan --obstacles random:abc -o " + out.string()) == 2);
  CHECK(run("plan --grid-size -1 -o " + out.string()) == 2);
  CHECK(run("plan --no-such-flag") == 2);
  CHECK(run("") == 2);

  const auto cfg = scratch("bad.yaml");
  std::ofstream(cfg) << "seed: 1\nclearance: oops\n";
  CHECK(run("plan --config " + cfg.string() + " -o " + out.string()) == 2);
  CHECK_FALSE(fs::exists(out / "manifest.json"));
}

TEST_CASE("i/o errors exit 4")
{
  const auto blocker = scratch("blocker");
  std::ofstream(blocker) << "x";
  CHECK(run("plan -o " + (blocker / "sub").string()) == 4);
  CHECK(run("plan --config /nonexistent/config.yaml") == 4);
  CHECK(run("replay /nonexistent/manifest.json -o " + scratch("r").string()) == 4);
}

TEST_CASE("flags override the config file")
{
  const auto cfg = scratch("cfg.yaml");
  std::ofstream(cfg) << "seed: 3\nplanner: prm\nobstacles: {kind: random, count: 16}\n";
  const auto out = scratch("override");
  CHECK(run("plan --config " + cfg.string() + " --planner astar --seed 8 -o " + out.string()) == 0);
  const auto m = nlohmann::json::parse(slurp(out / "manifest.json"));
  CHECK(m.at("config").at("planner") == "astar");
  CHECK(m.at("config").at("seed") == 8);
  CHECK(m.at("config").at("obstacles").at("count") == 16);
}

TEST_CASE("replay reproduces a sweep byte for byte")
{
  const auto out = scratch("sweep");
  const auto again = scratch("sweep_replay");
  CHECK(run("sweep --param grid-size --values 8:16:4 --planner dijkstra --obstacles random:64 --trials 3 --no-timing -o "
            + out.string())
      == 0);
  CHECK(run("replay " + (out / "manifest.json").string() + " -o " + again.string()) == 0);
  check_identical_dirs(out, again);
}

TEST_CASE("export matches the bundle moves")
{
  const auto out = scratch("exp");
  CHECK(run("plan --preset hexagon-default --obstacles none -o " + out.string()) == 0);
  const auto moves = scratch("exp.moves");
  CHECK(run("export " + (out / "toolpath.json").string() + " -o " + moves.string()) == 0);
  CHECK(slurp(moves) == slurp(out / "toolpath.moves"));
  const auto json_moves = scratch("exp.json");
  CHECK(run("export " + (out / "toolpath.json").string() + " --format json -o " + json_moves.string()) == 0);
  CHECK(slurp(json_moves) == slurp(out / "toolpath.moves.json"));

  const auto failed = scratch("exp_fail");
  CHECK(run("plan --planner rrt --max-iterations 1 -o " + failed.string()) == 3);
  CHECK(run("export " + (failed / "partial_toolpath.json").string() + " -o " + scratch("x.moves").string()) == 3);
}

TEST_CASE("help exits cleanly")
{
  CHECK(run("--help") == 0);
  CHECK(run("plan --help") == 0);
}
