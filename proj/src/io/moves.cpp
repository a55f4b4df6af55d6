#include <ampath/io/moves.hpp>

#include <fmt/format.h>
#include <json.hpp>

namespace ampath::io {

std::string export_toolpath(const Toolpath& toolpath, MoveFormat format)
{
  if (toolpath.legs.size() != toolpath.structure.leg_count())
    throw ExportError("cannot export an incomplete toolpath");

  const std::size_t moves = toolpath.waypoint_count();
  if (format == MoveFormat::json)
  {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    bool first = true;
    for (const Leg& leg : toolpath.legs)
    {
      for (Point2 p : leg.path.waypoints)
      {
        list.push_back({{"cmd", first ? "G0" : "G1"}, {"leg", leg.pair}, {"x", p.x}, {"y", p.y}});
        first = false;
      }
    }
    nlohmann::ordered_json doc = {{"units", "mm"}, {"legs", toolpath.legs.size()}, {"moves", list}};
    return doc.dump(2) + "\n";
  }

  std::string out = fmt::format("; linear moves, units mm\n; legs {} moves {}\n", toolpath.legs.size(), moves);
  bool first = true;
  for (const Leg& leg : toolpath.legs)
  {
    out += fmt::format("; leg {}\n", leg.pair);
    for (Point2 p : leg.path.waypoints)
    {
      out += fmt::format("{} X{:.3f} Y{:.3f}\n", first ? "G0" : "G1", p.x, p.y);
      first = false;
    }
  }
  return out;
}

std::string export_toolpath(const PgfOutcome& outcome, MoveFormat format)
{
  if (const auto* toolpath = std::get_if<Toolpath>(&outcome))
    return export_toolpath(*toolpath, format);
  throw ExportError("cannot export a partial toolpath");
}

} // namespace ampath::io
