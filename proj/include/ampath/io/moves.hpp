#pragma once

#include <ampath/pgf.hpp>

#include <stdexcept>
#include <string>

namespace ampath::io {

class ExportError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class MoveFormat
{
  text,
  json
};

/// Linear move list through every waypoint of every leg, in order. The
/// first waypoint is a travel move (G0), the rest are printing moves (G1).
/// Text lines read "G1 X<mm> Y<mm>" with three decimals; lines starting with
/// ';' are comments.
std::string export_toolpath(const Toolpath& toolpath, MoveFormat format);

/// Throws ExportError for a partial outcome.
std::string export_toolpath(const PgfOutcome& outcome, MoveFormat format);

} // namespace ampath::io
