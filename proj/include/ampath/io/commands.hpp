#pragma once

#include <ampath/io/config.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ampath::io {

enum ExitCode : int
{
  kExitOk = 0,
  kExitConfig = 2,
  kExitPlanning = 3,
  kExitIo = 4
};

enum class Command
{
  plan,
  sweep,
  saturate,
  compare
};

std::string_view to_string(Command c);
std::optional<Command> parse_command(std::string_view text);

inline constexpr std::string_view kToolVersion = "0.1.0";

class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct BundleFile
{
  std::string name;
  std::string content;
};

/// In-memory result bundle; manifest.json is always the last file.
struct ResultBundle
{
  std::vector<BundleFile> files;
  int exit_code = kExitOk;

  const BundleFile* find(std::string_view name) const;
};

/// Runs a command and renders every output file. Throws ConfigError for
/// invalid settings.
ResultBundle run_command(Command command, const RunConfig& config);

/// Writes the files into dir, creating it. Throws IoError.
void write_bundle(const ResultBundle& bundle, const std::filesystem::path& dir);

/// run_command + write_bundle with errors mapped to exit codes.
int execute(Command command, const RunConfig& config, const std::filesystem::path& out, std::ostream& log);

/// Command and config stored in a manifest.json.
std::pair<Command, RunConfig> load_manifest(const std::filesystem::path& manifest);

/// Re-runs the bundle described by a manifest into out.
int replay(const std::filesystem::path& manifest, const std::filesystem::path& out, std::ostream& log);

/// Converts a toolpath JSON file to a move list.
int export_moves(const std::filesystem::path& toolpath_json, std::string_view format,
    const std::filesystem::path& out, std::ostream& log);

} // namespace ampath::io
