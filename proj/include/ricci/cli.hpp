#pragma once

#include "ricci/params.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ricci {

enum class Verbosity { quiet, normal, verbose };

struct RunConfig {
  int n = 3;
  int p = 1;
  Overrides overrides;
  int grid_points = 10000;
  std::optional<std::string> out_report;
  std::optional<std::string> out_profile_csv;
  std::optional<std::string> out_curvature_csv;
  std::optional<std::string> out_boundary_csv;
  Verbosity verbosity = Verbosity::normal;
};

/// Reads a JSON config mirroring RunConfig. Throws ConfigError.
RunConfig load_config(const std::string& path);

/// Parses "name=value"; ConfigError on malformed input or unknown name.
std::pair<std::string, double> parse_override(const std::string& text);

/// Command-line entry point. args excludes the program name.
/// Returns 0 if every check passes, 1 if any fails, 2 on usage or I/O errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ricci
