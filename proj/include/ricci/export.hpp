#pragma once

#include "ricci/params.hpp"
#include "ricci/profile.hpp"

#include <filesystem>
#include <string>

namespace ricci {

// CSV dumps for plotting; 17 significant digits, roughly `points` rows.

std::string profile_csv(const WarpingProfile& R, int points);

/// Boundary columns are empty for t > r0.
std::string curvature_csv(const WarpingProfile& R, int n, double r0, int points);

std::string boundary_csv(const WarpingProfile& R, const ParamSet& ps, int points);

/// Writes to a sibling temporary file, then renames over `path`.
/// Throws std::runtime_error if the file cannot be written.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace ricci
