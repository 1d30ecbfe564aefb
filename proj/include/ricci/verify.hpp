#pragma once

#include "ricci/boundary.hpp"
#include "ricci/check.hpp"
#include "ricci/grid.hpp"
#include "ricci/params.hpp"
#include "ricci/profile.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ricci {

inline constexpr std::string_view kReportSchema = "ricci-forge/1";

/// A check that every report carries, with the inequality it certifies.
struct CheckSpec {
  std::string_view name;
  std::string_view anchor;
};

/// The fixed, ordered set of report checks.
const std::vector<CheckSpec>& report_checks();

struct BoundarySummary {
  double tau;
  double omega;
  double exponent;
  double rho_lo;
  double rho_hi;
};

struct VerificationReport {
  int n = 0;
  int p = 0;
  Overrides overrides;
  int grid_points = 0;
  std::optional<ParamSet> params;
  CheckLog checks;
  bool overall = false;
  std::optional<BoundarySummary> boundary;
  // kept for exports; null when construction failed upstream
  std::shared_ptr<const SmoothProfile> profile;
};

/// Gauss equation cross-check: closed-form intrinsic curvatures at t(s)
/// against -B''/B and (1 - B'^2)/B^2 from 5-point finite differences of the
/// unrescaled B(s) = R(t(s)), over [s_lo, s_hi] (defaults to the whole arc).
/// Nodes whose stencil would reach a profile feature or a pole are skipped.
CheckResult gauss_crosscheck(const WarpingProfile& R, const ParamSet& ps, int points,
                             std::optional<double> s_lo = std::nullopt,
                             std::optional<double> s_hi = std::nullopt);

/// (dt/ds)^2 + cot^2 r0 tan^2 t(s) = 1 with dt/ds by finite differences.
CheckResult angle_identity_check(double r0, int points);

/// Full pipeline. grid.points is the node count per grid piece (>= 100).
/// Construction failures become failing checks; later checks that depend on
/// them are reported failed with the failed clause as cause.
VerificationReport run_verification(int n, int p, const Overrides& overrides = {},
                                    const GridSpec& grid = GridSpec{});

/// Stable, ordered JSON serialization.
std::string report_json(const VerificationReport& report, int indent = 2);

}  // namespace ricci
