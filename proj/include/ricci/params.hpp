#pragma once

#include "ricci/check.hpp"
#include "ricci/grid.hpp"
#include "ricci/inequalities.hpp"

#include <array>
#include <map>
#include <string>
#include <string_view>

namespace ricci {

/// The constant cascade of the squashed-sphere construction.
struct ParamSet {
  int n = 3;
  int p = 1;
  double R0 = 0.1;
  double kappa = 0.0;
  double zeta = 0.0;
  double Lambda = 0.0;
  double r0 = 0.0;
  std::array<double, 5> c{};
  double psi = 0.0;
  double iota = 0.0;
  double mu0 = 0.0;
  double mu = 0.0;

  /// Outer junction b = r0^2 / kappa.
  double junction() const { return r0 * r0 / kappa; }
  /// Phase shift delta = r0^4 / zeta of the outer piece.
  double shift() const { return r0 * r0 * r0 * r0 / zeta; }
  Constants constants() const { return {R0, kappa, zeta}; }
};

using Overrides = std::map<std::string, double>;

inline constexpr std::array<std::string_view, 6> kOverrideNames = {"R0",     "kappa", "zeta",
                                                                   "Lambda", "r0",    "mu"};

/// Comma separated list of the override names, for error messages.
std::string override_names();

/// Largest x such that inequality `id` holds strictly on the scanned part of
/// (0, x), refined by bisection at the first violation, times 0.9.
/// Requires scan.hi <= pi/4 and scan.points >= 10^4.
double threshold_scan(Threshold id, const Constants& consts, const GridSpec& scan);

/// Default scan: 10^4 points over [0, pi/4].
double threshold_scan(Threshold id, const Constants& consts);

/// Value of the bridge end data at the outer junction.
struct BridgeEnds {
  double theta_b;   // R0 sin(b + delta) - (r0/2) sin(2 r0/kappa)
  double dtheta_b;  // R0 cos(b + delta) - cos(2 r0/kappa)
};

BridgeEnds bridge_ends(double R0, double kappa, double zeta, double r0);

/// Slack of the bridge feasibility inequality at inner junction psi:
/// -dtheta_b - (-theta_b)/(b - psi). Positive iff a concave bridge exists.
double bridge_slack(const ParamSet& ps, double psi);

/// Largest psi = b 2^-k, 1 <= k <= 60, whose slack is at least 10^-3 times
/// the slack at psi = 0. Throws CertificationError("bridge_feasibility").
double select_psi(const ParamSet& ps);

/// 1 - cot(t + delta) tan t, written without cancellation.
double slope_angle_gap(double t, double delta);

/// 0.9 times the minimum of the slope angle gap over [b, r0].
double compute_iota(const ParamSet& ps, int points = 100000);

/// The four candidate bounds for the smoothing budget.
struct SmoothingBudget {
  double below_psi;       // psi
  double slope_angle;     // iota / tan r0
  double log_slope;       // min (cot t - cot(t+delta)) / (1 + cot t)
  double principal;       // min (cot(t+delta)(1+cot^2 r0) tan t - cot^2 r0) / (tan r0 (1+cot^2 r0))
  double mu0() const;     // 0.9 * min of the four
};

SmoothingBudget smoothing_budget(const ParamSet& ps, double iota, int points = 100000);

/// 0.9 times the smallest budget; CertificationError("smoothing_budget") if not positive.
double compute_mu0(const ParamSet& ps, double iota, int points = 100000);

/// Full cascade with defaults and overrides. Each definitional clause is
/// appended to `log` as it is validated. Invalid n, p or override names
/// throw ConfigError; the first violated clause throws CertificationError.
ParamSet select_params(int n, int p, const Overrides& overrides = {}, CheckLog* log = nullptr);

}  // namespace ricci
