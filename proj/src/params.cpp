#include "ricci/params.hpp"

#include "ricci/bump.hpp"
#include "ricci/errors.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace ricci {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSafety = 0.9;

// Hypotheses under which each inequality holds near 0. The scan cannot see
// a failure that happens below its first node, so these are checked first.
void check_small_x_hypothesis(Threshold id, const Constants& c) {
  const auto name = std::string(threshold_name(id));
  switch (id) {
    case Threshold::TanRatio:
      if (c.zeta && c.kappa && !(*c.zeta > *c.kappa)) {
        throw CertificationError(name, "requires zeta > kappa");
      }
      break;
    case Threshold::OuterCurvature:
      if (!(*c.kappa < *c.zeta / *c.R0)) {
        throw CertificationError(name, "requires kappa < zeta / R0");
      }
      break;
    case Threshold::BridgeChord:
      if (!(*c.zeta < 0.75 * *c.R0 * *c.kappa * *c.kappa * *c.kappa)) {
        throw CertificationError(name, "requires zeta < 3 R0 kappa^3 / 4");
      }
      break;
    case Threshold::BridgeValue:
    case Threshold::BridgeSlope:
      if (!(*c.R0 < 1.0)) throw CertificationError(name, "requires R0 < 1");
      break;
    default:
      break;
  }
}

std::optional<double> find(const Overrides& o, const char* key) {
  auto it = o.find(key);
  if (it == o.end()) return std::nullopt;
  return it->second;
}

class Stages {
 public:
  explicit Stages(CheckLog* log) : log_(log) {}

  void record(CheckResult r) {
    const bool ok = r.passed;
    const std::string name = r.name;
    if (log_) log_->push_back(std::move(r));
    if (!ok) throw CertificationError(name, "definitional clause violated");
  }

  void fail(const CertificationError& e, std::string anchor) {
    if (log_) {
      CheckResult r = skipped_check(e.clause(), std::move(anchor), e.clause());
      r.cause = e.what();
      log_->push_back(std::move(r));
    }
  }

 private:
  CheckLog* log_;
};

}  // namespace

std::string override_names() {
  std::string out;
  for (auto n : kOverrideNames) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

double threshold_scan(Threshold id, const Constants& consts, const GridSpec& scan) {
  if (scan.hi > kPi / 4.0 || !(scan.hi > 0.0)) throw ConfigError("scan must end in (0, pi/4]");
  if (scan.points < 10000) throw ConfigError("scan needs at least 10^4 points");
  // evaluate once to surface missing constants as ConfigError
  (void)lemma_bound_eval(id, scan.hi, consts);
  check_small_x_hypothesis(id, consts);

  auto margin = [&](double x) { return normalized_margin(id, x, lemma_bound_eval(id, x, consts)); };
  const double lo = std::max(scan.lo, 0.0);
  const double step = (scan.hi - lo) / (scan.points - 1);
  double prev = lo;
  for (int i = 1; i < scan.points; ++i) {
    const double x = (i == scan.points - 1) ? scan.hi : lo + step * i;
    if (margin(x) > 0.0) {
      prev = x;
      continue;
    }
    if (i == 1) {
      throw CertificationError(std::string(threshold_name(id)),
                               "inequality fails at the first scanned point");
    }
    auto f = [&](double y) { return margin(y) > 0.0 ? 1.0 : -1.0; };
    auto tol = [](double a, double b) { return b - a <= 1e-8 * b; };
    const auto bracket = boost::math::tools::bisect(f, prev, x, tol);
    return kSafety * bracket.first;
  }
  return kSafety * scan.hi;
}

double threshold_scan(Threshold id, const Constants& consts) {
  return threshold_scan(id, consts, GridSpec{10000, 0.0, kPi / 4.0});
}

BridgeEnds bridge_ends(double R0, double kappa, double zeta, double r0) {
  const double b = r0 * r0 / kappa;
  const double delta = r0 * r0 * r0 * r0 / zeta;
  return {R0 * std::sin(b + delta) - 0.5 * r0 * std::sin(2.0 * r0 / kappa),
          R0 * std::cos(b + delta) - std::cos(2.0 * r0 / kappa)};
}

double bridge_slack(const ParamSet& ps, double psi) {
  const BridgeEnds e = bridge_ends(ps.R0, ps.kappa, ps.zeta, ps.r0);
  return -e.dtheta_b + e.theta_b / (ps.junction() - psi);
}

double select_psi(const ParamSet& ps) {
  const double b = ps.junction();
  const double full = bridge_slack(ps, 0.0);
  if (!(full > 0.0)) {
    throw CertificationError("bridge_feasibility", "no concave bridge exists even at psi = 0");
  }
  const BridgeEnds e = bridge_ends(ps.R0, ps.kappa, ps.zeta, ps.r0);
  for (int k = 1; k <= 60; ++k) {
    const double psi = std::ldexp(b, -k);
    // the bridge ramp must also fit inside (psi, b)
    const bool fits = b - psi <= 2.0 * e.theta_b / e.dtheta_b;
    if (fits && bridge_slack(ps, psi) >= 1e-3 * full) return psi;
  }
  throw CertificationError("bridge_feasibility", "no dyadic psi with enough slack");
}

double slope_angle_gap(double t, double delta) {
  return std::sin(delta) / (std::sin(t + delta) * std::cos(t));
}

double compute_iota(const ParamSet& ps, int points) {
  const Eigen::ArrayXd t = linspace(ps.junction(), ps.r0, points);
  const double delta = ps.shift();
  double best = std::numeric_limits<double>::infinity();
  for (double ti : t) best = std::min(best, slope_angle_gap(ti, delta));
  if (!(best > 0.0)) throw CertificationError("slope_angle_margin", "slope angle gap not positive");
  return kSafety * best;
}

double SmoothingBudget::mu0() const {
  return kSafety * std::min({below_psi, slope_angle, log_slope, principal});
}

SmoothingBudget smoothing_budget(const ParamSet& ps, double iota, int points) {
  const Eigen::ArrayXd t = linspace(ps.junction(), ps.r0, points);
  const double delta = ps.shift();
  const double tan_r0 = std::tan(ps.r0);
  const double sin_r0 = std::sin(ps.r0);
  SmoothingBudget out{ps.psi, iota / tan_r0, std::numeric_limits<double>::infinity(),
                      std::numeric_limits<double>::infinity()};
  for (double ti : t) {
    const double sd = std::sin(delta);
    // cot t - cot(t + delta) = sin(delta) / (sin t sin(t + delta))
    const double cot_gap = sd / (std::sin(ti) * std::sin(ti + delta));
    out.log_slope = std::min(out.log_slope, cot_gap / (1.0 + 1.0 / std::tan(ti)));
    // (cot(t+d) tan t - cos^2 r0) / tan r0, since 1 + cot^2 r0 = 1 / sin^2 r0
    const double p = (sin_r0 * sin_r0 - slope_angle_gap(ti, delta)) / tan_r0;
    out.principal = std::min(out.principal, p);
  }
  return out;
}

double compute_mu0(const ParamSet& ps, double iota, int points) {
  const SmoothingBudget sb = smoothing_budget(ps, iota, points);
  if (!(sb.log_slope > 0.0) || !(sb.principal > 0.0) || !(sb.below_psi > 0.0) ||
      !(sb.slope_angle > 0.0)) {
    throw CertificationError("smoothing_budget", "a smoothing budget bound is not positive");
  }
  return sb.mu0();
}

ParamSet select_params(int n, int p, const Overrides& overrides, CheckLog* log) {
  if (n < 3) throw ConfigError("dimension n must be >= 3");
  if (p < 1) throw ConfigError("puncture count p must be >= 1");
  for (const auto& [key, value] : overrides) {
    if (std::find(kOverrideNames.begin(), kOverrideNames.end(), key) == kOverrideNames.end()) {
      throw ConfigError("unknown override '" + key + "'; valid names: " + override_names());
    }
    if (!std::isfinite(value)) throw ConfigError("override '" + key + "' is not finite");
  }

  Stages stages(log);
  ParamSet ps;
  ps.n = n;
  ps.p = p;

  ps.R0 = find(overrides, "R0").value_or(0.1);
  {
    CheckResult r = make_check("squash_factor_bound", "0 < R0 <= 1/10",
                               std::min(0.1 - ps.R0, ps.R0), ps.R0, false);
    r.passed = r.passed && ps.R0 > 0.0;
    stages.record(std::move(r));
  }

  const double kappa_floor = 2.0 / std::sqrt(3.0 * ps.R0);
  ps.kappa = find(overrides, "kappa").value_or(1.1 * kappa_floor);
  stages.record(make_check("kappa_lower_bound", "kappa > 2 / sqrt(3 R0)",
                           ps.kappa - kappa_floor, ps.kappa));

  const double zeta_cap = 0.75 * ps.R0 * ps.kappa * ps.kappa * ps.kappa;
  ps.zeta = find(overrides, "zeta").value_or(0.5 * (ps.kappa + zeta_cap));
  stages.record(make_check("zeta_interval", "kappa < zeta < 3 R0 kappa^3 / 4",
                           std::min(ps.zeta - ps.kappa, zeta_cap - ps.zeta), ps.zeta));

  ps.Lambda = find(overrides, "Lambda").value_or(default_bump_support(ps.R0));
  {
    const BumpFunction gamma(ps.R0, ps.Lambda);
    const double m = std::min({ps.Lambda - 1.0 / ps.R0, ps.R0 - gamma.sup_d1(),
                               ps.R0 - gamma.sup_d2()});
    stages.record(make_check("bump_derivative_bounds",
                             "Lambda > 1/R0, sup|gamma'| < R0, sup|gamma''| < R0", m,
                             ps.Lambda));
  }

  ps.c.fill(kPi / 4.0);
  for (Threshold id : kAllThresholds) {
    try {
      const double ci = threshold_scan(id, ps.constants());
      double& slot = ps.c[static_cast<std::size_t>(threshold_slot(id))];
      slot = std::min(slot, ci);
    } catch (const CertificationError& e) {
      stages.fail(e, std::string(threshold_statement(id)));
      throw;
    }
  }

  const double c_min = *std::min_element(ps.c.begin(), ps.c.end());
  const double radius_cap = std::min({ps.R0, kPi / (2.0 * (1.0 + ps.Lambda)), c_min});
  ps.r0 = find(overrides, "r0").value_or(kSafety * std::min(radius_cap, kPi / p));
  stages.record(make_check("disc_radius_bound",
                           "r0 < min{R0, pi/(2(1+Lambda)), c1, ..., c5}",
                           radius_cap - ps.r0, ps.r0));
  stages.record(make_check("disc_disjointness", "r0 < pi/p", kPi / p - ps.r0, ps.r0));

  try {
    ps.psi = select_psi(ps);
  } catch (const CertificationError& e) {
    stages.fail(e, "concave bridge exists on (psi, r0^2/kappa)");
    throw;
  }
  stages.record(make_check("bridge_feasibility",
                           "cos(2r0/k) - R0 cos(r0^2/k + r0^4/z) > "
                           "((r0/2) sin(2r0/k) - R0 sin(r0^2/k + r0^4/z)) / (r0^2/k - psi)",
                           bridge_slack(ps, ps.psi), ps.psi));

  try {
    ps.iota = compute_iota(ps);
    ps.mu0 = compute_mu0(ps, ps.iota);
  } catch (const CertificationError& e) {
    stages.fail(e, "smoothing budget bounds positive");
    throw;
  }
  stages.record(make_check("slope_angle_margin",
                           "iota = 0.9 min (1 - cot(t + r0^4/zeta) tan t) > 0 on [r0^2/kappa, r0]",
                           ps.iota, ps.r0));

  ps.mu = find(overrides, "mu").value_or(0.5 * ps.mu0);
  stages.record(make_check("smoothing_budget",
                           "0 < mu < mu0 <= 0.9 min{psi, iota/tan r0, log-slope and "
                           "principal curvature budgets}",
                           std::min(ps.mu, ps.mu0 - ps.mu), ps.mu));
  return ps;
}

}  // namespace ricci
