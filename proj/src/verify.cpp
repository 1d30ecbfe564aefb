#include "ricci/verify.hpp"

#include "ricci/bump.hpp"
#include "ricci/curvature.hpp"
#include "ricci/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace ricci {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;

const std::vector<CheckSpec> kChecks = {
    {"squash_factor_bound", "0 < R0 <= 1/10"},
    {"kappa_lower_bound", "kappa > 2 / sqrt(3 R0)"},
    {"zeta_interval", "kappa < zeta < 3 R0 kappa^3 / 4"},
    {"bump_derivative_bounds", "Lambda > 1/R0, sup|gamma'| < R0, sup|gamma''| < R0"},
    {"bump_derivative_grid", "|gamma'| < R0 and |gamma''| < R0 on 10^5 points of [-1, Lambda + 1]"},
    {"tan_ratio_bound", "tan(x^2/kappa + x^4/zeta) / tan(x^2/kappa) < 1 + tan^2 x on (0, r0]"},
    {"sine_cot_bound", "sin(x + x^4/zeta) cot x < 1 on (0, r0]"},
    {"tan_square_bound", "x^2/2 + tan^2(x^2/kappa) < tan^2 x on (0, r0]"},
    {"outer_curvature_bound",
     "(R0/zeta)(1 - x^3 R0/zeta)^-2 < tan(x^2/kappa + x^4/zeta) / x^2 on (0, r0]"},
    {"bridge_value_sign", "R0 sin(x^2/kappa + x^4/zeta) < (x/2) sin(2x/kappa) on (0, r0]"},
    {"bridge_slope_sign", "R0 cos(x^2/kappa + x^4/zeta) < cos(2x/kappa) on (0, r0]"},
    {"bridge_chord_slack",
     "((x/2) sin(2x/kappa) - R0 sin(x^2/kappa + x^4/zeta)) / (x^2/kappa) < "
     "cos(2x/kappa) - R0 cos(x^2/kappa + x^4/zeta) on (0, r0]"},
    {"disc_radius_bound", "r0 < min{R0, pi/(2(1+Lambda)), c1, ..., c5}"},
    {"disc_disjointness", "r0 < pi/p"},
    {"bridge_feasibility",
     "cos(2r0/k) - R0 cos(r0^2/k + r0^4/z) > "
     "((r0/2) sin(2r0/k) - R0 sin(r0^2/k + r0^4/z)) / (r0^2/k - psi)"},
    {"slope_angle_margin", "iota = 0.9 min (1 - cot(t + r0^4/zeta) tan t) > 0 on [r0^2/kappa, r0]"},
    {"smoothing_budget",
     "0 < mu < mu0 <= 0.9 min{psi, iota/tan r0, log-slope and principal curvature budgets}"},
    {"c1_join_inner", "calR and calR' continuous at psi (jump < 1e-9)"},
    {"c1_join_outer", "calR and calR' continuous at r0^2/kappa (jump < 1e-9)"},
    {"inner_concavity", "-calR''/calR >= 4/r0^2 on (psi, r0^2/kappa)"},
    {"outer_concavity", "calR'' < 0 on (r0^2/kappa, pi/2]"},
    {"profile_positive", "calR(t) > 0 on (0, pi/2]"},
    {"smoothed_inner_concavity", "-R''/R > 2/r0^2 on [0, r0^2/kappa]"},
    {"smoothed_window_concavity", "-R''/R > 1 - mu on [r0^2/kappa, r0]"},
    {"smoothed_log_slope", "|R'/R - calR'/calR| < mu on the smoothing windows"},
    {"global_concavity", "R'' < 0 on (0, pi/2]"},
    {"slope_angle_bound", "(R'/R) tan t <= 1 on [0, r0]"},
    {"slope_angle_strict", "(R'/R) tan t < 1 on [r0/2, r0]"},
    {"profile_below_sine", "R(t) <= sin t on [0, r0]"},
    {"slope_range", "0 <= R' <= 1 on [0, r0]"},
    {"axis_limits", "-R''/R, (R'/R) tan t, (1 - R'^2)/R^2 approach their t = 0 limits (rel 1e-6)"},
    {"ricci_tt", "Ric(T,T) = 1 - (n-2) R''/R > 0"},
    {"ricci_xx", "Ric(X,X) = 1 + (n-2)(R'/R) tan t > 0"},
    {"ricci_ss", "Ric(S,S) = -R''/R + (R'/R) tan t + (n-3)(1 - R'^2)/R^2 > 0"},
    {"principal_curvature_bound", "boundary principal curvatures >= -cot r0 on [0, r0]"},
    {"principal_curvature_strict", "-(R'/R) cot r0 tan t > -cot r0 on [r0/2, r0]"},
    {"intrinsic_ys_bound", "K(Y ^ S) > cot^2 r0 on the boundary"},
    {"intrinsic_ss_bound", "K(S ^ S') > cot^2 r0 on the boundary"},
    {"intrinsic_ss_round_floor", "K(S ^ S') >= 1 + cot^2 r0 - 1e-9 on the boundary"},
    {"gauss_crosscheck", "closed-form K(Y ^ S), K(S ^ S') = -B''/B, (1 - B'^2)/B^2 (rel 1e-4)"},
    {"angle_identity", "(dt/ds)^2 + cot^2 r0 tan^2 t = 1 along the boundary (1e-8)"},
    {"pole_distance", "boundary arc length = pi sin r0 (1e-8); rescaled pole distance pi cos r0"},
    {"waist_value", "max B = tau = R0 cot r0 sin(r0 + r0^4/zeta) (1e-6)"},
    {"smooth_closure", "B(0) = B(pi omega) = 0, B'(0) = 1, B'(pi omega) = -1 (1e-4)"},
    {"boundary_sectional", "-B''/B > 1 and (1 - B'^2)/B^2 > 1 in the rescaled boundary metric"},
    {"waist_below_squash", "tau < R0"},
    {"pole_distance_exceeds_waist_power", "omega > tau^((n-2)/(n-1))"},
    {"rho_chain", "tau^((n-2)/(n-1)) <= sqrt(tau) < sqrt(R0) <= 1/sqrt(10) < 1/2"},
    {"rho_interval", "(tau^((n-2)/(n-1)), min(omega, 1/2)) is non-empty"},
};

double five_point_d1(const double* f, double h) {
  return (-f[4] + 8.0 * f[3] - 8.0 * f[1] + f[0]) / (12.0 * h);
}

double five_point_d2(const double* f, double h) {
  return (-f[4] + 16.0 * f[3] - 30.0 * f[2] + 16.0 * f[1] - f[0]) / (12.0 * h * h);
}

double distance_to(const std::vector<double>& points, double s) {
  double d = std::numeric_limits<double>::infinity();
  for (double p : points) d = std::min(d, std::abs(s - p));
  return d;
}

class Collector {
 public:
  void add(CheckResult r) { results_[r.name] = std::move(r); }
  void add(const CheckLog& log) {
    for (const auto& r : log) add(r);
  }
  void fail(const std::string& name, const std::string& why) {
    CheckResult r;
    r.name = name;
    r.cause = why;
    add(std::move(r));
  }
  bool has(const std::string& name) const { return results_.count(name) > 0; }
  bool failed() const {
    return std::any_of(results_.begin(), results_.end(), [](const auto& kv) { return !kv.second.passed; });
  }

  CheckLog finish(const std::string& cause) const {
    CheckLog out;
    for (const auto& spec : kChecks) {
      const std::string name(spec.name);
      auto it = results_.find(name);
      if (it == results_.end()) {
        out.push_back(skipped_check(name, std::string(spec.anchor), cause));
      } else {
        CheckResult r = it->second;
        r.anchor = std::string(spec.anchor);
        out.push_back(std::move(r));
      }
    }
    return out;
  }

 private:
  std::map<std::string, CheckResult> results_;
};

CheckResult bump_grid_check(const ParamSet& ps) {
  const BumpFunction gamma(ps.R0, ps.Lambda);
  const Eigen::ArrayXd x = linspace(-1.0, ps.Lambda + 1.0, 100000);
  return grid_check(
      "bump_derivative_grid", "",
      [&](double xi) {
        return std::min(ps.R0 - std::abs(gamma.d1(xi)), ps.R0 - std::abs(gamma.d2(xi)));
      },
      x);
}

CheckResult threshold_grid_check(Threshold id, const ParamSet& ps, int points) {
  const Eigen::ArrayXd x = linspace(ps.r0 / points, ps.r0, points);
  const Constants c = ps.constants();
  return grid_check(
      std::string(threshold_name(id)), "",
      [&](double xi) { return normalized_margin(id, xi, lemma_bound_eval(id, xi, c)); }, x);
}

CheckResult axis_limits_check(const WarpingProfile& R, double psi) {
  const ZeroLimits z = R.zero_limits();
  const double t = std::min(1e-9, 0.25 * psi);
  const ProfileJet j = R.jet(t);
  const double e1 = std::abs(-j.d2 / j.value / z.neg_d2_over_value - 1.0);
  const double e2 = std::abs(R.angle_defect(t));
  const double e3 = std::abs(j.slope_defect / (j.value * j.value) / z.slope_defect_over_sq - 1.0);
  return make_check("axis_limits", "", 1e-6 - std::max({e1, e2, e3}), t);
}

CheckResult rho_chain_check(const BoundaryMetric& bm, double R0) {
  const double lo = std::pow(bm.tau, bm.exponent);
  const double links_weak = std::min(std::sqrt(bm.tau) - lo, 1.0 / std::sqrt(10.0) - std::sqrt(R0));
  const double links_strict = std::min(std::sqrt(R0) - std::sqrt(bm.tau), 0.5 - 1.0 / std::sqrt(10.0));
  CheckResult r = make_check("rho_chain", "", links_strict, bm.tau);
  if (links_weak < 0.0) {
    r.passed = false;
    r.margin = links_weak;
  }
  return r;
}

CheckResult closure_check(const WarpingProfile& R, const BoundaryMetric& bm, double psi) {
  const double r0 = bm.r0;
  const double len = kPi * bm.omega;
  // one-sided steps must stay on the round cap, whose rescaled length is psi cot r0
  const double h = std::min(1e-5 * bm.omega, 1e-3 * psi / std::tan(r0));
  auto B = [&](double s) { return boundary_jet(R, r0, std::clamp(s, 0.0, len)).value; };
  const double d0 = (-3.0 * B(0.0) + 4.0 * B(h) - B(2.0 * h)) / (2.0 * h);
  const double d1 = (3.0 * B(len) - 4.0 * B(len - h) + B(len - 2.0 * h)) / (2.0 * h);
  const double err = std::max({std::abs(d0 - 1.0), std::abs(d1 + 1.0), std::abs(B(0.0)), std::abs(B(len))});
  return make_check("smooth_closure", "", 1e-4 - err, std::abs(d0 - 1.0) >= std::abs(d1 + 1.0) ? 0.0 : len);
}

CheckResult boundary_sectional_check(const BoundaryMetric& bm) {
  double worst = std::numeric_limits<double>::infinity();
  double at = std::numeric_limits<double>::quiet_NaN();
  for (Eigen::Index i = 1; i + 1 < bm.s.size(); ++i) {
    const double m = std::min(bm.K_rad[i], bm.K_tan[i]) - 1.0;
    if (m < worst || std::isnan(m)) {
      worst = m;
      at = bm.s[i];
      if (std::isnan(m)) break;
    }
  }
  return make_check("boundary_sectional", "", worst, at);
}

}  // namespace

const std::vector<CheckSpec>& report_checks() { return kChecks; }

CheckResult gauss_crosscheck(const WarpingProfile& R, const ParamSet& ps, int points,
                             std::optional<double> s_lo, std::optional<double> s_hi) {
  const double r0 = ps.r0;
  const double tr = std::tan(r0);
  const double len = kPi * std::sin(r0);
  // step balancing truncation against rounding in B''; nodes closer than
  // h_skip to a feature are not tested
  const double h_nominal = 1e-3 * std::sin(r0);
  const double h_skip = 1e-5 * std::sin(r0);
  std::vector<double> avoid{0.0, len};
  for (double f : boundary_features(R, r0)) avoid.push_back(f * tr);
  // the apex is smooth; do not treat it as a feature
  avoid.erase(std::remove_if(avoid.begin(), avoid.end(),
                             [&](double f) { return std::abs(f - 0.5 * len) < 1e-15; }),
              avoid.end());
  if (const auto* sp = dynamic_cast<const SmoothProfile*>(&R)) {
    // the whole smoothing window is one feature
    const double b = sp->base().params().junction();
    for (double t : {b - sp->window(), b + sp->window()}) {
      const double s = std::sin(r0) * std::asin(std::sin(t) / std::sin(r0));
      avoid.push_back(s);
      avoid.push_back(len - s);
    }
  }
  const double lo = s_lo.value_or(0.0);
  const double hi = s_hi.value_or(len);
  const Eigen::ArrayXd s = feature_grid(avoid, lo, hi, points);
  double worst = 0.0;
  double at = std::numeric_limits<double>::quiet_NaN();
  int used = 0;
  for (double si : s) {
    const double d = distance_to(avoid, si);
    if (d < h_skip) continue;
    const double h = std::min(h_nominal, 0.25 * d);
    // B(s) = B(len - s); stencils near the far pole are taken in the mirrored
    // coordinate, where s carries no rounding from len
    const double u = si <= 0.5 * len ? si : len - si;
    double B[5];
    for (int k = 0; k < 5; ++k) B[k] = R.jet(t_of_s(r0, u + (k - 2) * h)).value;
    const double b1 = five_point_d1(B, h);
    const double b2 = five_point_d2(B, h);
    const double t = t_of_s(r0, u);
    const IntrinsicCurvatures ki = intrinsic_sectional(R, r0, std::min(t, r0));
    const double ys_fd = -b2 / B[2];
    const double ss_fd = (1.0 - b1 * b1) / (B[2] * B[2]);
    const double e = std::max(std::abs(ys_fd - ki.ys) / std::abs(ki.ys),
                              std::abs(ss_fd - ki.ss) / std::abs(ki.ss));
    ++used;
    if (e > worst || std::isnan(e)) {
      worst = e;
      at = si;
      if (std::isnan(e)) break;
    }
  }
  if (used == 0) return make_check("gauss_crosscheck", "", std::numeric_limits<double>::quiet_NaN(), lo);
  return make_check("gauss_crosscheck", "", 1e-4 - worst, at);
}

CheckResult angle_identity_check(double r0, int points) {
  const double len = kPi * std::sin(r0);
  const double h = 1e-4 * std::sin(r0);
  const double c2 = 1.0 / (std::tan(r0) * std::tan(r0));
  const Eigen::ArrayXd s = linspace(2.0 * h, len - 2.0 * h, points);
  double worst = 0.0;
  double at = s[0];
  for (double si : s) {
    double t[5];
    for (int k = 0; k < 5; ++k) t[k] = t_of_s(r0, si + (k - 2) * h);
    const double ts = five_point_d1(t, h);
    const double tt = std::tan(t[2]);
    const double e = std::abs(ts * ts + c2 * tt * tt - 1.0);
    if (e > worst) {
      worst = e;
      at = si;
    }
  }
  return make_check("angle_identity", "", 1e-8 - worst, at);
}

VerificationReport run_verification(int n, int p, const Overrides& overrides, const GridSpec& grid) {
  if (grid.points < 100) throw ConfigError("grid needs at least 100 points");
  VerificationReport report;
  report.n = n;
  report.p = p;
  report.overrides = overrides;
  report.grid_points = grid.points;
  const int pts = grid.points;

  Collector out;
  std::string cause;
  CheckLog param_log;
  try {
    report.params = select_params(n, p, overrides, &param_log);
  } catch (const CertificationError& e) {
    cause = e.clause();
    out.add(param_log);
    if (!out.has(e.clause())) out.fail(e.clause(), e.what());
    report.checks = out.finish(cause);
    report.overall = false;
    return report;
  }
  out.add(param_log);
  const ParamSet& ps = *report.params;

  out.add(bump_grid_check(ps));
  for (Threshold id : kAllThresholds) out.add(threshold_grid_check(id, ps, pts));

  std::optional<SmoothProfile> smooth;
  try {
    const BumpFunction gamma(ps.R0, ps.Lambda);
    const BridgeTheta bridge = build_bridge_theta(ps);
    const ProfileC1 base(ps, gamma, bridge);
    const CheckLog c1_log = certify_c1(base, pts);
    out.add(c1_log);
    if (const CheckResult* bad = first_failure(c1_log)) {
      throw CertificationError(bad->name, "C^1 profile clause failed");
    }
    smooth.emplace(smooth_profile(base, ps.mu));
  } catch (const CertificationError& e) {
    cause = e.clause();
    if (!out.has(e.clause())) out.fail(e.clause(), e.what());
    report.checks = out.finish(cause);
    report.overall = false;
    return report;
  }
  const SmoothProfile& R = *smooth;
  report.profile = std::make_shared<const SmoothProfile>(R);
  out.add(certify_smoothing(R, pts, Scope::full));

  const double r0 = ps.r0;
  const auto features = R.features();
  const double eps = std::min(1e-6, 0.5 * ps.psi);
  const Eigen::ArrayXd t_all = feature_grid(features, eps, kHalfPi, pts);
  const Eigen::ArrayXd t_bdry = feature_grid(features, 0.0, r0, pts);
  const Eigen::ArrayXd t_outer = feature_grid(features, 0.5 * r0, r0, pts);

  out.add(axis_limits_check(R, ps.psi));
  out.add(grid_check("ricci_tt", "", [&](double t) { return ricci_components(R, n, t).tt; }, t_all));
  out.add(grid_check("ricci_xx", "", [&](double t) { return ricci_components(R, n, t).xx; }, t_all));
  out.add(grid_check("ricci_ss", "", [&](double t) { return ricci_components(R, n, t).ss; }, t_all));
  out.add(grid_check("principal_curvature_bound", "",
                     [&](double t) { return principal_margin(R, r0, t); }, t_bdry, false));
  out.add(grid_check("principal_curvature_strict", "",
                     [&](double t) { return principal_margin(R, r0, t); }, t_outer));
  out.add(grid_check("intrinsic_ys_bound", "",
                     [&](double t) { return intrinsic_ys_margin(R, r0, t); }, t_bdry));
  out.add(grid_check("intrinsic_ss_bound", "",
                     [&](double t) { return intrinsic_ss_margin(R, r0, t); }, t_bdry));
  const double c2 = 1.0 / (std::tan(r0) * std::tan(r0));
  out.add(grid_check(
      "intrinsic_ss_round_floor", "",
      [&](double t) { return c2 * intrinsic_ss_margin(R, r0, t) - 1.0 + 1e-9; }, t_bdry, false));
  out.add(gauss_crosscheck(R, ps, pts));
  out.add(angle_identity_check(r0, pts));

  const BoundaryMetric bm = boundary_metric(R, ps, GridSpec{pts, 0.0, 1.0});
  const double arc = boundary_arc_length(r0);
  out.add(make_check("pole_distance", "", 1e-8 - std::abs(arc - kPi * std::sin(r0)), kPi * bm.omega));
  {
    const double closed = ps.R0 / std::tan(r0) * std::sin(r0 + ps.shift());
    Eigen::Index imax = 0;
    const double bmax = bm.B.maxCoeff(&imax);
    const double err = std::max(std::abs(bmax - bm.tau), std::abs(closed - bm.tau));
    out.add(make_check("waist_value", "", 1e-6 - err, bm.s[imax]));
  }
  out.add(closure_check(R, bm, ps.psi));
  out.add(boundary_sectional_check(bm));
  out.add(make_check("waist_below_squash", "", ps.R0 - bm.tau, bm.tau));
  out.add(make_check("pole_distance_exceeds_waist_power", "", bm.omega - bm.rho_lo, bm.rho_lo));
  out.add(rho_chain_check(bm, ps.R0));
  try {
    const RhoInterval rho = rho_interval(bm, n);
    out.add(make_check("rho_interval", "", std::min(rho.hi - rho.lo, 0.5 - rho.lo), rho.mid()));
  } catch (const CertificationError& e) {
    out.add(make_check("rho_interval", "", bm.rho_hi - bm.rho_lo, bm.rho_lo));
  }
  report.boundary = BoundarySummary{bm.tau, bm.omega, bm.exponent, bm.rho_lo, bm.rho_hi};

  report.checks = out.finish(cause.empty() ? "upstream failure" : cause);
  report.overall = std::all_of(report.checks.begin(), report.checks.end(),
                               [](const CheckResult& r) { return r.passed; });
  return report;
}

std::string report_json(const VerificationReport& report, int indent) {
  using nlohmann::ordered_json;
  auto number = [](double v) -> ordered_json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };
  ordered_json j;
  j["schema"] = std::string(kReportSchema);
  j["n"] = report.n;
  j["p"] = report.p;
  j["grid_points"] = report.grid_points;
  ordered_json ov = ordered_json::object();
  for (const auto& [k, v] : report.overrides) ov[k] = v;
  j["overrides"] = ov;
  if (report.params) {
    const ParamSet& ps = *report.params;
    ordered_json pj;
    pj["n"] = ps.n;
    pj["p"] = ps.p;
    pj["R0"] = number(ps.R0);
    pj["kappa"] = number(ps.kappa);
    pj["zeta"] = number(ps.zeta);
    pj["Lambda"] = number(ps.Lambda);
    pj["r0"] = number(ps.r0);
    ordered_json c = ordered_json::array();
    for (double ci : ps.c) c.push_back(number(ci));
    pj["c"] = c;
    pj["psi"] = number(ps.psi);
    pj["iota"] = number(ps.iota);
    pj["mu0"] = number(ps.mu0);
    pj["mu"] = number(ps.mu);
    pj["junction"] = number(ps.junction());
    pj["shift"] = number(ps.shift());
    if (report.profile) pj["smoothing_half_width"] = number(report.profile->half_width());
    j["params"] = pj;
  } else {
    j["params"] = nullptr;
  }
  ordered_json checks = ordered_json::array();
  for (const auto& r : report.checks) {
    ordered_json c;
    c["name"] = r.name;
    c["anchor"] = r.anchor;
    c["passed"] = r.passed;
    c["strict"] = r.strict;
    c["margin"] = number(r.margin);
    c["at"] = number(r.at);
    if (r.cause) c["cause"] = *r.cause;
    checks.push_back(c);
  }
  j["checks"] = checks;
  if (report.boundary) {
    const BoundarySummary& b = *report.boundary;
    ordered_json bj;
    bj["tau"] = number(b.tau);
    bj["omega"] = number(b.omega);
    bj["pole_distance"] = number(kPi * b.omega);
    bj["exponent"] = number(b.exponent);
    bj["rho_lo"] = number(b.rho_lo);
    bj["rho_hi"] = number(b.rho_hi);
    bj["rho_mid"] = number(0.5 * (b.rho_lo + b.rho_hi));
    // the neck construction's scale and the final boundary radius are not
    // determined by this construction
    bj["lambda"] = nullptr;
    bj["nu"] = nullptr;
    j["boundary"] = bj;
  } else {
    j["boundary"] = nullptr;
  }
  j["overall"] = report.overall ? "pass" : "fail";
  return j.dump(indent);
}

}  // namespace ricci
