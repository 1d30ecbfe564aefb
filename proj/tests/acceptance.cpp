// End-to-end acceptance: one PASS/FAIL line per criterion, exit 1 on any FAIL.

#include "ricci/boundary.hpp"
#include "ricci/curvature.hpp"
#include "ricci/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace ricci;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2;
constexpr int kGrid = 10000;

struct Criterion {
  const char* title;
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::string tag(int n, int p) { return "n=" + std::to_string(n) + " p=" + std::to_string(p); }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

template <typename F>
double grid_min(const Eigen::ArrayXd& nodes, F&& f) {
  double m = INFINITY;
  for (double t : nodes) m = std::min(m, f(t));
  return m;
}

double distance_to(const std::vector<double>& pts, double t) {
  double d = INFINITY;
  for (double x : pts) d = std::min(d, std::abs(t - x));
  return d;
}

const CheckResult* find(const VerificationReport& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

bool names_failure(const VerificationReport& r, const std::string& clause) {
  const CheckResult* c = find(r, clause);
  return !r.overall && c && !c->passed && !c->cause;
}

// Worst relative finite-difference error of R' and R'' at 1000 random points.
// Within the smoothing window R'' is measured on the scale of its jump.
double fd_consistency(const SmoothProfile& R) {
  const auto feats = R.features();
  const double b = R.base().params().junction();
  const double jump = std::abs(R.jet(b - R.window()).d2);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> wide(1e-6, kHalfPi - 1e-6);
  std::uniform_real_distribution<double> win(-R.window(), R.window());
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const double t = i % 10 == 0 ? b + win(rng) : wide(rng);
    const double d = distance_to(feats, t);
    if (std::abs(t - b) <= R.half_width() || d < 1e-3 * R.window()) continue;
    const double h = std::min(1e-5 * t, d / 4);
    auto v = [&](double x) { return R.jet(x).value; };
    auto s = [&](double x) { return R.jet(x).d1; };
    const double fd1 = (v(t - 2 * h) - 8 * v(t - h) + 8 * v(t + h) - v(t + 2 * h)) / (12 * h);
    const double fd2 = (s(t - 2 * h) - 8 * s(t - h) + 8 * s(t + h) - s(t + 2 * h)) / (12 * h);
    const ProfileJet j = R.jet(t);
    const double scale2 = R.in_window(t) ? jump : 1e-3;
    worst = std::max({worst, std::abs(fd1 - j.d1) / std::max(std::abs(j.d1), 1e-3),
                      std::abs(fd2 - j.d2) / std::max(std::abs(j.d2), scale2)});
  }
  return worst;
}

}  // namespace

int main() {
  Criterion c1{"full certification at every (n, p), strict margins above 1e-12, < 60 s each"};
  Criterion c2{"Ricci curvature positive"};
  Criterion c3{"boundary principal curvatures >= -cot r0, strict on [r0/2, r0]"};
  Criterion c4{"boundary sectional curvatures > cot^2 r0, K(S^S') >= 1 + cot^2 r0"};
  Criterion c5{"round sphere oracle"};
  Criterion c6{"Gauss equation cross-check to 1e-4"};
  Criterion c7{"pole distance, waist and rescaled length"};
  Criterion c8{"radius chain and non-empty rho interval"};
  Criterion c9{"profile regularity and finite-difference consistency"};
  Criterion c10{"negative controls fail at their clause"};

  double slowest = 0;
  for (int n : {3, 5, 7, 9, 11, 13}) {
    for (int p : {1, 2, 5, 10}) {
      const std::string where = tag(n, p);
      const auto t0 = std::chrono::steady_clock::now();
      const VerificationReport rep = run_verification(n, p, {}, GridSpec{kGrid, 0.0, 1.0});
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      slowest = std::max(slowest, secs);
      std::printf("  %-12s %s in %.1f s\n", where.c_str(), rep.overall ? "pass" : "FAIL", secs);

      c1.require(rep.overall, where + ": overall fail");
      c1.require(secs < 60.0, where + ": took " + num(secs) + " s");
      for (const auto& c : rep.checks) {
        if (!c.passed) std::printf("    failed %s margin %s\n", c.name.c_str(), num(c.margin).c_str());
        if (c.strict) c1.require(c.margin > 1e-12, where + ": " + c.name + " margin " + num(c.margin));
      }
      if (!rep.profile) {
        for (Criterion* c : {&c2, &c3, &c4, &c6, &c7, &c8, &c9}) {
          c->require(false, where + ": no profile");
        }
        continue;
      }
      const SmoothProfile& R = *rep.profile;
      const ParamSet& ps = *rep.params;
      const double r0 = ps.r0, cot = 1 / std::tan(r0), c2r = cot * cot;
      const auto feats = R.features();

      // 2
      const Eigen::ArrayXd t_all = feature_grid(feats, std::min(1e-6, ps.psi / 2), kHalfPi, kGrid);
      const double ric = grid_min(t_all, [&](double t) {
        const RicciDiagonal r = ricci_components(R, n, t);
        return std::min({r.tt, r.xx, r.ss});
      });
      c2.require(ric > 0, where + ": min Ricci " + num(ric));
      c2.require(std::min({ricci_components(R, n, 0.0).tt, ricci_components(R, n, 0.0).xx,
                           ricci_components(R, n, 0.0).ss}) > 0,
                 where + ": Ricci at the axis");

      // 3
      const Eigen::ArrayXd t_b = feature_grid(feats, 0.0, r0, kGrid);
      const Eigen::ArrayXd t_half = feature_grid(feats, r0 / 2, r0, kGrid);
      auto pc_gap = [&](double t) { return principal_curvatures(R, r0, t).sphere + cot; };
      const double pc = grid_min(t_b, pc_gap);
      const double pc_strict = grid_min(t_half, pc_gap);
      c3.require(pc >= 0, where + ": pc_sphere + cot r0 = " + num(pc));
      c3.require(pc_strict > 0, where + ": not strict on [r0/2, r0]: " + num(pc_strict));
      c3.require(grid_min(t_b, [&](double t) { return principal_curvatures(R, r0, t).circle + cot; }) >= 0,
                 where + ": circle curvature");

      // 4
      const double ys = grid_min(t_b, [&](double t) { return intrinsic_sectional(R, r0, t).ys - c2r; });
      const double ss = grid_min(t_b, [&](double t) { return intrinsic_sectional(R, r0, t).ss - c2r; });
      c4.require(ys > 0, where + ": K(Y^S) - cot^2 r0 = " + num(ys));
      c4.require(ss > 0, where + ": K(S^S') - cot^2 r0 = " + num(ss));
      c4.require(ss >= 1 - 1e-9, where + ": K(S^S') below 1 + cot^2 r0 by " + num(1 - ss));

      // 6
      const CheckResult g = gauss_crosscheck(R, ps, kGrid);
      c6.require(g.passed, where + ": Gauss discrepancy " + num(1e-4 - g.margin));

      // 7
      const double arc = boundary_arc_length(r0);
      c7.require(std::abs(arc - kPi * std::sin(r0)) < 1e-8, where + ": arc length " + num(arc));
      const BoundaryMetric bm = boundary_metric(R, ps, GridSpec{kGrid, 0.0, 1.0});
      c7.require(std::abs(bm.omega - std::cos(r0)) < 1e-15, where + ": omega");
      const double tau = ps.R0 * cot * std::sin(r0 + std::pow(r0, 4) / ps.zeta);
      c7.require(std::abs(bm.B.maxCoeff() - tau) < 1e-6, where + ": max B vs tau");
      c7.require(std::abs(bm.tau - tau) < 1e-12, where + ": tau");

      // 8
      const double lo = std::pow(bm.tau, (n - 2.0) / (n - 1.0));
      const double hi = std::min(bm.omega, 0.5);
      c8.require(lo <= std::sqrt(bm.tau), where + ": tau^e > sqrt tau");
      c8.require(std::sqrt(bm.tau) < std::sqrt(ps.R0), where + ": sqrt tau >= sqrt R0");
      c8.require(std::sqrt(ps.R0) <= 1 / std::sqrt(10.0), where + ": sqrt R0 > 1/sqrt 10");
      c8.require(1 / std::sqrt(10.0) < 0.5, where + ": 1/sqrt 10 >= 1/2");
      c8.require(lo < hi, where + ": empty rho interval");
      c8.require(bm.rho_lo == lo && bm.rho_hi == hi, where + ": reported interval");

      // 9
      const auto jumps = R.base().junction_jumps();
      c9.require(std::max({jumps.value_psi, jumps.slope_psi, jumps.value_b, jumps.slope_b}) < 1e-9,
                 where + ": C1 jump");
      const double b = ps.junction();
      const Eigen::ArrayXd t_in = feature_grid(feats, 0.0, b, kGrid);
      const double a = grid_min(t_in, [&](double t) { return concavity_ratio(R, t) - 2 / (r0 * r0); });
      c9.require(a > 0, where + ": -R''/R - 2/r0^2 = " + num(a));
      const Eigen::ArrayXd t_out = feature_grid(feats, b, r0, kGrid);
      const double bb = grid_min(t_out, [&](double t) { return concavity_ratio(R, t) - (1 - ps.mu); });
      c9.require(bb > 0, where + ": -R''/R - (1 - mu) = " + num(bb));
      const Eigen::ArrayXd t_win = feature_grid(feats, b - R.window(), b + R.window(), kGrid);
      const double cc = grid_min(t_win, [&](double t) {
        const ProfileJet s = R.jet(t), c = R.base().jet(t);
        return ps.mu - std::abs(s.d1 / s.value - c.d1 / c.value);
      });
      c9.require(cc > 0, where + ": log slope closeness " + num(cc));
      const double concave = grid_min(t_all, [&](double t) { return -R.jet(t).d2; });
      c9.require(concave > 0, where + ": R'' >= 0 somewhere");
      if (n == 3) {
        const double fd = fd_consistency(R);
        c9.require(fd < 1e-5, where + ": finite-difference error " + num(fd));
      }
    }
  }

  // 5
  const RoundProfile round;
  for (int n : {3, 5, 7, 9, 11, 13}) {
    for (int i = 0; i <= 1000; ++i) {
      const RicciDiagonal r = ricci_components(round, n, kHalfPi * i / 1000);
      const double e = std::max({std::abs(r.tt - (n - 1)), std::abs(r.xx - (n - 1)), std::abs(r.ss - (n - 1))});
      c5.require(e < 1e-10, "Ricci of the round sphere off by " + num(e));
    }
  }
  for (double r0 : {0.0282743, 0.0614659, 0.5}) {
    const double cot = 1 / std::tan(r0);
    for (int i = 0; i <= 1000; ++i) {
      const double t = r0 * i / 1000;
      const PrincipalCurvatures pc = principal_curvatures(round, r0, t);
      const IntrinsicCurvatures ki = intrinsic_sectional(round, r0, t);
      c5.require(std::abs(pc.circle + cot) < 1e-10 && std::abs(pc.sphere + cot) < 1e-10,
                 "round principal curvatures at r0 = " + num(r0));
      c5.require(std::abs(ki.ss - (1 + cot * cot)) < 1e-10, "round K(S^S') at r0 = " + num(r0));
    }
  }

  // 10
  {
    const GridSpec g{200, 0.0, 1.0};
    const VerificationReport base = run_verification(3, 1, {}, g);
    const ParamSet& ps = *base.params;
    const double zeta_cap = 0.75 * ps.R0 * ps.kappa * ps.kappa * ps.kappa;
    // the smallest radius bound; the default r0 is 0.9 of it for p = 1
    const double r0_cap = std::min({ps.R0, kPi / (2 * (1 + ps.Lambda)),
                                    *std::min_element(ps.c.begin(), ps.c.end())});
    const struct {
      const char* label;
      Overrides o;
      const char* clause;
    } controls[] = {
        {"zeta = kappa", {{"zeta", ps.kappa}}, "zeta_interval"},
        {"zeta = 3 R0 kappa^3 / 4", {{"zeta", zeta_cap}}, "zeta_interval"},
        {"r0 = min threshold", {{"r0", r0_cap}}, "disc_radius_bound"},
        {"mu = mu0", {{"mu", ps.mu0}}, "smoothing_budget"},
    };
    for (const auto& ctl : controls) {
      const VerificationReport r = run_verification(3, 1, ctl.o, g);
      const bool named = names_failure(r, ctl.clause);
      std::printf("  control %-24s -> %s\n", ctl.label, named ? ctl.clause : "not rejected");
      c10.require(named, std::string(ctl.label) + " not rejected at " + ctl.clause);
    }
  }

  std::printf("\nslowest run %.1f s\n\n", slowest);
  int failed = 0;
  int k = 0;
  for (const Criterion* c : {&c1, &c2, &c3, &c4, &c5, &c6, &c7, &c8, &c9, &c10}) {
    ++k;
    std::printf("%s  [%2d] %s%s%s\n", c->ok ? "PASS" : "FAIL", k, c->title,
                c->ok ? "" : " -- ", c->detail.c_str());
    if (!c->ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
