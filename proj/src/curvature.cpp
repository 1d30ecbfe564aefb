#include "ricci/curvature.hpp"

#include "ricci/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ricci {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// The three ratios every formula is built from.
struct Ratios {
  double neg_d2;         // -R''/R
  double angle;          // (R'/R) tan t
  double angle_defect;   // 1 - (R'/R) tan t
  double slope_defect;   // (1 - R'^2) / R^2
  double slope_sq;       // R'^2 / R^2
};

Ratios ratios(const WarpingProfile& R, double t) {
  if (!(t >= 0.0) || t > kHalfPi) {
    throw DomainError("t = " + std::to_string(t) + " outside [0, pi/2]");
  }
  if (t == 0.0) {
    const ZeroLimits z = R.zero_limits();
    return {z.neg_d2_over_value, 1.0, 0.0, z.slope_defect_over_sq, 0.0};
  }
  const ProfileJet j = R.jet(t);
  const double a = R.angle_defect(t);
  const double v2 = j.value * j.value;
  return {-j.d2 / j.value, 1.0 - a, a, j.slope_defect / v2, j.d1 * j.d1 / v2};
}

void check_boundary(double r0, double t) {
  if (!(t >= 0.0) || t > r0) {
    throw DomainError("t = " + std::to_string(t) + " is off the boundary sphere [0, r0]");
  }
}

}  // namespace

RicciDiagonal ricci_components(const WarpingProfile& R, int n, double t) {
  if (n < 3) throw ConfigError("dimension n must be >= 3");
  const Ratios r = ratios(R, t);
  const double m = n - 2.0;
  return {1.0 + m * r.neg_d2, 1.0 + m * r.angle,
          r.neg_d2 + r.angle + (n - 3.0) * r.slope_defect};
}

double boundary_angle_factor(double r0, double t) {
  const double tr = std::tan(r0);
  return std::sin(r0 - t) * (tr + std::tan(t)) / (std::cos(r0) * std::cos(t) * tr * tr);
}

PrincipalCurvatures principal_curvatures(const WarpingProfile& R, double r0, double t) {
  check_boundary(r0, t);
  const double cot = 1.0 / std::tan(r0);
  return {-cot, -ratios(R, t).angle * cot};
}

double principal_margin(const WarpingProfile& R, double r0, double t) {
  check_boundary(r0, t);
  return ratios(R, t).angle_defect;
}

IntrinsicCurvatures intrinsic_sectional(const WarpingProfile& R, double r0, double t) {
  check_boundary(r0, t);
  const Ratios r = ratios(R, t);
  const double c2 = 1.0 / (std::tan(r0) * std::tan(r0));
  const double tt = std::tan(t) * std::tan(t);
  const double f = boundary_angle_factor(r0, t);
  const double ys = r.neg_d2 * f + c2 * r.angle * (1.0 + tt);
  // R'^2 tan^2 t / R^2 = angle^2 also covers the t = 0 limit
  const double ss = r.slope_defect + c2 * r.angle * r.angle;
  return {ys, ss};
}

double intrinsic_ys_margin(const WarpingProfile& R, double r0, double t) {
  check_boundary(r0, t);
  const Ratios r = ratios(R, t);
  const double tr2 = std::tan(r0) * std::tan(r0);
  const double tt = std::tan(t) * std::tan(t);
  // c2 (1 - A)(1 + tan^2 t) - c2 = c2 (tan^2 t - A sec^2 t)
  return r.neg_d2 * boundary_angle_factor(r0, t) * tr2 + tt - r.angle_defect * (1.0 + tt);
}

double intrinsic_ss_margin(const WarpingProfile& R, double r0, double t) {
  check_boundary(r0, t);
  const Ratios r = ratios(R, t);
  const double tr2 = std::tan(r0) * std::tan(r0);
  // angle^2 - 1 = -A (2 - A)
  return r.slope_defect * tr2 - r.angle_defect * (2.0 - r.angle_defect);
}

std::vector<CurvatureSample> curvature_grid(const WarpingProfile& R, int n, double r0,
                                            const Eigen::ArrayXd& t) {
  std::vector<CurvatureSample> out;
  out.reserve(static_cast<std::size_t>(t.size()));
  for (double ti : t) {
    CurvatureSample s;
    s.t = ti;
    const RicciDiagonal ric = ricci_components(R, n, ti);
    s.ric_TT = ric.tt;
    s.ric_XX = ric.xx;
    s.ric_SS = ric.ss;
    if (ti <= r0) {
      const PrincipalCurvatures pc = principal_curvatures(R, r0, ti);
      const IntrinsicCurvatures ki = intrinsic_sectional(R, r0, ti);
      s.pc_circle = pc.circle;
      s.pc_sphere = pc.sphere;
      s.ki_YS = ki.ys;
      s.ki_SS = ki.ss;
    }
    out.push_back(s);
  }
  return out;
}

std::vector<CurvatureSample> curvature_grid(const WarpingProfile& R, int n, double r0,
                                            const GridSpec& grid) {
  return curvature_grid(R, n, r0, grid.nodes());
}

CurvatureMinima summarize(const std::vector<CurvatureSample>& samples, double r0) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double cot = 1.0 / std::tan(r0);
  CurvatureMinima m{inf, inf, inf, inf};
  for (const auto& s : samples) {
    m.ricci = std::min({m.ricci, s.ric_TT, s.ric_XX, s.ric_SS});
    if (!s.on_boundary()) continue;
    m.principal_margin = std::min(m.principal_margin, s.pc_sphere + cot);
    m.ys_margin = std::min(m.ys_margin, s.ki_YS - cot * cot);
    m.ss_margin = std::min(m.ss_margin, s.ki_SS - cot * cot);
  }
  return m;
}

}  // namespace ricci
