#pragma once

#include "ricci/grid.hpp"
#include "ricci/profile.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace ricci {

// Curvature of dt^2 + cos^2 t ds_1^2 + R^2(t) ds_{n-2}^2 on S^n, and of the
// boundary of the ball of radius r0 centred on the circle t = 0, with
// respect to the inward normal. At t = 0 the profile's one-sided limits are
// used ((R'/R) tan t -> 1 for every profile that closes smoothly).

struct RicciDiagonal {
  double tt;  // Ric(T, T)
  double xx;  // Ric(X, X)
  double ss;  // Ric(Sigma, Sigma)
};

struct PrincipalCurvatures {
  double circle;  // multiplicity 1
  double sphere;  // multiplicity n - 2
};

struct IntrinsicCurvatures {
  double ys;  // K(Y ^ Sigma)
  double ss;  // K(Sigma ^ Sigma')
};

RicciDiagonal ricci_components(const WarpingProfile& R, int n, double t);

PrincipalCurvatures principal_curvatures(const WarpingProfile& R, double r0, double t);

IntrinsicCurvatures intrinsic_sectional(const WarpingProfile& R, double r0, double t);

/// 1 - cot^2 r0 tan^2 t, the squared cosine of the angle between T and the
/// boundary normal, written as sin(r0 - t)(tan r0 + tan t) / (cos r0 cos t tan^2 r0).
double boundary_angle_factor(double r0, double t);

/// pc_sphere + cot r0 divided by cot r0, i.e. 1 - (R'/R) tan t.
double principal_margin(const WarpingProfile& R, double r0, double t);

/// (K(Y ^ Sigma) - cot^2 r0) / cot^2 r0, without cancellation at t = r0.
double intrinsic_ys_margin(const WarpingProfile& R, double r0, double t);

/// (K(Sigma ^ Sigma') - cot^2 r0) / cot^2 r0.
double intrinsic_ss_margin(const WarpingProfile& R, double r0, double t);

struct CurvatureSample {
  static constexpr double kNone = std::numeric_limits<double>::quiet_NaN();

  double t = 0.0;
  double ric_TT = kNone;
  double ric_XX = kNone;
  double ric_SS = kNone;
  // boundary quantities, NaN for t > r0
  double pc_circle = kNone;
  double pc_sphere = kNone;
  double ki_YS = kNone;
  double ki_SS = kNone;

  bool on_boundary() const { return !std::isnan(pc_circle); }
};

std::vector<CurvatureSample> curvature_grid(const WarpingProfile& R, int n, double r0,
                                            const Eigen::ArrayXd& t);

std::vector<CurvatureSample> curvature_grid(const WarpingProfile& R, int n, double r0,
                                            const GridSpec& grid);

struct CurvatureMinima {
  double ricci;             // min over samples of min(ric_TT, ric_XX, ric_SS)
  double principal_margin;  // min of pc_sphere + cot r0
  double ys_margin;         // min of ki_YS - cot^2 r0
  double ss_margin;         // min of ki_SS - cot^2 r0
};

CurvatureMinima summarize(const std::vector<CurvatureSample>& samples, double r0);

}  // namespace ricci
