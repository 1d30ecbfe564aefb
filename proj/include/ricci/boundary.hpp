#pragma once

#include "ricci/grid.hpp"
#include "ricci/params.hpp"
#include "ricci/profile.hpp"

namespace ricci {

/// Latitude along the boundary circle of the disc of radius r0 centred on
/// the equator of the unit 2-sphere, at unrescaled arc length s from the
/// first pole: arcsin(sin r0 sin(s / sin r0)), s in [0, pi sin r0].
double t_of_s(double r0, double s);

/// dt/ds along the same curve: cos(s / sin r0) / cos t.
double dt_ds(double r0, double s);

/// d^2t/ds^2 along the same curve.
double d2t_ds2(double r0, double s);

/// Length of the boundary curve integrated in the metric dt^2 + cos^2 t dx^2
/// from its embedding cos r0 c + sin r0 (cos phi e2 + sin phi e3).
double boundary_arc_length(double r0);

/// Rotationally symmetric boundary metric ds^2 + B^2(s) ds_{n-2}^2 after
/// rescaling by cot^2 r0; s runs over [0, pi omega].
struct BoundaryMetric {
  double r0 = 0.0;
  double omega = 0.0;  // cos r0
  double tau = 0.0;    // cot r0 R(r0), the maximum of B
  double rho_lo = 0.0;
  double rho_hi = 0.0;
  double exponent = 0.0;  // (n - 2)/(n - 1)
  Eigen::ArrayXd s;
  Eigen::ArrayXd B;
  Eigen::ArrayXd B1;
  Eigen::ArrayXd B2;
  Eigen::ArrayXd K_rad;  // -B''/B
  Eigen::ArrayXd K_tan;  // (1 - B'^2)/B^2
};

/// Rescaled B, B', B'' at s (chain rule through t(s)).
ProfileJet boundary_jet(const WarpingProfile& R, double r0, double s);

/// Samples the rescaled boundary metric on `grid.points` nodes of
/// [0, pi cos r0] (grid.lo / hi are ignored), split at the images of the
/// profile's features and at the apex.
BoundaryMetric boundary_metric(const WarpingProfile& R, const ParamSet& ps, const GridSpec& grid);

/// Rescaled arc length positions of the profile features on [0, pi cos r0].
std::vector<double> boundary_features(const WarpingProfile& R, double r0);

struct RhoInterval {
  double lo;
  double hi;
  double mid() const { return 0.5 * (lo + hi); }
};

/// (tau^((n-2)/(n-1)), min(omega, 1/2)). CertificationError if empty.
RhoInterval rho_interval(const BoundaryMetric& bm, int n);

}  // namespace ricci
