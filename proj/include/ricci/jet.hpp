#pragma once

namespace ricci {

/// Value and first two derivatives of a warping function at one point.
///
/// `slope_defect` holds 1 - d1^2, evaluated without cancellation where the
/// profile knows a stable form (near t = 0 the slope tends to 1 and the
/// naive difference loses all digits).
struct ProfileJet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double slope_defect = 1.0;
};

/// One-sided limits at t = 0 of the ratios entering the curvature formulas.
struct ZeroLimits {
  double neg_d2_over_value;      // lim -R''/R
  double slope_defect_over_sq;   // lim (1 - R'^2)/R^2
};

}  // namespace ricci
