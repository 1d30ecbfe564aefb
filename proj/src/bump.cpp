#include "ricci/bump.hpp"

#include "ricci/errors.hpp"
#include "ricci/smooth_step.hpp"

#include <algorithm>
#include <cmath>

namespace ricci {

BumpFunction::BumpFunction(double R0, double Lambda) : R0_(R0), Lambda_(Lambda) {
  if (!(Lambda > 0.0)) throw ConfigError("bump support must be positive");
}

double BumpFunction::value(double x) const { return smooth_step(x / Lambda_); }

double BumpFunction::d1(double x) const { return smooth_step_d1(x / Lambda_) / Lambda_; }

double BumpFunction::d2(double x) const {
  return smooth_step_d2(x / Lambda_) / (Lambda_ * Lambda_);
}

double BumpFunction::sup_d1() const { return smooth_step_bounds().sup_d1 / Lambda_; }

double BumpFunction::sup_d2() const {
  return smooth_step_bounds().sup_d2 / (Lambda_ * Lambda_);
}

double default_bump_support(double R0) {
  const StepBounds& b = smooth_step_bounds();
  return std::max({1.0 / R0 + 1.0, 1.1 * b.sup_d1 / R0, 1.1 * std::sqrt(b.sup_d2 / R0)});
}

BumpFunction build_gamma(double R0) {
  if (!(R0 > 0.0) || R0 > 0.1) throw ConfigError("build_gamma requires 0 < R0 <= 1/10");
  return BumpFunction(R0, default_bump_support(R0));
}

}  // namespace ricci
