#include "ricci/smooth_step.hpp"

#include "ricci/grid.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>

namespace ricci {

namespace {

using boost::math::quadrature::gauss_kronrod;

// Dense scan followed by Brent refinement around the best node.
template <typename F>
double sup_abs(F f) {
  constexpr int kPoints = 200001;
  const Eigen::ArrayXd u = linspace(0.0, 1.0, kPoints);
  int best = 0;
  double best_val = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double v = std::abs(f(u[i]));
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  const double lo = u[std::max(best - 1, 0)];
  const double hi = u[std::min(best + 1, kPoints - 1)];
  const auto res = boost::math::tools::brent_find_minima(
      [&](double x) { return -std::abs(f(x)); }, lo, hi, 52);
  return std::max(best_val, -res.second);
}

StepBounds compute_bounds() {
  return {sup_abs([](double u) { return smooth_step_d1(u); }),
          sup_abs([](double u) { return smooth_step_d2(u); })};
}

}  // namespace

const StepBounds& smooth_step_bounds() {
  static const StepBounds bounds = compute_bounds();
  return bounds;
}

double smooth_step_complement_integral(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return u - 0.5;
  // 1 - S(v) = S(1 - v); integrand is tiny near 0, so integrate it directly.
  return gauss_kronrod<double, 61>::integrate(
      [](double v) { return smooth_step(1.0 - v); }, 0.0, u, 6, 1e-13);
}

MollifierKernel::MollifierKernel() {
  norm_ = gauss_kronrod<double, 61>::integrate(
      [](double u) { return std::exp(-1.0 / (1.0 - u * u)); }, -1.0, 1.0, 10, 1e-15);
}

double MollifierKernel::density(double u) const {
  if (u <= -1.0 || u >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - u * u)) / norm_;
}

double MollifierKernel::cosine_defect(double freq) const {
  // 1 - cos(x) = 2 sin^2(x/2); symmetric integrand, integrate over [0, 1).
  const double half = gauss_kronrod<double, 61>::integrate(
      [&](double u) {
        const double s = std::sin(0.5 * freq * u);
        return density(u) * 2.0 * s * s;
      },
      0.0, 1.0, 10, 1e-14);
  return 2.0 * half;
}

const MollifierKernel& mollifier_kernel() {
  static const MollifierKernel kernel;
  return kernel;
}

}  // namespace ricci
