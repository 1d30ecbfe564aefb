#pragma once

#include <cmath>

namespace ricci {

// C-infinity monotone unit step: S(u) = 1 for u <= 0, 0 for u >= 1,
// S(u) = 1 / (1 + exp(1/(1-u) - 1/u)) in between. S(1-u) = 1 - S(u).

namespace detail {

template <typename Scalar>
Scalar step_exponent(Scalar u) {
  return Scalar(1) / (Scalar(1) - u) - Scalar(1) / u;
}

// S(1-S) = 1 / (4 cosh^2(phi/2)); overflow to inf yields 0 as required.
template <typename Scalar>
Scalar step_logistic_weight(Scalar phi) {
  using std::cosh;
  const Scalar c = cosh(phi / Scalar(2));
  return Scalar(1) / (Scalar(4) * c * c);
}

}  // namespace detail

template <typename Scalar>
Scalar smooth_step(Scalar u) {
  using std::exp;
  if (u <= Scalar(0)) return Scalar(1);
  if (u >= Scalar(1)) return Scalar(0);
  return Scalar(1) / (Scalar(1) + exp(detail::step_exponent(u)));
}

template <typename Scalar>
Scalar smooth_step_d1(Scalar u) {
  if (u <= Scalar(0) || u >= Scalar(1)) return Scalar(0);
  const Scalar v = Scalar(1) - u;
  const Scalar dphi = Scalar(1) / (v * v) + Scalar(1) / (u * u);
  return -detail::step_logistic_weight(detail::step_exponent(u)) * dphi;
}

template <typename Scalar>
Scalar smooth_step_d2(Scalar u) {
  if (u <= Scalar(0) || u >= Scalar(1)) return Scalar(0);
  const Scalar v = Scalar(1) - u;
  const Scalar phi = detail::step_exponent(u);
  const Scalar dphi = Scalar(1) / (v * v) + Scalar(1) / (u * u);
  const Scalar ddphi = Scalar(2) / (v * v * v) - Scalar(2) / (u * u * u);
  const Scalar w = detail::step_logistic_weight(phi);
  const Scalar s = smooth_step(u);
  const Scalar d1 = -w * dphi;
  return -(d1 * (Scalar(1) - Scalar(2) * s) * dphi + w * ddphi);
}

/// Suprema of |S'| and |S''| over the real line (computed once, cached).
struct StepBounds {
  double sup_d1;
  double sup_d2;
};

const StepBounds& smooth_step_bounds();

/// J(u) = integral over [0, u] of (1 - S). J(u) = u - 1/2 for u >= 1.
double smooth_step_complement_integral(double u);

/// Normalized C-infinity bump rho on (-1, 1): rho(u) ∝ exp(-1/(1-u^2)).
class MollifierKernel {
 public:
  MollifierKernel();

  double density(double u) const;

  /// 1 - integral of rho(u) cos(freq*u) du, computed without cancellation.
  double cosine_defect(double freq) const;

  double normalization() const { return norm_; }

 private:
  double norm_;
};

const MollifierKernel& mollifier_kernel();

}  // namespace ricci
