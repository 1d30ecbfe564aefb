#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string_view>

namespace ricci {

/// The small-x inequalities whose validity thresholds bound the disc radius.
/// Each is oriented so that it asserts lhs < rhs.
enum class Threshold {
  TanRatio,        // tan(x^2/k + x^4/z) / tan(x^2/k) < 1 + tan^2 x
  SineCot,         // sin(x + x^4/z) cot x < 1
  TanSquare,       // x^2/2 + tan^2(x^2/k) < tan^2 x
  OuterCurvature,  // (R0/z)(1 - x^3 R0/z)^-2 < tan(x^2/k + x^4/z) / x^2
  BridgeValue,     // R0 sin(x^2/k + x^4/z) < (x/2) sin(2x/k)
  BridgeSlope,     // R0 cos(x^2/k + x^4/z) < cos(2x/k)
  BridgeChord,     // chord slope of the bridge < its end slope (see below)
};

inline constexpr std::array<Threshold, 7> kAllThresholds = {
    Threshold::TanRatio,    Threshold::SineCot,     Threshold::TanSquare,
    Threshold::OuterCurvature, Threshold::BridgeValue, Threshold::BridgeSlope,
    Threshold::BridgeChord};

/// Check name used in reports and certification errors.
std::string_view threshold_name(Threshold id);
/// Human-readable statement of the inequality.
std::string_view threshold_statement(Threshold id);

/// Power of x at which rhs - lhs vanishes as x -> 0 (0 if it stays bounded
/// away from zero). Used to report scale-free margins.
int vanishing_order(Threshold id);

/// Index 0..4 of the radius threshold c_i this inequality feeds.
int threshold_slot(Threshold id);

template <typename Scalar>
struct InequalitySides {
  Scalar lhs;
  Scalar rhs;
};

/// Both sides of inequality `id` at x for the given constants. No domain
/// checks; see lemma_bound_eval for the validated entry point.
template <typename Scalar>
InequalitySides<Scalar> inequality_sides(Threshold id, Scalar x, Scalar R0, Scalar kappa,
                                         Scalar zeta) {
  using std::cos;
  using std::sin;
  using std::tan;
  const Scalar x2 = x * x;
  const Scalar a = x2 / kappa;
  const Scalar shifted = a + x2 * x2 / zeta;
  switch (id) {
    case Threshold::TanRatio: {
      const Scalar tx = tan(x);
      return {tan(shifted) / tan(a), Scalar(1) + tx * tx};
    }
    case Threshold::SineCot:
      return {sin(x + x2 * x2 / zeta) / tan(x), Scalar(1)};
    case Threshold::TanSquare: {
      const Scalar ta = tan(a);
      const Scalar tx = tan(x);
      return {x2 / Scalar(2) + ta * ta, tx * tx};
    }
    case Threshold::OuterCurvature: {
      const Scalar q = Scalar(1) - x2 * x * R0 / zeta;
      return {R0 / zeta / (q * q), tan(shifted) / x2};
    }
    case Threshold::BridgeValue:
      return {R0 * sin(shifted), x / Scalar(2) * sin(Scalar(2) * x / kappa)};
    case Threshold::BridgeSlope:
      return {R0 * cos(shifted), cos(Scalar(2) * x / kappa)};
    case Threshold::BridgeChord: {
      // chord slope from (0,0) to the bridge end vs the slope mismatch there
      const Scalar chord = (x / Scalar(2) * sin(Scalar(2) * x / kappa) - R0 * sin(shifted)) / a;
      return {chord, cos(Scalar(2) * x / kappa) - R0 * cos(shifted)};
    }
  }
  return {Scalar(0), Scalar(0)};
}

/// Constants an inequality may depend on; unset entries raise ConfigError
/// when the inequality needs them.
struct Constants {
  std::optional<double> R0;
  std::optional<double> kappa;
  std::optional<double> zeta;
};

/// Validated evaluation. x must lie in [0, pi/4]; x = 0 is accepted only
/// where both sides are finite there. Throws DomainError / ConfigError.
InequalitySides<double> lemma_bound_eval(Threshold id, double x, const Constants& consts);

/// (rhs - lhs) / x^order, the scale-free margin reported by the checks.
double normalized_margin(Threshold id, double x, const InequalitySides<double>& sides);

}  // namespace ricci
