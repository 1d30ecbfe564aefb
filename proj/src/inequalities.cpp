#include "ricci/inequalities.hpp"

#include "ricci/errors.hpp"

#include <numbers>
#include <string>

namespace ricci {

std::string_view threshold_name(Threshold id) {
  switch (id) {
    case Threshold::TanRatio: return "tan_ratio_bound";
    case Threshold::SineCot: return "sine_cot_bound";
    case Threshold::TanSquare: return "tan_square_bound";
    case Threshold::OuterCurvature: return "outer_curvature_bound";
    case Threshold::BridgeValue: return "bridge_value_sign";
    case Threshold::BridgeSlope: return "bridge_slope_sign";
    case Threshold::BridgeChord: return "bridge_chord_slack";
  }
  return "unknown";
}

std::string_view threshold_statement(Threshold id) {
  switch (id) {
    case Threshold::TanRatio: return "tan(x^2/kappa + x^4/zeta) / tan(x^2/kappa) < 1 + tan^2 x on (0, r0]";
    case Threshold::SineCot: return "sin(x + x^4/zeta) cot x < 1 on (0, r0]";
    case Threshold::TanSquare: return "x^2/2 + tan^2(x^2/kappa) < tan^2 x on (0, r0]";
    case Threshold::OuterCurvature:
      return "(R0/zeta)(1 - x^3 R0/zeta)^-2 < tan(x^2/kappa + x^4/zeta) / x^2 on (0, r0]";
    case Threshold::BridgeValue: return "R0 sin(x^2/kappa + x^4/zeta) < (x/2) sin(2x/kappa) on (0, r0]";
    case Threshold::BridgeSlope: return "R0 cos(x^2/kappa + x^4/zeta) < cos(2x/kappa) on (0, r0]";
    case Threshold::BridgeChord:
      return "((x/2) sin(2x/kappa) - R0 sin(x^2/kappa + x^4/zeta)) / (x^2/kappa) < "
             "cos(2x/kappa) - R0 cos(x^2/kappa + x^4/zeta) on (0, r0]";
  }
  return "";
}

int vanishing_order(Threshold id) {
  switch (id) {
    case Threshold::OuterCurvature:
    case Threshold::BridgeSlope:
      return 0;
    default:
      return 2;
  }
}

int threshold_slot(Threshold id) {
  switch (id) {
    case Threshold::TanRatio: return 0;
    case Threshold::SineCot: return 1;
    case Threshold::TanSquare: return 2;
    case Threshold::OuterCurvature: return 3;
    default: return 4;
  }
}

namespace {

bool singular_at_zero(Threshold id) {
  switch (id) {
    case Threshold::TanRatio:
    case Threshold::SineCot:
    case Threshold::OuterCurvature:
    case Threshold::BridgeChord:
      return true;
    default:
      return false;
  }
}

double require(const std::optional<double>& v, const char* name, Threshold id) {
  if (!v) {
    throw ConfigError(std::string("constant ") + name + " required by " +
                      std::string(threshold_name(id)));
  }
  return *v;
}

}  // namespace

InequalitySides<double> lemma_bound_eval(Threshold id, double x, const Constants& consts) {
  constexpr double kMax = std::numbers::pi / 4.0;
  if (!(x >= 0.0) || x > kMax) {
    throw DomainError("x = " + std::to_string(x) + " outside [0, pi/4]");
  }
  if (x == 0.0 && singular_at_zero(id)) {
    throw DomainError(std::string(threshold_name(id)) + " is singular at x = 0");
  }
  double R0 = 0.0, kappa = 1.0, zeta = 1.0;
  switch (id) {
    case Threshold::SineCot:
      zeta = require(consts.zeta, "zeta", id);
      break;
    case Threshold::TanSquare:
      kappa = require(consts.kappa, "kappa", id);
      break;
    case Threshold::TanRatio:
      kappa = require(consts.kappa, "kappa", id);
      zeta = require(consts.zeta, "zeta", id);
      break;
    default:
      R0 = require(consts.R0, "R0", id);
      kappa = require(consts.kappa, "kappa", id);
      zeta = require(consts.zeta, "zeta", id);
      break;
  }
  return inequality_sides<double>(id, x, R0, kappa, zeta);
}

double normalized_margin(Threshold id, double x, const InequalitySides<double>& sides) {
  const int order = vanishing_order(id);
  double scale = 1.0;
  for (int i = 0; i < order; ++i) scale *= x;
  return (sides.rhs - sides.lhs) / scale;
}

}  // namespace ricci
