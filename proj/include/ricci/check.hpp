#pragma once

#include "ricci/grid.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ricci {

/// Strict inequalities are certified only with margin above this floor.
inline constexpr double kStrictFloor = 1e-12;

/// Outcome of one certified inequality.
///
/// `margin` is the worst (smallest) slack over the checked set, `at` the
/// parameter value (t, s or x) where it occurs. A check whose inputs failed
/// upstream carries NaN margin and names the failed check in `cause`.
struct CheckResult {
  std::string name;
  std::string anchor;
  bool passed = false;
  double margin = std::numeric_limits<double>::quiet_NaN();
  double at = std::numeric_limits<double>::quiet_NaN();
  bool strict = true;
  std::optional<std::string> cause;
};

CheckResult make_check(std::string name, std::string anchor, double margin, double at,
                       bool strict = true);

CheckResult skipped_check(std::string name, std::string anchor, std::string cause);

using CheckLog = std::vector<CheckResult>;

/// Smallest value of `margin` over `nodes`, refined by a Brent search on the
/// two cells around the worst node. Returns {value, location}.
template <typename F>
std::pair<double, double> worst_margin(F&& margin, const Eigen::ArrayXd& nodes) {
  Eigen::ArrayXd values(nodes.size());
  for (Eigen::Index i = 0; i < nodes.size(); ++i) values[i] = margin(nodes[i]);
  const Extremum ex = min_with_index(values);
  if (ex.index < 0) return {ex.value, std::numeric_limits<double>::quiet_NaN()};
  const double at = nodes[ex.index];
  if (std::isnan(ex.value) || nodes.size() < 3) return {ex.value, at};
  const double lo = nodes[std::max<Eigen::Index>(ex.index - 1, 0)];
  const double hi = nodes[std::min<Eigen::Index>(ex.index + 1, nodes.size() - 1)];
  const auto refined = boost::math::tools::brent_find_minima(
      [&](double x) { return margin(x); }, lo, hi, 30);
  if (refined.second < ex.value) return {refined.second, refined.first};
  return {ex.value, at};
}

template <typename F>
CheckResult grid_check(std::string name, std::string anchor, F&& margin,
                       const Eigen::ArrayXd& nodes, bool strict = true) {
  const auto [value, at] = worst_margin(margin, nodes);
  return make_check(std::move(name), std::move(anchor), value, at, strict);
}

/// First failing entry of a log, or nullptr.
const CheckResult* first_failure(const CheckLog& log);

}  // namespace ricci
