#include "ricci/grid.hpp"

#include "ricci/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ricci {

void GridSpec::validate() const {
  if (points == 1 && lo == hi) return;
  if (points < 2) throw ConfigError("grid needs at least 2 points");
  if (!(lo < hi)) throw ConfigError("grid requires lo < hi");
}

Eigen::ArrayXd GridSpec::nodes() const {
  validate();
  return linspace(lo, hi, points);
}

Eigen::ArrayXd linspace(double lo, double hi, int points) {
  if (points == 1) return Eigen::ArrayXd::Constant(1, lo);
  Eigen::ArrayXd out(points);
  const double step = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) out[i] = lo + step * i;
  // keep the right endpoint exact
  out[points - 1] = hi;
  return out;
}

Eigen::ArrayXd composite_grid(std::span<const double> breakpoints, int points_per_piece) {
  if (breakpoints.size() < 2) throw ConfigError("composite grid needs two breakpoints");
  if (points_per_piece < 2) throw ConfigError("composite grid needs 2 points per piece");
  std::vector<double> nodes;
  nodes.reserve(breakpoints.size() * static_cast<std::size_t>(points_per_piece));
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i];
    const double b = breakpoints[i + 1];
    if (b < a) throw ConfigError("composite grid breakpoints must be non-decreasing");
    if (b == a) continue;
    const Eigen::ArrayXd piece = linspace(a, b, points_per_piece);
    const int start = nodes.empty() ? 0 : 1;
    for (int k = start; k < piece.size(); ++k) nodes.push_back(piece[k]);
  }
  if (nodes.empty()) nodes.push_back(breakpoints.front());
  return Eigen::Map<const Eigen::ArrayXd>(nodes.data(), static_cast<Eigen::Index>(nodes.size()));
}

Eigen::ArrayXd feature_grid(std::span<const double> features, double lo, double hi,
                            int points_per_piece) {
  std::vector<double> cuts{lo};
  for (double f : features) {
    if (f > lo && f < hi) cuts.push_back(f);
  }
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return composite_grid(cuts, points_per_piece);
}

Extremum min_with_index(const Eigen::Ref<const Eigen::ArrayXd>& values) {
  if (values.size() == 0) return {std::numeric_limits<double>::quiet_NaN(), -1};
  Eigen::Index idx = 0;
  double best = values[0];
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    // NaN must surface as the minimum so that it fails every check
    if (std::isnan(values[i])) return {values[i], i};
    if (values[i] < best) {
      best = values[i];
      idx = i;
    }
  }
  return {best, idx};
}

}  // namespace ricci
