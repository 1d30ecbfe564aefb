#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace ricci {

/// Uniform sampling of a closed interval.
struct GridSpec {
  enum class Spacing { uniform };

  int points = 10000;
  double lo = 0.0;
  double hi = 1.0;
  Spacing spacing = Spacing::uniform;

  /// Throws ConfigError unless lo < hi and points >= 2 (a single point
  /// is allowed when lo == hi).
  void validate() const;
  Eigen::ArrayXd nodes() const;
};

Eigen::ArrayXd linspace(double lo, double hi, int points);

/// Concatenation of uniform grids on consecutive pieces [b_i, b_{i+1}],
/// `points_per_piece` nodes each, shared endpoints emitted once. Pieces
/// of zero length are skipped. Breakpoints must be non-decreasing.
Eigen::ArrayXd composite_grid(std::span<const double> breakpoints, int points_per_piece);

/// Composite grid on [lo, hi] split at the features lying strictly inside.
Eigen::ArrayXd feature_grid(std::span<const double> features, double lo, double hi,
                            int points_per_piece);

/// Location and value of the smallest entry of `values`.
struct Extremum {
  double value;
  Eigen::Index index;
};

Extremum min_with_index(const Eigen::Ref<const Eigen::ArrayXd>& values);

}  // namespace ricci
