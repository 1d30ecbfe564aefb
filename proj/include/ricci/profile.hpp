#pragma once

#include "ricci/bump.hpp"
#include "ricci/check.hpp"
#include "ricci/jet.hpp"
#include "ricci/params.hpp"

#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

namespace ricci {

/// A warping function R(t) on [0, pi/2] for the metric
/// dt^2 + cos^2 t ds_1^2 + R^2(t) ds_{n-2}^2.
class WarpingProfile {
 public:
  virtual ~WarpingProfile() = default;

  virtual ProfileJet jet(double t) const = 0;

  /// 1 - (R'/R) tan t. Overridden where a cancellation-free form exists.
  virtual double angle_defect(double t) const;

  /// sin t - R(t).
  virtual double sine_gap(double t) const;

  /// Limits at t = 0 of -R''/R and (1 - R'^2)/R^2.
  virtual ZeroLimits zero_limits() const = 0;

  /// Points in [0, pi/2] where the construction changes formula, sorted.
  virtual std::vector<double> features() const = 0;
};

/// R(t) = sin t: the round sphere, used as a test oracle.
class RoundProfile final : public WarpingProfile {
 public:
  ProfileJet jet(double t) const override;
  double angle_defect(double) const override { return 0.0; }
  double sine_gap(double) const override { return 0.0; }
  ZeroLimits zero_limits() const override { return {1.0, 1.0}; }
  std::vector<double> features() const override;
};

/// Concave bridge theta on [psi, b] with theta(psi) = theta'(psi) = 0 and
/// prescribed negative theta(b), theta'(b).
///
/// theta'(t) = dtheta_b (1 - S((t - psi)/width)): a smooth ramp from 0 down
/// to the end slope, after which theta is linear. The width is fixed by
/// theta(b) = theta_b and is positive exactly when the bridge slack is.
struct BridgeTheta {
  double psi = 0.0;
  double b = 0.0;
  double theta_b = 0.0;
  double dtheta_b = 0.0;
  double width = 0.0;

  double value(double t) const;
  double d1(double t) const;
  double d2(double t) const;
};

BridgeTheta build_bridge_theta(const ParamSet& ps);

/// The C^1 profile: (r0/2) sin(2t/r0) on [0, psi], that plus theta on
/// (psi, b), R0 sin(t + (r0^4/zeta) gamma(t/r0 - 1)) on [b, pi/2].
class ProfileC1 final : public WarpingProfile {
 public:
  ProfileC1(const ParamSet& ps, const BumpFunction& bump, const BridgeTheta& bridge);

  ProfileJet jet(double t) const override;
  double angle_defect(double t) const override;
  double sine_gap(double t) const override;
  ZeroLimits zero_limits() const override;
  std::vector<double> features() const override;

  /// Cap plus bridge, valid on [0, b]; used past psi by the smoothing.
  ProfileJet inner_jet(double t) const;
  /// Outer sine piece, valid on [b, pi/2].
  ProfileJet outer_jet(double t) const;

  /// -R''/R - 4/r0^2 on the bridge, as (-theta'' - 4 theta/r0^2) / R.
  double bridge_concavity_margin(double t) const;

  struct Jumps {
    double value_psi;
    double slope_psi;
    double value_b;
    double slope_b;
  };
  Jumps junction_jumps() const;

  const ParamSet& params() const { return ps_; }
  const BumpFunction& bump() const { return bump_; }
  const BridgeTheta& bridge() const { return bridge_; }

 private:
  double cap_numerator(double t) const;

  ParamSet ps_;
  BumpFunction bump_;
  BridgeTheta bridge_;
  double k_;  // 2 / r0
};

/// Junction and concavity checks of the C^1 profile, `points` nodes per piece.
CheckLog certify_c1(const ProfileC1& prof, int points);

/// Builds the C^1 profile and certifies it on 10^4 points per piece.
/// Throws CertificationError naming the first failed clause.
ProfileC1 assemble_profile(const ParamSet& ps, const BumpFunction& bump,
                           const BridgeTheta& bridge);

/// R = C1 + chi (C1 * rho_h - C1) near the outer junction b: rho_h is a
/// C-infinity kernel of half-width h, chi a C-infinity cutoff equal to 1 on
/// |t - b| <= h and 0 outside |t - b| < mu/2. R equals the C^1 profile
/// elsewhere (the bridge is already flat at psi).
class SmoothProfile final : public WarpingProfile {
 public:
  SmoothProfile(const ProfileC1& base, double mu, double half_width);

  ProfileJet jet(double t) const override;
  double angle_defect(double t) const override;
  double sine_gap(double t) const override;
  ZeroLimits zero_limits() const override { return base_.zero_limits(); }
  std::vector<double> features() const override;

  const ProfileC1& base() const { return base_; }
  double mu() const { return mu_; }
  double half_width() const { return h_; }
  /// Half-length of the modified window around b.
  double window() const { return window_; }
  bool in_window(double t) const;

 private:
  ProfileJet core_jet(double t) const;
  ProfileJet cutoff_jet(double t) const;

  // Core jets are quadratures; checks revisit the same nodes many times.
  struct CoreCache {
    std::mutex lock;
    std::unordered_map<double, ProfileJet> jets;
  };

  ProfileC1 base_;
  std::shared_ptr<CoreCache> cache_ = std::make_shared<CoreCache>();
  double mu_;
  double h_;
  double window_;
  double defect_inner_;  // kernel cosine defect at frequency 2h/r0
  double defect_outer_;  // kernel cosine defect at frequency h
};

/// -R''/R, using the t = 0 limit at the origin.
double concavity_ratio(const WarpingProfile& prof, double t);

/// Where the smoothing clauses are evaluated: only the modified window, or
/// the full ranges the clauses are stated on.
enum class Scope { window, full };

/// Smoothing clauses, `points` nodes per grid piece: concavity bounds on
/// both sides of b, log-slope closeness, angle bound, R'' < 0, R <= sin t
/// and 0 <= R' <= 1.
CheckLog certify_smoothing(const SmoothProfile& prof, int points, Scope scope);

/// Smooths with half-width mu/4, halving up to 40 times until every
/// smoothing clause holds. Throws CertificationError with the last failure.
SmoothProfile smooth_profile(const ProfileC1& base, double mu);

}  // namespace ricci
