#include "ricci/boundary.hpp"

#include "ricci/curvature.hpp"
#include "ricci/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ricci {

namespace {

constexpr double kPi = std::numbers::pi;

double checked_phase(double r0, double s) {
  const double sr = std::sin(r0);
  const double len = kPi * sr;
  if (!(s >= 0.0) || s > len * (1.0 + 1e-14)) {
    throw DomainError("s = " + std::to_string(s) + " outside [0, pi sin r0]");
  }
  return std::min(s, len) / sr;
}

}  // namespace

double t_of_s(double r0, double s) {
  const double phi = checked_phase(r0, s);
  // sin(phi) = sin(pi - phi); use the nearer pole to keep small t accurate
  return std::asin(std::sin(r0) * std::sin(std::min(phi, std::numbers::pi - phi)));
}

double dt_ds(double r0, double s) {
  const double phi = checked_phase(r0, s);
  return std::cos(phi) / std::cos(t_of_s(r0, s));
}

double d2t_ds2(double r0, double s) {
  const double phi = checked_phase(r0, s);
  const double t = t_of_s(r0, s);
  const double ct = std::cos(t);
  const double ts = std::cos(phi) / ct;
  return -std::sin(phi) / (std::sin(r0) * ct) + std::cos(phi) * std::sin(t) * ts / (ct * ct);
}

double boundary_arc_length(double r0) {
  using boost::math::quadrature::gauss_kronrod;
  const double sr = std::sin(r0);
  const double cr = std::cos(r0);
  auto speed = [&](double phi) {
    const double t = std::asin(sr * std::sin(phi));
    const double ct = std::cos(t);
    const double dt = sr * std::cos(phi) / ct;
    // x = atan2(sin r0 cos phi, cos r0)
    const double dx = -sr * cr * std::sin(phi) / (cr * cr + sr * sr * std::cos(phi) * std::cos(phi));
    return std::sqrt(dt * dt + ct * ct * dx * dx);
  };
  return gauss_kronrod<double, 61>::integrate(speed, 0.0, kPi, 10, 1e-15);
}

ProfileJet boundary_jet(const WarpingProfile& R, double r0, double s) {
  const double tr = std::tan(r0);
  const double su = s * tr;
  const double t = t_of_s(r0, su);
  const double ts = dt_ds(r0, su);
  const double tss = d2t_ds2(r0, su);
  const ProfileJet j = R.jet(t);
  const double tt = std::tan(t);
  ProfileJet out;
  out.value = j.value / tr;
  out.d1 = j.d1 * ts;
  out.d2 = tr * (j.d2 * ts * ts + j.d1 * tss);
  // 1 - R'^2 t_s^2 with 1 - t_s^2 = cot^2 r0 tan^2 t
  out.slope_defect = j.slope_defect + j.d1 * j.d1 * tt * tt / (tr * tr);
  return out;
}

std::vector<double> boundary_features(const WarpingProfile& R, double r0) {
  const double sr = std::sin(r0);
  const double tr = std::tan(r0);
  const double len = kPi * std::cos(r0);
  std::vector<double> f{0.0, 0.5 * len, len};
  for (double t : R.features()) {
    if (!(t > 0.0 && t < r0)) continue;
    const double s = sr * std::asin(std::sin(t) / sr) / tr;
    f.push_back(s);
    f.push_back(len - s);
  }
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

BoundaryMetric boundary_metric(const WarpingProfile& R, const ParamSet& ps, const GridSpec& grid) {
  if (grid.points < 2) throw ConfigError("boundary grid needs at least 2 points");
  const double r0 = ps.r0;
  const double tr = std::tan(r0);
  BoundaryMetric bm;
  bm.r0 = r0;
  bm.omega = std::cos(r0);
  bm.tau = R.jet(r0).value / tr;
  bm.exponent = (ps.n - 2.0) / (ps.n - 1.0);
  bm.rho_lo = std::pow(bm.tau, bm.exponent);
  bm.rho_hi = std::min(bm.omega, 0.5);

  const double len = kPi * bm.omega;
  const auto features = boundary_features(R, r0);
  const int per_piece = std::max(8, grid.points / static_cast<int>(features.size()));
  bm.s = feature_grid(features, 0.0, len, per_piece);
  const Eigen::Index m = bm.s.size();
  bm.B.resize(m);
  bm.B1.resize(m);
  bm.B2.resize(m);
  bm.K_rad.resize(m);
  bm.K_tan.resize(m);
  const IntrinsicCurvatures pole = intrinsic_sectional(R, r0, 0.0);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double s = std::min(bm.s[i], len);
    const ProfileJet j = boundary_jet(R, r0, s);
    bm.B[i] = j.value;
    bm.B1[i] = j.d1;
    bm.B2[i] = j.d2;
    if (j.value > 0.0) {
      bm.K_rad[i] = -j.d2 / j.value;
      bm.K_tan[i] = j.slope_defect / (j.value * j.value);
    } else {
      // Gauss: the rescaled curvatures are tan^2 r0 times the intrinsic ones
      bm.K_rad[i] = pole.ys * tr * tr;
      bm.K_tan[i] = pole.ss * tr * tr;
    }
  }
  return bm;
}

RhoInterval rho_interval(const BoundaryMetric& bm, int n) {
  if (n < 3) throw ConfigError("dimension n must be >= 3");
  const RhoInterval r{std::pow(bm.tau, (n - 2.0) / (n - 1.0)), std::min(bm.omega, 0.5)};
  if (!(r.lo < r.hi)) {
    throw CertificationError("rho_interval", "empty interval (" + std::to_string(r.lo) + ", " +
                                                 std::to_string(r.hi) + ")");
  }
  return r;
}

}  // namespace ricci
