#include "ricci/profile.hpp"

#include "ricci/errors.hpp"
#include "ricci/smooth_step.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ricci {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kJumpTolerance = 1e-9;

void check_range(double t) {
  if (!(t >= 0.0) || t > kHalfPi) {
    throw DomainError("t = " + std::to_string(t) + " outside [0, pi/2]");
  }
}

// sin t - sin(kt)/k as its Taylor series; valid (and needed) for small kt.
double sine_gap_series(double t, double k) {
  const double t2 = t * t;
  const double kt2 = k * k * t2;
  double tp = t;   // t^(2j+1)
  double kp = 1;   // (kt)^(2j)
  double fact = 1;
  double sum = 0.0;
  for (int j = 1; j < 40; ++j) {
    tp *= t2;
    kp *= kt2;
    fact *= (2.0 * j) * (2.0 * j + 1.0);
    const double term = ((j % 2) ? -1.0 : 1.0) * (tp - t * kp) / fact;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

double WarpingProfile::angle_defect(double t) const {
  if (t == 0.0) return 0.0;
  const ProfileJet j = jet(t);
  return 1.0 - j.d1 / j.value * std::tan(t);
}

double WarpingProfile::sine_gap(double t) const { return std::sin(t) - jet(t).value; }

ProfileJet RoundProfile::jet(double t) const {
  check_range(t);
  const double s = std::sin(t);
  return {s, std::cos(t), -s, s * s};
}

std::vector<double> RoundProfile::features() const { return {0.0, kHalfPi}; }

double BridgeTheta::value(double t) const {
  if (t <= psi) return 0.0;
  const double u = (t - psi) / width;
  if (u >= 1.0) return dtheta_b * (t - psi - 0.5 * width);
  return dtheta_b * width * smooth_step_complement_integral(u);
}

double BridgeTheta::d1(double t) const {
  return dtheta_b * (1.0 - smooth_step((t - psi) / width));
}

double BridgeTheta::d2(double t) const {
  return -dtheta_b * smooth_step_d1((t - psi) / width) / width;
}

BridgeTheta build_bridge_theta(const ParamSet& ps) {
  const BridgeEnds e = bridge_ends(ps.R0, ps.kappa, ps.zeta, ps.r0);
  if (!(e.theta_b < 0.0)) throw CertificationError("bridge_value_sign", "theta(b) must be negative");
  if (!(e.dtheta_b < 0.0)) {
    throw CertificationError("bridge_slope_sign", "theta'(b) must be negative");
  }
  BridgeTheta th;
  th.psi = ps.psi;
  th.b = ps.junction();
  th.theta_b = e.theta_b;
  th.dtheta_b = e.dtheta_b;
  th.width = 2.0 * ((th.b - th.psi) - e.theta_b / e.dtheta_b);
  if (!(th.width > 0.0) || th.width > th.b - th.psi) {
    throw CertificationError("bridge_feasibility",
                             "bridge ramp width " + std::to_string(th.width) +
                                 " does not fit in (psi, b)");
  }
  return th;
}

ProfileC1::ProfileC1(const ParamSet& ps, const BumpFunction& bump, const BridgeTheta& bridge)
    : ps_(ps), bump_(bump), bridge_(bridge), k_(2.0 / ps.r0) {}

ProfileJet ProfileC1::inner_jet(double t) const {
  const double y = k_ * t;
  const double sy = std::sin(y);
  const double cy = std::cos(y);
  const double th = bridge_.value(t);
  const double dth = bridge_.d1(t);
  const double half = std::sin(0.5 * y);
  ProfileJet j;
  j.value = sy / k_ + th;
  j.d1 = cy + dth;
  j.d2 = -k_ * sy + bridge_.d2(t);
  // 1 - (cos y + theta')^2 = (1 - cos y - theta')(1 + cos y + theta')
  j.slope_defect = (2.0 * half * half - dth) * (1.0 + cy + dth);
  return j;
}

ProfileJet ProfileC1::outer_jet(double t) const {
  const double r0 = ps_.r0;
  const double delta = ps_.shift();
  const double x = t / r0 - 1.0;
  const double a = t + delta * bump_.value(x);
  const double a1 = 1.0 + delta / r0 * bump_.d1(x);
  const double a2 = delta / (r0 * r0) * bump_.d2(x);
  const double sa = std::sin(a);
  const double ca = std::cos(a);
  ProfileJet j;
  j.value = ps_.R0 * sa;
  j.d1 = ps_.R0 * ca * a1;
  j.d2 = -ps_.R0 * sa * a1 * a1 + ps_.R0 * ca * a2;
  j.slope_defect = 1.0 - j.d1 * j.d1;
  return j;
}

ProfileJet ProfileC1::jet(double t) const {
  check_range(t);
  if (t < ps_.junction()) return inner_jet(t);
  return outer_jet(t);
}

double ProfileC1::cap_numerator(double t) const {
  // R cos t - R' sin t for R = sin(kt)/k. Product-to-sum gives
  // k N = ((1-k) sin((k+1)t) + (1+k) sin((k-1)t)) / 2, expanded in t.
  const double k = k_;
  if (k * t >= 0.5) return std::sin(k * t) * std::cos(t) / k - std::cos(k * t) * std::sin(t);
  const double pm2 = (k - 1.0) * (k - 1.0) * t * t;
  const double pp2 = (k + 1.0) * (k + 1.0) * t * t;
  double pm = 1.0, pp = 1.0, fact = 1.0, sum = 0.0;
  for (int j = 1; j < 40; ++j) {
    pm *= pm2;
    pp *= pp2;
    fact *= (2.0 * j) * (2.0 * j + 1.0);
    const double term = ((j % 2) ? -1.0 : 1.0) * (pm - pp) / fact;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return (k * k - 1.0) * t * sum / (2.0 * k);
}

double ProfileC1::angle_defect(double t) const {
  check_range(t);
  if (t == 0.0) return 0.0;
  if (t < ps_.junction()) {
    const ProfileJet j = inner_jet(t);
    const double n = cap_numerator(t) + bridge_.value(t) * std::cos(t) -
                     bridge_.d1(t) * std::sin(t);
    return n / (j.value * std::cos(t));
  }
  if (t <= ps_.r0) return slope_angle_gap(t, ps_.shift());
  return WarpingProfile::angle_defect(t);
}

double ProfileC1::sine_gap(double t) const {
  check_range(t);
  if (t < ps_.junction()) {
    const double cap = (k_ * t < 0.5) ? sine_gap_series(t, k_) : std::sin(t) - std::sin(k_ * t) / k_;
    return cap - bridge_.value(t);
  }
  return std::sin(t) - outer_jet(t).value;
}

ZeroLimits ProfileC1::zero_limits() const { return {k_ * k_, k_ * k_}; }

std::vector<double> ProfileC1::features() const {
  const double b = ps_.junction();
  std::vector<double> f{0.0,
                        bridge_.psi,
                        std::min(bridge_.psi + bridge_.width, b),
                        b,
                        ps_.r0,
                        std::min(ps_.r0 * (1.0 + ps_.Lambda), kHalfPi),
                        kHalfPi};
  std::sort(f.begin(), f.end());
  return f;
}

double ProfileC1::bridge_concavity_margin(double t) const {
  const ProfileJet j = inner_jet(t);
  return (-bridge_.d2(t) - k_ * k_ * bridge_.value(t)) / j.value;
}

ProfileC1::Jumps ProfileC1::junction_jumps() const {
  const double psi = bridge_.psi;
  const double b = ps_.junction();
  const ProfileJet cap{std::sin(k_ * psi) / k_, std::cos(k_ * psi), 0.0, 0.0};
  const ProfileJet in_psi = inner_jet(psi);
  const ProfileJet in_b = inner_jet(b);
  const ProfileJet out_b = outer_jet(b);
  return {std::abs(in_psi.value - cap.value), std::abs(in_psi.d1 - cap.d1),
          std::abs(in_b.value - out_b.value), std::abs(in_b.d1 - out_b.d1)};
}

double concavity_ratio(const WarpingProfile& prof, double t) {
  if (t == 0.0) return prof.zero_limits().neg_d2_over_value;
  const ProfileJet j = prof.jet(t);
  return -j.d2 / j.value;
}

CheckLog certify_c1(const ProfileC1& prof, int points) {
  const ParamSet& ps = prof.params();
  const double b = ps.junction();
  const auto features = prof.features();
  const ProfileC1::Jumps jumps = prof.junction_jumps();
  CheckLog log;
  log.push_back(make_check("c1_join_inner", "calR and calR' continuous at psi (jump < 1e-9)",
                           kJumpTolerance - std::max(jumps.value_psi, jumps.slope_psi),
                           prof.bridge().psi));
  log.push_back(make_check("c1_join_outer",
                           "calR and calR' continuous at r0^2/kappa (jump < 1e-9)",
                           kJumpTolerance - std::max(jumps.value_b, jumps.slope_b), b));
  log.push_back(grid_check(
      "inner_concavity", "-calR''/calR >= 4/r0^2 on (psi, r0^2/kappa)",
      [&](double t) { return prof.bridge_concavity_margin(t); },
      feature_grid(features, prof.bridge().psi, std::nextafter(b, 0.0), points), false));
  log.push_back(grid_check(
      "outer_concavity", "calR'' < 0 on (r0^2/kappa, pi/2]",
      [&](double t) { return concavity_ratio(prof, t); },
      feature_grid(features, b, kHalfPi, points)));
  log.push_back(grid_check(
      "profile_positive", "calR(t) > 0 on (0, pi/2]",
      [&](double t) { return t == 0.0 ? 1.0 : prof.jet(t).value / std::sin(t); },
      feature_grid(features, 0.0, kHalfPi, points)));
  return log;
}

ProfileC1 assemble_profile(const ParamSet& ps, const BumpFunction& bump,
                           const BridgeTheta& bridge) {
  ProfileC1 prof(ps, bump, bridge);
  const CheckLog log = certify_c1(prof, 10000);
  if (const CheckResult* bad = first_failure(log)) {
    throw CertificationError(bad->name, "worst margin " + std::to_string(bad->margin) +
                                            " at t = " + std::to_string(bad->at));
  }
  return prof;
}

SmoothProfile::SmoothProfile(const ProfileC1& base, double mu, double half_width)
    : base_(base), mu_(mu), h_(half_width), window_(0.5 * mu) {
  if (!(mu > 0.0) || !(half_width > 0.0) || !(half_width < window_)) {
    throw ConfigError("smoothing requires 0 < h < mu/2");
  }
  const ParamSet& ps = base.params();
  const double b = ps.junction();
  const double ramp_end = base.bridge().psi + base.bridge().width;
  if (!(b - window_ - h_ > ramp_end) || !(b + window_ + h_ < ps.r0)) {
    throw CertificationError("smoothing_budget", "smoothing window overlaps another feature");
  }
  const MollifierKernel& rho = mollifier_kernel();
  defect_inner_ = rho.cosine_defect(2.0 * h_ / ps.r0);
  defect_outer_ = rho.cosine_defect(h_);
}

bool SmoothProfile::in_window(double t) const {
  return std::abs(t - base_.params().junction()) < window_;
}

ProfileJet SmoothProfile::core_jet(double t) const {
  using boost::math::quadrature::gauss_kronrod;
  {
    std::lock_guard<std::mutex> guard(cache_->lock);
    auto it = cache_->jets.find(t);
    if (it != cache_->jets.end()) return it->second;
  }
  const MollifierKernel& rho = mollifier_kernel();
  const double split = (t - base_.params().junction()) / h_;
  double acc[3] = {0.0, 0.0, 0.0};
  for (int d = 0; d < 3; ++d) {
    auto pick = [d](const ProfileJet& j) { return d == 0 ? j.value : (d == 1 ? j.d1 : j.d2); };
    // t - h u < b for u > split: the inner piece; the outer piece otherwise
    acc[d] = gauss_kronrod<double, 61>::integrate(
                 [&](double u) { return rho.density(u) * pick(base_.inner_jet(t - h_ * u)); },
                 split, 1.0, 6, 1e-13) +
             gauss_kronrod<double, 61>::integrate(
                 [&](double u) { return rho.density(u) * pick(base_.outer_jet(t - h_ * u)); },
                 -1.0, split, 6, 1e-13);
  }
  const ProfileJet out{acc[0], acc[1], acc[2], 1.0 - acc[1] * acc[1]};
  std::lock_guard<std::mutex> guard(cache_->lock);
  cache_->jets.emplace(t, out);
  return out;
}

ProfileJet SmoothProfile::cutoff_jet(double t) const {
  const double b = base_.params().junction();
  const double span = window_ - h_;
  const double s = t - b;
  const double v = (std::abs(s) - h_) / span;
  const double chi = smooth_step(v);
  const double sign = s > 0.0 ? 1.0 : -1.0;
  const double chi1 = sign * smooth_step_d1(v) / span;
  const double chi2 = smooth_step_d2(v) / (span * span);
  ProfileJet j;
  if (s > 0.0) {
    // kernel average of R0 sin(t + delta) is (1 - defect) times itself
    const ProfileJet g = base_.outer_jet(t);
    const double c = defect_outer_;
    j.value = g.value * (1.0 - chi * c);
    j.d1 = g.d1 * (1.0 - chi * c) - chi1 * c * g.value;
    j.d2 = g.d2 * (1.0 - chi * c) - 2.0 * chi1 * c * g.d1 - chi2 * c * g.value;
  } else {
    // the bridge is linear here, so only the sine cap feels the kernel
    const ProfileJet f = base_.inner_jet(t);
    const double k = 2.0 / base_.params().r0;
    const double c = defect_inner_;
    const double e0 = -c * std::sin(k * t) / k;
    const double e1 = -c * std::cos(k * t);
    const double e2 = c * k * std::sin(k * t);
    j.value = f.value + chi * e0;
    j.d1 = f.d1 + chi1 * e0 + chi * e1;
    j.d2 = f.d2 + chi2 * e0 + 2.0 * chi1 * e1 + chi * e2;
  }
  j.slope_defect = 1.0 - j.d1 * j.d1;
  return j;
}

ProfileJet SmoothProfile::jet(double t) const {
  check_range(t);
  if (!in_window(t)) return base_.jet(t);
  if (std::abs(t - base_.params().junction()) < h_) return core_jet(t);
  return cutoff_jet(t);
}

double SmoothProfile::angle_defect(double t) const {
  if (!in_window(t)) return base_.angle_defect(t);
  return WarpingProfile::angle_defect(t);
}

double SmoothProfile::sine_gap(double t) const {
  if (!in_window(t)) return base_.sine_gap(t);
  return WarpingProfile::sine_gap(t);
}

std::vector<double> SmoothProfile::features() const {
  std::vector<double> f = base_.features();
  const double b = base_.params().junction();
  for (double x : {b - window_, b - h_, b + h_, b + window_}) f.push_back(x);
  std::sort(f.begin(), f.end());
  return f;
}

CheckLog certify_smoothing(const SmoothProfile& prof, int points, Scope scope) {
  const ParamSet& ps = prof.base().params();
  const double b = ps.junction();
  const double r0 = ps.r0;
  const double mu = prof.mu();
  const bool full = scope == Scope::full;
  const double lo = full ? 0.0 : b - prof.window();
  const double hi = full ? r0 : b + prof.window();
  const auto features = prof.features();
  auto grid = [&](double a, double z) { return feature_grid(features, a, z, points); };

  CheckLog log;
  log.push_back(grid_check(
      "smoothed_inner_concavity", "-R''/R > 2/r0^2 on [0, r0^2/kappa]",
      [&](double t) { return concavity_ratio(prof, t) - 2.0 / (r0 * r0); }, grid(lo, b)));
  log.push_back(grid_check(
      "smoothed_window_concavity", "-R''/R > 1 - mu on [r0^2/kappa, r0]",
      [&](double t) { return concavity_ratio(prof, t) - (1.0 - mu); }, grid(b, hi)));
  log.push_back(grid_check(
      "smoothed_log_slope", "|R'/R - calR'/calR| < mu on the smoothing windows",
      [&](double t) {
        const ProfileJet s = prof.jet(t);
        const ProfileJet c = prof.base().jet(t);
        return mu - std::abs(s.d1 / s.value - c.d1 / c.value);
      },
      grid(b - prof.window(), b + prof.window())));
  log.push_back(grid_check(
      "global_concavity", "R'' < 0 on (0, pi/2]",
      [&](double t) { return concavity_ratio(prof, t); }, grid(lo, full ? kHalfPi : hi)));
  log.push_back(grid_check(
      "slope_angle_bound", "(R'/R) tan t <= 1 on [0, r0]",
      [&](double t) { return prof.angle_defect(t); }, grid(lo, hi), false));
  log.push_back(grid_check(
      "slope_angle_strict", "(R'/R) tan t < 1 on [r0/2, r0]",
      [&](double t) { return prof.angle_defect(t); }, grid(full ? 0.5 * r0 : lo, hi)));
  log.push_back(grid_check(
      "profile_below_sine", "R(t) <= sin t on [0, r0]",
      [&](double t) { return prof.sine_gap(t); }, grid(lo, hi), false));
  log.push_back(grid_check(
      "slope_range", "0 <= R' <= 1 on [0, r0]",
      [&](double t) {
        const ProfileJet j = prof.jet(t);
        return std::min(j.d1, j.slope_defect / (1.0 + j.d1));
      },
      grid(lo, hi), false));
  return log;
}

SmoothProfile smooth_profile(const ProfileC1& base, double mu) {
  double h = 0.25 * mu;
  std::string last = "smoothing_budget";
  std::string detail;
  for (int attempt = 0; attempt <= 40; ++attempt, h *= 0.5) {
    SmoothProfile sp(base, mu, h);
    const CheckLog log = certify_smoothing(sp, 200, Scope::window);
    const CheckResult* bad = first_failure(log);
    if (!bad) return sp;
    last = bad->name;
    detail = "margin " + std::to_string(bad->margin) + " at t = " + std::to_string(bad->at);
  }
  throw CertificationError(last, "smoothing retries exhausted; " + detail);
}

}  // namespace ricci
