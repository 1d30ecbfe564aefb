#include <doctest.h>

#include "ricci/errors.hpp"
#include "ricci/params.hpp"

#include <cmath>
#include <cstring>
#include <numbers>

using namespace ricci;

namespace {

constexpr double kPi = std::numbers::pi;

std::string clause_of(int n, int p, const Overrides& o) {
  try {
    select_params(n, p, o);
  } catch (const CertificationError& e) {
    return e.clause();
  }
  return "";
}

}  // namespace

TEST_CASE("default cascade") {
  const ParamSet ps = select_params(3, 3);
  CHECK(ps.R0 == 0.1);
  CHECK(ps.kappa == doctest::Approx(1.1 * 2.0 / std::sqrt(0.3)).epsilon(1e-15));
  CHECK(ps.zeta == doctest::Approx(0.5 * (ps.kappa + 0.075 * std::pow(ps.kappa, 3))).epsilon(1e-15));
  CHECK(ps.Lambda > 1.0 / ps.R0);
  CHECK(ps.r0 < kPi / 3);
  CHECK(ps.r0 < ps.R0);
  CHECK(ps.r0 < kPi / (2 * (1 + ps.Lambda)));
  for (double c : ps.c) CHECK(ps.r0 < c);
  CHECK(0.0 < ps.psi);
  CHECK(ps.psi < ps.junction());
  CHECK(ps.mu0 < ps.psi);
  CHECK(ps.mu0 * std::tan(ps.r0) < ps.iota);
  CHECK(ps.mu == doctest::Approx(0.5 * ps.mu0).epsilon(1e-15));
}

TEST_CASE("every inequality holds on (0, r0]") {
  const ParamSet ps = select_params(5, 2);
  for (Threshold id : kAllThresholds) {
    CAPTURE(threshold_name(id));
    double worst = INFINITY;
    for (int i = 1; i <= 10000; ++i) {
      const auto s = lemma_bound_eval(id, ps.r0 * i / 10000.0, ps.constants());
      worst = std::min(worst, s.rhs - s.lhs);
    }
    CHECK(worst > 0.0);
  }
}

TEST_CASE("bridge end data and feasibility at psi") {
  for (int p : {1, 5, 100}) {
    const ParamSet ps = select_params(3, p);
    const double b = ps.junction(), k = ps.kappa, r0 = ps.r0;
    const double shifted = b + ps.shift();
    const double theta_b = ps.R0 * std::sin(shifted) - r0 / 2 * std::sin(2 * r0 / k);
    const double dtheta_b = ps.R0 * std::cos(shifted) - std::cos(2 * r0 / k);
    const BridgeEnds ends = bridge_ends(ps.R0, k, ps.zeta, r0);
    CHECK(ends.theta_b == doctest::Approx(theta_b).epsilon(1e-12));
    CHECK(ends.dtheta_b == doctest::Approx(dtheta_b).epsilon(1e-12));
    CHECK(theta_b < 0.0);
    CHECK(dtheta_b < 0.0);
    CHECK(-dtheta_b > -theta_b / (b - ps.psi));
    CHECK(bridge_slack(ps, ps.psi) >= 1e-3 * bridge_slack(ps, 0.0));
    // psi is a dyadic fraction of b
    const double k2 = std::log2(b / ps.psi);
    CHECK(k2 == doctest::Approx(std::round(k2)));
  }
}

TEST_CASE("iota matches a direct minimization") {
  const ParamSet ps = select_params(3, 1);
  const long double d = ps.shift();
  long double best = INFINITY;
  const int m = 100000;
  for (int i = 0; i < m; ++i) {
    const long double t = ps.junction() + (ps.r0 - ps.junction()) * i / (m - 1.0L);
    best = std::min(best, 1.0L - std::tan(t) / std::tan(t + d));
  }
  CHECK(ps.iota == doctest::Approx(0.9 * static_cast<double>(best)).epsilon(1e-6));
  const long double r0 = ps.r0;
  CHECK(1.0L - std::tan(r0) / std::tan(r0 + d) > 0.0L);
}

TEST_CASE("iota shrinks as zeta grows") {
  ParamSet ps = select_params(3, 1);
  const double a = compute_iota(ps);
  ps.zeta *= 2;
  CHECK(compute_iota(ps) < a);
}

TEST_CASE("mu0 satisfies all four smoothing bounds") {
  const ParamSet ps = select_params(3, 1);
  const long double mu0 = ps.mu0, d = ps.shift(), r0 = ps.r0;
  CHECK(mu0 < ps.psi);
  CHECK(mu0 * std::tan(r0) < ps.iota);
  const long double c2 = 1.0L / (std::tan(r0) * std::tan(r0));
  const int m = 20000;
  for (int i = 0; i < m; ++i) {
    const long double t = ps.junction() + (r0 - ps.junction()) * i / (m - 1.0L);
    const long double cot_t = 1.0L / std::tan(t), cot_s = 1.0L / std::tan(t + d);
    REQUIRE(mu0 < (cot_t - cot_s) / (1.0L + cot_t));
    REQUIRE(mu0 < (cot_s * (1.0L + c2) * std::tan(t) - c2) / (std::tan(r0) * (1.0L + c2)));
  }
  // the principal budget numerator at b is the tan ratio inequality at r0
  const long double b = ps.junction();
  const long double num = (1.0L / std::tan(b + d)) * (1.0L + c2) * std::tan(b) - c2;
  CHECK(num > 0.0L);
}

TEST_CASE("cascade is deterministic") {
  const ParamSet a = select_params(7, 5);
  const ParamSet b = select_params(7, 5);
  CHECK(std::memcmp(&a.R0, &b.R0, sizeof(double)) == 0);
  for (auto [x, y] : {std::pair{a.kappa, b.kappa}, {a.zeta, b.zeta}, {a.Lambda, b.Lambda},
                      {a.r0, b.r0}, {a.psi, b.psi}, {a.iota, b.iota}, {a.mu0, b.mu0},
                      {a.mu, b.mu}}) {
    CHECK(std::memcmp(&x, &y, sizeof(double)) == 0);
  }
}

TEST_CASE("r0 does not increase with p") {
  double prev = INFINITY;
  for (int p : {1, 2, 3, 5, 10, 20, 40, 100}) {
    const double r0 = select_params(3, p).r0;
    CHECK(r0 <= prev);
    CHECK(r0 < kPi / p);
    prev = r0;
  }
  CHECK(select_params(7, 100).r0 < kPi / 100);
}

TEST_CASE("r0 does not depend on n") {
  CHECK(select_params(3, 2).r0 == select_params(13, 2).r0);
}

TEST_CASE("log records the clauses in cascade order") {
  CheckLog log;
  select_params(3, 1, {}, &log);
  REQUIRE(log.size() == 9);
  CHECK(log.front().name == "squash_factor_bound");
  CHECK(log.back().name == "smoothing_budget");
  for (const auto& r : log) CHECK(r.passed);
}

TEST_CASE("invalid overrides name their clause") {
  const ParamSet ps = select_params(3, 1);
  CHECK(clause_of(3, 1, {{"zeta", ps.kappa}}) == "zeta_interval");
  CHECK(clause_of(3, 1, {{"zeta", 10 * std::pow(ps.kappa, 3)}}) == "zeta_interval");
  CHECK(clause_of(3, 1, {{"zeta", 0.75 * ps.R0 * std::pow(ps.kappa, 3)}}) == "zeta_interval");
  CHECK(clause_of(3, 1, {{"R0", 0.2}}) == "squash_factor_bound");
  CHECK(clause_of(3, 1, {{"kappa", 2.0}}) == "kappa_lower_bound");
  CHECK(clause_of(3, 1, {{"Lambda", 5.0}}) == "bump_derivative_bounds");
  CHECK(clause_of(3, 1, {{"r0", ps.r0 / 0.9}}) == "disc_radius_bound");
  CHECK(clause_of(3, 1, {{"mu", ps.mu0}}) == "smoothing_budget");
  CHECK(clause_of(3, 1, {{"mu", 0.0}}) == "smoothing_budget");
  CHECK(clause_of(3, 1, {{"mu", ps.mu0 / 4}}).empty());
}

TEST_CASE("zeta equal to kappa also fails the tan ratio scan") {
  try {
    threshold_scan(Threshold::TanRatio, Constants{0.1, 4.0, 4.0});
    FAIL("expected failure");
  } catch (const CertificationError& e) {
    CHECK(e.clause() == "tan_ratio_bound");
  }
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_AS(select_params(2, 1), ConfigError);
  CHECK_THROWS_AS(select_params(3, 0), ConfigError);
  CHECK_THROWS_AS(select_params(3, 1, {{"sigma", 1.0}}), ConfigError);
  CHECK_THROWS_AS(select_params(3, 1, {{"zeta", NAN}}), ConfigError);
  try {
    select_params(3, 1, {{"sigma", 1.0}});
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("kappa") != std::string::npos);
  }
}
