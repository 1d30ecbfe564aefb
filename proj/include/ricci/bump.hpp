#pragma once

namespace ricci {

/// Monotone C-infinity cutoff gamma(x) = S(x / Lambda): 1 for x <= 0,
/// 0 for x >= Lambda, with sup|gamma'| and sup|gamma''| below R0.
class BumpFunction {
 public:
  BumpFunction(double R0, double Lambda);

  double R0() const { return R0_; }
  double Lambda() const { return Lambda_; }

  double value(double x) const;
  double d1(double x) const;
  double d2(double x) const;

  /// Exact suprema from the cached step bounds.
  double sup_d1() const;
  double sup_d2() const;

 private:
  double R0_;
  double Lambda_;
};

/// Support length giving both derivative bounds with a 10% margin:
/// max(1/R0 + 1, 1.1 sup|S'|/R0, 1.1 sqrt(sup|S''|/R0)).
double default_bump_support(double R0);

/// Throws ConfigError unless 0 < R0 <= 1/10.
BumpFunction build_gamma(double R0);

}  // namespace ricci
