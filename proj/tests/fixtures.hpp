#pragma once

#include "ricci/params.hpp"
#include "ricci/profile.hpp"

#include <map>
#include <memory>
#include <utility>

namespace ricci::testing {

// Default construction for one (n, p), built once per test binary.
struct Built {
  ParamSet ps;
  std::shared_ptr<ProfileC1> base;
  std::shared_ptr<SmoothProfile> smooth;
};

inline const Built& built(int n = 3, int p = 1) {
  static std::map<std::pair<int, int>, Built> cache;
  auto it = cache.find({n, p});
  if (it != cache.end()) return it->second;
  Built b;
  b.ps = select_params(n, p);
  const BumpFunction gamma(b.ps.R0, b.ps.Lambda);
  b.base = std::make_shared<ProfileC1>(assemble_profile(b.ps, gamma, build_bridge_theta(b.ps)));
  b.smooth = std::make_shared<SmoothProfile>(smooth_profile(*b.base, b.ps.mu));
  return cache.emplace(std::pair{n, p}, std::move(b)).first->second;
}

// Relative difference with an absolute floor.
inline double rel_diff(double a, double b, double floor = 1e-300) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

}  // namespace ricci::testing
