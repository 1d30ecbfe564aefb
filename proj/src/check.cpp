#include "ricci/check.hpp"

#include <cmath>

namespace ricci {

CheckResult make_check(std::string name, std::string anchor, double margin, double at,
                       bool strict) {
  CheckResult r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.margin = margin;
  r.at = at;
  r.strict = strict;
  r.passed = !std::isnan(margin) && (strict ? margin > kStrictFloor : margin >= 0.0);
  return r;
}

CheckResult skipped_check(std::string name, std::string anchor, std::string cause) {
  CheckResult r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.passed = false;
  r.cause = std::move(cause);
  return r;
}

const CheckResult* first_failure(const CheckLog& log) {
  for (const auto& r : log) {
    if (!r.passed) return &r;
  }
  return nullptr;
}

}  // namespace ricci
