#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace mproj {

/// One verified identity or inequality: the residual that was measured and
/// the bound it was held to.
struct CheckResult {
  std::string name;
  double residual = 0.0;
  double bound = 0.0;
  bool passed = false;

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

inline CheckResult make_check(std::string name, double residual, double bound) {
  return CheckResult{std::move(name), residual, bound, residual <= bound};
}

/// Records a boolean fact (e.g. an inclusion or an equivalence) as a check.
inline CheckResult make_flag(std::string name, bool ok) {
  return CheckResult{std::move(name), ok ? 0.0 : 1.0, 0.0, ok};
}

inline bool all_passed(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

inline void append(std::vector<CheckResult>& into, const std::vector<CheckResult>& from) {
  into.insert(into.end(), from.begin(), from.end());
}

}  // namespace mproj
