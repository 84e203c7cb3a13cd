// One PASS/FAIL line per acceptance criterion, at the default tolerances.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>

#include "teich/verification.hpp"

using namespace teich::verify;

namespace {

struct Criterion {
  const char* label;
  std::function<Report(const Options&)> suite;
};

}  // namespace

int main() {
  const Options options;
  const Criterion criteria[] = {
      {"forward map agrees with the half-plane oracle on every bundled surface", forward_oracle},
      {"inverse and forward charts compose to the identity; decoration fiber closes", roundtrip},
      {"finite differences match the closed-form derivatives", derivatives},
      {"equidistant curves converge monotonically to the horocycle", equidistant_limit},
      {"closed-form inverses on the three-punctured sphere and once-punctured bigon", golden_forms},
      {"lambda lengths of A-laminations match their edge weights", lamination_compatibility},
      {"zero decoration passes through the highest base point", decoration_origin},
      {"puncture coefficients (2, -1) are pinned by roundtrip closure", puncture_coefficients},
  };

  int failed = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    const Report report = c.suite(options);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = report.passed() && !report.checks.empty();
    double worst_ratio = 0.0;
    const Check* worst = nullptr;
    for (const auto& check : report.checks) {
      // Rejection checks pass by exceeding their bound; they are not "closest to failing".
      if (check.passed && check.max_error > check.tolerance) continue;
      const double ratio = check.tolerance > 0 ? check.max_error / check.tolerance : check.max_error;
      if (!worst || ratio > worst_ratio || !check.passed) {
        worst = &check;
        worst_ratio = ratio;
        if (!check.passed) break;
      }
    }
    std::printf("%s  [%d] %s (%zu checks, worst %s: %.3g <= %.3g, %.2fs)\n", ok ? "PASS" : "FAIL", index, c.label,
                report.checks.size(), worst ? worst->name.c_str() : "-", worst ? worst->max_error : 0.0,
                worst ? worst->tolerance : 0.0, seconds);
    if (!ok) ++failed;
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
