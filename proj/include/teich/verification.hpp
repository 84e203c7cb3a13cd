#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "teich/coordinates.hpp"

// Randomised and closed-form suites comparing the coordinate formulas with
// the half-plane oracle. All randomness comes from std::mt19937_64 seeded
// from Options::seed, so reports are reproducible byte for byte.
namespace teich::verify {

inline constexpr std::uint64_t kDefaultSeed = 20240607;
inline constexpr int kSchemaVersion = 1;

struct Options {
  std::uint64_t seed = kDefaultSeed;
  int samples = 100;
  int laminations = 50;
  /// Replaces every default tolerance when set.
  std::optional<double> tolerance;
};

struct Check {
  std::string suite;
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::uint64_t seed = kDefaultSeed;
  std::vector<Check> checks;

  bool passed() const;
  /// True when every check of `suite` passed (and there is at least one).
  bool suite_passed(const std::string& suite) const;
  void append(const Report& other);
};

/// Random points with entries uniform in [-2, 2].
ShearDecorationPoint random_shear_point(const TriangulatedSurface& surface, std::mt19937_64& rng);
LambdaBoundaryPoint random_lambda_point(const TriangulatedSurface& surface, std::mt19937_64& rng);

/// Surfaces used by the suites: the bundled ones, and the special
/// triangulations on which the inverse chart is exercised.
std::vector<std::string> forward_surfaces();
std::vector<SurfaceSignature> roundtrip_signatures();

Report forward_oracle(const Options& options);
Report roundtrip(const Options& options);
Report derivatives(const Options& options);
Report equidistant_limit(const Options& options);
Report golden_forms(const Options& options);
Report lamination_compatibility(const Options& options);
Report decoration_origin(const Options& options);
Report puncture_coefficients(const Options& options);

/// Every suite above, in that order.
Report all(const Options& options);

std::string to_text(const Report& report, bool color);
std::string to_json(const Report& report);

}  // namespace teich::verify
