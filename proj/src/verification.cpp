#include "teich/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include <json.hpp>

#include "teich/catalog.hpp"
#include "teich/laminations.hpp"
#include "teich/oracle.hpp"

namespace teich::verify {

namespace {

// FNV-1a, so per-check streams do not depend on the standard library's hash.
std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Independent stream per (suite, subject) so suites can run in any order.
std::mt19937_64 stream(const Options& o, const std::string& key) {
  std::seed_seq seq{static_cast<std::uint32_t>(o.seed), static_cast<std::uint32_t>(o.seed >> 32),
                    static_cast<std::uint32_t>(fnv1a(key)), static_cast<std::uint32_t>(fnv1a(key) >> 32)};
  return std::mt19937_64(seq);
}

Check make_check(const Options& o, std::string suite, std::string name, double error, double tolerance,
                 std::string detail = {}) {
  const double tol = o.tolerance.value_or(tolerance);
  return {std::move(suite), std::move(name), error, tol, std::isfinite(error) && error <= tol, std::move(detail)};
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double point_distance(const ShearDecorationPoint& a, const ShearDecorationPoint& b) {
  return std::max(max_abs_diff(a.shear, b.shear), max_abs_diff(a.decoration, b.decoration));
}

double point_distance(const LambdaBoundaryPoint& a, const LambdaBoundaryPoint& b) {
  return std::max(max_abs_diff(a.lambda, b.lambda), max_abs_diff(a.boundary_length, b.boundary_length));
}

std::string signature_name(const SurfaceSignature& s) {
  std::string out = "special(g=" + std::to_string(s.genus) + ",p=" + std::to_string(s.punctures) + ",spikes=[";
  for (size_t i = 0; i < s.spikes_per_boundary.size(); ++i) {
    out += (i ? "," : "") + std::to_string(s.spikes_per_boundary[i]);
  }
  return out + "])";
}

std::vector<std::pair<std::string, TriangulatedSurface>> special_surfaces() {
  std::vector<std::pair<std::string, TriangulatedSurface>> out;
  for (const auto& sig : roundtrip_signatures()) out.emplace_back(signature_name(sig), special_triangulation(sig));
  return out;
}

// Arcs between boundary edges with at most three crossings that classify as
// general curves; each can be added to any set of A-curves without crossings.
std::vector<CombinatorialCurve> general_boundary_arcs(const TriangulatedSurface& s) {
  std::vector<CombinatorialCurve> out;
  std::set<std::vector<Segment>> seen;
  const auto interior = s.interior_edges();
  const auto boundary = s.boundary_edges();
  std::vector<std::vector<int>> sequences{{}};
  for (size_t len = 0; len < 3; ++len) {
    const size_t n = sequences.size();
    for (size_t i = 0; i < n; ++i) {
      if (sequences[i].size() != len) continue;
      for (int e : interior) {
        auto next = sequences[i];
        next.push_back(e);
        sequences.push_back(std::move(next));
      }
    }
  }
  for (const auto& crossings : sequences) {
    for (int b0 : boundary) {
      for (int b1 : boundary) {
        CombinatorialCurve c{CurveShape::arc, crossings,
                             {{CurveEnd::Kind::boundary_edge, b0}, {CurveEnd::Kind::boundary_edge, b1}}};
        try {
          const auto r = resolve_curve(s, c);
          const auto cls = classify_curve(s, c);
          if (cls.kind == CurveKind::general && seen.insert(r.segments).second) {
            out.push_back(curve_from_resolution(s, r));
          }
        } catch (const Error&) {
        }
      }
    }
  }
  return out;
}

}  // namespace

// ==========================================================
// ================           Report           ==============
// ==========================================================

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

bool Report::suite_passed(const std::string& suite) const {
  bool any = false;
  for (const auto& c : checks) {
    if (c.suite != suite) continue;
    any = true;
    if (!c.passed) return false;
  }
  return any;
}

void Report::append(const Report& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }

ShearDecorationPoint random_shear_point(const TriangulatedSurface& surface, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  auto p = ShearDecorationPoint::zero(surface);
  for (int e : surface.interior_edges()) p.shear[e] = u(rng);
  for (auto& d : p.decoration) d = u(rng);
  return p;
}

LambdaBoundaryPoint random_lambda_point(const TriangulatedSurface& surface, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  auto q = LambdaBoundaryPoint::zero(surface);
  for (auto& a : q.lambda) a = u(rng);
  for (int v : surface.punctures()) q.boundary_length[v] = u(rng);
  return q;
}

std::vector<std::string> forward_surfaces() { return bundled_surface_names(); }

std::vector<SurfaceSignature> roundtrip_signatures() {
  return {{0, 0, {3}}, {0, 1, {1}}, {0, 1, {2}}, {0, 2, {1}}, {0, 1, {1, 1}}, {1, 1, {1}}, {0, 3, {2}}};
}

// ==========================================================
// ================           Suites           ==============
// ==========================================================

Report forward_oracle(const Options& o) {
  Report report{o.seed, {}};
  for (const auto& name : forward_surfaces()) {
    const auto s = bundled_surface(name);
    auto rng = stream(o, "forward/" + name);
    double lambda_err = 0.0, length_err = 0.0;
    for (int i = 0; i < o.samples; ++i) {
      const auto p = random_shear_point(s, rng);
      const auto closed = psi_forward(s, p);
      const auto measured = oracle::oracle_psi_forward(s, p);
      lambda_err = std::max(lambda_err, max_abs_diff(closed.lambda, measured.lambda));
      length_err = std::max(length_err, max_abs_diff(closed.boundary_length, measured.boundary_length));
    }
    report.checks.push_back(make_check(o, "forward-oracle", name + ": lambda lengths", lambda_err, 1e-9));
    report.checks.push_back(make_check(o, "forward-oracle", name + ": boundary lengths", length_err, 1e-9));
  }
  return report;
}

Report roundtrip(const Options& o) {
  Report report{o.seed, {}};
  for (const auto& [name, s] : special_surfaces()) {
    auto rng = stream(o, "roundtrip/" + name);
    double inv_fwd = 0.0, fwd_inv = 0.0, fiber = 0.0;
    for (int i = 0; i < o.samples; ++i) {
      const auto p = random_shear_point(s, rng);
      inv_fwd = std::max(inv_fwd, point_distance(psi_inverse(s, psi_forward(s, p)), p));
      const auto q = random_lambda_point(s, rng);
      fwd_inv = std::max(fwd_inv, point_distance(psi_forward(s, psi_inverse(s, q)), q));
      for (int v = 0; v < s.vertex_count(); ++v) {
        const bool spike = s.vertices()[v].kind == VertexKind::spike;
        const double l = spike ? 0.0 : boundary_length_from_shear(s, v, p.shear);
        const auto kind = center_kind(s, v, l);
        const auto radii = neighborhood_radii(s, v, p.shear);
        const double r = radius_from_decoration(p.decoration[v], radii, l, kind);
        const double lower = kind == CenterKind::geodesic ? std::abs(l) : 0.0;
        fiber = std::max(fiber, std::abs(decoration_param(kind, {r, lower}, radii, l) - p.decoration[v]));
      }
    }
    report.checks.push_back(make_check(o, "roundtrip", name + ": inverse after forward", inv_fwd, 1e-9));
    report.checks.push_back(make_check(o, "roundtrip", name + ": forward after inverse", fwd_inv, 1e-9));
    report.checks.push_back(make_check(o, "roundtrip", name + ": decoration fiber r <-> d", fiber, 1e-12));
  }
  return report;
}

Report derivatives(const Options& o) {
  Report report{o.seed, {}};
  const int samples = std::max(1, o.samples / 10);
  for (const auto& name : forward_surfaces()) {
    const auto s = bundled_surface(name);
    auto rng = stream(o, "derivatives/" + name);
    double da = 0.0, dr = 0.0, dx = 0.0;
    bool has_dx = false;
    for (int i = 0; i < samples; ++i) {
      const auto fd = oracle::finite_difference_report(s, random_shear_point(s, rng));
      da = std::max(da, fd.max_error("da/dd "));
      dr = std::max(dr, fd.max_error("dd/dr "));
      dx = std::max(dx, fd.max_error("dx/dr "));
      has_dx |= std::any_of(fd.entries.begin(), fd.entries.end(),
                            [](const auto& e) { return e.name.starts_with("dx/dr "); });
    }
    report.checks.push_back(make_check(o, "derivatives", name + ": da_h/dd_v", da, 1e-6));
    report.checks.push_back(make_check(o, "derivatives", name + ": dd_v/dr_v (relative)", dr, 1e-6));
    if (has_dx) report.checks.push_back(make_check(o, "derivatives", name + ": dx_e/dr_v", dx, 1e-10));
  }
  return report;
}

Report equidistant_limit(const Options& o) {
  Report report{o.seed, {}};
  const auto limit = oracle::equidistant_limit_check(1.0, {1e-1, 1e-2, 1e-3});
  std::string detail;
  for (const auto& e : limit.entries) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%sl=%g: %.3e", detail.empty() ? "" : ", ", e.l, e.deviation);
    detail += buf;
  }
  auto check = make_check(o, "equidistant-limit", "deviation from y = 1/r at l = 1e-3", limit.entries.back().deviation,
                          2e-3, detail);
  report.checks.push_back(check);
  report.checks.push_back({"equidistant-limit", "deviation decreases with l", limit.monotone ? 0.0 : 1.0, 0.0,
                           limit.monotone, ""});
  return report;
}

Report golden_forms(const Options& o) {
  Report report{o.seed, {}};
  for (const std::string name : {"three-punctured-sphere", "once-punctured-bigon"}) {
    const auto s = bundled_surface(name);
    auto rng = stream(o, "golden/" + name);
    double x_err = 0.0, d_err = 0.0;
    for (int i = 0; i < o.samples; ++i) {
      const auto p = random_shear_point(s, rng);
      const auto back = closed_form_inverse(name, s, psi_forward(s, p));
      x_err = std::max(x_err, max_abs_diff(back.shear, p.shear));
      d_err = std::max(d_err, max_abs_diff(back.decoration, p.decoration));
    }
    report.checks.push_back(make_check(o, "golden-forms", name + ": shears", x_err, 1e-12));
    if (name == "three-punctured-sphere") {
      report.checks.push_back(make_check(o, "golden-forms", name + ": decorations", d_err, 1e-12));
    }
  }
  return report;
}

Report lamination_compatibility(const Options& o) {
  Report report{o.seed, {}};
  for (const auto& name : forward_surfaces()) {
    const auto s = bundled_surface(name);
    auto rng = stream(o, "laminations/" + name);
    const auto general = general_boundary_arcs(s);
    std::uniform_int_distribution<int> a_weight(-3, 3), g_weight(0, 3);
    double lambda_err = 0.0, length_err = 0.0;
    for (int i = 0; i < o.laminations; ++i) {
      std::vector<std::pair<CombinatorialCurve, double>> curves;
      for (int v = 0; v < s.vertex_count(); ++v) curves.emplace_back(a_curve_around(s, v), a_weight(rng));
      if (!general.empty()) {
        std::uniform_int_distribution<size_t> pick(0, general.size() - 1);
        curves.emplace_back(general[pick(rng)], g_weight(rng));
      }
      const auto lam = Lamination::make(s, curves, std::vector<int>(s.vertex_count(), 0), LaminationFlavor::A);
      const auto r = compatibility_check(s, lam);
      lambda_err = std::max(lambda_err, r.lambda_error);
      length_err = std::max(length_err, r.boundary_length_error);
    }
    const std::string detail = std::to_string(general.size()) + " general arcs available";
    report.checks.push_back(make_check(o, "lamination-compatibility", name + ": lambda lengths", lambda_err, 1e-9, detail));
    report.checks.push_back(make_check(o, "lamination-compatibility", name + ": boundary lengths", length_err, 1e-12));
  }
  return report;
}

Report decoration_origin(const Options& o) {
  Report report{o.seed, {}};
  for (const auto& name : forward_surfaces()) {
    const auto s = bundled_surface(name);
    auto rng = stream(o, "origin/" + name);
    double worst = 0.0;
    for (int i = 0; i < o.samples; ++i) {
      const auto p = random_shear_point(s, rng);
      for (int v = 0; v < s.vertex_count(); ++v) {
        const auto c = oracle::origin_check(s, p.shear, v);
        worst = std::max({worst, c.residual, -c.clearance});
      }
    }
    report.checks.push_back(make_check(o, "decoration-origin", name + ": curve through highest base point", worst, 1e-10));
  }
  return report;
}

Report puncture_coefficients(const Options& o) {
  Report report{o.seed, {}};
  auto closure_on = [&](const std::string& name) {
    const auto s = bundled_surface(name);
    auto rng = stream(o, "coefficients/" + name);
    std::vector<ShearDecorationPoint> points;
    for (int i = 0; i < o.samples; ++i) points.push_back(random_shear_point(s, rng));
    return [s, points](PunctureCoefficients c) {
      double worst = 0.0;
      for (const auto& p : points) worst = std::max(worst, point_distance(psi_inverse(s, psi_forward(s, p), c), p));
      return worst;
    };
  };
  // The monogon's puncture sits at an odd corner of the quad around its only
  // interior edge, so it pins the odd-corner coefficient; the special bigon
  // has punctures at even corners too and pins the other one.
  const auto monogon = closure_on("once-punctured-monogon");
  const auto bigon = closure_on("punctured-bigon-special");
  report.checks.push_back(make_check(o, "puncture-coefficients", "once-punctured-monogon: closure with (2, -1)",
                                     monogon(kPunctureCoefficients), 1e-10));
  report.checks.push_back(make_check(o, "puncture-coefficients", "punctured-bigon-special: closure with (2, -1)",
                                     bigon(kPunctureCoefficients), 1e-10));

  auto reject = [&](const std::string& label, const auto& closure, std::initializer_list<PunctureCoefficients> cands) {
    double best = INFINITY;
    std::string detail = "smallest error must exceed the tolerance; ";
    const size_t prefix = detail.size();
    for (PunctureCoefficients c : cands) {
      const double err = closure(c);
      best = std::min(best, err);
      char buf[64];
      std::snprintf(buf, sizeof buf, "%s(%g, %g): %.2e", detail.size() == prefix ? "" : ", ", c.odd_corner,
                    c.even_corner, err);
      detail += buf;
    }
    report.checks.push_back({"puncture-coefficients", label, best, 1e-6, best > 1e-6, detail});
  };
  reject("once-punctured-monogon: other odd-corner values fail", monogon,
         {{1.0, -1.0}, {0.0, -1.0}, {-2.0, -1.0}, {1.0, 0.0}, {3.0, -1.0}});
  reject("punctured-bigon-special: other even-corner values fail", bigon,
         {{2.0, -2.0}, {2.0, 0.0}, {2.0, 1.0}, {2.0, -0.5}});
  return report;
}

Report all(const Options& o) {
  Report report{o.seed, {}};
  for (auto suite : {forward_oracle, roundtrip, derivatives, equidistant_limit, golden_forms, lamination_compatibility,
                     decoration_origin, puncture_coefficients}) {
    report.append(suite(o));
  }
  return report;
}

// ==========================================================
// ================         Rendering          ==============
// ==========================================================

std::string to_text(const Report& report, bool color) {
  const char* green = color ? "\033[32m" : "";
  const char* red = color ? "\033[31m" : "";
  const char* reset = color ? "\033[0m" : "";
  std::string out = "seed " + std::to_string(report.seed) + "\n";
  std::string suite;
  for (const auto& c : report.checks) {
    if (c.suite != suite) {
      suite = c.suite;
      out += "\n[" + suite + "]\n";
    }
    char buf[256];
    std::snprintf(buf, sizeof buf, "  %s%-4s%s %-56s max error %.3e (tolerance %.1e)\n", c.passed ? green : red,
                  c.passed ? "ok" : "FAIL", reset, c.name.c_str(), c.max_error, c.tolerance);
    out += buf;
    if (!c.detail.empty()) out += "       " + c.detail + "\n";
  }
  size_t failed = std::count_if(report.checks.begin(), report.checks.end(), [](const Check& c) { return !c.passed; });
  out += "\n" + std::to_string(report.checks.size() - failed) + " passed, " + std::to_string(failed) + " failed\n";
  return out;
}

std::string to_json(const Report& report) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["seed"] = report.seed;
  doc["passed"] = report.passed();
  doc["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json j = {{"suite", c.suite},
                                {"name", c.name},
                                {"max_error", c.max_error},
                                {"tolerance", c.tolerance},
                                {"passed", c.passed}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    doc["checks"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

}  // namespace teich::verify
