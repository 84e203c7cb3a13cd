#include "teich/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace teich::oracle {

double apply(const Matrix2& m, double u) { return (m[0] * u + m[1]) / (m[2] * u + m[3]); }
double trace(const Matrix2& m) { return m[0] + m[3]; }

const char* to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::horocycle: return "horocycle";
    case CurveKind::horocyclic_arc: return "horocyclic_arc";
    case CurveKind::equidistant: return "equidistant";
  }
  return "?";
}

// ==========================================================
// ================      Developed stars       ==============
// ==========================================================

double DevelopedStar::base_height(int k) const { return std::abs(u[k + 1] - u[k]); }

double DevelopedStar::measured_shear(int k) const { return std::log((u[k + 1] - u[k]) / (u[k] - u[k - 1])); }

double DevelopedStar::measured_boundary_length() const {
  const int n = valence();
  return std::log((u[n + 2] - u[n + 1]) / (u[2] - u[1]));
}

DevelopedStar develop_star(const std::vector<double>& x, double boundary_length, CenterKind kind) {
  const int n = static_cast<int>(x.size());
  if (n == 0) throw DomainError("cannot develop an empty star");
  double total = 0.0, scale = 1.0;
  for (double xi : x) {
    total += xi;
    scale += std::abs(xi);
  }
  const double expected = kind == CenterKind::geodesic ? boundary_length : 0.0;
  if (std::abs(total - expected) > 1e-12 * scale) {
    throw DomainError("boundary length is inconsistent with the shears around the vertex");
  }
  if (kind == CenterKind::geodesic && boundary_length == 0.0) {
    throw DomainError("a closed geodesic needs a nonzero boundary length");
  }

  // Successive gaps between endpoints grow by exp(x_k); log-scaled to avoid overflow.
  std::vector<double> log_gap(n + 2);
  log_gap[1] = 0.0;
  for (int k = 2; k <= n + 1; ++k) log_gap[k] = log_gap[k - 1] + x[(k - 1) % n];
  const double top = *std::max_element(log_gap.begin() + 1, log_gap.end());
  std::vector<double> raw(n + 3, 0.0);  // raw[k] = u_k before normalisation, u_1 = 0
  for (int k = 1; k <= n + 1; ++k) raw[k + 1] = raw[k] + std::exp(log_gap[k] - top);

  DevelopedStar star;
  star.kind = kind;
  star.boundary_length = kind == CenterKind::geodesic ? boundary_length : 0.0;
  star.u.assign(n + 3, 0.0);
  if (kind == CenterKind::geodesic) {
    // The holonomy is the similarity taking (u_1, u_2) to (u_{n+1}, u_{n+2});
    // move its fixed point to 0 and put u_1 at the sign of the enhancement.
    const double m = std::exp(total);
    const double fixed = (raw[n + 1] - m * raw[1]) / (1.0 - m);
    const double eps = boundary_length > 0 ? 1.0 : -1.0;
    for (int k = 1; k <= n + 2; ++k) star.u[k] = eps * (raw[k] - fixed) / (raw[1] - fixed);
    star.u[0] = star.u[n] * std::exp(-boundary_length);
    const double half = std::exp(0.5 * boundary_length);
    star.holonomy = {half, 0.0, 0.0, 1.0 / half};
  } else {
    star.period = kind == CenterKind::spike ? 2.0 : 1.0;
    const double span = raw[n + 1] - raw[1];
    for (int k = 1; k <= n + 2; ++k) star.u[k] = star.period * (raw[k] - raw[1]) / span;
    star.u[n + 1] = star.period;
    star.u[0] = star.u[n] - star.period;
    star.holonomy = {1.0, star.period, 0.0, 1.0};
  }
  return star;
}

DevelopedStar develop_star(const TriangulatedSurface& surface, int v, const std::vector<double>& shear, int start) {
  const auto xs = star_shears(surface, v, shear);
  const int n = static_cast<int>(xs.size());
  std::vector<double> rotated(n);
  double l = 0.0;
  for (int k = 0; k < n; ++k) {
    rotated[k] = xs[(start + k) % n];
    l += xs[k];
  }
  return develop_star(rotated, l, center_kind(surface, v, l));
}

// ==========================================================
// ================     Decoration curves      ==============
// ==========================================================

double DecorationCurveLift::height_at(double u) const {
  if (kind == CurveKind::equidistant) return std::abs(u) / std::tan(theta);
  return height;
}

DecorationCurveLift decoration_curve_lift(CurveKind kind, double boundary_length, double r) {
  DecorationCurveLift lift;
  lift.kind = kind;
  lift.r = r;
  if (kind == CurveKind::equidistant) {
    const double l = std::abs(boundary_length);
    if (l == 0.0 || !(r > l)) throw DomainError("an equidistant curve must be longer than its geodesic");
    lift.boundary_length = boundary_length;
    lift.theta = std::acos(l / r);
    lift.distance = std::log((1.0 + std::sin(lift.theta)) / std::cos(lift.theta));
    return lift;
  }
  if (!(r > 0.0)) throw DomainError("a horocycle must have positive length");
  lift.height = (kind == CurveKind::horocyclic_arc ? 2.0 : 1.0) / r;
  return lift;
}

DecorationCurveLift lift_for(const DevelopedStar& star, double r) {
  switch (star.kind) {
    case CenterKind::cusp: return decoration_curve_lift(CurveKind::horocycle, 0.0, r);
    case CenterKind::spike: return decoration_curve_lift(CurveKind::horocyclic_arc, 0.0, r);
    case CenterKind::geodesic: return decoration_curve_lift(CurveKind::equidistant, star.boundary_length, r);
  }
  return {};
}

double curve_length_through(const DevelopedStar& star, double u, double height) {
  if (star.kind == CenterKind::geodesic) return std::abs(star.boundary_length) * std::hypot(u, height) / height;
  return star.period / height;
}

double measure_half_edge_lambda(const DevelopedStar& star, const DecorationCurveLift& lift, int k) {
  return std::log(lift.height_at(star.u[k]) / star.base_height(k));
}

double measure_gap(const DevelopedStar& star, int offset) {
  if (star.kind != CenterKind::geodesic) return 0.0;
  return std::log(std::abs(star.u[1 + offset]) / std::abs(star.u[1]));
}

std::vector<double> measured_radii(const DevelopedStar& star) {
  std::vector<double> r;
  for (int k = 1; k <= star.valence(); ++k) r.push_back(curve_length_through(star, star.u[k], star.base_height(k)));
  return r;
}

namespace {

// The decoration parameter compares r_v with the shortest neighbourhood radius.
double radius_for(const DevelopedStar& star, double d) {
  const auto radii = measured_radii(star);
  const double min_r = *std::min_element(radii.begin(), radii.end());
  if (star.kind == CenterKind::geodesic) {
    const double l2 = star.boundary_length * star.boundary_length;
    return std::sqrt(l2 + (min_r * min_r - l2) * std::exp(-2.0 * d));
  }
  return min_r * std::exp(-d);
}

}  // namespace

LambdaBoundaryPoint oracle_psi_forward(const TriangulatedSurface& surface, const ShearDecorationPoint& point) {
  LambdaBoundaryPoint out = LambdaBoundaryPoint::zero(surface);
  std::vector<std::array<double, 2>> half(surface.edge_count(), {0.0, 0.0});
  for (int v = 0; v < surface.vertex_count(); ++v) {
    const auto star = develop_star(surface, v, point.shear);
    const auto lift = lift_for(star, radius_for(star, point.decoration[v]));
    const auto& entries = surface.formula_star(v);
    for (size_t k = 0; k < entries.size(); ++k) {
      if (entries[k].mirrored) continue;
      half[entries[k].half_edge.edge][entries[k].half_edge.end] =
          measure_half_edge_lambda(star, lift, static_cast<int>(k) + 1);
    }
    if (surface.vertices()[v].kind == VertexKind::puncture) out.boundary_length[v] = star.measured_boundary_length();
  }
  for (int e = 0; e < surface.edge_count(); ++e) {
    const double x = surface.edges()[e].interior() ? point.shear[e] : 0.0;
    out.lambda[e] = x + half[e][0] + half[e][1];
  }
  return out;
}

OriginCheck origin_check(const TriangulatedSurface& surface, const std::vector<double>& shear, int v) {
  const auto star = develop_star(surface, v, shear);
  const auto lift = lift_for(star, radius_for(star, 0.0));
  OriginCheck check;
  check.vertex = v;
  check.residual = std::numeric_limits<double>::infinity();
  check.clearance = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= star.valence(); ++k) {
    // Signed hyperbolic distance along the vertical geodesic from base point to curve.
    const double margin = std::log(lift.height_at(star.u[k]) / star.base_height(k));
    check.residual = std::min(check.residual, std::abs(margin));
    check.clearance = std::min(check.clearance, margin);
  }
  return check;
}

// ==========================================================
// ================          Reports           ==============
// ==========================================================

double FiniteDifferenceReport::max_error(const std::string& prefix) const {
  double worst = 0.0;
  for (const auto& e : entries)
    if (e.name.rfind(prefix, 0) == 0) worst = std::max(worst, e.error);
  return worst;
}

FiniteDifferenceReport finite_difference_report(const TriangulatedSurface& surface, const ShearDecorationPoint& point,
                                                double step) {
  FiniteDifferenceReport report;
  auto add = [&](std::string name, double measured, double expected) {
    const double err = expected == 0.0 ? std::abs(measured) : std::abs(measured - expected) / std::abs(expected);
    report.entries.push_back({std::move(name), measured, expected, err});
  };

  for (int e = 0; e < surface.edge_count(); ++e) {
    for (int end = 0; end < 2; ++end) {
      const HalfEdge h{e, end};
      for (int w = 0; w < surface.vertex_count(); ++w) {
        auto d = point.decoration;
        d[w] = point.decoration[w] + step;
        const double up = half_edge_lambda(surface, h, point.shear, d);
        d[w] = point.decoration[w] - step;
        const double down = half_edge_lambda(surface, h, point.shear, d);
        add("da/dd " + surface.edges()[e].id + "[" + std::to_string(end) + "] / " + surface.vertices()[w].id,
            (up - down) / (2.0 * step), surface.vertex_of(h) == w ? 1.0 : 0.0);
      }
    }
  }

  std::vector<double> radius(surface.vertex_count());
  for (int v = 0; v < surface.vertex_count(); ++v) {
    const bool spike = surface.vertices()[v].kind == VertexKind::spike;
    const double l = spike ? 0.0 : boundary_length_from_shear(surface, v, point.shear);
    const auto kind = center_kind(surface, v, l);
    const auto radii = neighborhood_radii(star_shears(surface, v, point.shear), l);
    const double r = radius_from_decoration(point.decoration[v], radii, l, kind);
    radius[v] = r;
    const double lower = kind == CenterKind::geodesic ? std::abs(l) : 0.0;
    const double h = step * r;
    const double up = decoration_param(kind, {r + h, lower}, radii, l);
    const double down = decoration_param(kind, {r - h, lower}, radii, l);
    add("dd/dr " + surface.vertices()[v].id, (up - down) / (2.0 * h), decoration_derivative(kind, r, l));
  }

  // Shears do not depend on the decoration. They vanish identically, so a
  // coarse step adds no truncation error while keeping round-off small.
  if (surface.has_boundary() && punctures_are_univalent(surface)) {
    const double coarse = std::max(step, 1e-4);
    for (int v = 0; v < surface.vertex_count(); ++v) {
      const bool spike = surface.vertices()[v].kind == VertexKind::spike;
      const double l = spike ? 0.0 : boundary_length_from_shear(surface, v, point.shear);
      const auto kind = center_kind(surface, v, l);
      const auto radii = neighborhood_radii(star_shears(surface, v, point.shear), l);
      const double lower = kind == CenterKind::geodesic ? std::abs(l) : 0.0;
      const double h = coarse * radius[v];
      auto shears_at = [&](double r) {
        ShearDecorationPoint p = point;
        p.decoration[v] = decoration_param(kind, {r, lower}, radii, l);
        return psi_inverse(surface, psi_forward(surface, p)).shear;
      };
      const auto up = shears_at(radius[v] + h);
      const auto down = shears_at(radius[v] - h);
      for (int e : surface.interior_edges()) {
        add("dx/dr " + surface.edges()[e].id + " / " + surface.vertices()[v].id, (up[e] - down[e]) / (2.0 * h), 0.0);
      }
    }
  }
  return report;
}

LimitReport equidistant_limit_check(double r, const std::vector<double>& l_sequence) {
  LimitReport report;
  report.r = r;
  for (double l : l_sequence) {
    if (!(l > 0.0 && r > l)) throw DomainError("boundary lengths must lie in (0, r)");
    LimitEntry entry;
    entry.l = l;
    const double root = std::sqrt(r * r - l * l);
    entry.slope = l / root;
    entry.intercept = 1.0 / root;
    // Move the lift so the axis ends at -1/l; the holonomy then tends to u -> u + 1.
    const auto lift = decoration_curve_lift(CurveKind::equidistant, l, r);
    constexpr int samples = 64;
    for (int i = 0; i <= samples; ++i) {
      const double x = static_cast<double>(i) / samples;
      entry.deviation = std::max(entry.deviation, std::abs(lift.height_at(x + 1.0 / l) - 1.0 / r));
    }
    if (!report.entries.empty() && !(entry.deviation < report.entries.back().deviation)) report.monotone = false;
    report.entries.push_back(entry);
  }
  return report;
}

}  // namespace teich::oracle
