#include "teich/coordinates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace teich {

ShearDecorationPoint ShearDecorationPoint::zero(const TriangulatedSurface& surface) {
  return {std::vector<double>(surface.edge_count(), 0.0), std::vector<double>(surface.vertex_count(), 0.0)};
}

LambdaBoundaryPoint LambdaBoundaryPoint::zero(const TriangulatedSurface& surface) {
  return {std::vector<double>(surface.edge_count(), 0.0), std::vector<double>(surface.vertex_count(), 0.0)};
}

const char* to_string(CenterKind kind) {
  switch (kind) {
    case CenterKind::cusp: return "cusp";
    case CenterKind::spike: return "spike";
    case CenterKind::geodesic: return "geodesic";
  }
  return "?";
}

CenterKind center_kind(const TriangulatedSurface& surface, int v, double boundary_length) {
  if (surface.vertices()[v].kind == VertexKind::spike) return CenterKind::spike;
  return boundary_length == 0.0 ? CenterKind::cusp : CenterKind::geodesic;
}

namespace {

double log_sum_exp(const std::vector<double>& terms) {
  const double top = *std::max_element(terms.begin(), terms.end());
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - top);
  return top + std::log(sum);
}

double min_of(const std::vector<double>& values) { return *std::min_element(values.begin(), values.end()); }

// l/(e^l - 1), continuous at 0.
double length_factor(double l) { return l == 0.0 ? 1.0 : l / std::expm1(l); }

}  // namespace

// ==========================================================
// ================     Star-level formulas    ==============
// ==========================================================

std::vector<double> log_star_sums(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> out(n);
  std::vector<double> exponents(n);
  for (int k = 0; k < n; ++k) {
    double partial = 0.0;
    exponents[0] = 0.0;
    for (int i = 1; i < n; ++i) {
      partial += x[(k + i) % n];
      exponents[i] = partial;
    }
    out[k] = log_sum_exp(exponents);
  }
  return out;
}

std::vector<double> neighborhood_radii(const std::vector<double>& star_shears, double boundary_length) {
  const auto log_s = log_star_sums(star_shears);
  std::vector<double> r(log_s.size());
  const double l = boundary_length;
  for (size_t k = 0; k < r.size(); ++k) {
    if (l == 0.0) {
      r[k] = std::exp(log_s[k]);
    } else {
      r[k] = length_factor(l) * std::hypot(std::exp(log_s[k]), std::expm1(l));
    }
  }
  return r;
}

std::vector<double> neighborhood_radii(const TriangulatedSurface& surface, int v, const std::vector<double>& shear) {
  const double l = surface.vertices()[v].kind == VertexKind::spike ? 0.0 : boundary_length_from_shear(surface, v, shear);
  return neighborhood_radii(star_shears(surface, v, shear), l);
}

double decoration_param(CenterKind kind, const DecorationCurveLength& r_v, const std::vector<double>& radii,
                        double boundary_length) {
  const double min_r = min_of(radii);
  if (kind == CenterKind::geodesic) {
    const double l2 = boundary_length * boundary_length;
    if (!(r_v.r > std::abs(boundary_length)) || !(r_v.r > r_v.lower_bound)) {
      throw DomainError("an equidistant decoration curve must be longer than its boundary geodesic");
    }
    if (!(min_r > std::abs(boundary_length))) throw DomainError("neighbourhood radius does not exceed |l|");
    return 0.5 * std::log((min_r * min_r - l2) / (r_v.r * r_v.r - l2));
  }
  if (!(r_v.r > 0.0) || !(r_v.r > r_v.lower_bound)) throw DomainError("decoration curve length must be positive");
  return std::log(min_r / r_v.r);
}

double radius_from_decoration(double d, const std::vector<double>& radii, double boundary_length, CenterKind kind) {
  const double min_r = min_of(radii);
  if (kind == CenterKind::geodesic) {
    const double l2 = boundary_length * boundary_length;
    return std::sqrt(l2 + (min_r * min_r - l2) * std::exp(-2.0 * d));
  }
  return min_r * std::exp(-d);
}

double decoration_derivative(CenterKind kind, double r, double boundary_length) {
  if (kind == CenterKind::geodesic) return -r / (r * r - boundary_length * boundary_length);
  return -1.0 / r;
}

double boundary_length_from_shear(const TriangulatedSurface& surface, int v, const std::vector<double>& shear) {
  if (surface.vertices()[v].kind != VertexKind::puncture) {
    throw DomainError("boundary lengths are defined at punctures only");
  }
  double l = 0.0;
  for (double x : star_shears(surface, v, shear)) l += x;
  return l;
}

std::vector<double> endpoint_positions(const std::vector<double>& x, double u_first, double u_last) {
  if (u_first == u_last) throw DomainError("degenerate normalisation: first and last endpoints coincide");
  const int n = static_cast<int>(x.size());
  // Cumulative sums of exp(x_2 + ... + x_i), computed relative to their max.
  std::vector<double> exponents(n);
  double partial = 0.0;
  exponents[0] = 0.0;
  for (int i = 1; i < n; ++i) {
    partial += x[i];
    exponents[i] = partial;
  }
  const double top = *std::max_element(exponents.begin(), exponents.end());
  std::vector<double> cumulative(n + 1, 0.0);
  for (int i = 0; i < n; ++i) cumulative[i + 1] = cumulative[i] + std::exp(exponents[i] - top);
  std::vector<double> u(n + 1);
  for (int k = 0; k <= n; ++k) u[k] = u_first + (u_last - u_first) * (cumulative[k] / cumulative[n]);
  u[n] = u_last;
  return u;
}

// ==========================================================
// ================        Forward map         ==============
// ==========================================================

double half_edge_lambda(const TriangulatedSurface& surface, HalfEdge h, const std::vector<double>& shear,
                        const std::vector<double>& decoration) {
  const int v = surface.vertex_of(h);
  const auto log_s = log_star_sums(star_shears(surface, v, shear));
  const int pos = surface.star_position(h);
  return decoration[v] + (log_s[pos] - min_of(log_s));
}

double edge_lambda(const TriangulatedSurface& surface, int e, const std::vector<double>& shear,
                   const std::vector<double>& decoration) {
  const double x = surface.edges()[e].interior() ? shear[e] : 0.0;
  return x + half_edge_lambda(surface, {e, 0}, shear, decoration) + half_edge_lambda(surface, {e, 1}, shear, decoration);
}

LambdaBoundaryPoint psi_forward(const TriangulatedSurface& surface, const ShearDecorationPoint& point) {
  LambdaBoundaryPoint out = LambdaBoundaryPoint::zero(surface);
  for (int e = 0; e < surface.edge_count(); ++e) out.lambda[e] = edge_lambda(surface, e, point.shear, point.decoration);
  for (int v : surface.punctures()) out.boundary_length[v] = boundary_length_from_shear(surface, v, point.shear);
  return out;
}

// ==========================================================
// ================        Inverse map         ==============
// ==========================================================

Quad quad_around(const TriangulatedSurface& surface, int e) {
  const auto& edge = surface.edges()[e];
  if (!edge.interior()) throw DomainError("edge '" + edge.id + "' is a boundary edge and has no quad");
  SideRef plus = edge.sides[0], minus = edge.sides[1];
  if (!surface.side(plus).forward) std::swap(plus, minus);
  Quad q;
  q.edge = e;
  q.sides = {SideRef{minus.triangle, (minus.slot + 1) % 3}, SideRef{minus.triangle, (minus.slot + 2) % 3},
             SideRef{plus.triangle, (plus.slot + 1) % 3}, SideRef{plus.triangle, (plus.slot + 2) % 3}};
  for (int k = 0; k < 4; ++k) q.vertices[k] = surface.tail(q.sides[k]);
  return q;
}

double gap_at(const TriangulatedSurface& surface, SideRef departing, int offset, const std::vector<double>& shear) {
  const int v = surface.tail(departing);
  const auto xs = star_shears(surface, v, shear);
  const auto log_s = log_star_sums(xs);
  const int n = static_cast<int>(xs.size());
  const int p = surface.star_position(departing);
  double t = log_s[(p + offset) % n] - log_s[p];
  for (int j = 1; j <= offset; ++j) t += xs[(p + j) % n];
  return t;
}

double gap(const TriangulatedSurface& surface, const Quad& quad, int k, const std::vector<double>& shear) {
  // Corners v1, v3 sit on e: the previous quad side is two steps round the star.
  // Corners v2, v4 see it one step round.
  return gap_at(surface, quad.sides[k], k % 2 == 0 ? 2 : 1, shear);
}

double shear_from_quad(double a12, double a23, double a34, double a41, double t1, double t2, double t3, double t4) {
  return 0.5 * (a12 - a23 + a34 - a41 + t1 - t2 + t3 - t4);
}

bool punctures_are_univalent(const TriangulatedSurface& surface) {
  for (int v : surface.punctures())
    if (surface.star(v).size() != 1) return false;
  return true;
}

namespace {
void require_univalent(const TriangulatedSurface& surface) {
  for (int v : surface.punctures()) {
    if (surface.star(v).size() != 1) {
      throw HypothesisViolation("puncture '" + surface.vertices()[v].id + "' has valence " +
                                std::to_string(surface.star(v).size()) + "; the inverse map needs 1-valent punctures");
    }
  }
}
}  // namespace

double shear_from_lambda_special(const TriangulatedSurface& surface, const LambdaBoundaryPoint& q, int e,
                                 PunctureCoefficients coefficients) {
  require_univalent(surface);
  const Quad quad = quad_around(surface, e);
  std::array<double, 4> a{};
  for (int k = 0; k < 4; ++k) a[k] = q.lambda[surface.side(quad.sides[k]).edge];
  double gaps = 0.0;
  for (int k = 0; k < 4; ++k) {
    const int v = quad.vertices[k];
    if (surface.vertices()[v].kind == VertexKind::spike) continue;
    gaps += (k % 2 == 0 ? coefficients.odd_corner : coefficients.even_corner) * q.boundary_length[v];
  }
  return 0.5 * (a[0] - a[1] + a[2] - a[3] + gaps);
}

double decoration_from_shear_lambda(const TriangulatedSurface& surface, int v, const std::vector<double>& shear,
                                    const std::vector<double>& lambda, std::optional<SideRef> corner) {
  const SideRef s1 = corner ? *corner : surface.star(v).front().departing;
  if (surface.tail(s1) != v) throw DomainError("the chosen corner is not at vertex '" + surface.vertices()[v].id + "'");
  const SideRef s2{s1.triangle, (s1.slot + 1) % 3};
  const SideRef s3{s1.triangle, (s1.slot + 2) % 3};
  const double a12 = lambda[surface.side(s1).edge];
  const double a23 = lambda[surface.side(s2).edge];
  const double a31 = lambda[surface.side(s3).edge];
  const double t1 = gap_at(surface, s1, 1, shear);
  const double t2 = gap_at(surface, s2, 1, shear);
  const double t3 = gap_at(surface, s3, 1, shear);
  const auto log_s = log_star_sums(star_shears(surface, v, shear));
  const int p = surface.star_position(s1);
  return 0.5 * (a12 - a23 + a31 - t2 + t3 - t1) - (log_s[p] - min_of(log_s));
}

ShearDecorationPoint psi_inverse(const TriangulatedSurface& surface, const LambdaBoundaryPoint& q,
                                 PunctureCoefficients coefficients) {
  require_univalent(surface);
  ShearDecorationPoint out = ShearDecorationPoint::zero(surface);
  for (int e : surface.interior_edges()) out.shear[e] = shear_from_lambda_special(surface, q, e, coefficients);
  for (int v = 0; v < surface.vertex_count(); ++v) {
    out.decoration[v] = decoration_from_shear_lambda(surface, v, out.shear, q.lambda);
  }
  return out;
}

ShearDecorationPoint closed_form_inverse(const std::string& surface_id, const TriangulatedSurface& surface,
                                         const LambdaBoundaryPoint& q) {
  ShearDecorationPoint out = ShearDecorationPoint::zero(surface);
  auto a = [&](const char* id) { return q.lambda[surface.edge_index(id)]; };
  if (surface_id == "three-punctured-sphere") {
    const int v[3] = {surface.vertex_index("v1"), surface.vertex_index("v2"), surface.vertex_index("v3")};
    const char* edge_ids[3][3] = {{nullptr, "e12", "e13"}, {"e12", nullptr, "e23"}, {"e13", "e23", nullptr}};
    auto l = [&](int i) { return q.boundary_length[v[i]]; };
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        const int k = 3 - i - j;
        out.shear[surface.edge_index(edge_ids[i][j])] = 0.5 * (l(i) + l(j) - l(k));
      }
    }
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3, k = (i + 2) % 3;
      const double x_ij = out.shear[surface.edge_index(edge_ids[i][j])];
      const double x_ik = out.shear[surface.edge_index(edge_ids[i][k])];
      out.decoration[v[i]] = 0.5 * (a(edge_ids[i][j]) + a(edge_ids[i][k]) - a(edge_ids[j][k]) - l(i)) -
                             std::log(2.0 * std::cosh(0.25 * (l(i) - l(j) - l(k)))) +
                             std::log1p(std::min(std::exp(x_ij), std::exp(x_ik)));
    }
    return out;
  }
  if (surface_id == "once-punctured-bigon") {
    const double l1 = q.boundary_length[surface.vertex_index("v1")];
    out.shear[surface.edge_index("e12")] = 0.5 * (l1 + a("e23") - a("e32"));
    out.shear[surface.edge_index("e13")] = 0.5 * (l1 + a("e32") - a("e23"));
    for (int v = 0; v < surface.vertex_count(); ++v) {
      out.decoration[v] = decoration_from_shear_lambda(surface, v, out.shear, q.lambda);
    }
    return out;
  }
  throw DomainError("no closed-form inverse for surface '" + surface_id + "'");
}

}  // namespace teich
