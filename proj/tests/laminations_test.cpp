#include <cmath>
#include <random>

#include "doctest.h"
#include "teich/catalog.hpp"
#include "teich/laminations.hpp"

using namespace teich;

namespace {

using Curves = std::vector<std::pair<CombinatorialCurve, double>>;

CombinatorialCurve closed(const TriangulatedSurface& s, std::initializer_list<const char*> edges) {
  CombinatorialCurve c;
  for (const char* e : edges) c.crossings.push_back(s.edge_index(e));
  return c;
}

CombinatorialCurve arc(const TriangulatedSurface& s, std::initializer_list<const char*> edges, CurveEnd a, CurveEnd b) {
  auto c = closed(s, edges);
  c.shape = CurveShape::arc;
  c.ends = {a, b};
  return c;
}

CurveEnd at_vertex(const TriangulatedSurface& s, const char* id) {
  return {CurveEnd::Kind::vertex, s.vertex_index(id)};
}
CurveEnd on_edge(const TriangulatedSurface& s, const char* id) {
  return {CurveEnd::Kind::boundary_edge, s.edge_index(id)};
}

std::vector<int> no_orientation(const TriangulatedSurface& s) { return std::vector<int>(s.vertex_count(), 0); }

}  // namespace

TEST_CASE("A-curves around every vertex are recognised") {
  for (const auto& name : bundled_surface_names()) {
    CAPTURE(name);
    const auto s = bundled_surface(name);
    for (int v = 0; v < s.vertex_count(); ++v) {
      const auto cls = classify_curve(s, a_curve_around(s, v));
      CHECK(cls.kind == CurveKind::A);
      CHECK(cls.vertex == v);
    }
  }
}

TEST_CASE("resolution round trip") {
  for (const auto& name : bundled_surface_names()) {
    CAPTURE(name);
    const auto s = bundled_surface(name);
    for (int v = 0; v < s.vertex_count(); ++v) {
      const auto curve = a_curve_around(s, v);
      const auto resolved = resolve_curve(s, curve);
      CHECK(resolve_curve(s, curve_from_resolution(s, resolved)) == resolved);
    }
  }
}

TEST_CASE("malformed curves are rejected") {
  const auto s = bundled_surface("three-punctured-sphere");
  CHECK_THROWS_AS(resolve_curve(s, closed(s, {"e12", "e12"})), LaminationError);
  CHECK_THROWS_AS(resolve_curve(s, arc(s, {}, at_vertex(s, "v1"), at_vertex(s, "v2"))), LaminationError);
  auto dangling = closed(s, {"e12", "e23"});
  dangling.ends = {at_vertex(s, "v1")};
  CHECK_THROWS_AS(resolve_curve(s, dangling), LaminationError);
  const auto bigon = bundled_surface("once-punctured-bigon");
  CHECK_THROWS_AS(resolve_curve(bigon, closed(bigon, {"e23", "e12"})), LaminationError);
  CHECK_THROWS_AS(resolve_curve(bigon, arc(bigon, {"e12"}, on_edge(bigon, "e12"), on_edge(bigon, "e23"))),
                  LaminationError);
}

TEST_CASE("canonical form merges parallel copies and drops zero weights") {
  const auto s = bundled_surface("three-punctured-sphere");
  const auto loop = closed(s, {"e12", "e23"});
  SUBCASE("merge") {
    const auto lam = Lamination::make(s, {{loop, 1.0}, {closed(s, {"e23", "e12"}), 2.0}}, no_orientation(s));
    REQUIRE(lam.components().size() == 1);
    CHECK(lam.components()[0].weight == 3.0);
  }
  SUBCASE("cancellation") {
    const auto a = a_curve_around(s, 0);
    const auto lam = Lamination::make(s, {{a, 1.5}, {a, -1.5}, {loop, 0.0}}, no_orientation(s));
    CHECK(lam.components().empty());
  }
  SUBCASE("negative weights only on A-curves") {
    CHECK_NOTHROW(Lamination::make(s, {{a_curve_around(s, 1), -2.0}}, no_orientation(s)));
    // Every essential closed curve on this sphere is peripheral, so the loop counts as an A-curve.
    CHECK(classify_curve(s, loop).kind == CurveKind::A);
    const auto bigon = bundled_surface("once-punctured-bigon");
    const auto general = arc(bigon, {"e12", "e13"}, on_edge(bigon, "e23"), on_edge(bigon, "e23"));
    CHECK(classify_curve(bigon, general).kind == CurveKind::general);
    CHECK_THROWS_AS(Lamination::make(bigon, {{general, -1.0}}, no_orientation(bigon)), LaminationError);
  }
}

TEST_CASE("flavors are inferred and checked") {
  const auto s = bundled_surface("three-punctured-sphere");
  const auto x_arc = arc(s, {"e23"}, at_vertex(s, "v1"), at_vertex(s, "v1"));
  const std::vector<int> eps{1, 0, 0};
  CHECK(Lamination::make(s, {{a_curve_around(s, 0), 1.0}}, no_orientation(s)).flavor() == LaminationFlavor::A);
  CHECK(Lamination::make(s, {{x_arc, 1.0}}, eps).flavor() == LaminationFlavor::X);
  CHECK(Lamination::make(s, {{x_arc, 1.0}, {a_curve_around(s, 2), 1.0}}, eps).flavor() == LaminationFlavor::AX);
  CHECK_THROWS_AS(Lamination::make(s, {{x_arc, 1.0}}, eps, LaminationFlavor::A), LaminationError);
  CHECK(parse_flavor("X_D") == LaminationFlavor::X_D);
  CHECK_FALSE(parse_flavor("Y").has_value());
}

TEST_CASE("orientation violations are errors") {
  const auto s = bundled_surface("three-punctured-sphere");
  const auto x_arc = arc(s, {"e23"}, at_vertex(s, "v1"), at_vertex(s, "v1"));
  CHECK_THROWS_AS(Lamination::make(s, {{x_arc, 1.0}}, no_orientation(s)), LaminationError);
  CHECK_THROWS_AS(Lamination::make(s, {{x_arc, 1.0}}, {1, 1, 0}), LaminationError);
  CHECK_THROWS_AS(Lamination::make(s, {{x_arc, 1.0}}, {2, 0, 0}), LaminationError);
  CHECK_THROWS_AS(Lamination::make(s, {{x_arc, 1.0}}, {1, 0}), LaminationError);
  const auto lam = Lamination::make(s, {{x_arc, 1.0}}, {1, 0, 0});
  CHECK_THROWS_AS(signed_weights_x(s, lam, {0, 0, 0}, false), LaminationError);
}

TEST_CASE("spiralling ends contribute with the sign of the orientation") {
  const auto s = bundled_surface("three-punctured-sphere");
  const auto x_arc = arc(s, {"e23"}, at_vertex(s, "v1"), at_vertex(s, "v1"));
  const int v1 = s.vertex_index("v1");
  for (int eps : {1, -1}) {
    std::vector<int> o{0, 0, 0};
    o[v1] = eps;
    const auto lam = Lamination::make(s, {{x_arc, 0.5}}, o);
    const auto x = signed_weights_x(s, lam);
    CHECK(boundary_length_from_shear(s, v1, x) == doctest::Approx(2 * 0.5 * eps));
  }
}

TEST_CASE("A-curve weights become decorations") {
  for (const auto& name : bundled_surface_names()) {
    CAPTURE(name);
    const auto s = bundled_surface(name);
    const auto lam = Lamination::make(s, {{a_curve_around(s, 0), 0.7}}, no_orientation(s));
    const auto p = psi_x_lamination(s, lam);
    CHECK(p.decoration[0] == doctest::Approx(0.7));
    for (int v = 1; v < s.vertex_count(); ++v) CHECK(p.decoration[v] == 0.0);
    for (double x : p.shear) CHECK(x == 0.0);
  }
}

TEST_CASE("signed weights ignore A-curves and scale linearly") {
  const auto s = bundled_surface("three-punctured-sphere");
  const auto x_arc = arc(s, {"e23"}, at_vertex(s, "v1"), at_vertex(s, "v1"));
  const std::vector<int> eps{1, 0, 0};
  const auto base = Lamination::make(s, {{x_arc, 1.5}, {closed(s, {"e12", "e23"}), 1.0}}, eps);
  const auto with_a = Lamination::make(
      s, {{x_arc, 1.5}, {closed(s, {"e12", "e23"}), 1.0}, {a_curve_around(s, 2), 4.0}}, eps);
  const auto x = signed_weights_x(s, base);
  const auto y = signed_weights_x(s, with_a);
  for (int e = 0; e < s.edge_count(); ++e) CHECK(x[e] == doctest::Approx(y[e]));
  const auto scaled = signed_weights_x(s, base.scaled(s, 2.5));
  for (int e = 0; e < s.edge_count(); ++e) CHECK(scaled[e] == doctest::Approx(2.5 * x[e]));

  const auto a_lam = Lamination::make(s, {{a_curve_around(s, 0), 1.0}, {a_curve_around(s, 1), 2.0}}, no_orientation(s));
  const auto a = edge_weights_a(s, a_lam);
  const auto a2 = edge_weights_a(s, a_lam.scaled(s, -3.0));
  for (int e = 0; e < s.edge_count(); ++e) CHECK(a2[e] == doctest::Approx(-3.0 * a[e]));
}

TEST_CASE("counts in the double agree with the surface on interior edges") {
  for (const std::string name : {"once-punctured-bigon", "punctured-bigon-special", "once-punctured-monogon"}) {
    CAPTURE(name);
    const auto s = bundled_surface(name);
    std::vector<std::pair<CombinatorialCurve, double>> curves;
    for (int v = 0; v < s.vertex_count(); ++v) curves.push_back({a_curve_around(s, v), 1.0 + v});
    if (name == "once-punctured-bigon")
      curves.push_back({arc(s, {"e12", "e13"}, on_edge(s, "e23"), on_edge(s, "e23")), 2.0});
    const auto lam = Lamination::make(s, curves, no_orientation(s));
    const auto inner = signed_weights_x(s, lam, false);
    const auto doubled = signed_weights_x(s, lam, true);
    for (int e : s.interior_edges()) CHECK(inner[e] == doctest::Approx(doubled[e]));
    for (int e : s.boundary_edges()) CHECK(inner[e] == 0.0);
  }
}

TEST_CASE("compatibility of the two lamination coordinates") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> w(-3, 3);
  for (const auto& name : bundled_surface_names()) {
    CAPTURE(name);
    const auto s = bundled_surface(name);
    for (int i = 0; i < 50; ++i) {
      Curves curves;
      for (int v = 0; v < s.vertex_count(); ++v) curves.push_back({a_curve_around(s, v), double(w(rng))});
      if (name == "once-punctured-bigon")
        curves.push_back({arc(s, {"e12", "e13"}, on_edge(s, "e23"), on_edge(s, "e23")), double(std::abs(w(rng)))});
      const auto lam = Lamination::make(s, curves, no_orientation(s));
      const auto report = compatibility_check(s, lam);
      CHECK(report.lambda_error <= 1e-9);
      CHECK(report.boundary_length_error <= 1e-12);
    }
  }
  const auto s = bundled_surface("three-punctured-sphere");
  const auto x_lam = Lamination::make(s, {{arc(s, {"e23"}, at_vertex(s, "v1"), at_vertex(s, "v1")), 1.0}}, {1, 0, 0});
  CHECK_THROWS_AS(compatibility_check(s, x_lam), LaminationError);
}
