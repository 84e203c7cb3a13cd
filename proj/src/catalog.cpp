#include "teich/catalog.hpp"

namespace teich {

namespace {

using V = SurfaceDescription::VertexSpec;
using E = SurfaceDescription::EdgeSpec;
using T = SurfaceDescription::TriangleSpec;
constexpr auto puncture = VertexKind::puncture;
constexpr auto spike = VertexKind::spike;
constexpr auto interior = EdgeKind::interior;
constexpr auto boundary = EdgeKind::boundary;

SurfaceDescription ideal_triangle() {
  SurfaceDescription d;
  d.signature = {0, 0, {3}};
  d.vertices = {V{"s1", spike}, V{"s2", spike}, V{"s3", spike}};
  d.edges = {E{"b12", {"s1", "s2"}, boundary}, E{"b23", {"s2", "s3"}, boundary}, E{"b31", {"s3", "s1"}, boundary}};
  d.triangles = {T{"t", {"b12", "b23", "b31"}, std::nullopt}};
  return d;
}

// One self-folded triangle: the boundary loop b at the spike encloses the
// puncture p, which is joined to the spike by e.
SurfaceDescription once_punctured_monogon() {
  SurfaceDescription d;
  d.signature = {0, 1, {1}};
  d.vertices = {V{"s", spike}, V{"p", puncture}};
  d.edges = {E{"b", {"s", "s"}, boundary}, E{"e", {"s", "p"}, interior}};
  d.triangles = {T{"t", {"b", "e", "e"}, std::array<std::string, 3>{"s", "s", "p"}}};
  return d;
}

SurfaceDescription three_punctured_sphere() {
  SurfaceDescription d;
  d.signature = {0, 3, {}};
  d.vertices = {V{"v1", puncture}, V{"v2", puncture}, V{"v3", puncture}};
  d.edges = {E{"e12", {"v1", "v2"}, interior}, E{"e13", {"v1", "v3"}, interior}, E{"e23", {"v2", "v3"}, interior}};
  d.triangles = {T{"A", {"e12", "e23", "e13"}, std::array<std::string, 3>{"v1", "v2", "v3"}},
                 T{"B", {"e13", "e23", "e12"}, std::array<std::string, 3>{"v1", "v3", "v2"}}};
  return d;
}

// The puncture v1 is 2-valent; e23 and e32 are the two boundary edges between the spikes.
SurfaceDescription once_punctured_bigon() {
  SurfaceDescription d;
  d.signature = {0, 1, {2}};
  d.vertices = {V{"v1", puncture}, V{"v2", spike}, V{"v3", spike}};
  d.edges = {E{"e12", {"v1", "v2"}, interior}, E{"e13", {"v1", "v3"}, interior}, E{"e23", {"v2", "v3"}, boundary},
             E{"e32", {"v3", "v2"}, boundary}};
  d.triangles = {T{"A", {"e12", "e23", "e13"}, std::array<std::string, 3>{"v1", "v2", "v3"}},
                 T{"B", {"e13", "e32", "e12"}, std::array<std::string, 3>{"v1", "v3", "v2"}}};
  return d;
}

}  // namespace

std::vector<std::string> bundled_surface_names() {
  return {"ideal-triangle", "once-punctured-monogon", "three-punctured-sphere", "once-punctured-bigon",
          "punctured-bigon-special"};
}

SurfaceDescription bundled_description(const std::string& name) {
  if (name == "ideal-triangle") return ideal_triangle();
  if (name == "once-punctured-monogon") return once_punctured_monogon();
  if (name == "three-punctured-sphere") return three_punctured_sphere();
  if (name == "once-punctured-bigon") return once_punctured_bigon();
  if (name == "punctured-bigon-special") return special_triangulation({0, 1, {2}}).description();
  throw DomainError("unknown bundled surface '" + name + "'");
}

TriangulatedSurface bundled_surface(const std::string& name) {
  return TriangulatedSurface::build(bundled_description(name));
}

}  // namespace teich
