#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "teich/errors.hpp"

namespace teich {

// ==========================================================
// ================     Signature / input     ===============
// ==========================================================

enum class VertexKind { puncture, spike };
enum class EdgeKind { interior, boundary };

const char* to_string(VertexKind kind);
const char* to_string(EdgeKind kind);

/// Topological type (g, p, c, s) of a reference surface.
struct SurfaceSignature {
  int genus = 0;
  int punctures = 0;
  std::vector<int> spikes_per_boundary;  // one entry per crown

  int boundary_components() const { return static_cast<int>(spikes_per_boundary.size()); }
  int spikes() const;
  /// Euler characteristic of the compact surface with boundary (punctures filled in).
  int euler_characteristic() const { return 2 - 2 * genus - boundary_components(); }
  /// 4 - 4g - 2p - 2c - s; the surface is admissible when this is negative.
  int hyperbolicity_defect() const;

  bool operator==(const SurfaceSignature&) const = default;
};

/// Plain-data description of a triangulation, keyed by user-facing ids.
/// Triangle sides are listed counter-clockwise. The optional per-triangle
/// `vertices` gives the tail vertex of each side and is only needed to
/// disambiguate configurations the incidence data alone cannot resolve.
struct SurfaceDescription {
  struct VertexSpec {
    std::string id;
    VertexKind kind = VertexKind::puncture;
  };
  struct EdgeSpec {
    std::string id;
    std::array<std::string, 2> ends;
    EdgeKind kind = EdgeKind::interior;
  };
  struct TriangleSpec {
    std::string id;
    std::array<std::string, 3> sides;
    std::optional<std::array<std::string, 3>> vertices;
  };

  SurfaceSignature signature;
  std::vector<VertexSpec> vertices;
  std::vector<EdgeSpec> edges;
  std::vector<TriangleSpec> triangles;
};

// ==========================================================
// ================    Triangulated surface    ==============
// ==========================================================

/// A side of a triangle: triangle index and local slot 0..2.
struct SideRef {
  int triangle = -1;
  int slot = -1;

  bool valid() const { return triangle >= 0; }
  bool operator==(const SideRef&) const = default;
};

/// One end of an edge. end 0 is `Edge::ends[0]`.
struct HalfEdge {
  int edge = -1;
  int end = 0;

  bool operator==(const HalfEdge&) const = default;
  auto operator<=>(const HalfEdge&) const = default;
};

struct Vertex {
  std::string id;
  VertexKind kind;
};

struct Edge {
  std::string id;
  std::array<int, 2> ends{};
  EdgeKind kind;
  std::vector<SideRef> sides;  // 2 for interior edges, 1 for boundary edges

  bool is_loop() const { return ends[0] == ends[1]; }
  bool interior() const { return kind == EdgeKind::interior; }
};

struct TriangleSide {
  int edge = -1;
  bool forward = true;  // traversed from ends[0] to ends[1]
};

struct Triangle {
  std::string id;
  std::array<TriangleSide, 3> sides;
};

/// One entry e_k of the counter-clockwise star of a vertex.
///
/// `departing` is the side of the triangle that follows this entry
/// counter-clockwise (the corner between e_k and e_{k+1}); it is invalid for
/// entries whose following corner lives in the mirror copy of a doubled star.
struct StarEntry {
  HalfEdge half_edge;
  SideRef departing;
  bool mirrored = false;
  bool boundary = false;
};

using VertexStar = std::vector<StarEntry>;

/// Immutable, validated triangulation of a reference surface.
class TriangulatedSurface {
 public:
  static TriangulatedSurface build(const SurfaceDescription& description);

  const SurfaceSignature& signature() const { return signature_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int triangle_count() const { return static_cast<int>(triangles_.size()); }

  std::vector<int> interior_edges() const;
  std::vector<int> boundary_edges() const;
  std::vector<int> punctures() const;
  std::vector<int> spikes() const;
  bool has_boundary() const { return signature_.boundary_components() > 0; }

  int vertex_index(const std::string& id) const;
  int edge_index(const std::string& id) const;
  int triangle_index(const std::string& id) const;

  const TriangleSide& side(SideRef s) const { return triangles_[s.triangle].sides[s.slot]; }
  /// The other side of the same edge, or an invalid ref for boundary edges.
  SideRef twin(SideRef s) const;
  int tail(SideRef s) const;
  int head(SideRef s) const;
  /// Edge-end at the tail / head of a side.
  HalfEdge tail_half_edge(SideRef s) const;
  HalfEdge head_half_edge(SideRef s) const;
  int vertex_of(HalfEdge h) const { return edges_[h.edge].ends[h.end]; }

  /// Star of v in the surface itself: a cycle for punctures, an open chain
  /// from one boundary edge to the next for spikes.
  const VertexStar& star(int v) const { return stars_[v]; }
  /// Star used by the coordinate formulas: the surface star for punctures,
  /// the star in the doubled surface for spikes.
  const VertexStar& formula_star(int v) const { return formula_stars_[v]; }
  /// Position of a half-edge among the non-mirrored entries of formula_star.
  int star_position(HalfEdge h) const;
  /// Position in formula_star(tail(s)) of the entry that departs along side s.
  int star_position(SideRef departing) const;

  SurfaceDescription description() const;

 private:
  SurfaceSignature signature_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<Triangle> triangles_;
  std::vector<VertexStar> stars_;
  std::vector<VertexStar> formula_stars_;
};

// ==========================================================
// ================         Operations         ==============
// ==========================================================

struct ValidationCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool ok() const;
  std::string summary() const;
};

/// Checks a description without throwing; `build` throws on the first failing report.
ValidationReport validate_description(const SurfaceDescription& description);
ValidationReport validate_triangulation(const TriangulatedSurface& surface);

/// Star entries with the shear sign conventions resolved: boundary edges
/// carry 0, mirrored copies the negated shear. Spike vertices require
/// `use_double`.
struct SignedStarEntry {
  StarEntry entry;
  double shear = 0.0;
};
std::vector<SignedStarEntry> vertex_star(const TriangulatedSurface& surface, int v, bool use_double,
                                         const std::vector<double>& shear);

/// Shear values x_1..x_n along formula_star(v).
std::vector<double> star_shears(const TriangulatedSurface& surface, int v, const std::vector<double>& shear);

/// Surface glued to its mirror image along the boundary edges.
struct DoubledSurface {
  TriangulatedSurface surface;
  std::vector<int> mirror_edge;      // involution on doubled edges
  std::vector<int> mirror_vertex;    // involution on doubled vertices
  std::vector<int> origin_edge;      // doubled edge -> original edge
  std::vector<int> origin_vertex;    // doubled vertex -> original vertex
  std::vector<bool> is_mirror_edge;  // true for the copy e' of an interior edge
};

/// Throws InvalidTriangulation for closed surfaces (nothing to glue along).
DoubledSurface double_surface(const TriangulatedSurface& surface);

/// Triangulation in which every puncture is 1-valent: each puncture is joined
/// to one spike and enclosed by a loop at that spike.
TriangulatedSurface special_triangulation(const SurfaceSignature& signature);

}  // namespace teich
