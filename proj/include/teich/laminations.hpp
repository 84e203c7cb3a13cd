#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "teich/coordinates.hpp"

namespace teich {

// ==========================================================
// ================           Curves           ==============
// ==========================================================

enum class CurveShape { closed, arc };

struct CurveEnd {
  enum class Kind { boundary_edge, vertex };
  Kind kind = Kind::vertex;
  int index = -1;  // edge index or vertex index

  bool operator==(const CurveEnd&) const = default;
};

/// A curve given by the edges it crosses, in traversal order. Arcs also name
/// their two ends. Inputs are assumed to be in minimal position.
struct CombinatorialCurve {
  CurveShape shape = CurveShape::closed;
  std::vector<int> crossings;
  std::vector<CurveEnd> ends;  // empty for closed curves, two entries for arcs
};

/// Piece of a curve inside one triangle. Ports 0..2 are the sides of the
/// triangle; ports 3..5 are the corners at the tails of sides 0..2 (arc ends).
struct Segment {
  int triangle = -1;
  int in = -1;
  int out = -1;

  static bool is_corner(int port) { return port >= 3; }
  auto operator<=>(const Segment&) const = default;
};

/// A curve resolved into triangle segments, in canonical form (minimal under
/// rotation and reversal), so equal curves compare equal.
struct ResolvedCurve {
  CurveShape shape = CurveShape::closed;
  std::vector<Segment> segments;

  bool operator==(const ResolvedCurve&) const = default;
};

/// Throws LaminationError when the crossing sequence backtracks, does not fit
/// the triangulation, or describes more than one curve.
ResolvedCurve resolve_curve(const TriangulatedSurface& surface, const CombinatorialCurve& curve);
CombinatorialCurve curve_from_resolution(const TriangulatedSurface& surface, const ResolvedCurve& resolved);

enum class CurveKind { contractible, A, X, X_D, general };
const char* to_string(CurveKind kind);

struct CurveClass {
  CurveKind kind = CurveKind::general;
  int vertex = -1;   // the vertex an A-curve goes around
  std::string note;  // set when a boundary arc could not be recognised
};

CurveClass classify_curve(const TriangulatedSurface& surface, const CombinatorialCurve& curve);

/// The A-curve around v: a closed curve for a puncture, the arc cutting off the
/// spike for a spike.
CombinatorialCurve a_curve_around(const TriangulatedSurface& surface, int v);

// ==========================================================
// ================        Laminations         ==============
// ==========================================================

enum class LaminationFlavor { A, X, AX, X_D, AX_D };
const char* to_string(LaminationFlavor flavor);
std::optional<LaminationFlavor> parse_flavor(const std::string& text);

/// Weighted curves plus an orientation map, stored in canonical form:
/// parallel copies merged, zero weights and contractible curves dropped.
class Lamination {
 public:
  struct Component {
    CombinatorialCurve curve;
    ResolvedCurve resolved;
    CurveClass cls;
    double weight = 0.0;
  };

  /// Validates and canonicalises. When `flavor` is absent the most
  /// restrictive admissible flavor is inferred.
  static Lamination make(const TriangulatedSurface& surface, const std::vector<std::pair<CombinatorialCurve, double>>& curves,
                         std::vector<int> orientation, std::optional<LaminationFlavor> flavor = std::nullopt);

  const std::vector<Component>& components() const { return components_; }
  const std::vector<int>& orientation() const { return orientation_; }
  LaminationFlavor flavor() const { return flavor_; }

  /// Same curves with every weight multiplied by t.
  Lamination scaled(const TriangulatedSurface& surface, double t) const;

 private:
  std::vector<Component> components_;
  std::vector<int> orientation_;
  LaminationFlavor flavor_ = LaminationFlavor::A;
};

/// a_e(L): weighted count of crossings with e plus arc ends on e.
std::vector<double> edge_weights_a(const TriangulatedSurface& surface, const Lamination& lamination);

/// x_e(L, eps): signed weighted crossings of the non-A curves. Ends at vertices
/// spiral in the direction given by `orientation`; on surfaces with boundary
/// the count is taken in the double, which also defines boundary-edge values
/// when `include_boundary` is set (they are 0 otherwise).
std::vector<double> signed_weights_x(const TriangulatedSurface& surface, const Lamination& lamination,
                                     const std::vector<int>& orientation, bool include_boundary);
std::vector<double> signed_weights_x(const TriangulatedSurface& surface, const Lamination& lamination,
                                     bool include_boundary = false);

/// Shears from the non-A curves and decorations from the A-curve weights.
ShearDecorationPoint psi_x_lamination(const TriangulatedSurface& surface, const Lamination& lamination);

struct CompatibilityReport {
  double lambda_error = 0.0;           // max_e |a_e(psi(Psi_x(L))) - a_e(L)|
  double boundary_length_error = 0.0;  // max_v |l_v(psi(Psi_x(L)))|
  std::vector<double> lhs_lambda;
  std::vector<double> rhs_lambda;
};

/// Compares the forward map of Psi_x(L) with the edge weights of an A-lamination.
CompatibilityReport compatibility_check(const TriangulatedSurface& surface, const Lamination& lamination);

}  // namespace teich
