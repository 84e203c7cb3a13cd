#pragma once

#include <array>
#include <string>
#include <vector>

#include "teich/coordinates.hpp"

// Independent upper half-plane constructions used to check the closed forms.
// Everything here is measured from developed pictures rather than derived
// from the coordinate formulas.
namespace teich::oracle {

using Matrix2 = std::array<double, 4>;  // row-major [a b; c d]

/// Lift of a vertex star with its centre at infinity.
struct DevelopedStar {
  CenterKind kind = CenterKind::cusp;
  double boundary_length = 0.0;
  /// Period of the parabolic holonomy (1 for cusps, 2 for spikes, so that the
  /// chain of the spike in S spans [0, 1]); unused for geodesics.
  double period = 1.0;
  /// u[k] is the endpoint u_k for k = 0..n+2; u_1 and u_{n+1} are normalised.
  std::vector<double> u;
  Matrix2 holonomy{1, 0, 0, 1};

  int valence() const { return static_cast<int>(u.size()) - 3; }
  /// Height of the base point of g_k in the triangle (inf, u_k, u_{k+1}).
  double base_height(int k) const;
  /// Shear x_k read off the endpoints.
  double measured_shear(int k) const;
  /// log of the holonomy multiplier; 0 for parabolic holonomy.
  double measured_boundary_length() const;
};

DevelopedStar develop_star(const std::vector<double>& star_shears, double boundary_length, CenterKind kind);
/// Develops formula_star(v) rotated to start at entry `start`.
DevelopedStar develop_star(const TriangulatedSurface& surface, int v, const std::vector<double>& shear, int start = 0);

double apply(const Matrix2& m, double u);
double trace(const Matrix2& m);

enum class CurveKind { horocycle, horocyclic_arc, equidistant };
const char* to_string(CurveKind kind);

/// A decoration curve in the frame of a developed star.
struct DecorationCurveLift {
  CurveKind kind = CurveKind::horocycle;
  double r = 0.0;
  double boundary_length = 0.0;
  double height = 0.0;  // horocycles: r = period / height
  double theta = 0.0;   // equidistant: angle from the vertical, r = |l| / cos(theta)
  double distance = 0.0;  // equidistant: w = log((1 + sin theta) / cos theta)

  /// Height of the curve above the real point u.
  double height_at(double u) const;
};

/// Throws DomainError when r is not above the lower bound for the kind.
DecorationCurveLift decoration_curve_lift(CurveKind kind, double boundary_length, double r);
/// Curve of the right kind for the given star, of length r.
DecorationCurveLift lift_for(const DevelopedStar& star, double r);
/// Length of the decoration curve of the star's kind through a given point.
double curve_length_through(const DevelopedStar& star, double u, double height);

/// Signed distance along (u_k, inf) from the curve to the base point of g_k.
double measure_half_edge_lambda(const DevelopedStar& star, const DecorationCurveLift& lift, int k);
/// Signed distance along (u_1, inf) between the horocyclic-arc reference point
/// and the point `offset` steps on; 0 at cusps and spikes.
double measure_gap(const DevelopedStar& star, int offset);

/// Neighbourhood radii measured as lengths of decoration curves through the base points.
std::vector<double> measured_radii(const DevelopedStar& star);

/// Forward map computed entirely from developed stars.
LambdaBoundaryPoint oracle_psi_forward(const TriangulatedSurface& surface, const ShearDecorationPoint& point);

/// Decoration curve at d_v = 0 against the star's base points: `residual` is
/// the distance from the curve to the nearest base point, `clearance` the
/// most negative height margin of any base point below the curve.
struct OriginCheck {
  int vertex = -1;
  double residual = 0.0;
  double clearance = 0.0;
};
OriginCheck origin_check(const TriangulatedSurface& surface, const std::vector<double>& shear, int v);

// ==========================================================
// ================          Reports           ==============
// ==========================================================

struct DerivativeEntry {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double error = 0.0;  // absolute for expected == 0, relative otherwise
};

struct FiniteDifferenceReport {
  std::vector<DerivativeEntry> entries;
  double max_error(const std::string& prefix = "") const;
};

/// Finite differences of a_h in d, d in r and (on 1-valent triangulations)
/// x in r, against their closed forms.
FiniteDifferenceReport finite_difference_report(const TriangulatedSurface& surface, const ShearDecorationPoint& point,
                                                double step = 1e-6);

struct LimitEntry {
  double l = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  double deviation = 0.0;  // sup over x in [0, 1] of |lifted curve - 1/r|
};

struct LimitReport {
  double r = 0.0;
  std::vector<LimitEntry> entries;
  bool monotone = true;
};

/// Equidistant curves of length r around geodesics of length l, lifted with
/// the axis from -1/l to infinity so that they converge to the horocycle y = 1/r.
/// `slope` and `intercept` describe the expected line; `deviation` is measured.
LimitReport equidistant_limit_check(double r, const std::vector<double>& l_sequence);

}  // namespace teich::oracle
