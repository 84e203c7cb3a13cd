#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "teich/surface.hpp"

namespace teich {

// ==========================================================
// ================        Chart points        ==============
// ==========================================================

/// Shear parameters on interior edges plus decoration parameters on all vertices.
/// Both vectors are indexed like the surface; boundary-edge shears are always 0.
struct ShearDecorationPoint {
  std::vector<double> shear;
  std::vector<double> decoration;

  static ShearDecorationPoint zero(const TriangulatedSurface& surface);
};

/// Lambda lengths on all edges plus signed boundary lengths on punctures.
/// The sign of a boundary length is the enhancement; 0 is a cusp. Spike
/// entries of `boundary_length` are always 0.
struct LambdaBoundaryPoint {
  std::vector<double> lambda;
  std::vector<double> boundary_length;

  static LambdaBoundaryPoint zero(const TriangulatedSurface& surface);
};

enum class CenterKind { cusp, spike, geodesic };
const char* to_string(CenterKind kind);

/// Geometry at the centre of a star: spikes are always spikes, punctures are
/// cusps when l == 0 and closed geodesics otherwise.
CenterKind center_kind(const TriangulatedSurface& surface, int v, double boundary_length);

/// Length of a decoration curve and the infimum of admissible lengths.
struct DecorationCurveLength {
  double r = 0.0;
  double lower_bound = 0.0;  // |l| for an equidistant curve, 0 otherwise
};

// ==========================================================
// ================     Star-level formulas    ==============
// ==========================================================

/// log S_k for k = 0..n-1, where S_k = sum_i exp(x_{k+1} + ... + x_{k+i-1}),
/// indices mod n. Evaluated with a max shift so large shears do not overflow.
std::vector<double> log_star_sums(const std::vector<double>& star_shears);

/// Radii r_1..r_n of the neighbourhoods bounded by decoration curves through
/// the base points of the star. `boundary_length` is 0 for cusps and spikes.
std::vector<double> neighborhood_radii(const std::vector<double>& star_shears, double boundary_length);
std::vector<double> neighborhood_radii(const TriangulatedSurface& surface, int v, const std::vector<double>& shear);

/// d_v as a function of r_v. Throws DomainError when r_v is not above the lower bound.
double decoration_param(CenterKind kind, const DecorationCurveLength& r_v, const std::vector<double>& radii,
                        double boundary_length);
/// Inverse of decoration_param.
double radius_from_decoration(double d, const std::vector<double>& radii, double boundary_length, CenterKind kind);
/// Closed-form derivative of d_v with respect to r_v.
double decoration_derivative(CenterKind kind, double r, double boundary_length);

/// l_v as the sum of the shears around a puncture.
double boundary_length_from_shear(const TriangulatedSurface& surface, int v, const std::vector<double>& shear);

/// Ideal endpoints u_1..u_{n+1} of the star lifted with the centre at infinity,
/// normalised to the given first and last positions.
std::vector<double> endpoint_positions(const std::vector<double>& star_shears, double u_first, double u_last);

// ==========================================================
// ================        Forward map         ==============
// ==========================================================

double half_edge_lambda(const TriangulatedSurface& surface, HalfEdge h, const std::vector<double>& shear,
                        const std::vector<double>& decoration);
double edge_lambda(const TriangulatedSurface& surface, int e, const std::vector<double>& shear,
                   const std::vector<double>& decoration);
LambdaBoundaryPoint psi_forward(const TriangulatedSurface& surface, const ShearDecorationPoint& point);

// ==========================================================
// ================        Inverse map         ==============
// ==========================================================

/// The two triangles around an interior edge e, labelled so that
/// T = (v1, v2, v3) and T' = (v3, v4, v1) with e joining v1 and v3.
/// sides[k] is the side e_{k,k+1}, which leaves v_{k+1 (1-based)} in its triangle.
struct Quad {
  int edge = -1;
  std::array<int, 4> vertices{};
  std::array<SideRef, 4> sides{};
};
Quad quad_around(const TriangulatedSurface& surface, int e);

/// Gap t_k at corner k (0-based) of the quad.
double gap(const TriangulatedSurface& surface, const Quad& quad, int k, const std::vector<double>& shear);
/// Gap measured from a specific star entry, `offset` entries counter-clockwise.
double gap_at(const TriangulatedSurface& surface, SideRef departing, int offset, const std::vector<double>& shear);

double shear_from_quad(double a12, double a23, double a34, double a41, double t1, double t2, double t3, double t4);

/// Coefficients of l_v in the shear formula at a 1-valent puncture, for a
/// puncture at an odd corner (an endpoint of e) and at an even corner.
/// The gap at a 1-valent puncture is l (one step around) or 2l (two steps),
/// and enters the alternating sum with the sign of its corner.
struct PunctureCoefficients {
  double odd_corner;
  double even_corner;
};
inline constexpr PunctureCoefficients kPunctureCoefficients{2.0, -1.0};

/// Shear of an interior edge from lambda lengths and boundary lengths, valid
/// when every puncture is 1-valent. Throws HypothesisViolation otherwise.
double shear_from_lambda_special(const TriangulatedSurface& surface, const LambdaBoundaryPoint& q, int e,
                                 PunctureCoefficients coefficients = kPunctureCoefficients);

/// d_v from shears and lambda lengths using the triangle whose corner at v
/// departs along `corner` (defaults to the first corner of the star).
double decoration_from_shear_lambda(const TriangulatedSurface& surface, int v, const std::vector<double>& shear,
                                    const std::vector<double>& lambda, std::optional<SideRef> corner = std::nullopt);

/// True when every puncture of the triangulation is 1-valent.
bool punctures_are_univalent(const TriangulatedSurface& surface);

/// Inverse chart on triangulations with 1-valent punctures. `coefficients`
/// is exposed only so tests can show that other choices break the roundtrip.
ShearDecorationPoint psi_inverse(const TriangulatedSurface& surface, const LambdaBoundaryPoint& q,
                                 PunctureCoefficients coefficients = kPunctureCoefficients);

/// Closed-form inverses for the two small surfaces whose punctures are
/// 2-valent: "three-punctured-sphere" and "once-punctured-bigon". The surface
/// must use the bundled labels. Bigon decorations use the generic triangle formula.
ShearDecorationPoint closed_form_inverse(const std::string& surface_id, const TriangulatedSurface& surface,
                                         const LambdaBoundaryPoint& q);

}  // namespace teich
