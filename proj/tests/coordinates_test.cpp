#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "teich/catalog.hpp"
#include "teich/coordinates.hpp"
#include "teich/oracle.hpp"

using namespace teich;

namespace {

using Values = std::map<std::string, double>;

ShearDecorationPoint make_point(const TriangulatedSurface& s, const Values& x, const Values& d) {
  auto p = ShearDecorationPoint::zero(s);
  for (const auto& [id, v] : x) p.shear[s.edge_index(id)] = v;
  for (const auto& [id, v] : d) p.decoration[s.vertex_index(id)] = v;
  return p;
}

LambdaBoundaryPoint make_lambda(const TriangulatedSurface& s, const Values& a, const Values& l) {
  auto q = LambdaBoundaryPoint::zero(s);
  for (const auto& [id, v] : a) q.lambda[s.edge_index(id)] = v;
  for (const auto& [id, v] : l) q.boundary_length[s.vertex_index(id)] = v;
  return q;
}

void check_values(const TriangulatedSurface& s, const LambdaBoundaryPoint& q, const Values& a, const Values& l,
                  double tol) {
  for (const auto& [id, v] : a) {
    CAPTURE(id);
    CHECK(std::abs(q.lambda[s.edge_index(id)] - v) <= tol);
  }
  for (const auto& [id, v] : l) {
    CAPTURE(id);
    CHECK(std::abs(q.boundary_length[s.vertex_index(id)] - v) <= tol);
  }
}

double distance(const ShearDecorationPoint& a, const ShearDecorationPoint& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.shear.size(); ++i) worst = std::max(worst, std::abs(a.shear[i] - b.shear[i]));
  for (size_t i = 0; i < a.decoration.size(); ++i) worst = std::max(worst, std::abs(a.decoration[i] - b.decoration[i]));
  return worst;
}

double distance(const LambdaBoundaryPoint& a, const LambdaBoundaryPoint& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.lambda.size(); ++i) worst = std::max(worst, std::abs(a.lambda[i] - b.lambda[i]));
  for (size_t i = 0; i < a.boundary_length.size(); ++i)
    worst = std::max(worst, std::abs(a.boundary_length[i] - b.boundary_length[i]));
  return worst;
}

ShearDecorationPoint random_point(const TriangulatedSurface& s, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  auto p = ShearDecorationPoint::zero(s);
  for (int e : s.interior_edges()) p.shear[e] = u(rng);
  for (auto& d : p.decoration) d = u(rng);
  return p;
}

}  // namespace

TEST_CASE("log star sums match the direct sum") {
  const std::vector<double> x{0.3, -1.2, 2.0, 0.5};
  const auto logs = log_star_sums(x);
  const int n = 4;
  for (int k = 0; k < n; ++k) {
    double sum = 0.0;
    for (int i = 1; i <= n; ++i) {
      double partial = 0.0;
      for (int j = 1; j < i; ++j) partial += x[(k + j) % n];
      sum += std::exp(partial);
    }
    CHECK(logs[k] == doctest::Approx(std::log(sum)).epsilon(1e-14));
  }
  // Huge shears stay finite.
  for (double v : log_star_sums({800.0, -800.0, 5.0})) CHECK(std::isfinite(v));
}

TEST_CASE("cusp radii") {
  for (double r : neighborhood_radii({0.0, 0.0, 0.0}, 0.0)) CHECK(r == doctest::Approx(3.0));
  const auto r = neighborhood_radii({0.5, -0.5}, 0.0);
  CHECK(r[0] == doctest::Approx(1.0 + std::exp(-0.5)));
  CHECK(r[1] == doctest::Approx(1.0 + std::exp(0.5)));
}

TEST_CASE("radii are equivariant under cyclic relabelling of the star") {
  const std::vector<double> x{0.7, -0.4, 1.1, 0.2};
  for (double l : {0.0, 0.8, -1.3}) {
    const auto base = neighborhood_radii(x, l);
    for (int shift = 1; shift < 4; ++shift) {
      std::vector<double> rotated(4);
      for (int k = 0; k < 4; ++k) rotated[k] = x[(k + shift) % 4];
      const auto r = neighborhood_radii(rotated, l);
      for (int k = 0; k < 4; ++k) CHECK(r[k] == doctest::Approx(base[(k + shift) % 4]).epsilon(1e-14));
    }
  }
}

TEST_CASE("geodesic radii converge to cusp radii as l -> 0") {
  for (double t : {0.0, 0.4, -1.5}) {
    const std::vector<double> x{t, -t};
    const auto cusp = neighborhood_radii(x, 0.0);
    for (double l : {1e-6, -1e-6}) {
      const auto geo = neighborhood_radii(x, l);
      for (int k = 0; k < 2; ++k) {
        // First order in l: r_geo = r_cusp (1 - l/2) + O(l^2).
        CHECK(std::abs(geo[k] - cusp[k]) <= 1e-6 * cusp[k]);
        CHECK(geo[k] - cusp[k] == doctest::Approx(-0.5 * l * cusp[k]).epsilon(1e-5));
      }
      const double d_cusp = decoration_param(CenterKind::cusp, {4.0 * cusp[0], 0.0}, cusp, 0.0);
      const double d_geo = decoration_param(CenterKind::geodesic, {4.0 * cusp[0], std::abs(l)}, geo, l);
      CHECK(std::abs(d_geo - d_cusp) <= 1e-6);
    }
  }
}

TEST_CASE("decoration parameter at cusps") {
  const std::vector<double> radii{3.0, 3.0, 3.0};
  CHECK(decoration_param(CenterKind::cusp, {3.0, 0.0}, radii, 0.0) == doctest::Approx(0.0));
  CHECK(decoration_param(CenterKind::cusp, {3.0 * std::exp(1.0), 0.0}, radii, 0.0) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(decoration_param(CenterKind::cusp, {0.0, 0.0}, radii, 0.0), DomainError);
}

TEST_CASE("decoration parameter around a geodesic") {
  const std::vector<double> radii{std::sqrt(2.0), 3.0};
  const double d = decoration_param(CenterKind::geodesic, {std::sqrt(5.0), 1.0}, radii, 1.0);
  CHECK(d == doctest::Approx(-std::log(2.0)).epsilon(1e-14));
  CHECK(std::abs(radius_from_decoration(d, radii, 1.0, CenterKind::geodesic) - std::sqrt(5.0)) <= 1e-12);
  CHECK_THROWS_AS(decoration_param(CenterKind::geodesic, {1.0, 1.0}, radii, 1.0), DomainError);
  CHECK_THROWS_AS(decoration_param(CenterKind::geodesic, {0.5, 1.0}, radii, -1.0), DomainError);
}

TEST_CASE("decoration fiber is a decreasing bijection") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const std::vector<double> x{u(rng), u(rng), u(rng)};
    const double l = i % 3 == 0 ? 0.0 : u(rng);
    const auto kind = l == 0.0 ? CenterKind::cusp : CenterKind::geodesic;
    const auto radii = neighborhood_radii(x, l);
    const double lower = std::abs(l);
    double previous = INFINITY;
    for (double d : {-3.0, -1.0, 0.0, 0.5, 2.0}) {
      const double r = radius_from_decoration(d, radii, l, kind);
      CHECK(r > lower);
      CHECK(r < previous);
      previous = r;
      CHECK(std::abs(decoration_param(kind, {r, lower}, radii, l) - d) <= 1e-12);
    }
  }
}

TEST_CASE("decoration derivative matches a central difference") {
  const std::vector<double> radii{2.0, 2.5};
  for (auto [kind, l] : {std::pair{CenterKind::cusp, 0.0}, std::pair{CenterKind::geodesic, 0.9}}) {
    const double r = 3.0, h = 1e-6;
    const double lower = std::abs(l);
    const double fd = (decoration_param(kind, {r + h, lower}, radii, l) -
                       decoration_param(kind, {r - h, lower}, radii, l)) / (2 * h);
    CHECK(decoration_derivative(kind, r, l) == doctest::Approx(fd).epsilon(1e-8));
  }
}

TEST_CASE("endpoint positions") {
  const auto two = endpoint_positions({0.3, 0.0}, 0.0, 1.0);
  REQUIRE(two.size() == 3);
  CHECK(two[1] == doctest::Approx(0.5));
  const auto four = endpoint_positions({0.0, std::log(2.0), std::log(3.0)}, 0.0, 9.0);
  REQUIRE(four.size() == 4);
  CHECK(four[0] == doctest::Approx(0.0));
  CHECK(four[1] == doctest::Approx(1.0));
  CHECK(four[2] == doctest::Approx(3.0));
  CHECK(four[3] == doctest::Approx(9.0));
}

TEST_CASE("boundary lengths from shears") {
  const auto sphere = bundled_surface("three-punctured-sphere");
  const auto p = make_point(sphere, {{"e12", 0.5}, {"e13", 0.25}}, {});
  CHECK(boundary_length_from_shear(sphere, sphere.vertex_index("v1"), p.shear) == doctest::Approx(0.75));
  const auto bigon = bundled_surface("once-punctured-bigon");
  const auto q = make_point(bigon, {{"e12", 1.0}, {"e13", -2.0}}, {});
  CHECK(boundary_length_from_shear(bigon, bigon.vertex_index("v1"), q.shear) == doctest::Approx(-1.0));
}

TEST_CASE("two-valent cusp half-edge lambda") {
  // n = 2 with d_v = 0: a_h = log((1 + e^{x_2}) / min(1 + e^{x_2}, 1 + e^{x_1})).
  for (double t : {-1.0, 0.0, 0.6}) {
    const auto sphere = bundled_surface("three-punctured-sphere");
    const auto p = make_point(sphere, {{"e12", t}, {"e13", -t}, {"e23", 0.2}}, {});
    const auto q = psi_forward(sphere, p);
    const auto measured = oracle::oracle_psi_forward(sphere, p);
    CHECK(distance(q, measured) <= 1e-9);
  }
}

TEST_CASE("forward map against frozen oracle values") {
  constexpr double tol = 1e-12;
  SUBCASE("three-punctured sphere, zero decoration") {
    const auto s = bundled_surface("three-punctured-sphere");
    const auto q = psi_forward(s, make_point(s, {{"e12", 0.5}, {"e13", 0.25}, {"e23", -0.1}}, {}));
    check_values(s, q, {{"e12", 0.49999999999999956}, {"e13", 0.39813756430126473}, {"e23", 0.41122308391181139}},
                 {{"v1", 0.74999999999999967}, {"v2", 0.39999999999999974}, {"v3", 0.14999999999999994}}, tol);
  }
  SUBCASE("three-punctured sphere, shifted decoration") {
    const auto s = bundled_surface("three-punctured-sphere");
    const auto q = psi_forward(s, make_point(s, {{"e12", 0.5}, {"e13", 0.25}, {"e23", -0.1}},
                                             {{"v1", 0.3}, {"v2", -0.2}, {"v3", 0.1}}));
    check_values(s, q, {{"e12", 0.59999999999999987}, {"e13", 0.79813756430126404}, {"e23", 0.31122308391181086}},
                 {{"v1", 0.75}, {"v2", 0.4}, {"v3", 0.15}}, tol);
  }
  SUBCASE("once-punctured monogon") {
    const auto s = bundled_surface("once-punctured-monogon");
    const auto q = psi_forward(s, make_point(s, {{"e", 0.7}}, {{"s", -0.3}, {"p", 0.4}}));
    check_values(s, q, {{"b", 0.099999999999999867}, {"e", 0.79999999999999982}}, {{"p", 0.69999999999999984}}, tol);
    CHECK(q.boundary_length[s.vertex_index("s")] == 0.0);
  }
  SUBCASE("once-punctured bigon") {
    const auto s = bundled_surface("once-punctured-bigon");
    const auto q =
        psi_forward(s, make_point(s, {{"e12", 1.0}, {"e13", -2.0}}, {{"v1", 0.2}, {"v2", -0.1}, {"v3", 0.5}}));
    check_values(s, q,
                 {{"e12", 1.0999999999999996},
                  {"e13", 1.8863336764752476},
                  {"e23", 3.3999999999999999},
                  {"e32", 0.40000000000000002}},
                 {{"v1", -1.0000000000000002}}, tol);
  }
  SUBCASE("ideal triangle") {
    const auto s = bundled_surface("ideal-triangle");
    const auto q = psi_forward(s, make_point(s, {}, {{"s1", 0.1}, {"s2", 0.2}, {"s3", 0.3}}));
    check_values(s, q, {{"b12", 0.3000000000000001}, {"b23", 0.5}, {"b31", 0.40000000000000013}}, {}, tol);
  }
  SUBCASE("special bigon") {
    const auto s = bundled_surface("punctured-bigon-special");
    const auto q = psi_forward(
        s, make_point(s, {{"q0", 0.6}, {"e0", -1.1}}, {{"s0_0", 0.2}, {"s0_1", -0.4}, {"p0", 0.3}}));
    check_values(s, q,
                 {{"b0_0", 0.39999999999999997}, {"b0_1", 0.3000000000000001}, {"q0", 1.5}, {"e0", 0.4999999999999995}},
                 {{"p0", -1.1000000000000001}}, tol);
  }
}

TEST_CASE("forward map agrees with the oracle on random points") {
  std::mt19937_64 rng(11);
  for (const auto& name : bundled_surface_names()) {
    CAPTURE(name);
    const auto s = bundled_surface(name);
    for (int i = 0; i < 50; ++i) {
      const auto p = random_point(s, rng);
      CHECK(distance(psi_forward(s, p), oracle::oracle_psi_forward(s, p)) <= 1e-9);
    }
  }
}

TEST_CASE("shifting a decoration shifts the adjacent half-edge lambdas") {
  const auto s = bundled_surface("three-punctured-sphere");
  const auto p = make_point(s, {{"e12", 0.5}, {"e13", 0.25}, {"e23", -0.1}}, {});
  auto shifted = p;
  shifted.decoration[s.vertex_index("v1")] += 0.8;
  const auto a = psi_forward(s, p), b = psi_forward(s, shifted);
  CHECK(b.lambda[s.edge_index("e12")] - a.lambda[s.edge_index("e12")] == doctest::Approx(0.8));
  CHECK(b.lambda[s.edge_index("e13")] - a.lambda[s.edge_index("e13")] == doctest::Approx(0.8));
  CHECK(b.lambda[s.edge_index("e23")] == doctest::Approx(a.lambda[s.edge_index("e23")]));
  CHECK(distance(LambdaBoundaryPoint{{}, b.boundary_length}, LambdaBoundaryPoint{{}, a.boundary_length}) == 0.0);
}

TEST_CASE("shear from a quad") {
  CHECK(shear_from_quad(1, 2, 3, 4, 0, 0, 0, 0) == doctest::Approx(-1.0));
}

TEST_CASE("closed-form inverses") {
  SUBCASE("three-punctured sphere") {
    const auto s = bundled_surface("three-punctured-sphere");
    const auto x = closed_form_inverse(
        "three-punctured-sphere", s, make_lambda(s, {{"e12", 0.3}, {"e13", 0.1}, {"e23", -0.2}},
                                                 {{"v1", 0.75}, {"v2", 0.4}, {"v3", 0.15}}));
    CHECK(x.shear[s.edge_index("e12")] == doctest::Approx(0.5));
    CHECK(x.shear[s.edge_index("e13")] == doctest::Approx(0.25));
    CHECK(x.shear[s.edge_index("e23")] == doctest::Approx(-0.1));
    const auto equal = closed_form_inverse("three-punctured-sphere", s,
                                           make_lambda(s, {}, {{"v1", 1.4}, {"v2", 1.4}, {"v3", 1.4}}));
    for (double v : equal.shear) CHECK(v == doctest::Approx(0.7));
  }
  SUBCASE("once-punctured bigon, symmetric cusp") {
    const auto s = bundled_surface("once-punctured-bigon");
    const auto x = closed_form_inverse("once-punctured-bigon", s,
                                       make_lambda(s, {{"e12", 0.4}, {"e13", -0.3}, {"e23", 1.2}, {"e32", 1.2}}, {}));
    for (int e : s.interior_edges()) CHECK(x.shear[e] == doctest::Approx(0.0).scale(1.0));
  }
  SUBCASE("closed forms invert the forward map") {
    std::mt19937_64 rng(5);
    for (const std::string name : {"three-punctured-sphere", "once-punctured-bigon"}) {
      CAPTURE(name);
      const auto s = bundled_surface(name);
      for (int i = 0; i < 50; ++i) {
        const auto p = random_point(s, rng);
        CHECK(distance(closed_form_inverse(name, s, psi_forward(s, p)), p) <= 1e-9);
      }
    }
  }
}

TEST_CASE("the general inverse needs 1-valent punctures") {
  const auto s = bundled_surface("three-punctured-sphere");
  CHECK_FALSE(punctures_are_univalent(s));
  CHECK_THROWS_AS(psi_inverse(s, LambdaBoundaryPoint::zero(s)), HypothesisViolation);
}

TEST_CASE("roundtrip on special triangulations") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const auto& sig : std::vector<SurfaceSignature>{{0, 1, {1}}, {0, 1, {2}}, {0, 2, {1}}, {1, 1, {1}}}) {
    const auto s = special_triangulation(sig);
    REQUIRE(punctures_are_univalent(s));
    for (int i = 0; i < 100; ++i) {
      const auto p = random_point(s, rng);
      CHECK(distance(psi_inverse(s, psi_forward(s, p)), p) <= 1e-9);
      auto q = LambdaBoundaryPoint::zero(s);
      for (auto& a : q.lambda) a = u(rng);
      for (int v : s.punctures()) q.boundary_length[v] = u(rng);
      CHECK(distance(psi_forward(s, psi_inverse(s, q)), q) <= 1e-9);
    }
  }
}

TEST_CASE("puncture coefficients are pinned by the roundtrip") {
  CHECK(kPunctureCoefficients.odd_corner == 2.0);
  CHECK(kPunctureCoefficients.even_corner == -1.0);
  std::mt19937_64 rng(17);
  auto worst = [&](const std::string& name, PunctureCoefficients c) {
    const auto s = bundled_surface(name);
    double err = 0.0;
    for (int i = 0; i < 20; ++i) {
      const auto p = random_point(s, rng);
      err = std::max(err, distance(psi_inverse(s, psi_forward(s, p), c), p));
    }
    return err;
  };
  CHECK(worst("once-punctured-monogon", kPunctureCoefficients) <= 1e-10);
  CHECK(worst("punctured-bigon-special", kPunctureCoefficients) <= 1e-10);
  for (double odd : {1.0, 0.0, -1.0, -2.0}) CHECK(worst("once-punctured-monogon", {odd, -1.0}) > 1e-3);
  for (double even : {-2.0, 0.0, 1.0, 2.0}) CHECK(worst("punctured-bigon-special", {2.0, even}) > 1e-3);
}
