#include <string>

#include "doctest.h"
#include "teich/catalog.hpp"
#include "teich/io.hpp"

using namespace teich;
using io::Json;

namespace {

const std::string kData = TEICH_DATA_DIR;

Json shear_doc() {
  return Json::parse(R"({
    "surface": "bundled:once-punctured-monogon",
    "chart": "shear_decoration",
    "values": {"edges": {"e": 0.7}, "vertices": {"s": -0.3, "p": 0.4}}
  })");
}

}  // namespace

TEST_CASE("surface documents round trip") {
  for (const auto& name : bundled_surface_names()) {
    CAPTURE(name);
    const auto s = bundled_surface(name);
    const auto doc = io::surface_to_json(s.description());
    const auto again = TriangulatedSurface::build(io::surface_from_json(doc));
    CHECK(io::surface_to_json(again.description()) == doc);
  }
}

TEST_CASE("bundled surface files match the catalog") {
  for (const auto& name : bundled_surface_names()) {
    CAPTURE(name);
    const auto from_file = io::load_surface(kData + "/surfaces/" + name + ".json");
    const auto from_catalog = io::load_surface("bundled:" + name);
    CHECK(io::surface_to_json(from_file.description()) == io::surface_to_json(from_catalog.description()));
  }
  CHECK_THROWS_AS(io::load_surface("bundled:no-such-surface"), Error);
}

TEST_CASE("surface parse errors name the key") {
  auto doc = io::surface_to_json(bundled_description("three-punctured-sphere"));
  doc.erase("triangles");
  try {
    io::surface_from_json(doc);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("triangles") != std::string::npos);
  }
  auto bad_kind = io::surface_to_json(bundled_description("three-punctured-sphere"));
  bad_kind["vertices"][0]["kind"] = "cone";
  CHECK_THROWS_AS(io::surface_from_json(bad_kind), ParseError);
}

TEST_CASE("point documents") {
  const auto s = bundled_surface("once-punctured-monogon");
  const auto doc = io::point_from_json(s, shear_doc());
  REQUIRE(doc.chart() == io::Chart::shear_decoration);
  const auto& p = std::get<ShearDecorationPoint>(doc.point);
  CHECK(p.shear[s.edge_index("e")] == 0.7);
  CHECK(p.decoration[s.vertex_index("s")] == -0.3);
  CHECK(io::point_to_json(s, doc) == shear_doc());

  SUBCASE("lambda chart round trip") {
    const io::PointDocument lambda{doc.surface, psi_forward(s, p)};
    const auto json = io::point_to_json(s, lambda);
    CHECK(json["chart"] == "lambda_boundary");
    const auto back = io::point_from_json(s, json);
    const auto& q = std::get<LambdaBoundaryPoint>(back.point);
    CHECK(q.lambda == std::get<LambdaBoundaryPoint>(lambda.point).lambda);
    CHECK(q.boundary_length == std::get<LambdaBoundaryPoint>(lambda.point).boundary_length);
  }
  SUBCASE("missing vertex") {
    auto bad = shear_doc();
    bad["values"]["vertices"].erase("p");
    CHECK_THROWS_AS(io::point_from_json(s, bad), ParseError);
  }
  SUBCASE("unknown id") {
    auto bad = shear_doc();
    bad["values"]["edges"]["zz"] = 1.0;
    CHECK_THROWS_AS(io::point_from_json(s, bad), ParseError);
  }
  SUBCASE("boundary shear may only be zero") {
    auto ok = shear_doc();
    ok["values"]["edges"]["b"] = 0.0;
    CHECK_NOTHROW(io::point_from_json(s, ok));
    ok["values"]["edges"]["b"] = 0.5;
    CHECK_THROWS_AS(io::point_from_json(s, ok), ParseError);
  }
  SUBCASE("unknown chart") {
    auto bad = shear_doc();
    bad["chart"] = "polar";
    CHECK_THROWS_AS(io::point_from_json(s, bad), ParseError);
  }
  SUBCASE("non-numeric value") {
    auto bad = shear_doc();
    bad["values"]["edges"]["e"] = "0.7";
    CHECK_THROWS_AS(io::point_from_json(s, bad), ParseError);
  }
}

TEST_CASE("bundled point and lamination files load") {
  for (const char* file : {"/points/monogon-shear.json", "/points/bigon-special-zero.json"}) {
    CAPTURE(file);
    const auto json = io::read_json(kData + file);
    const auto s = io::load_surface(io::resolve_relative(json["surface"], kData + file));
    CHECK_NOTHROW(io::point_from_json(s, json));
  }
  for (const char* file : {"/laminations/bigon-a.json", "/laminations/sphere-x.json"}) {
    CAPTURE(file);
    const auto json = io::read_json(kData + file);
    const auto s = io::load_surface(io::resolve_relative(json["surface"], kData + file));
    const auto doc = io::lamination_from_json(s, json);
    CHECK_FALSE(doc.lamination.components().empty());
    const auto again = io::lamination_from_json(s, io::lamination_to_json(s, doc));
    REQUIRE(again.lamination.components().size() == doc.lamination.components().size());
    for (size_t i = 0; i < doc.lamination.components().size(); ++i) {
      CHECK(again.lamination.components()[i].resolved == doc.lamination.components()[i].resolved);
      CHECK(again.lamination.components()[i].weight == doc.lamination.components()[i].weight);
    }
    CHECK(again.lamination.orientation() == doc.lamination.orientation());
  }
}

TEST_CASE("lamination parse errors") {
  const auto s = bundled_surface("three-punctured-sphere");
  auto doc = io::read_json(kData + "/laminations/sphere-x.json");
  SUBCASE("orientation of an unknown vertex") {
    doc["orientation"]["v9"] = 1;
    CHECK_THROWS_AS(io::lamination_from_json(s, doc), ParseError);
  }
  SUBCASE("arc with one end") {
    doc["curves"][0]["ends"].erase(1);
    CHECK_THROWS_AS(io::lamination_from_json(s, doc), Error);
  }
  SUBCASE("missing orientation at an endpoint") {
    doc.erase("orientation");
    CHECK_THROWS_AS(io::lamination_from_json(s, doc), LaminationError);
  }
  SUBCASE("flavor that does not admit the curves") {
    doc["flavor"] = "A";
    CHECK_THROWS_AS(io::lamination_from_json(s, doc), LaminationError);
  }
}

TEST_CASE("relative surface paths resolve against the document") {
  CHECK(io::resolve_relative("../surfaces/x.json", "/a/b/points/p.json") == "/a/b/surfaces/x.json");
  CHECK(io::resolve_relative("bundled:ideal-triangle", "/a/p.json") == "bundled:ideal-triangle");
  CHECK(io::resolve_relative("/abs/x.json", "/a/p.json") == "/abs/x.json");
}

TEST_CASE("dump uses two-space indentation and a trailing newline") {
  const auto text = io::dump(Json{{"a", 1}});
  CHECK(text == "{\n  \"a\": 1\n}\n");
}
