#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include <json.hpp>

#include "teich/coordinates.hpp"
#include "teich/laminations.hpp"

// JSON documents for surfaces, chart points and laminations. Every parser
// throws ParseError naming the offending key.
namespace teich::io {

using Json = nlohmann::ordered_json;

SurfaceDescription surface_from_json(const Json& doc);
Json surface_to_json(const SurfaceDescription& description);

/// Reads a surface file. A path of the form "bundled:<name>" loads a bundled surface.
TriangulatedSurface load_surface(const std::string& path);

enum class Chart { shear_decoration, lambda_boundary };
const char* to_string(Chart chart);

using ChartPoint = std::variant<ShearDecorationPoint, LambdaBoundaryPoint>;

struct PointDocument {
  std::string surface;  // as written in the file
  ChartPoint point;

  Chart chart() const { return point.index() == 0 ? Chart::shear_decoration : Chart::lambda_boundary; }
};

/// The shear chart lists every interior edge and every vertex; the lambda
/// chart lists every edge and every puncture. Boundary shears and spike
/// boundary lengths may appear only with value 0. Anything missing or unknown
/// is an error.
PointDocument point_from_json(const TriangulatedSurface& surface, const Json& doc);
Json point_to_json(const TriangulatedSurface& surface, const PointDocument& doc);

struct LaminationDocument {
  std::string surface;
  Lamination lamination;
};

/// Vertices absent from `orientation` get 0. The optional "flavor" key is
/// checked against the curves; without it the flavor is inferred.
LaminationDocument lamination_from_json(const TriangulatedSurface& surface, const Json& doc);
Json lamination_to_json(const TriangulatedSurface& surface, const LaminationDocument& doc);

Json read_json(const std::filesystem::path& path);
/// Two-space indentation with a trailing newline.
std::string dump(const Json& doc);

/// The "surface" entry of a document, resolved against the document's directory.
std::string resolve_relative(const std::string& surface_ref, const std::filesystem::path& document);

}  // namespace teich::io
