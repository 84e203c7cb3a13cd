#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <functional>
#include <map>

#include "teich/catalog.hpp"
#include "teich/io.hpp"
#include "teich/laminations.hpp"
#include "teich/oracle.hpp"
#include "teich/verification.hpp"

namespace py = pybind11;
using namespace teich;
using io::Json;

namespace {

using IdValues = std::map<std::string, double>;

Json values_json(const IdValues& values) {
  Json j = Json::object();
  for (const auto& [id, v] : values) j[id] = v;
  return j;
}

// Points cross the boundary as id -> value maps and go through the same
// validation as point files.
template <class Point>
Point point_from(const TriangulatedSurface& s, const char* chart, const IdValues& edges, const IdValues& vertices) {
  const Json doc = {{"surface", ""}, {"chart", chart}, {"values", {{"edges", values_json(edges)}, {"vertices", values_json(vertices)}}}};
  return std::get<Point>(io::point_from_json(s, doc).point);
}

std::pair<IdValues, IdValues> split(const TriangulatedSurface& s, const io::ChartPoint& point) {
  const Json doc = io::point_to_json(s, {"", point});
  std::pair<IdValues, IdValues> out;
  for (const auto& [id, v] : doc["values"]["edges"].items()) out.first[id] = v.get<double>();
  for (const auto& [id, v] : doc["values"]["vertices"].items()) out.second[id] = v.get<double>();
  return out;
}

IdValues by_edge(const TriangulatedSurface& s, const std::vector<double>& values) {
  IdValues out;
  for (int e = 0; e < s.edge_count(); ++e) out[s.edges()[e].id] = values[e];
  return out;
}

std::vector<std::string> ids(const TriangulatedSurface& s, const std::vector<int>& indices, bool edges) {
  std::vector<std::string> out;
  for (int i : indices) out.push_back(edges ? s.edges()[i].id : s.vertices()[i].id);
  return out;
}

CenterKind parse_kind(const std::string& kind) {
  if (kind == "cusp") return CenterKind::cusp;
  if (kind == "spike") return CenterKind::spike;
  if (kind == "geodesic") return CenterKind::geodesic;
  throw DomainError("unknown centre kind '" + kind + "'");
}

py::dict report_dict(const verify::Report& report) {
  py::list checks;
  for (const auto& c : report.checks) {
    py::dict d;
    d["suite"] = c.suite;
    d["name"] = c.name;
    d["max_error"] = c.max_error;
    d["tolerance"] = c.tolerance;
    d["passed"] = c.passed;
    checks.append(d);
  }
  py::dict out;
  out["seed"] = report.seed;
  out["passed"] = report.passed();
  out["checks"] = checks;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Shear/decoration and lambda-length charts on triangulated hyperbolic surfaces";

  auto base = py::register_exception<Error>(m, "TeichError", PyExc_ValueError);
  py::register_exception<InvalidTriangulation>(m, "InvalidTriangulation", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<HypothesisViolation>(m, "HypothesisViolation", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<LaminationError>(m, "LaminationError", base.ptr());

  py::class_<TriangulatedSurface>(m, "Surface")
      .def_static("bundled", &bundled_surface, py::arg("name"))
      .def_static("load", &io::load_surface, py::arg("path"), "Load a surface file, or 'bundled:<name>'.")
      .def_static(
          "special",
          [](int genus, int punctures, std::vector<int> boundaries) {
            return special_triangulation({genus, punctures, std::move(boundaries)});
          },
          py::arg("genus"), py::arg("punctures"), py::arg("boundaries") = std::vector<int>{})
      .def_static("bundled_names", &bundled_surface_names)
      .def_property_readonly("edges",
                             [](const TriangulatedSurface& s) {
                               std::vector<std::string> out;
                               for (const auto& e : s.edges()) out.push_back(e.id);
                               return out;
                             })
      .def_property_readonly("vertices",
                             [](const TriangulatedSurface& s) {
                               std::vector<std::string> out;
                               for (const auto& v : s.vertices()) out.push_back(v.id);
                               return out;
                             })
      .def_property_readonly("interior_edges", [](const TriangulatedSurface& s) { return ids(s, s.interior_edges(), true); })
      .def_property_readonly("boundary_edges", [](const TriangulatedSurface& s) { return ids(s, s.boundary_edges(), true); })
      .def_property_readonly("punctures", [](const TriangulatedSurface& s) { return ids(s, s.punctures(), false); })
      .def_property_readonly("spikes", [](const TriangulatedSurface& s) { return ids(s, s.spikes(), false); })
      .def_property_readonly("triangle_count", &TriangulatedSurface::triangle_count)
      .def_property_readonly("signature",
                             [](const TriangulatedSurface& s) {
                               const auto& sig = s.signature();
                               return py::make_tuple(sig.genus, sig.punctures, sig.spikes_per_boundary);
                             })
      .def("punctures_are_univalent", &punctures_are_univalent)
      .def("to_json", [](const TriangulatedSurface& s) { return io::dump(io::surface_to_json(s.description())); })
      .def("__repr__", [](const TriangulatedSurface& s) {
        const auto& sig = s.signature();
        return "<Surface g=" + std::to_string(sig.genus) + " p=" + std::to_string(sig.punctures) +
               " triangles=" + std::to_string(s.triangle_count()) + ">";
      });

  m.def(
      "psi_forward",
      [](const TriangulatedSurface& s, const IdValues& shear, const IdValues& decoration) {
        const auto p = point_from<ShearDecorationPoint>(s, "shear_decoration", shear, decoration);
        return split(s, psi_forward(s, p));
      },
      py::arg("surface"), py::arg("shear"), py::arg("decoration"),
      "Lambda lengths (by edge) and signed boundary lengths (by puncture) of a shear/decoration point.");
  m.def(
      "psi_inverse",
      [](const TriangulatedSurface& s, const IdValues& lambda, const IdValues& boundary_length) {
        const auto q = point_from<LambdaBoundaryPoint>(s, "lambda_boundary", lambda, boundary_length);
        return split(s, psi_inverse(s, q));
      },
      py::arg("surface"), py::arg("lambda_lengths"), py::arg("boundary_lengths"),
      "Shears and decorations from lambda lengths; every puncture must be 1-valent.");
  m.def(
      "closed_form_inverse",
      [](const std::string& name, const TriangulatedSurface& s, const IdValues& lambda, const IdValues& boundary_length) {
        const auto q = point_from<LambdaBoundaryPoint>(s, "lambda_boundary", lambda, boundary_length);
        return split(s, closed_form_inverse(name, s, q));
      },
      py::arg("name"), py::arg("surface"), py::arg("lambda_lengths"), py::arg("boundary_lengths"));
  m.def(
      "oracle_psi_forward",
      [](const TriangulatedSurface& s, const IdValues& shear, const IdValues& decoration) {
        const auto p = point_from<ShearDecorationPoint>(s, "shear_decoration", shear, decoration);
        return split(s, oracle::oracle_psi_forward(s, p));
      },
      py::arg("surface"), py::arg("shear"), py::arg("decoration"),
      "The forward map measured from developed stars in the upper half-plane.");

  m.def("neighborhood_radii", py::overload_cast<const std::vector<double>&, double>(&neighborhood_radii),
        py::arg("star_shears"), py::arg("boundary_length") = 0.0);
  m.def(
      "decoration_param",
      [](const std::string& kind, double r, const std::vector<double>& radii, double l) {
        const auto k = parse_kind(kind);
        return decoration_param(k, {r, k == CenterKind::geodesic ? std::abs(l) : 0.0}, radii, l);
      },
      py::arg("kind"), py::arg("r"), py::arg("radii"), py::arg("boundary_length") = 0.0);
  m.def(
      "radius_from_decoration",
      [](const std::string& kind, double d, const std::vector<double>& radii, double l) {
        return radius_from_decoration(d, radii, l, parse_kind(kind));
      },
      py::arg("kind"), py::arg("d"), py::arg("radii"), py::arg("boundary_length") = 0.0);
  m.def("endpoint_positions", &endpoint_positions, py::arg("star_shears"), py::arg("u_first"), py::arg("u_last"));

  m.def(
      "lamination_coordinates",
      [](const TriangulatedSurface& s, const std::string& text) {
        const auto doc = io::lamination_from_json(s, Json::parse(text));
        const auto& lam = doc.lamination;
        py::dict out;
        out["flavor"] = std::string(to_string(lam.flavor()));
        if (lam.flavor() == LaminationFlavor::A) out["phi_a"] = by_edge(s, edge_weights_a(s, lam));
        out["phi_x"] = by_edge(s, signed_weights_x(s, lam));
        const auto [shear, decoration] = split(s, psi_x_lamination(s, lam));
        out["psi_x"] = py::make_tuple(shear, decoration);
        return out;
      },
      py::arg("surface"), py::arg("document"), "Coordinates of a lamination given as a JSON document string.");

  m.def(
      "verify",
      [](std::vector<std::string> suites, std::uint64_t seed, int samples, std::optional<double> tolerance) {
        const std::map<std::string, std::function<verify::Report(const verify::Options&)>> table = {
            {"forward-oracle", verify::forward_oracle},
            {"roundtrip", verify::roundtrip},
            {"derivatives", verify::derivatives},
            {"equidistant-limit", verify::equidistant_limit},
            {"golden-forms", verify::golden_forms},
            {"lamination-compatibility", verify::lamination_compatibility},
            {"decoration-origin", verify::decoration_origin},
            {"puncture-coefficients", verify::puncture_coefficients},
        };
        verify::Options options;
        options.seed = seed;
        options.samples = samples;
        options.tolerance = tolerance;
        if (suites.empty()) return report_dict(verify::all(options));
        verify::Report report{seed, {}};
        for (const auto& name : suites) {
          const auto it = table.find(name);
          if (it == table.end()) throw ParseError("unknown suite '" + name + "'");
          report.append(it->second(options));
        }
        return report_dict(report);
      },
      py::arg("suites") = std::vector<std::string>{}, py::arg("seed") = verify::kDefaultSeed, py::arg("samples") = 100,
      py::arg("tolerance") = std::nullopt);
}
