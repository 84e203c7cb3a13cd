#include "teich/io.hpp"

#include <cmath>
#include <fstream>
#include <map>

#include "teich/catalog.hpp"

namespace teich::io {

namespace {

const Json& require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing key '" + key + "'");
  return *it;
}

std::string require_string(const Json& obj, const char* key, const std::string& where) {
  const Json& v = require(obj, key, where);
  if (!v.is_string()) throw ParseError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

int require_int(const Json& obj, const char* key, const std::string& where) {
  const Json& v = require(obj, key, where);
  if (!v.is_number_integer()) throw ParseError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

double as_number(const Json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError(where + ": value is not finite");
  return x;
}

const Json& require_array(const Json& obj, const char* key, const std::string& where) {
  const Json& v = require(obj, key, where);
  if (!v.is_array()) throw ParseError(where + "." + key + ": expected an array");
  return v;
}

template <size_t N>
std::array<std::string, N> string_tuple(const Json& arr, const std::string& where) {
  if (!arr.is_array() || arr.size() != N) {
    throw ParseError(where + ": expected " + std::to_string(N) + " ids");
  }
  std::array<std::string, N> out;
  for (size_t i = 0; i < N; ++i) {
    if (!arr[i].is_string()) throw ParseError(where + ": ids must be strings");
    out[i] = arr[i].get<std::string>();
  }
  return out;
}

VertexKind parse_vertex_kind(const std::string& s, const std::string& where) {
  if (s == "puncture") return VertexKind::puncture;
  if (s == "spike") return VertexKind::spike;
  throw ParseError(where + ": vertex kind must be 'puncture' or 'spike', got '" + s + "'");
}

EdgeKind parse_edge_kind(const std::string& s, const std::string& where) {
  if (s == "interior") return EdgeKind::interior;
  if (s == "boundary") return EdgeKind::boundary;
  throw ParseError(where + ": edge kind must be 'interior' or 'boundary', got '" + s + "'");
}

// id -> value table of a point document section, with every id checked.
std::map<std::string, double> value_table(const Json& values, const char* key) {
  const std::string where = std::string("values.") + key;
  const Json& section = require(values, key, "values");
  if (!section.is_object()) throw ParseError(where + ": expected an object");
  std::map<std::string, double> out;
  for (const auto& [id, v] : section.items()) out[id] = as_number(v, where + "." + id);
  return out;
}

// Fills `out` from `table` for the ids `wanted` says must be present; the
// remaining known ids may appear only with value 0.
template <class Items, class Wanted>
void fill(std::map<std::string, double> table, const Items& items, Wanted wanted, std::vector<double>& out,
          const std::string& where) {
  out.assign(items.size(), 0.0);
  for (size_t i = 0; i < items.size(); ++i) {
    auto it = table.find(items[i].id);
    if (wanted(i)) {
      if (it == table.end()) throw ParseError(where + ": missing entry for '" + items[i].id + "'");
      out[i] = it->second;
    } else if (it != table.end() && it->second != 0.0) {
      throw ParseError(where + ": '" + items[i].id + "' has no coordinate here and must be 0 if listed");
    }
    if (it != table.end()) table.erase(it);
  }
  if (!table.empty()) throw ParseError(where + ": unknown id '" + table.begin()->first + "'");
}

int lookup_vertex(const TriangulatedSurface& s, const std::string& id, const std::string& where) {
  for (int v = 0; v < s.vertex_count(); ++v)
    if (s.vertices()[v].id == id) return v;
  throw ParseError(where + ": unknown vertex '" + id + "'");
}

int lookup_edge(const TriangulatedSurface& s, const std::string& id, const std::string& where) {
  for (int e = 0; e < s.edge_count(); ++e)
    if (s.edges()[e].id == id) return e;
  throw ParseError(where + ": unknown edge '" + id + "'");
}

Json curve_end_to_json(const TriangulatedSurface& s, const CurveEnd& end) {
  Json j = Json::object();
  if (end.kind == CurveEnd::Kind::boundary_edge) {
    j["edge"] = s.edges()[end.index].id;
  } else {
    j["vertex"] = s.vertices()[end.index].id;
  }
  return j;
}

}  // namespace

// ==========================================================
// ================          Surfaces          ==============
// ==========================================================

SurfaceDescription surface_from_json(const Json& doc) {
  SurfaceDescription d;
  const Json& sig = require(doc, "signature", "surface");
  d.signature.genus = require_int(sig, "genus", "signature");
  d.signature.punctures = require_int(sig, "punctures", "signature");
  for (const auto& b : require_array(sig, "boundaries", "signature")) {
    if (!b.is_number_integer()) throw ParseError("signature.boundaries: expected integer spike counts");
    d.signature.spikes_per_boundary.push_back(b.get<int>());
  }
  for (const auto& v : require_array(doc, "vertices", "surface")) {
    d.vertices.push_back({require_string(v, "id", "vertex"),
                          parse_vertex_kind(require_string(v, "kind", "vertex"), "vertex")});
  }
  for (const auto& e : require_array(doc, "edges", "surface")) {
    const std::string id = require_string(e, "id", "edge");
    d.edges.push_back({id, string_tuple<2>(require(e, "ends", "edge " + id), "edge " + id + ".ends"),
                       parse_edge_kind(require_string(e, "kind", "edge " + id), "edge " + id)});
  }
  for (const auto& t : require_array(doc, "triangles", "surface")) {
    SurfaceDescription::TriangleSpec spec;
    spec.id = require_string(t, "id", "triangle");
    spec.sides = string_tuple<3>(require(t, "sides", "triangle " + spec.id), "triangle " + spec.id + ".sides");
    if (auto it = t.find("vertices"); it != t.end()) {
      spec.vertices = string_tuple<3>(*it, "triangle " + spec.id + ".vertices");
    }
    d.triangles.push_back(std::move(spec));
  }
  return d;
}

Json surface_to_json(const SurfaceDescription& d) {
  Json doc;
  doc["signature"] = {{"genus", d.signature.genus},
                      {"punctures", d.signature.punctures},
                      {"boundaries", d.signature.spikes_per_boundary}};
  doc["vertices"] = Json::array();
  for (const auto& v : d.vertices) doc["vertices"].push_back({{"id", v.id}, {"kind", to_string(v.kind)}});
  doc["edges"] = Json::array();
  for (const auto& e : d.edges) {
    doc["edges"].push_back({{"id", e.id}, {"ends", e.ends}, {"kind", to_string(e.kind)}});
  }
  doc["triangles"] = Json::array();
  for (const auto& t : d.triangles) {
    Json j = {{"id", t.id}, {"sides", t.sides}};
    if (t.vertices) j["vertices"] = *t.vertices;
    doc["triangles"].push_back(std::move(j));
  }
  return doc;
}

TriangulatedSurface load_surface(const std::string& path) {
  constexpr std::string_view prefix = "bundled:";
  if (path.starts_with(prefix)) return bundled_surface(path.substr(prefix.size()));
  return TriangulatedSurface::build(surface_from_json(read_json(path)));
}

// ==========================================================
// ================           Points           ==============
// ==========================================================

const char* to_string(Chart chart) {
  return chart == Chart::shear_decoration ? "shear_decoration" : "lambda_boundary";
}

PointDocument point_from_json(const TriangulatedSurface& s, const Json& doc) {
  PointDocument out;
  out.surface = require_string(doc, "surface", "point");
  const std::string chart = require_string(doc, "chart", "point");
  const Json& values = require(doc, "values", "point");
  auto edges = value_table(values, "edges");
  auto vertices = value_table(values, "vertices");
  const auto& E = s.edges();
  const auto& V = s.vertices();
  if (chart == "shear_decoration") {
    ShearDecorationPoint p;
    fill(edges, E, [&](size_t e) { return E[e].interior(); }, p.shear, "values.edges");
    fill(vertices, V, [](size_t) { return true; }, p.decoration, "values.vertices");
    out.point = std::move(p);
  } else if (chart == "lambda_boundary") {
    LambdaBoundaryPoint q;
    fill(edges, E, [](size_t) { return true; }, q.lambda, "values.edges");
    fill(vertices, V, [&](size_t v) { return V[v].kind == VertexKind::puncture; }, q.boundary_length,
         "values.vertices");
    out.point = std::move(q);
  } else {
    throw ParseError("point.chart: expected 'shear_decoration' or 'lambda_boundary', got '" + chart + "'");
  }
  return out;
}

Json point_to_json(const TriangulatedSurface& s, const PointDocument& doc) {
  Json edges = Json::object(), vertices = Json::object();
  if (const auto* p = std::get_if<ShearDecorationPoint>(&doc.point)) {
    for (int e = 0; e < s.edge_count(); ++e)
      if (s.edges()[e].interior()) edges[s.edges()[e].id] = p->shear[e];
    for (int v = 0; v < s.vertex_count(); ++v) vertices[s.vertices()[v].id] = p->decoration[v];
  } else {
    const auto& q = std::get<LambdaBoundaryPoint>(doc.point);
    for (int e = 0; e < s.edge_count(); ++e) edges[s.edges()[e].id] = q.lambda[e];
    for (int v = 0; v < s.vertex_count(); ++v)
      if (s.vertices()[v].kind == VertexKind::puncture) vertices[s.vertices()[v].id] = q.boundary_length[v];
  }
  Json out;
  out["surface"] = doc.surface;
  out["chart"] = to_string(doc.chart());
  out["values"] = {{"edges", std::move(edges)}, {"vertices", std::move(vertices)}};
  return out;
}

// ==========================================================
// ================        Laminations         ==============
// ==========================================================

LaminationDocument lamination_from_json(const TriangulatedSurface& s, const Json& doc) {
  const std::string surface = require_string(doc, "surface", "lamination");

  std::vector<int> orientation(s.vertex_count(), 0);
  if (auto it = doc.find("orientation"); it != doc.end()) {
    if (!it->is_object()) throw ParseError("lamination.orientation: expected an object");
    for (const auto& [id, v] : it->items()) {
      const int idx = lookup_vertex(s, id, "lamination.orientation");
      if (!v.is_number_integer()) throw ParseError("lamination.orientation." + id + ": expected -1, 0 or 1");
      orientation[idx] = v.get<int>();
    }
  }

  std::vector<std::pair<CombinatorialCurve, double>> curves;
  int n = 0;
  for (const auto& c : require_array(doc, "curves", "lamination")) {
    const std::string where = "lamination.curves[" + std::to_string(n++) + "]";
    CombinatorialCurve curve;
    const std::string shape = require_string(c, "shape", where);
    if (shape == "closed") {
      curve.shape = CurveShape::closed;
    } else if (shape == "arc") {
      curve.shape = CurveShape::arc;
    } else {
      throw ParseError(where + ".shape: expected 'closed' or 'arc', got '" + shape + "'");
    }
    for (const auto& e : require_array(c, "crossings", where)) {
      if (!e.is_string()) throw ParseError(where + ".crossings: edge ids must be strings");
      curve.crossings.push_back(lookup_edge(s, e.get<std::string>(), where + ".crossings"));
    }
    if (auto it = c.find("ends"); it != c.end() && !it->empty()) {
      if (!it->is_array()) throw ParseError(where + ".ends: expected an array");
      for (const auto& end : *it) {
        CurveEnd ce;
        if (end.contains("edge") && end["edge"].is_string()) {
          ce = {CurveEnd::Kind::boundary_edge, lookup_edge(s, end["edge"].get<std::string>(), where + ".ends")};
        } else if (end.contains("vertex") && end["vertex"].is_string()) {
          ce = {CurveEnd::Kind::vertex, lookup_vertex(s, end["vertex"].get<std::string>(), where + ".ends")};
        } else {
          throw ParseError(where + ".ends: each end is {\"edge\": id} or {\"vertex\": id}");
        }
        curve.ends.push_back(ce);
      }
    }
    if (curve.shape == CurveShape::arc && curve.ends.size() != 2) {
      throw ParseError(where + ".ends: an arc needs exactly two ends");
    }
    if (curve.shape == CurveShape::closed && !curve.ends.empty()) {
      throw ParseError(where + ".ends: a closed curve has no ends");
    }
    curves.emplace_back(std::move(curve), as_number(require(c, "weight", where), where + ".weight"));
  }

  std::optional<LaminationFlavor> flavor;
  if (auto it = doc.find("flavor"); it != doc.end()) {
    if (!it->is_string() || !(flavor = parse_flavor(it->get<std::string>()))) {
      throw ParseError("lamination.flavor: expected one of A, X, AX, X_D, AX_D");
    }
  }
  return {surface, Lamination::make(s, curves, std::move(orientation), flavor)};
}

Json lamination_to_json(const TriangulatedSurface& s, const LaminationDocument& doc) {
  Json out;
  out["surface"] = doc.surface;
  out["flavor"] = to_string(doc.lamination.flavor());
  Json orientation = Json::object();
  for (int v = 0; v < s.vertex_count(); ++v) {
    if (doc.lamination.orientation()[v] != 0) orientation[s.vertices()[v].id] = doc.lamination.orientation()[v];
  }
  out["orientation"] = std::move(orientation);
  out["curves"] = Json::array();
  for (const auto& c : doc.lamination.components()) {
    Json crossings = Json::array();
    for (int e : c.curve.crossings) crossings.push_back(s.edges()[e].id);
    Json ends = Json::array();
    for (const auto& end : c.curve.ends) ends.push_back(curve_end_to_json(s, end));
    out["curves"].push_back({{"shape", c.curve.shape == CurveShape::closed ? "closed" : "arc"},
                             {"crossings", std::move(crossings)},
                             {"ends", std::move(ends)},
                             {"weight", c.weight}});
  }
  return out;
}

// ==========================================================
// ================           Files            ==============
// ==========================================================

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

std::string resolve_relative(const std::string& surface_ref, const std::filesystem::path& document) {
  if (surface_ref.starts_with("bundled:")) return surface_ref;
  std::filesystem::path p(surface_ref);
  if (p.is_absolute()) return surface_ref;
  return (document.parent_path() / p).lexically_normal().string();
}

}  // namespace teich::io
