#include "cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>

#include "teich/catalog.hpp"
#include "teich/io.hpp"
#include "teich/laminations.hpp"
#include "teich/oracle.hpp"
#include "teich/verification.hpp"

namespace teich::cli {

namespace {

using io::Json;

// Raised for inconsistent option combinations that CLI11 cannot express.
struct UsageError : Error {
  using Error::Error;
};

struct Settings {
  std::string surface;
  std::string point;
  std::string lamination;
  std::string direction = "forward";
  std::string output;
  std::string closed_form;
  std::optional<double> tolerance;
  std::uint64_t seed = verify::kDefaultSeed;
  int samples = 100;
  std::string format = "text";
  bool all = false;
  std::vector<std::string> suites;
  std::string example;
  std::vector<double> l;
  std::vector<double> a;
  int genus = 0;
  int punctures = 0;
  std::vector<int> boundaries;
};

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

void emit(const Settings& s, const std::string& text, std::ostream& out) {
  if (s.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(s.output);
  if (!file) throw ParseError("cannot write '" + s.output + "'");
  file << text;
}

// The surface named on the command line, or else the one the document refers to.
TriangulatedSurface surface_for(const Settings& s, const Json& doc, const std::string& doc_path) {
  if (!s.surface.empty()) return io::load_surface(s.surface);
  if (!doc.contains("surface") || !doc["surface"].is_string()) {
    throw ParseError(doc_path + ": missing key 'surface' and no --surface given");
  }
  return io::load_surface(io::resolve_relative(doc["surface"].get<std::string>(), doc_path));
}

bool use_color(const std::ostream& out) {
  return &out == &std::cout && ::isatty(STDOUT_FILENO) && std::getenv("TEICH_COORDS_NO_COLOR") == nullptr;
}

// ==========================================================
// ================          convert           ==============
// ==========================================================

int run_convert(const Settings& s, std::ostream& out) {
  const Json doc = io::read_json(s.point);
  const auto surface = surface_for(s, doc, s.point);
  auto point = io::point_from_json(surface, doc);
  if (s.direction == "forward") {
    const auto* p = std::get_if<ShearDecorationPoint>(&point.point);
    if (!p) throw UsageError("convert --direction forward expects a shear_decoration point");
    point.point = psi_forward(surface, *p);
  } else {
    const auto* q = std::get_if<LambdaBoundaryPoint>(&point.point);
    if (!q) throw UsageError("convert --direction inverse expects a lambda_boundary point");
    point.point = s.closed_form.empty() ? psi_inverse(surface, *q) : closed_form_inverse(s.closed_form, surface, *q);
  }
  emit(s, io::dump(io::point_to_json(surface, point)), out);
  return kOk;
}

// ==========================================================
// ================           verify           ==============
// ==========================================================

const std::map<std::string, std::function<verify::Report(const verify::Options&)>>& suite_table() {
  static const std::map<std::string, std::function<verify::Report(const verify::Options&)>> table{
      {"forward-oracle", verify::forward_oracle},
      {"roundtrip", verify::roundtrip},
      {"derivatives", verify::derivatives},
      {"equidistant-limit", verify::equidistant_limit},
      {"golden-forms", verify::golden_forms},
      {"lamination-compatibility", verify::lamination_compatibility},
      {"decoration-origin", verify::decoration_origin},
      {"puncture-coefficients", verify::puncture_coefficients},
  };
  return table;
}

verify::Check point_check(const Settings& s, std::string name, double error, double tolerance) {
  const double tol = s.tolerance.value_or(tolerance);
  return {"point", std::move(name), error, tol, error <= tol, ""};
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// Checks at the single point given with --point.
verify::Report verify_point(const Settings& s) {
  const Json doc = io::read_json(s.point);
  const auto surface = surface_for(s, doc, s.point);
  const auto point = io::point_from_json(surface, doc);
  const bool invertible = punctures_are_univalent(surface) && surface.has_boundary();
  verify::Report report{s.seed, {}};
  if (const auto* p = std::get_if<ShearDecorationPoint>(&point.point)) {
    const auto closed = psi_forward(surface, *p);
    const auto measured = oracle::oracle_psi_forward(surface, *p);
    report.checks.push_back(point_check(
        s, "forward map against oracle",
        std::max(max_diff(closed.lambda, measured.lambda), max_diff(closed.boundary_length, measured.boundary_length)),
        1e-9));
    const auto fd = oracle::finite_difference_report(surface, *p);
    report.checks.push_back(point_check(s, "da_h/dd_v", fd.max_error("da/dd "), 1e-6));
    report.checks.push_back(point_check(s, "dd_v/dr_v (relative)", fd.max_error("dd/dr "), 1e-6));
    if (invertible) {
      const auto back = psi_inverse(surface, closed);
      report.checks.push_back(point_check(
          s, "inverse after forward", std::max(max_diff(back.shear, p->shear), max_diff(back.decoration, p->decoration)),
          1e-9));
    }
  } else {
    const auto& q = std::get<LambdaBoundaryPoint>(point.point);
    if (!invertible) throw HypothesisViolation("the inverse chart needs a triangulation with 1-valent punctures");
    const auto again = psi_forward(surface, psi_inverse(surface, q));
    report.checks.push_back(point_check(
        s, "forward after inverse",
        std::max(max_diff(again.lambda, q.lambda), max_diff(again.boundary_length, q.boundary_length)), 1e-9));
  }
  return report;
}

int run_verify(const Settings& s, std::ostream& out) {
  verify::Options options;
  options.seed = s.seed;
  options.samples = s.samples;
  options.tolerance = s.tolerance;

  verify::Report report{s.seed, {}};
  if (!s.point.empty()) {
    report = verify_point(s);
  } else if (s.all || s.suites.empty()) {
    report = verify::all(options);
  } else {
    for (const auto& name : s.suites) report.append(suite_table().at(name)(options));
  }
  out << (s.format == "structured" ? verify::to_json(report) : verify::to_text(report, use_color(out)));
  return report.passed() ? kOk : kVerificationFailed;
}

// ==========================================================
// ================          examples          ==============
// ==========================================================

int run_examples(const Settings& s, std::ostream& out) {
  const auto surface = bundled_surface(s.example);
  auto q = LambdaBoundaryPoint::zero(surface);
  std::vector<std::string> edge_order, vertex_order;
  bool with_decorations = !s.a.empty();
  if (s.example == "three-punctured-sphere") {
    edge_order = {"e12", "e13", "e23"};
    vertex_order = {"v1", "v2", "v3"};
    if (s.l.size() != 3) throw UsageError("three-punctured-sphere takes --l l1 l2 l3");
    if (!s.a.empty() && s.a.size() != 3) throw UsageError("three-punctured-sphere takes --a a12 a13 a23");
    for (int i = 0; i < 3; ++i) q.boundary_length[surface.vertex_index(vertex_order[i])] = s.l[i];
  } else if (s.example == "once-punctured-bigon") {
    edge_order = {"e12", "e13", "e23", "e32"};
    vertex_order = {"v1", "v2", "v3"};
    if (s.l.size() != 1 || s.a.size() != 4) throw UsageError("once-punctured-bigon takes --l l1 --a a12 a13 a23 a32");
    q.boundary_length[surface.vertex_index("v1")] = s.l[0];
  } else {
    throw UsageError("examples are available for three-punctured-sphere and once-punctured-bigon");
  }
  for (size_t i = 0; i < s.a.size(); ++i) q.lambda[surface.edge_index(edge_order[i])] = s.a[i];
  const auto p = closed_form_inverse(s.example, surface, q);

  std::vector<std::pair<std::string, double>> shears, decorations;
  for (const auto& id : edge_order) {
    const int e = surface.edge_index(id);
    if (surface.edges()[e].interior()) shears.emplace_back(id, p.shear[e]);
  }
  if (with_decorations) {
    for (const auto& id : vertex_order) decorations.emplace_back(id, p.decoration[surface.vertex_index(id)]);
  }

  if (s.format == "structured") {
    Json doc;
    doc["schema_version"] = verify::kSchemaVersion;
    doc["surface"] = s.example;
    doc["shear"] = Json::object();
    for (const auto& [id, x] : shears) doc["shear"][id] = x;
    if (with_decorations) {
      doc["decoration"] = Json::object();
      for (const auto& [id, d] : decorations) doc["decoration"][id] = d;
    }
    out << io::dump(doc);
    return kOk;
  }
  out << s.example << "\n";
  for (const auto& [id, x] : shears) out << "  x_" << id << " = " << format_number(x) << "\n";
  for (const auto& [id, d] : decorations) out << "  d_" << id << " = " << format_number(d) << "\n";
  return kOk;
}

// ==========================================================
// ================         lamination         ==============
// ==========================================================

int run_lamination(const Settings& s, std::ostream& out) {
  const Json doc = io::read_json(s.lamination);
  const auto surface = surface_for(s, doc, s.lamination);
  const auto lam = io::lamination_from_json(surface, doc).lamination;
  const auto& E = surface.edges();
  const auto& V = surface.vertices();

  const auto phi_x = signed_weights_x(surface, lam, surface.has_boundary());
  const auto psi_x = psi_x_lamination(surface, lam);
  const bool is_a = lam.flavor() == LaminationFlavor::A;

  Json result;
  result["schema_version"] = verify::kSchemaVersion;
  result["flavor"] = to_string(lam.flavor());
  result["curves"] = Json::array();
  for (const auto& c : lam.components()) {
    Json j = {{"kind", to_string(c.cls.kind)}, {"weight", c.weight}};
    if (c.cls.kind == CurveKind::A) j["vertex"] = V[c.cls.vertex].id;
    Json crossings = Json::array();
    for (int e : c.curve.crossings) crossings.push_back(E[e].id);
    j["crossings"] = std::move(crossings);
    if (!c.cls.note.empty()) j["note"] = c.cls.note;
    result["curves"].push_back(std::move(j));
  }
  auto edge_map = [&](const std::vector<double>& values, bool interior_only) {
    Json m = Json::object();
    for (int e = 0; e < surface.edge_count(); ++e)
      if (!interior_only || E[e].interior()) m[E[e].id] = values[e];
    return m;
  };
  if (is_a) result["phi_a"] = edge_map(edge_weights_a(surface, lam), false);
  result["phi_x"] = edge_map(phi_x, false);
  Json decorations = Json::object();
  for (int v = 0; v < surface.vertex_count(); ++v) decorations[V[v].id] = psi_x.decoration[v];
  result["psi_x"] = {{"shear", edge_map(psi_x.shear, true)}, {"decoration", std::move(decorations)}};
  if (is_a) {
    const auto r = compatibility_check(surface, lam);
    result["compatibility"] = {{"lambda_error", r.lambda_error}, {"boundary_length_error", r.boundary_length_error}};
  }

  if (s.format == "structured") {
    out << io::dump(result);
    return kOk;
  }
  out << "flavor " << to_string(lam.flavor()) << ", " << lam.components().size() << " curves\n";
  for (const auto& c : result["curves"]) {
    out << "  " << c["kind"].get<std::string>();
    if (c.contains("vertex")) out << " around " << c["vertex"].get<std::string>();
    out << ", weight " << format_number(c["weight"].get<double>()) << "\n";
  }
  auto print_map = [&](const char* title, const Json& m) {
    out << title << "\n";
    for (const auto& [id, v] : m.items()) out << "  " << id << " = " << format_number(v.get<double>()) << "\n";
  };
  if (is_a) print_map("a_e (edge weights)", result["phi_a"]);
  print_map("x_e (signed weights)", result["phi_x"]);
  print_map("shear of the associated point", result["psi_x"]["shear"]);
  print_map("decoration of the associated point", result["psi_x"]["decoration"]);
  if (is_a) {
    out << "compatibility: lambda error " << format_number(result["compatibility"]["lambda_error"].get<double>())
        << ", boundary length error "
        << format_number(result["compatibility"]["boundary_length_error"].get<double>()) << "\n";
  }
  return kOk;
}

// ==========================================================
// ================          generate          ==============
// ==========================================================

int run_generate(const Settings& s, std::ostream& out) {
  const SurfaceSignature sig{s.genus, s.punctures, s.boundaries};
  emit(s, io::dump(io::surface_to_json(special_triangulation(sig).description())), out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shear and lambda-length coordinates on triangulated hyperbolic surfaces", "teich-coords"};
  app.require_subcommand(1);
  Settings s;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", s.format, "Report format")->check(CLI::IsMember({"text", "structured"}));
  };

  auto* convert = app.add_subcommand("convert", "Apply the forward or inverse chart map to a point file");
  convert->add_option("--surface", s.surface, "Surface file (default: the one named in the point file)");
  convert->add_option("--point", s.point, "Coordinate point file")->required();
  convert->add_option("--direction", s.direction, "forward: shear-decoration to lambda; inverse: the reverse")
      ->check(CLI::IsMember({"forward", "inverse"}));
  convert->add_option("--closed-form", s.closed_form,
                      "Invert with the closed form of a bundled example (three-punctured-sphere, once-punctured-bigon)");
  convert->add_option("--output,-o", s.output, "Write the result here instead of standard output");

  auto* verify_cmd = app.add_subcommand("verify", "Run the oracle suites, or check a single point");
  verify_cmd->add_flag("--all", s.all, "Run every suite (the default)");
  std::vector<std::string> suite_names;
  for (const auto& [name, fn] : suite_table()) suite_names.push_back(name);
  verify_cmd->add_option("--suite", s.suites, "Run only these suites")->check(CLI::IsMember(suite_names));
  verify_cmd->add_option("--surface", s.surface, "Surface file for --point");
  verify_cmd->add_option("--point", s.point, "Check this point instead of running the suites");
  verify_cmd->add_option("--seed", s.seed, "Seed for the randomised suites")->capture_default_str();
  verify_cmd->add_option("--samples", s.samples, "Random points per surface")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--tolerance", s.tolerance, "Use this tolerance for every check");
  add_format(verify_cmd);

  auto* examples = app.add_subcommand("examples", "Closed-form inverse on the small example surfaces");
  examples->add_option("surface", s.example, "three-punctured-sphere or once-punctured-bigon")->required();
  examples->add_option("--l", s.l, "Signed boundary lengths of the punctures")->required();
  examples->add_option("--a", s.a, "Lambda lengths, in the order of the table");
  add_format(examples);

  auto* lamination = app.add_subcommand("lamination", "Coordinates of a lamination file");
  lamination->add_option("--surface", s.surface, "Surface file (default: the one named in the lamination file)");
  lamination->add_option("--lamination", s.lamination, "Lamination file")->required();
  add_format(lamination);

  auto* generate = app.add_subcommand("generate", "Emit a triangulation with 1-valent punctures");
  generate->add_option("--genus", s.genus, "Genus")->check(CLI::NonNegativeNumber);
  generate->add_option("--punctures", s.punctures, "Number of punctures")->check(CLI::NonNegativeNumber);
  generate->add_option("--boundaries", s.boundaries, "Spike count of each boundary component")->required();
  generate->add_option("--output,-o", s.output, "Write the surface here instead of standard output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalidInput;
  }

  try {
    if (convert->parsed()) return run_convert(s, out);
    if (verify_cmd->parsed()) return run_verify(s, out);
    if (examples->parsed()) return run_examples(s, out);
    if (lamination->parsed()) return run_lamination(s, out);
    return run_generate(s, out);
  } catch (const InvalidTriangulation& e) {
    err << "invalid triangulation: " << e.what() << "\n";
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const LaminationError& e) {
    err << "invalid lamination: " << e.what() << "\n";
  } catch (const HypothesisViolation& e) {
    err << "hypothesis violated: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  }
  return kInvalidInput;
}

}  // namespace teich::cli
