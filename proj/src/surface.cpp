#include "teich/surface.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace teich {

const char* to_string(VertexKind kind) { return kind == VertexKind::puncture ? "puncture" : "spike"; }
const char* to_string(EdgeKind kind) { return kind == EdgeKind::interior ? "interior" : "boundary"; }

int SurfaceSignature::spikes() const {
  return std::accumulate(spikes_per_boundary.begin(), spikes_per_boundary.end(), 0);
}

int SurfaceSignature::hyperbolicity_defect() const {
  return 4 - 4 * genus - 2 * punctures - 2 * boundary_components() - spikes();
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& c : checks) {
    if (c.passed) continue;
    if (!first) out << "; ";
    out << c.name << ": " << c.detail;
    first = false;
  }
  return first ? std::string("all checks passed") : out.str();
}

// ==========================================================
// ================        Assembly           ===============
// ==========================================================

namespace {

struct Corner {
  int triangle;
  int slot;  // corner at the tail of side `slot`
};

int corner_index(int triangle, int slot) { return 3 * triangle + slot; }

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }
  void merge(int a, int b) { parent_[find(a)] = find(b); }

 private:
  std::vector<int> parent_;
};

class Assembler {
 public:
  Assembler(const SurfaceDescription& d, ValidationReport& report) : d_(d), report_(report) {}

  // Returns false when a structural failure prevents building the surface.
  bool run(SurfaceSignature& sig, std::vector<Vertex>& verts, std::vector<Edge>& edges,
           std::vector<Triangle>& tris) {
    check_signature();
    if (!index_ids()) return false;
    if (!collect_sides()) return false;
    if (!label_corners()) return false;

    sig = d_.signature;
    verts.clear();
    for (const auto& v : d_.vertices) verts.push_back({v.id, v.kind});
    edges.clear();
    for (size_t e = 0; e < d_.edges.size(); ++e) {
      Edge edge;
      edge.id = d_.edges[e].id;
      edge.ends = edge_ends_[e];
      edge.kind = d_.edges[e].kind;
      edge.sides = edge_sides_[e];
      edges.push_back(std::move(edge));
    }
    tris.clear();
    for (size_t t = 0; t < d_.triangles.size(); ++t) {
      Triangle tri;
      tri.id = d_.triangles[t].id;
      for (int i = 0; i < 3; ++i) tri.sides[i] = {side_edge_[t][i], forward_[t][i]};
      tris.push_back(std::move(tri));
    }
    return true;
  }

 private:
  void fail(const std::string& name, const std::string& detail) { report_.checks.push_back({name, false, detail}); }
  void pass(const std::string& name) { report_.checks.push_back({name, true, ""}); }

  void check_signature() {
    const auto& sig = d_.signature;
    bool spikes_ok = true;
    for (int s : sig.spikes_per_boundary) spikes_ok &= s >= 1;
    if (spikes_ok) {
      pass("spikes per boundary");
    } else {
      fail("spikes per boundary", "every boundary component needs at least one spike");
    }
    if (sig.genus < 0 || sig.punctures < 0) {
      fail("signature", "genus and puncture count must be non-negative");
    }
    if (sig.hyperbolicity_defect() < 0) {
      pass("hyperbolicity inequality");
    } else {
      std::ostringstream out;
      out << "4-4g-2p-2c-s = " << sig.hyperbolicity_defect() << " is not negative";
      fail("hyperbolicity inequality", out.str());
    }
  }

  bool index_ids() {
    bool ok = true;
    auto add = [&](auto& map, const std::string& id, int idx, const char* what) {
      if (!map.emplace(id, idx).second) {
        fail("unique ids", std::string("duplicate ") + what + " id '" + id + "'");
        ok = false;
      }
    };
    for (size_t i = 0; i < d_.vertices.size(); ++i) add(vertex_ids_, d_.vertices[i].id, int(i), "vertex");
    for (size_t i = 0; i < d_.edges.size(); ++i) add(edge_ids_, d_.edges[i].id, int(i), "edge");
    std::map<std::string, int> tri_ids;
    for (size_t i = 0; i < d_.triangles.size(); ++i) add(tri_ids, d_.triangles[i].id, int(i), "triangle");

    int punctures = 0, spikes = 0;
    for (const auto& v : d_.vertices) (v.kind == VertexKind::puncture ? punctures : spikes)++;
    if (punctures != d_.signature.punctures || spikes != d_.signature.spikes()) {
      std::ostringstream out;
      out << "vertex kinds give p=" << punctures << ", s=" << spikes << " but the signature has p="
          << d_.signature.punctures << ", s=" << d_.signature.spikes();
      fail("signature vertex counts", out.str());
    } else {
      pass("signature vertex counts");
    }

    edge_ends_.resize(d_.edges.size());
    for (size_t e = 0; e < d_.edges.size(); ++e) {
      for (int k = 0; k < 2; ++k) {
        auto it = vertex_ids_.find(d_.edges[e].ends[k]);
        if (it == vertex_ids_.end()) {
          fail("edge ends", "edge '" + d_.edges[e].id + "' ends at unknown vertex '" + d_.edges[e].ends[k] + "'");
          ok = false;
          continue;
        }
        edge_ends_[e][k] = it->second;
      }
      if (!ok) continue;
      if (d_.edges[e].kind == EdgeKind::boundary) {
        for (int k = 0; k < 2; ++k) {
          if (d_.vertices[edge_ends_[e][k]].kind != VertexKind::spike) {
            fail("edge ends", "boundary edge '" + d_.edges[e].id + "' must end at spikes");
            ok = false;
          }
        }
      }
    }
    return ok;
  }

  bool collect_sides() {
    bool ok = true;
    const int nt = static_cast<int>(d_.triangles.size());
    side_edge_.assign(nt, {});
    edge_sides_.assign(d_.edges.size(), {});
    for (int t = 0; t < nt; ++t) {
      for (int i = 0; i < 3; ++i) {
        auto it = edge_ids_.find(d_.triangles[t].sides[i]);
        if (it == edge_ids_.end()) {
          fail("triangle sides", "triangle '" + d_.triangles[t].id + "' uses unknown edge '" +
                                     d_.triangles[t].sides[i] + "'");
          ok = false;
          continue;
        }
        side_edge_[t][i] = it->second;
        edge_sides_[it->second].push_back({t, i});
      }
    }
    if (!ok) return false;
    for (size_t e = 0; e < d_.edges.size(); ++e) {
      const auto n = edge_sides_[e].size();
      const bool interior = d_.edges[e].kind == EdgeKind::interior;
      if (n > 2) {
        fail("manifold edges", "edge '" + d_.edges[e].id + "' bounds " + std::to_string(n) + " triangle sides");
        ok = false;
      } else if (interior && n != 2) {
        fail("manifold edges", "interior edge '" + d_.edges[e].id + "' must bound two triangle sides, found " +
                                   std::to_string(n));
        ok = false;
      } else if (!interior && n != 1) {
        fail("manifold edges", "boundary edge '" + d_.edges[e].id + "' must bound exactly one triangle side, found " +
                                   std::to_string(n));
        ok = false;
      }
    }
    if (ok) pass("manifold edges");
    return ok;
  }

  SideRef twin(SideRef s) const {
    const auto& sides = edge_sides_[side_edge_[s.triangle][s.slot]];
    if (sides.size() < 2) return {};
    return sides[0] == s ? sides[1] : sides[0];
  }

  // Groups corners into vertex classes by walking around vertices, then
  // assigns vertex ids consistent with the edge endpoints.
  bool label_corners() {
    const int nt = static_cast<int>(d_.triangles.size());
    const int nc = 3 * nt;
    DisjointSets sets(nc);
    for (int t = 0; t < nt; ++t) {
      for (int i = 0; i < 3; ++i) {
        SideRef arriving{t, (i + 2) % 3};
        SideRef tw = twin(arriving);
        if (tw.valid()) sets.merge(corner_index(t, i), corner_index(tw.triangle, tw.slot));
      }
    }
    std::map<int, int> class_of_root;
    corner_class_.assign(nc, -1);
    for (int c = 0; c < nc; ++c) {
      auto [it, inserted] = class_of_root.emplace(sets.find(c), static_cast<int>(class_of_root.size()));
      corner_class_[c] = it->second;
    }
    const int nclasses = static_cast<int>(class_of_root.size());
    const int nv = static_cast<int>(d_.vertices.size());
    if (nclasses != nv) {
      std::ostringstream out;
      out << "triangles glue into " << nclasses << " vertex neighbourhoods but " << nv << " vertices are declared";
      fail("star/face consistency", out.str());
      return false;
    }

    // Candidate vertices per class.
    std::vector<std::set<int>> domain(nclasses);
    std::vector<bool> constrained(nclasses, false);
    auto restrict = [&](int cls, const std::set<int>& allowed) {
      if (!constrained[cls]) {
        domain[cls] = allowed;
        constrained[cls] = true;
      } else {
        std::set<int> kept;
        std::set_intersection(domain[cls].begin(), domain[cls].end(), allowed.begin(), allowed.end(),
                              std::inserter(kept, kept.begin()));
        domain[cls] = std::move(kept);
      }
    };
    for (int t = 0; t < nt; ++t) {
      for (int i = 0; i < 3; ++i) {
        const auto& ends = edge_ends_[side_edge_[t][i]];
        std::set<int> allowed{ends[0], ends[1]};
        restrict(corner_class_[corner_index(t, i)], allowed);
        restrict(corner_class_[corner_index(t, (i + 1) % 3)], allowed);
      }
      if (d_.triangles[t].vertices) {
        for (int i = 0; i < 3; ++i) {
          auto it = vertex_ids_.find((*d_.triangles[t].vertices)[i]);
          if (it == vertex_ids_.end()) {
            fail("triangle vertices", "triangle '" + d_.triangles[t].id + "' names unknown vertex");
            return false;
          }
          restrict(corner_class_[corner_index(t, i)], {it->second});
        }
      }
    }

    label_.assign(nclasses, -1);
    std::vector<bool> used(nv, false);
    if (!assign_labels(0, domain, used)) {
      fail("star/face consistency", "no assignment of vertices to corners matches the edge endpoints");
      return false;
    }

    // Derive side directions.
    forward_.assign(nt, {true, true, true});
    std::vector<bool> seen_loop(d_.edges.size(), false);
    for (int t = 0; t < nt; ++t) {
      for (int i = 0; i < 3; ++i) {
        const int e = side_edge_[t][i];
        const auto& ends = edge_ends_[e];
        if (ends[0] == ends[1]) {
          forward_[t][i] = !seen_loop[e];
          seen_loop[e] = true;
        } else {
          forward_[t][i] = label_[corner_class_[corner_index(t, i)]] == ends[0];
        }
      }
    }

    // A puncture neighbourhood must close up; a spike neighbourhood must be an open chain.
    std::vector<int> open_starts(nclasses, 0);
    for (int t = 0; t < nt; ++t) {
      for (int i = 0; i < 3; ++i) {
        if (!twin({t, i}).valid()) ++open_starts[corner_class_[corner_index(t, i)]];
      }
    }
    bool ok = true;
    for (int cls = 0; cls < nclasses; ++cls) {
      const auto& v = d_.vertices[label_[cls]];
      if (v.kind == VertexKind::puncture && open_starts[cls] != 0) {
        fail("star/face consistency", "puncture '" + v.id + "' touches the boundary");
        ok = false;
      } else if (v.kind == VertexKind::spike && open_starts[cls] != 1) {
        fail("star/face consistency", "spike '" + v.id + "' must have exactly one boundary chain");
        ok = false;
      }
    }
    if (ok) pass("star/face consistency");
    return ok;
  }

  bool assign_labels(int cls, const std::vector<std::set<int>>& domain, std::vector<bool>& used) {
    const int nclasses = static_cast<int>(label_.size());
    if (cls == nclasses) return true;
    for (int v : domain[cls]) {
      if (used[v]) continue;
      label_[cls] = v;
      used[v] = true;
      if (consistent_so_far() && assign_labels(cls + 1, domain, used)) return true;
      used[v] = false;
      label_[cls] = -1;
    }
    return false;
  }

  bool consistent_so_far() const {
    const int nt = static_cast<int>(d_.triangles.size());
    for (int t = 0; t < nt; ++t) {
      for (int i = 0; i < 3; ++i) {
        const int a = label_[corner_class_[corner_index(t, i)]];
        const int b = label_[corner_class_[corner_index(t, (i + 1) % 3)]];
        if (a < 0 || b < 0) continue;
        const auto& ends = edge_ends_[side_edge_[t][i]];
        if (!((a == ends[0] && b == ends[1]) || (a == ends[1] && b == ends[0]))) return false;
      }
    }
    return true;
  }

  const SurfaceDescription& d_;
  ValidationReport& report_;
  std::map<std::string, int> vertex_ids_;
  std::map<std::string, int> edge_ids_;
  std::vector<std::array<int, 2>> edge_ends_;
  std::vector<std::array<int, 3>> side_edge_;
  std::vector<std::vector<SideRef>> edge_sides_;
  std::vector<int> corner_class_;
  std::vector<int> label_;
  std::vector<std::array<bool, 3>> forward_;
};

}  // namespace

SideRef TriangulatedSurface::twin(SideRef s) const {
  const auto& sides = edges_[side(s).edge].sides;
  if (sides.size() < 2) return {};
  return sides[0] == s ? sides[1] : sides[0];
}

HalfEdge TriangulatedSurface::tail_half_edge(SideRef s) const {
  const auto& ts = side(s);
  return {ts.edge, ts.forward ? 0 : 1};
}

HalfEdge TriangulatedSurface::head_half_edge(SideRef s) const {
  const auto& ts = side(s);
  return {ts.edge, ts.forward ? 1 : 0};
}

int TriangulatedSurface::tail(SideRef s) const { return vertex_of(tail_half_edge(s)); }
int TriangulatedSurface::head(SideRef s) const { return vertex_of(head_half_edge(s)); }

namespace {

// Counter-clockwise star of every vertex, walked corner by corner.
std::vector<VertexStar> walk_stars(const TriangulatedSurface& surf) {
  std::vector<VertexStar> stars(surf.vertex_count());
  std::vector<std::vector<SideRef>> corners(surf.vertex_count());
  for (int t = 0; t < surf.triangle_count(); ++t) {
    for (int i = 0; i < 3; ++i) corners[surf.tail({t, i})].push_back({t, i});
  }
  auto next_corner = [&](SideRef c) { return surf.twin({c.triangle, (c.slot + 2) % 3}); };

  for (int v = 0; v < surf.vertex_count(); ++v) {
    const auto& cs = corners[v];
    if (cs.empty()) throw InvalidTriangulation("vertex '" + surf.vertices()[v].id + "' has no incident edges");
    SideRef start;
    if (surf.vertices()[v].kind == VertexKind::spike) {
      for (auto c : cs) {
        if (!surf.twin(c).valid()) start = c;
      }
    } else {
      start = *std::min_element(cs.begin(), cs.end(), [&](SideRef a, SideRef b) {
        return surf.tail_half_edge(a) < surf.tail_half_edge(b);
      });
    }
    VertexStar star;
    SideRef c = start;
    for (size_t step = 0; step < cs.size(); ++step) {
      const bool boundary = !surf.edges()[surf.side(c).edge].interior();
      star.push_back({surf.tail_half_edge(c), c, false, boundary});
      SideRef nxt = next_corner(c);
      if (!nxt.valid()) {
        SideRef arriving{c.triangle, (c.slot + 2) % 3};
        star.push_back({surf.head_half_edge(arriving), SideRef{}, false, true});
        break;
      }
      c = nxt;
    }
    stars[v] = std::move(star);
  }
  return stars;
}

VertexStar doubled_chain(const VertexStar& chain) {
  VertexStar out = chain;
  const int m = static_cast<int>(chain.size());
  for (int k = m - 2; k >= 1; --k) {
    StarEntry mirrored = chain[k];
    mirrored.mirrored = true;
    mirrored.departing = SideRef{};
    out.push_back(mirrored);
  }
  return out;
}

}  // namespace

ValidationReport validate_description(const SurfaceDescription& description) {
  ValidationReport report;
  SurfaceSignature sig;
  std::vector<Vertex> verts;
  std::vector<Edge> edges;
  std::vector<Triangle> tris;
  Assembler assembler(description, report);
  if (!assembler.run(sig, verts, edges, tris)) return report;
  TriangulatedSurface surf;
  try {
    surf = TriangulatedSurface::build(description);
  } catch (const InvalidTriangulation&) {
    // build re-runs the same checks; the failures are already in the report
    return report;
  }
  auto more = validate_triangulation(surf);
  for (auto& c : more.checks) {
    bool dup = std::any_of(report.checks.begin(), report.checks.end(),
                           [&](const ValidationCheck& r) { return r.name == c.name; });
    if (!dup) report.checks.push_back(std::move(c));
  }
  return report;
}

TriangulatedSurface TriangulatedSurface::build(const SurfaceDescription& description) {
  ValidationReport report;
  TriangulatedSurface surf;
  Assembler assembler(description, report);
  if (!assembler.run(surf.signature_, surf.vertices_, surf.edges_, surf.triangles_) || !report.ok()) {
    throw InvalidTriangulation(report.summary());
  }
  surf.stars_ = walk_stars(surf);
  surf.formula_stars_.resize(surf.stars_.size());
  for (int v = 0; v < surf.vertex_count(); ++v) {
    surf.formula_stars_[v] =
        surf.vertices_[v].kind == VertexKind::spike ? doubled_chain(surf.stars_[v]) : surf.stars_[v];
  }
  auto post = validate_triangulation(surf);
  if (!post.ok()) throw InvalidTriangulation(post.summary());
  return surf;
}

ValidationReport validate_triangulation(const TriangulatedSurface& surf) {
  ValidationReport report;
  const auto& sig = surf.signature();

  {
    const int chi = surf.vertex_count() - surf.edge_count() + surf.triangle_count();
    ValidationCheck c{"euler characteristic", chi == sig.euler_characteristic(), ""};
    if (!c.passed) {
      std::ostringstream out;
      out << "V-E+F = " << chi << " but 2-2g-c = " << sig.euler_characteristic();
      c.detail = out.str();
    }
    report.checks.push_back(c);
  }
  {
    bool spikes_ok = std::all_of(sig.spikes_per_boundary.begin(), sig.spikes_per_boundary.end(),
                                 [](int s) { return s >= 1; });
    report.checks.push_back(
        {"spikes per boundary", spikes_ok, spikes_ok ? "" : "every boundary component needs at least one spike"});
  }
  {
    const int defect = sig.hyperbolicity_defect();
    report.checks.push_back({"hyperbolicity inequality", defect < 0,
                             defect < 0 ? "" : "4-4g-2p-2c-s = " + std::to_string(defect) + " is not negative"});
  }
  {
    // Every star must close up (punctures) or run boundary-to-boundary (spikes),
    // and every corner must be visited exactly once.
    bool ok = true;
    std::string detail;
    int total = 0;
    for (int v = 0; v < surf.vertex_count(); ++v) {
      const auto& star = surf.star(v);
      const bool spike = surf.vertices()[v].kind == VertexKind::spike;
      for (const auto& e : star) {
        if (surf.vertex_of(e.half_edge) != v) {
          ok = false;
          detail = "star of '" + surf.vertices()[v].id + "' contains a foreign edge-end";
        }
        if (e.departing.valid()) ++total;
      }
      if (spike && (star.size() < 2 || !star.front().boundary || !star.back().boundary)) {
        ok = false;
        detail = "star of spike '" + surf.vertices()[v].id + "' is not a boundary-to-boundary chain";
      }
      if (!spike) {
        for (size_t k = 0; k < star.size(); ++k) {
          SideRef c = star[k].departing;
          SideRef back = surf.twin({c.triangle, (c.slot + 2) % 3});
          if (!(back == star[(k + 1) % star.size()].departing)) {
            ok = false;
            detail = "star of puncture '" + surf.vertices()[v].id + "' does not close up";
          }
        }
      }
    }
    if (total != 3 * surf.triangle_count()) {
      ok = false;
      detail = "stars do not cover every triangle corner exactly once";
    }
    report.checks.push_back({"star/face consistency", ok, detail});
  }
  {
    // Boundary components: follow boundary edges spike to spike.
    std::vector<int> lengths;
    std::vector<bool> seen(surf.vertex_count(), false);
    for (int v : surf.spikes()) {
      if (seen[v]) continue;
      int len = 0;
      int w = v;
      while (!seen[w]) {
        seen[w] = true;
        ++len;
        const auto& first = surf.star(w).front();
        w = surf.vertex_of({first.half_edge.edge, 1 - first.half_edge.end});
      }
      lengths.push_back(len);
    }
    auto expected = sig.spikes_per_boundary;
    std::sort(lengths.begin(), lengths.end());
    std::sort(expected.begin(), expected.end());
    const bool ok = lengths == expected;
    report.checks.push_back({"boundary components", ok,
                             ok ? "" : "boundary cycles do not match the spike counts of the signature"});
  }
  return report;
}

std::vector<int> TriangulatedSurface::interior_edges() const {
  std::vector<int> out;
  for (int e = 0; e < edge_count(); ++e)
    if (edges_[e].interior()) out.push_back(e);
  return out;
}

std::vector<int> TriangulatedSurface::boundary_edges() const {
  std::vector<int> out;
  for (int e = 0; e < edge_count(); ++e)
    if (!edges_[e].interior()) out.push_back(e);
  return out;
}

std::vector<int> TriangulatedSurface::punctures() const {
  std::vector<int> out;
  for (int v = 0; v < vertex_count(); ++v)
    if (vertices_[v].kind == VertexKind::puncture) out.push_back(v);
  return out;
}

std::vector<int> TriangulatedSurface::spikes() const {
  std::vector<int> out;
  for (int v = 0; v < vertex_count(); ++v)
    if (vertices_[v].kind == VertexKind::spike) out.push_back(v);
  return out;
}

namespace {
template <typename Range>
int find_id(const Range& items, const std::string& id, const char* what) {
  for (size_t i = 0; i < items.size(); ++i)
    if (items[i].id == id) return static_cast<int>(i);
  throw InvalidTriangulation(std::string("unknown ") + what + " id '" + id + "'");
}
}  // namespace

int TriangulatedSurface::vertex_index(const std::string& id) const { return find_id(vertices_, id, "vertex"); }
int TriangulatedSurface::edge_index(const std::string& id) const { return find_id(edges_, id, "edge"); }
int TriangulatedSurface::triangle_index(const std::string& id) const { return find_id(triangles_, id, "triangle"); }

int TriangulatedSurface::star_position(HalfEdge h) const {
  const auto& star = formula_stars_[vertex_of(h)];
  for (size_t k = 0; k < star.size(); ++k) {
    if (!star[k].mirrored && star[k].half_edge == h) return static_cast<int>(k);
  }
  throw InvalidTriangulation("half-edge not found in its vertex star");
}

int TriangulatedSurface::star_position(SideRef departing) const {
  const auto& star = formula_stars_[tail(departing)];
  for (size_t k = 0; k < star.size(); ++k) {
    if (star[k].departing == departing) return static_cast<int>(k);
  }
  throw InvalidTriangulation("side not found in its vertex star");
}

SurfaceDescription TriangulatedSurface::description() const {
  SurfaceDescription d;
  d.signature = signature_;
  for (const auto& v : vertices_) d.vertices.push_back({v.id, v.kind});
  for (const auto& e : edges_) d.edges.push_back({e.id, {vertices_[e.ends[0]].id, vertices_[e.ends[1]].id}, e.kind});
  for (int t = 0; t < triangle_count(); ++t) {
    SurfaceDescription::TriangleSpec spec;
    spec.id = triangles_[t].id;
    std::array<std::string, 3> tails;
    for (int i = 0; i < 3; ++i) {
      spec.sides[i] = edges_[triangles_[t].sides[i].edge].id;
      tails[i] = vertices_[tail({t, i})].id;
    }
    spec.vertices = tails;
    d.triangles.push_back(std::move(spec));
  }
  return d;
}

// ==========================================================
// ================          Stars             ==============
// ==========================================================

std::vector<SignedStarEntry> vertex_star(const TriangulatedSurface& surface, int v, bool use_double,
                                         const std::vector<double>& shear) {
  if (surface.vertices()[v].kind == VertexKind::spike && !use_double) {
    throw DomainError("the star of spike '" + surface.vertices()[v].id + "' is only defined in the doubled surface");
  }
  std::vector<SignedStarEntry> out;
  for (const auto& entry : surface.formula_star(v)) {
    double x = 0.0;
    if (!entry.boundary) x = entry.mirrored ? -shear[entry.half_edge.edge] : shear[entry.half_edge.edge];
    out.push_back({entry, x});
  }
  return out;
}

std::vector<double> star_shears(const TriangulatedSurface& surface, int v, const std::vector<double>& shear) {
  std::vector<double> out;
  for (const auto& entry : surface.formula_star(v)) {
    if (entry.boundary) {
      out.push_back(0.0);
    } else {
      const double x = shear[entry.half_edge.edge];
      out.push_back(entry.mirrored ? -x : x);
    }
  }
  return out;
}

// ==========================================================
// ================         Doubling           ==============
// ==========================================================

DoubledSurface double_surface(const TriangulatedSurface& surface) {
  if (!surface.has_boundary()) {
    throw InvalidTriangulation("cannot double a surface without boundary");
  }
  const int nv = surface.vertex_count();
  const int ne = surface.edge_count();
  const auto& sig = surface.signature();

  std::vector<int> vertex_copy(nv, -1);
  std::vector<int> edge_copy(ne, -1);
  SurfaceDescription d;
  d.signature.genus = 2 * sig.genus + sig.boundary_components() - 1;
  d.signature.punctures = 2 * sig.punctures + sig.spikes();

  DoubledSurface out;
  for (int v = 0; v < nv; ++v) {
    d.vertices.push_back({surface.vertices()[v].id, VertexKind::puncture});
    out.origin_vertex.push_back(v);
  }
  for (int v = 0; v < nv; ++v) {
    if (surface.vertices()[v].kind == VertexKind::puncture) {
      vertex_copy[v] = static_cast<int>(d.vertices.size());
      d.vertices.push_back({surface.vertices()[v].id + "'", VertexKind::puncture});
      out.origin_vertex.push_back(v);
    } else {
      vertex_copy[v] = v;
    }
  }
  auto vid = [&](int v) { return d.vertices[v].id; };

  for (int e = 0; e < ne; ++e) {
    const auto& edge = surface.edges()[e];
    d.edges.push_back({edge.id, {vid(edge.ends[0]), vid(edge.ends[1])}, EdgeKind::interior});
    out.origin_edge.push_back(e);
    out.is_mirror_edge.push_back(false);
  }
  for (int e = 0; e < ne; ++e) {
    const auto& edge = surface.edges()[e];
    if (edge.interior()) {
      edge_copy[e] = static_cast<int>(d.edges.size());
      d.edges.push_back(
          {edge.id + "'", {vid(vertex_copy[edge.ends[0]]), vid(vertex_copy[edge.ends[1]])}, EdgeKind::interior});
      out.origin_edge.push_back(e);
      out.is_mirror_edge.push_back(true);
    } else {
      edge_copy[e] = e;
    }
  }

  for (int t = 0; t < surface.triangle_count(); ++t) {
    SurfaceDescription::TriangleSpec spec;
    spec.id = surface.triangles()[t].id;
    std::array<std::string, 3> tails;
    for (int i = 0; i < 3; ++i) {
      spec.sides[i] = d.edges[surface.side({t, i}).edge].id;
      tails[i] = vid(surface.tail({t, i}));
    }
    spec.vertices = tails;
    d.triangles.push_back(spec);
  }
  for (int t = 0; t < surface.triangle_count(); ++t) {
    // Mirror image: reverse the side order so the copy is again counter-clockwise.
    SurfaceDescription::TriangleSpec spec;
    spec.id = surface.triangles()[t].id + "'";
    const int order[3] = {2, 1, 0};
    std::array<std::string, 3> tails;
    for (int i = 0; i < 3; ++i) {
      SideRef s{t, order[i]};
      spec.sides[i] = d.edges[edge_copy[surface.side(s).edge]].id;
      tails[i] = vid(vertex_copy[surface.head(s)]);
    }
    spec.vertices = tails;
    d.triangles.push_back(spec);
  }

  out.surface = TriangulatedSurface::build(d);
  const int nde = out.surface.edge_count();
  out.mirror_edge.assign(nde, -1);
  for (int e = 0; e < ne; ++e) {
    out.mirror_edge[e] = edge_copy[e];
    out.mirror_edge[edge_copy[e]] = e;
  }
  out.mirror_vertex.assign(out.surface.vertex_count(), -1);
  for (int v = 0; v < nv; ++v) {
    out.mirror_vertex[v] = vertex_copy[v];
    out.mirror_vertex[vertex_copy[v]] = v;
  }
  return out;
}

// ==========================================================
// ================   Special triangulation    ==============
// ==========================================================

TriangulatedSurface special_triangulation(const SurfaceSignature& signature) {
  if (signature.spikes() < 1) {
    throw HypothesisViolation("a triangulation with 1-valent punctures needs at least one spike");
  }
  for (int s : signature.spikes_per_boundary) {
    if (s < 1) throw DomainError("every boundary component needs at least one spike");
  }
  if (signature.hyperbolicity_defect() >= 0) {
    throw DomainError("signature violates 4-4g-2p-2c-s < 0");
  }
  // Cut the surface open into a polygon whose corners sit at one spike v0 or
  // on the crowns, fan-triangulate it, and glue a self-folded triangle into
  // every puncture loop.
  SurfaceDescription d;
  d.signature = signature;
  auto spike_id = [](int crown, int k) { return "s" + std::to_string(crown) + "_" + std::to_string(k); };
  std::vector<int> crowns(signature.boundary_components());
  std::iota(crowns.begin(), crowns.end(), 0);
  for (int j : crowns)
    for (int k = 0; k < signature.spikes_per_boundary[j]; ++k) d.vertices.push_back({spike_id(j, k), VertexKind::spike});
  for (int i = 0; i < signature.punctures; ++i) d.vertices.push_back({"p" + std::to_string(i), VertexKind::puncture});

  const std::string v0 = spike_id(crowns[0], 0);
  struct PolySide {
    std::string edge, tail, head;
  };
  std::vector<PolySide> poly;
  auto add_edge = [&](const std::string& id, const std::string& a, const std::string& b, EdgeKind kind) {
    d.edges.push_back({id, {a, b}, kind});
  };

  {
    const int j = crowns[0];
    const int s = signature.spikes_per_boundary[j];
    for (int k = 0; k < s; ++k) {
      const std::string id = "b" + std::to_string(j) + "_" + std::to_string(k);
      add_edge(id, spike_id(j, k), spike_id(j, (k + 1) % s), EdgeKind::boundary);
      poly.push_back({id, spike_id(j, k), spike_id(j, (k + 1) % s)});
    }
  }
  for (int g = 0; g < signature.genus; ++g) {
    const std::string a = "a" + std::to_string(g), b = "h" + std::to_string(g);
    add_edge(a, v0, v0, EdgeKind::interior);
    add_edge(b, v0, v0, EdgeKind::interior);
    poly.push_back({a, v0, v0});
    poly.push_back({b, v0, v0});
    poly.push_back({a, v0, v0});
    poly.push_back({b, v0, v0});
  }
  for (size_t idx = 1; idx < crowns.size(); ++idx) {
    const int j = crowns[idx];
    const int s = signature.spikes_per_boundary[j];
    const std::string c = "c" + std::to_string(j);
    add_edge(c, v0, spike_id(j, 0), EdgeKind::interior);
    poly.push_back({c, v0, spike_id(j, 0)});
    for (int k = 0; k < s; ++k) {
      const std::string id = "b" + std::to_string(j) + "_" + std::to_string(k);
      add_edge(id, spike_id(j, k), spike_id(j, (k + 1) % s), EdgeKind::boundary);
      poly.push_back({id, spike_id(j, k), spike_id(j, (k + 1) % s)});
    }
    poly.push_back({c, spike_id(j, 0), v0});
  }
  std::vector<std::string> enclosing(signature.punctures);
  for (int i = 0; i < signature.punctures; ++i) {
    const std::string q = "q" + std::to_string(i);
    enclosing[i] = q;
    poly.push_back({q, v0, v0});
  }

  const int n = static_cast<int>(poly.size());
  if (n == 2) {
    // Once-punctured monogon: the boundary loop itself encloses the puncture.
    enclosing.back() = poly.front().edge;
  } else {
    for (int i = 0; i < signature.punctures; ++i) add_edge(enclosing[i], v0, v0, EdgeKind::interior);
    auto diag = [](int i) { return "d" + std::to_string(i); };
    for (int i = 2; i <= n - 2; ++i) add_edge(diag(i), v0, poly[i].tail, EdgeKind::interior);
    for (int i = 1; i <= n - 2; ++i) {
      SurfaceDescription::TriangleSpec tri;
      tri.id = "f" + std::to_string(i);
      const std::string first = (i == 1) ? poly[0].edge : diag(i);
      const std::string last = (i == n - 2) ? poly[n - 1].edge : diag(i + 1);
      tri.sides = {first, poly[i].edge, last};
      tri.vertices = std::array<std::string, 3>{v0, poly[i].tail, poly[i].head};
      d.triangles.push_back(tri);
    }
  }
  for (int i = 0; i < signature.punctures; ++i) {
    const std::string p = "p" + std::to_string(i);
    const std::string e = "e" + std::to_string(i);
    add_edge(e, v0, p, EdgeKind::interior);
    SurfaceDescription::TriangleSpec tri;
    tri.id = "m" + std::to_string(i);
    tri.sides = {enclosing[i], e, e};
    tri.vertices = std::array<std::string, 3>{v0, v0, p};
    d.triangles.push_back(tri);
  }
  return TriangulatedSurface::build(d);
}

}  // namespace teich
