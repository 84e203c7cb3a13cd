#include "teich/laminations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace teich {

const char* to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::contractible: return "contractible";
    case CurveKind::A: return "A";
    case CurveKind::X: return "X";
    case CurveKind::X_D: return "X_D";
    case CurveKind::general: return "general";
  }
  return "?";
}

const char* to_string(LaminationFlavor flavor) {
  switch (flavor) {
    case LaminationFlavor::A: return "A";
    case LaminationFlavor::X: return "X";
    case LaminationFlavor::AX: return "AX";
    case LaminationFlavor::X_D: return "X_D";
    case LaminationFlavor::AX_D: return "AX_D";
  }
  return "?";
}

std::optional<LaminationFlavor> parse_flavor(const std::string& text) {
  for (auto f : {LaminationFlavor::A, LaminationFlavor::X, LaminationFlavor::AX, LaminationFlavor::X_D,
                 LaminationFlavor::AX_D}) {
    if (text == to_string(f)) return f;
  }
  return std::nullopt;
}

namespace {

using Path = std::vector<Segment>;

int corner_port(int slot) { return 3 + slot; }
int port_slot(int port) { return Segment::is_corner(port) ? port - 3 : port; }

Path reversed(const Path& path) {
  Path out(path.rbegin(), path.rend());
  for (auto& s : out) std::swap(s.in, s.out);
  return out;
}

Path canonical(const Path& path, CurveShape shape) {
  if (path.empty()) return path;
  const Path back = reversed(path);
  if (shape == CurveShape::arc) return std::min(path, back);
  Path best = path;
  const size_t n = path.size();
  for (const Path* p : {&path, &back}) {
    for (size_t r = 0; r < n; ++r) {
      Path rotated(n);
      for (size_t i = 0; i < n; ++i) rotated[i] = (*p)[(i + r) % n];
      best = std::min(best, rotated);
    }
  }
  return best;
}

// Corner (as the side whose tail it is) cut by a segment between two sides.
std::optional<SideRef> cut_corner(const Segment& s) {
  if (Segment::is_corner(s.in) || Segment::is_corner(s.out)) return std::nullopt;
  if (s.out == (s.in + 1) % 3) return SideRef{s.triangle, s.out};
  return SideRef{s.triangle, s.in};
}

// Rebuilds the curve carried by the normal arcs of a walk, stacking arcs of
// each corner type innermost first. The walk is embedded exactly when the
// trace reproduces it.
class NormalTracer {
 public:
  NormalTracer(const TriangulatedSurface& surface, const Path& walk) : surf_(surface), walk_(walk) {
    const int nt = surface.triangle_count();
    corner_.assign(nt, {0, 0, 0});
    vertex_end_.assign(nt, {0, 0, 0});
    for (const auto& s : walk) {
      if (Segment::is_corner(s.in)) {
        ++vertex_end_[s.triangle][port_slot(s.in)];
      } else if (Segment::is_corner(s.out)) {
        ++vertex_end_[s.triangle][port_slot(s.out)];
      } else {
        ++corner_[s.triangle][cut_corner(s)->slot];
      }
    }
  }

  std::optional<Path> trace(CurveShape shape) const {
    const Segment& first = walk_.front();
    Path out;
    int t = first.triangle, side = 0, pos = 0;
    if (shape == CurveShape::arc && Segment::is_corner(first.in)) {
      const int c = port_slot(first.in);
      side = (c + 1) % 3;
      pos = corner_[t][side];
      out.push_back({t, first.in, side});
      if (!cross(t, side, pos)) return std::nullopt;
    } else {
      side = first.in;
      pos = 0;
    }
    const int start_t = t, start_side = side, start_pos = pos;
    for (size_t guard = 0; guard <= walk_.size() + 1; ++guard) {
      const int n = points(t, side);
      if (pos < 0 || pos >= n) return std::nullopt;
      const int tail_arcs = corner_[t][side];
      const int ends = vertex_end_[t][(side + 2) % 3];
      int exit = -1, exit_pos = 0;
      if (pos < tail_arcs) {
        exit = (side + 2) % 3;
        exit_pos = points(t, exit) - 1 - pos;
      } else if (pos < tail_arcs + ends) {
        out.push_back({t, side, corner_port((side + 2) % 3)});
        return out;
      } else {
        exit = (side + 1) % 3;
        exit_pos = n - 1 - pos;
      }
      out.push_back({t, side, exit});
      if (!surf_.edges()[surf_.side({t, exit}).edge].interior()) return out;
      t = t, side = exit, pos = exit_pos;
      if (!cross(t, side, pos)) return std::nullopt;
      if (shape == CurveShape::closed && t == start_t && side == start_side && pos == start_pos) return out;
    }
    return std::nullopt;
  }

 private:
  int points(int t, int side) const {
    return corner_[t][side] + vertex_end_[t][(side + 2) % 3] + corner_[t][(side + 1) % 3];
  }

  // Moves a point on side (t, side) to the matching point on the twin side.
  bool cross(int& t, int& side, int& pos) const {
    const SideRef twin = surf_.twin({t, side});
    if (!twin.valid()) return false;
    const int n = points(t, side);
    if (points(twin.triangle, twin.slot) != n) return false;
    pos = n - 1 - pos;
    t = twin.triangle;
    side = twin.slot;
    return true;
  }

  const TriangulatedSurface& surf_;
  const Path& walk_;
  std::vector<std::array<int, 3>> corner_;
  std::vector<std::array<int, 3>> vertex_end_;
};

class Resolver {
 public:
  Resolver(const TriangulatedSurface& surface, const CombinatorialCurve& curve) : surf_(surface), curve_(curve) {}

  std::set<Path> run() {
    if (curve_.shape == CurveShape::closed) {
      for (SideRef s0 : surf_.edges()[curve_.crossings[0]].sides) {
        start_ = s0;
        Path path;
        step(1, s0.triangle, s0.slot, path);
      }
    } else {
      const CurveEnd& first = curve_.ends[0];
      if (first.kind == CurveEnd::Kind::boundary_edge) {
        SideRef s = surf_.edges()[first.index].sides[0];
        Path path;
        step(0, s.triangle, s.slot, path);
      } else {
        for (int t = 0; t < surf_.triangle_count(); ++t) {
          for (int c = 0; c < 3; ++c) {
            if (surf_.tail({t, c}) != first.index) continue;
            Path path;
            step(0, t, corner_port(c), path);
          }
        }
      }
    }
    return found_;
  }

 private:
  // Extend the path by a segment in triangle t entered through `in`; `i` is
  // the index of the crossing (or end) this segment must reach.
  void step(int i, int t, int in, Path& path) {
    if (found_.size() > 64) return;
    const int m = static_cast<int>(curve_.crossings.size());
    const bool closed = curve_.shape == CurveShape::closed;
    std::vector<int> exits;
    if (Segment::is_corner(in)) {
      exits.push_back((port_slot(in) + 1) % 3);
    } else {
      for (int k = 0; k < 3; ++k)
        if (k != in) exits.push_back(k);
    }

    if (!closed && i == m) {
      const CurveEnd& last = curve_.ends[1];
      if (last.kind == CurveEnd::Kind::vertex) {
        if (Segment::is_corner(in)) return;
        const int c = (in + 2) % 3;
        if (surf_.tail({t, c}) == last.index) record(path, {t, in, corner_port(c)});
      } else {
        for (int k : exits)
          if (surf_.side({t, k}).edge == last.index) record(path, {t, in, k});
      }
      return;
    }

    const int target = curve_.crossings[closed ? i % m : i];
    for (int k : exits) {
      if (surf_.side({t, k}).edge != target) continue;
      const SideRef out{t, k};
      const SideRef next = surf_.twin(out);
      if (!next.valid()) continue;
      path.push_back({t, in, k});
      if (closed && i == m) {
        if (next == start_) found_.insert(canonical(path, CurveShape::closed));
      } else {
        step(i + 1, next.triangle, next.slot, path);
      }
      path.pop_back();
    }
  }

  void record(Path& path, Segment last) {
    path.push_back(last);
    found_.insert(canonical(path, CurveShape::arc));
    path.pop_back();
  }

  const TriangulatedSurface& surf_;
  const CombinatorialCurve& curve_;
  SideRef start_;
  std::set<Path> found_;
};

void check_indices(const TriangulatedSurface& surface, const CombinatorialCurve& curve) {
  for (int e : curve.crossings) {
    if (e < 0 || e >= surface.edge_count()) throw LaminationError("curve crosses an unknown edge");
    if (!surface.edges()[e].interior()) {
      throw LaminationError("curve crosses boundary edge '" + surface.edges()[e].id + "'; arcs may only end there");
    }
  }
  if (curve.shape == CurveShape::closed) {
    if (!curve.ends.empty()) throw LaminationError("closed curves have no ends");
    return;
  }
  if (curve.ends.size() != 2) throw LaminationError("an arc needs exactly two ends");
  for (const auto& end : curve.ends) {
    if (end.kind == CurveEnd::Kind::vertex) {
      if (end.index < 0 || end.index >= surface.vertex_count()) throw LaminationError("arc ends at an unknown vertex");
    } else {
      if (end.index < 0 || end.index >= surface.edge_count()) throw LaminationError("arc ends on an unknown edge");
      if (surface.edges()[end.index].interior()) {
        throw LaminationError("arc ends on interior edge '" + surface.edges()[end.index].id + "'");
      }
    }
  }
  if (curve.crossings.empty() && curve.ends[0].kind == CurveEnd::Kind::vertex &&
      curve.ends[1].kind == CurveEnd::Kind::vertex) {
    throw LaminationError("an arc between two vertices must cross at least one edge");
  }
}

bool has_backtrack(const CombinatorialCurve& curve) {
  const auto& c = curve.crossings;
  const size_t m = c.size();
  for (size_t i = 0; i + 1 < m; ++i)
    if (c[i] == c[i + 1]) return true;
  return curve.shape == CurveShape::closed && m > 1 && c.front() == c.back();
}

CurveEnd end_of(const TriangulatedSurface& surface, int triangle, int port) {
  if (Segment::is_corner(port)) return {CurveEnd::Kind::vertex, surface.tail({triangle, port_slot(port)})};
  return {CurveEnd::Kind::boundary_edge, surface.side({triangle, port}).edge};
}

CurveClass classify_resolved(const TriangulatedSurface& surface, const ResolvedCurve& r) {
  CurveClass cls;
  if (r.segments.empty()) {
    cls.kind = CurveKind::contractible;
    return cls;
  }
  std::set<std::pair<int, int>> corners;
  std::set<int> vertices;
  bool all_corners = true;
  for (const auto& s : r.segments) {
    auto c = cut_corner(s);
    if (!c) {
      all_corners = false;
      continue;
    }
    corners.insert({c->triangle, c->slot});
    vertices.insert(surface.tail(*c));
  }
  if (r.shape == CurveShape::closed) {
    if (all_corners && vertices.size() == 1) {
      const int v = *vertices.begin();
      if (surface.vertices()[v].kind == VertexKind::puncture && corners.size() == surface.star(v).size() &&
          r.segments.size() == corners.size()) {
        cls.kind = CurveKind::A;
        cls.vertex = v;
        return cls;
      }
    }
    cls.kind = CurveKind::general;
    return cls;
  }
  const CurveEnd e0 = end_of(surface, r.segments.front().triangle, r.segments.front().in);
  const CurveEnd e1 = end_of(surface, r.segments.back().triangle, r.segments.back().out);
  bool spike_end = false, puncture_end = false;
  for (const auto& e : {e0, e1}) {
    if (e.kind != CurveEnd::Kind::vertex) continue;
    (surface.vertices()[e.index].kind == VertexKind::spike ? spike_end : puncture_end) = true;
  }
  if (spike_end) {
    cls.kind = CurveKind::X_D;
  } else if (puncture_end) {
    cls.kind = CurveKind::X;
  } else {
    if (all_corners && vertices.size() == 1) {
      const int v = *vertices.begin();
      if (surface.vertices()[v].kind == VertexKind::spike && corners.size() + 1 == surface.star(v).size() &&
          r.segments.size() == corners.size()) {
        cls.kind = CurveKind::A;
        cls.vertex = v;
        return cls;
      }
    }
    cls.kind = CurveKind::general;
    cls.note = "boundary arc not recognised as cutting off a spike; treated as general";
  }
  return cls;
}

}  // namespace

// ==========================================================
// ================           Curves           ==============
// ==========================================================

ResolvedCurve resolve_curve(const TriangulatedSurface& surface, const CombinatorialCurve& curve) {
  check_indices(surface, curve);
  ResolvedCurve out;
  out.shape = curve.shape;
  if (curve.shape == CurveShape::closed && curve.crossings.empty()) return out;
  Resolver resolver(surface, curve);
  std::set<Path> found;
  for (const auto& walk : resolver.run()) {
    auto traced = NormalTracer(surface, walk).trace(curve.shape);
    if (traced && canonical(*traced, curve.shape) == walk) found.insert(walk);
  }
  if (found.empty()) {
    if (has_backtrack(curve)) throw LaminationError("crossing sequence backtracks: the curve is not taut");
    throw LaminationError("crossing sequence does not describe a curve on this triangulation");
  }
  if (found.size() > 1) {
    throw LaminationError("crossing sequence is ambiguous: it fits " + std::to_string(found.size()) + " distinct curves");
  }
  out.segments = *found.begin();
  return out;
}

CombinatorialCurve curve_from_resolution(const TriangulatedSurface& surface, const ResolvedCurve& r) {
  CombinatorialCurve c;
  c.shape = r.shape;
  const size_t n = r.segments.size();
  for (size_t i = 0; i < n; ++i) {
    if (r.shape == CurveShape::arc && i + 1 == n) break;
    c.crossings.push_back(surface.side({r.segments[i].triangle, r.segments[i].out}).edge);
  }
  if (r.shape == CurveShape::arc && n > 0) {
    c.ends = {end_of(surface, r.segments.front().triangle, r.segments.front().in),
              end_of(surface, r.segments.back().triangle, r.segments.back().out)};
  }
  return c;
}

CurveClass classify_curve(const TriangulatedSurface& surface, const CombinatorialCurve& curve) {
  return classify_resolved(surface, resolve_curve(surface, curve));
}

CombinatorialCurve a_curve_around(const TriangulatedSurface& surface, int v) {
  ResolvedCurve r;
  const bool spike = surface.vertices()[v].kind == VertexKind::spike;
  r.shape = spike ? CurveShape::arc : CurveShape::closed;
  // Cut every corner at v counter-clockwise: in through the departing side,
  // out through the arriving side.
  for (const auto& entry : surface.star(v)) {
    if (!entry.departing.valid()) continue;
    r.segments.push_back({entry.departing.triangle, entry.departing.slot, (entry.departing.slot + 2) % 3});
  }
  r.segments = canonical(r.segments, r.shape);
  return curve_from_resolution(surface, r);
}

// ==========================================================
// ================        Laminations         ==============
// ==========================================================

Lamination Lamination::make(const TriangulatedSurface& surface,
                            const std::vector<std::pair<CombinatorialCurve, double>>& curves,
                            std::vector<int> orientation, std::optional<LaminationFlavor> flavor) {
  if (static_cast<int>(orientation.size()) != surface.vertex_count()) {
    throw LaminationError("orientation map must assign a value to every vertex");
  }
  for (int o : orientation)
    if (o < -1 || o > 1) throw LaminationError("orientation values must be -1, 0 or 1");

  Lamination lam;
  std::map<std::pair<CurveShape, Path>, size_t> index;
  for (const auto& [curve, weight] : curves) {
    if (!std::isfinite(weight)) throw LaminationError("curve weights must be finite");
    ResolvedCurve r = resolve_curve(surface, curve);
    CurveClass cls = classify_resolved(surface, r);
    if (cls.kind == CurveKind::contractible) continue;
    auto key = std::make_pair(r.shape, r.segments);
    auto it = index.find(key);
    if (it != index.end()) {
      lam.components_[it->second].weight += weight;
      continue;
    }
    index.emplace(key, lam.components_.size());
    lam.components_.push_back({curve_from_resolution(surface, r), r, cls, weight});
  }
  std::erase_if(lam.components_, [](const Component& c) { return c.weight == 0.0; });

  bool has_a = false, has_x = false, has_xd = false;
  std::vector<bool> endpoint(surface.vertex_count(), false);
  for (const auto& c : lam.components_) {
    if (c.weight < 0 && c.cls.kind != CurveKind::A) {
      throw LaminationError("only A-curves may carry negative weight");
    }
    has_a |= c.cls.kind == CurveKind::A;
    has_x |= c.cls.kind == CurveKind::X;
    has_xd |= c.cls.kind == CurveKind::X_D;
    for (const auto& end : c.curve.ends)
      if (end.kind == CurveEnd::Kind::vertex) endpoint[end.index] = true;
  }
  for (int v = 0; v < surface.vertex_count(); ++v) {
    if (endpoint[v] && orientation[v] == 0) {
      throw LaminationError("orientation map violation: vertex '" + surface.vertices()[v].id +
                            "' is a curve endpoint but has orientation 0");
    }
    if (!endpoint[v] && orientation[v] != 0) {
      throw LaminationError("orientation map violation: vertex '" + surface.vertices()[v].id +
                            "' has nonzero orientation but no curve ends there");
    }
  }

  const LaminationFlavor inferred = has_xd ? (has_a ? LaminationFlavor::AX_D : LaminationFlavor::X_D)
                                    : has_x ? (has_a ? LaminationFlavor::AX : LaminationFlavor::X)
                                            : LaminationFlavor::A;
  if (flavor) {
    bool ok = true;
    switch (*flavor) {
      case LaminationFlavor::A: ok = !has_x && !has_xd; break;
      case LaminationFlavor::X: ok = !has_a && !has_xd; break;
      case LaminationFlavor::AX: ok = !has_xd; break;
      case LaminationFlavor::X_D: ok = !has_a; break;
      case LaminationFlavor::AX_D: break;
    }
    if (!ok) {
      throw LaminationError(std::string("curves of this lamination are not admitted by flavor ") + to_string(*flavor));
    }
    lam.flavor_ = *flavor;
  } else {
    lam.flavor_ = inferred;
  }
  lam.orientation_ = std::move(orientation);
  return lam;
}

Lamination Lamination::scaled(const TriangulatedSurface& surface, double t) const {
  std::vector<std::pair<CombinatorialCurve, double>> curves;
  for (const auto& c : components_) curves.emplace_back(c.curve, c.weight * t);
  return make(surface, curves, orientation_, flavor_);
}

std::vector<double> edge_weights_a(const TriangulatedSurface& surface, const Lamination& lamination) {
  if (lamination.flavor() != LaminationFlavor::A) {
    throw LaminationError("edge weights a_e are defined for A-laminations only");
  }
  std::vector<double> a(surface.edge_count(), 0.0);
  for (const auto& c : lamination.components()) {
    for (int e : c.curve.crossings) a[e] += c.weight;
    for (const auto& end : c.curve.ends)
      if (end.kind == CurveEnd::Kind::boundary_edge) a[end.index] += c.weight;
  }
  return a;
}

namespace {

struct WorkingPath {
  CurveShape shape;
  Path segments;
  double weight;
};

// Which end of the edge the corner cut next to `slot` sits at, or -1.
int corner_end(const TriangulatedSurface& w, int triangle, int slot, int other_port) {
  if (Segment::is_corner(other_port)) return -1;
  const bool forward = w.side({triangle, slot}).forward;
  const bool at_head = other_port == (slot + 1) % 3;
  return at_head == forward ? 1 : 0;
}

// +1 when the crossing runs between the corners at opposite ends on the two
// sides in the positive sense, -1 in the negative sense, 0 when both corners
// sit at the same end or one side is an arc end.
int crossing_sign(const TriangulatedSurface& w, const Segment& a, const Segment& b) {
  const int a_end = corner_end(w, a.triangle, a.out, a.in);
  const int b_end = corner_end(w, b.triangle, b.in, b.out);
  if (a_end < 0 || b_end < 0) return 0;
  const bool a_plus = w.side({a.triangle, a.out}).forward;
  const int plus_end = a_plus ? a_end : b_end;
  const int minus_end = a_plus ? b_end : a_end;
  if (minus_end == 0 && plus_end == 1) return 1;
  if (minus_end == 1 && plus_end == 0) return -1;
  return 0;
}

// Replaces the vertex end of the path by one full turn of the spiral plus one
// corner. The added segments are tagged so their crossings can be checked.
void expand_spiral(const TriangulatedSurface& w, Path& path, std::vector<bool>& spiral, int eps) {
  Segment& last = path.back();
  const int c = port_slot(last.out);
  const int v = w.tail({last.triangle, c});
  // eps = +1 turns clockwise (out through the side leaving v), -1 counter-clockwise.
  last.out = eps > 0 ? c : (c + 2) % 3;
  const size_t turns = w.star(v).size() + 1;
  for (size_t i = 0; i < turns; ++i) {
    const SideRef next = w.twin({path.back().triangle, path.back().out});
    const int out = eps > 0 ? (next.slot + 1) % 3 : (next.slot + 2) % 3;
    path.push_back({next.triangle, next.slot, out});
    spiral.push_back(true);
  }
}

Segment mirror_segment(const Segment& s, int triangle_offset) {
  auto port = [](int p) { return Segment::is_corner(p) ? 3 + (3 - (p - 3)) % 3 : 2 - p; };
  return {s.triangle + triangle_offset, port(s.in), port(s.out)};
}

Path mirror_path(const Path& path, int offset) {
  Path out;
  for (const auto& s : path) out.push_back(mirror_segment(s, offset));
  return out;
}

void accumulate(const TriangulatedSurface& w, WorkingPath p, const std::vector<int>& eps, std::vector<double>& x) {
  std::vector<bool> spiral(p.segments.size(), false);
  if (p.shape == CurveShape::arc) {
    for (int pass = 0; pass < 2; ++pass) {
      if (Segment::is_corner(p.segments.back().out)) {
        const int v = w.tail({p.segments.back().triangle, port_slot(p.segments.back().out)});
        if (eps[v] == 0) {
          throw LaminationError("orientation map violation: curve ends at '" + w.vertices()[v].id +
                                "' whose orientation is 0");
        }
        expand_spiral(w, p.segments, spiral, eps[v]);
      }
      p.segments = reversed(p.segments);
      std::reverse(spiral.begin(), spiral.end());
    }
  }
  const size_t n = p.segments.size();
  const size_t pairs = p.shape == CurveShape::closed ? n : n - 1;
  for (size_t i = 0; i < pairs; ++i) {
    const Segment& a = p.segments[i];
    const Segment& b = p.segments[(i + 1) % n];
    const int sign = crossing_sign(w, a, b);
    // Crossings inside a spiral cut the same corner on both sides and cancel.
    if (sign != 0 && spiral[i] && spiral[(i + 1) % n]) {
      throw std::logic_error("spiral crossing with nonzero sign");
    }
    x[w.side({a.triangle, a.out}).edge] += p.weight * sign;
  }
}

}  // namespace

std::vector<double> signed_weights_x(const TriangulatedSurface& surface, const Lamination& lamination,
                                     const std::vector<int>& orientation, bool include_boundary) {
  if (static_cast<int>(orientation.size()) != surface.vertex_count()) {
    throw LaminationError("orientation map must assign a value to every vertex");
  }
  std::vector<const Lamination::Component*> measured;
  for (const auto& c : lamination.components())
    if (c.cls.kind != CurveKind::A) measured.push_back(&c);

  std::vector<double> out(surface.edge_count(), 0.0);
  if (!surface.has_boundary()) {
    for (const auto* c : measured) accumulate(surface, {c->resolved.shape, c->resolved.segments, c->weight}, orientation, out);
    return out;
  }

  // Count in the double: arcs ending on the boundary continue into their mirror image.
  const DoubledSurface dbl = double_surface(surface);
  const auto& w = dbl.surface;
  const int offset = surface.triangle_count();
  std::vector<int> eps(w.vertex_count(), 0);
  for (int v = 0; v < w.vertex_count(); ++v) {
    const int o = orientation[dbl.origin_vertex[v]];
    eps[v] = (v < surface.vertex_count() || surface.vertices()[dbl.origin_vertex[v]].kind == VertexKind::spike) ? o : -o;
  }
  std::vector<double> x(w.edge_count(), 0.0);
  for (const auto* c : measured) {
    Path segs = c->resolved.segments;
    if (c->resolved.shape == CurveShape::closed) {
      accumulate(w, {CurveShape::closed, segs, c->weight}, eps, x);
      accumulate(w, {CurveShape::closed, mirror_path(segs, offset), c->weight}, eps, x);
      continue;
    }
    const bool start_boundary = !Segment::is_corner(segs.front().in);
    const bool end_boundary = !Segment::is_corner(segs.back().out);
    if (!start_boundary && !end_boundary) {
      accumulate(w, {CurveShape::arc, segs, c->weight}, eps, x);
      accumulate(w, {CurveShape::arc, mirror_path(segs, offset), c->weight}, eps, x);
      continue;
    }
    if (!end_boundary) segs = reversed(segs);
    Path joined = segs;
    const Path back = reversed(mirror_path(segs, offset));
    joined.insert(joined.end(), back.begin(), back.end());
    const bool closed = start_boundary && end_boundary;
    accumulate(w, {closed ? CurveShape::closed : CurveShape::arc, joined, c->weight}, eps, x);
  }
  for (int e = 0; e < surface.edge_count(); ++e) {
    if (surface.edges()[e].interior() || include_boundary) out[e] = x[e];
  }
  return out;
}

std::vector<double> signed_weights_x(const TriangulatedSurface& surface, const Lamination& lamination,
                                     bool include_boundary) {
  return signed_weights_x(surface, lamination, lamination.orientation(), include_boundary);
}

ShearDecorationPoint psi_x_lamination(const TriangulatedSurface& surface, const Lamination& lamination) {
  ShearDecorationPoint p = ShearDecorationPoint::zero(surface);
  p.shear = signed_weights_x(surface, lamination, false);
  for (const auto& c : lamination.components())
    if (c.cls.kind == CurveKind::A) p.decoration[c.cls.vertex] += c.weight;
  return p;
}

CompatibilityReport compatibility_check(const TriangulatedSurface& surface, const Lamination& lamination) {
  if (lamination.flavor() != LaminationFlavor::A) {
    throw LaminationError("the compatibility check applies to A-laminations");
  }
  CompatibilityReport report;
  const auto q = psi_forward(surface, psi_x_lamination(surface, lamination));
  report.lhs_lambda = q.lambda;
  report.rhs_lambda = edge_weights_a(surface, lamination);
  for (int e = 0; e < surface.edge_count(); ++e) {
    report.lambda_error = std::max(report.lambda_error, std::abs(report.lhs_lambda[e] - report.rhs_lambda[e]));
  }
  for (double l : q.boundary_length) report.boundary_length_error = std::max(report.boundary_length_error, std::abs(l));
  return report;
}

}  // namespace teich
