#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rewire/corner_word.hpp"
#include "rewire/plane_tree.hpp"

namespace rewire {

struct PearlRef {
  int v;
  int p;
  friend bool operator==(const PearlRef& a, const PearlRef& b) = default;
  friend auto operator<=>(const PearlRef& a, const PearlRef& b) = default;
};

// Closure of a non-negative tree: clockwise contour, one opening per
// diamond taken just before its down edge, one closing per free triangle.
// The matching pairs each diamond with the triangle it will rewire to.
struct ClosedMap {
  PlaneTree tree;
  std::vector<Corner> corners;
  ArcMatching match;
  std::vector<std::pair<PearlRef, PearlRef>> arcs;  // diamond pearl -> triangle pearl
  std::vector<PearlRef> unmatched_triangles;
};

inline std::vector<Tok> closure_tokens(const PlaneTree& t, const std::vector<Corner>& cs) {
  std::vector<Tok> toks(cs.size(), Tok::None);
  for (size_t i = 0; i < cs.size(); ++i) {
    Pearl k = t.verts[cs[i].v].kind(cs[i].p);
    if (k == Pearl::D && cs[i].phase == Phase::Bef) toks[i] = Tok::Open;
    else if (k == Pearl::T && cs[i].phase == Phase::Only) toks[i] = Tok::Close;
  }
  return toks;
}

inline ClosedMap closure(const PlaneTree& t) {
  if (!is_nonnegative(t)) throw DomainError("not non-negative");
  ClosedMap cm;
  cm.tree = t;
  cm.corners = contour(t, true);
  cm.match = cyclic_match(closure_tokens(t, cm.corners));
  for (const auto& [o, c] : cm.match.arcs)
    cm.arcs.push_back({{cm.corners[o].v, cm.corners[o].p}, {cm.corners[c].v, cm.corners[c].p}});
  for (int pos : cm.match.unmatched)
    cm.unmatched_triangles.push_back({cm.corners[pos].v, cm.corners[pos].p});
  return cm;
}

// Deterministic text form: the tree line, then arcs and leftover
// triangles by pearl address in matching order.
inline std::string serialize_closed_map(const ClosedMap& cm) {
  std::string out = "tree: " + serialize_qtree(cm.tree) + "\n";
  out += "arcs:";
  for (const auto& [d, t] : cm.arcs) {
    out += " " + pearl_path(cm.tree, d.v, d.p) + "-" + pearl_path(cm.tree, t.v, t.p);
  }
  out += "\n";
  out += "free:";
  for (const auto& t : cm.unmatched_triangles) out += " " + pearl_path(cm.tree, t.v, t.p);
  out += "\n";
  return out;
}

// The rewiring: keep black edges, replace each red edge by the blue arc
// of its diamond.  Vertex ids and orig tags survive.
inline PlaneTree rewire_tree(const PlaneTree& t) {
  ClosedMap cm = closure(t);
  std::vector<Edge> edges;
  for (int c = 0; c < t.size(); ++c) {
    if (c == t.root) continue;
    if (t.verts[t.verts[c].parent].kind(t.verts[c].ppearl) == Pearl::B)
      edges.push_back({t.verts[c].parent, t.verts[c].ppearl, c, t.verts[c].rot});
  }
  for (const auto& [d, tri] : cm.arcs) edges.push_back({d.v, d.p, tri.v, tri.p});
  return orient(t.verts, edges, t.root, 0);
}

// ------------ inverse direction ------------

// Counter-clockwise contour of a companion tree; each diamond opens at
// the corner just before the walk leaves it along its blue edge, i.e.
// before descending when the edge points down, before ascending when the
// diamond is the entry pearl.  Free squares close.
inline std::vector<Tok> inverse_tokens(const PlaneTree& t, const std::vector<Corner>& cs) {
  std::vector<Tok> toks(cs.size(), Tok::None);
  for (size_t i = 0; i < cs.size(); ++i) {
    Pearl k = t.verts[cs[i].v].kind(cs[i].p);
    if (k == Pearl::D && (cs[i].phase == Phase::Bef || cs[i].phase == Phase::Dep))
      toks[i] = Tok::Open;
    else if (k == Pearl::Sq && cs[i].phase == Phase::Only)
      toks[i] = Tok::Close;
  }
  return toks;
}

struct OpenedMap {
  PlaneTree tree;
  std::vector<Corner> corners;
  ArcMatching match;
  std::vector<std::pair<PearlRef, PearlRef>> arcs;  // diamond pearl -> square pearl
  std::vector<PearlRef> unmatched_squares;
};

inline OpenedMap inverse_closure(const PlaneTree& t) {
  OpenedMap om;
  om.tree = t;
  om.corners = contour(t, false);
  om.match = cyclic_match(inverse_tokens(t, om.corners));
  for (const auto& [o, c] : om.match.arcs)
    om.arcs.push_back({{om.corners[o].v, om.corners[o].p}, {om.corners[c].v, om.corners[c].p}});
  for (int pos : om.match.unmatched)
    om.unmatched_squares.push_back({om.corners[pos].v, om.corners[pos].p});
  return om;
}

// Balanced: the contour starts at the root corner, so the root's own
// token or face decides.  Square roots must own the single unmatched
// square; black and triangle roots must sit in the unbounded face;
// diamond roots never balance.
inline bool is_balanced(const PlaneTree& t) {
  OpenedMap om = inverse_closure(t);
  switch (t.root_kind()) {
    case Pearl::Sq:
      return om.match.unmatched.size() == 1 && om.match.unmatched[0] == 0;
    case Pearl::B:
    case Pearl::T:
      return enclosing_arcs(om.match, 0) == 0;
    case Pearl::D:
      return false;
  }
  return false;
}

struct DefectReport {
  std::vector<PearlRef> external;
  std::vector<PearlRef> internal;
};

// Free non-root triangles, split by whether a blue arc walls them off
// from the unbounded face.
inline DefectReport classify_defects(const PlaneTree& t, const OpenedMap& om) {
  DefectReport r;
  for (size_t i = 0; i < om.corners.size(); ++i) {
    const Corner& c = om.corners[i];
    if (c.phase != Phase::Only) continue;
    if (t.verts[c.v].kind(c.p) != Pearl::T) continue;
    if (c.v == t.root && c.p == t.verts[c.v].rot) continue;
    if (enclosing_arcs(om.match, static_cast<int>(i)) > 0) r.internal.push_back({c.v, c.p});
    else r.external.push_back({c.v, c.p});
  }
  return r;
}

inline DefectReport classify_defects(const PlaneTree& t) {
  return classify_defects(t, inverse_closure(t));
}

// Rewiring inverse: matched squares regain red edges from their
// diamonds, blue edges drop away.  Accepts balanced square-rooted
// companions whose defects all touch the unbounded face.
inline PlaneTree unrewire_tree(const PlaneTree& t) {
  if (t.root_kind() != Pearl::Sq) throw DomainError("unbalanced input");
  OpenedMap om = inverse_closure(t);
  if (!(om.match.unmatched.size() == 1 && om.match.unmatched[0] == 0))
    throw DomainError("unbalanced input");
  DefectReport dr = classify_defects(t, om);
  if (!dr.internal.empty()) throw DomainError("internal defects present");
  std::vector<Edge> edges;
  for (int c = 0; c < t.size(); ++c) {
    if (c == t.root) continue;
    Pearl up = t.verts[t.verts[c].parent].kind(t.verts[c].ppearl);
    Pearl down = t.verts[c].kind(t.verts[c].rot);
    if (up == Pearl::B || down == Pearl::B)
      edges.push_back({t.verts[c].parent, t.verts[c].ppearl, c, t.verts[c].rot});
  }
  for (const auto& [d, sq] : om.arcs) edges.push_back({d.v, d.p, sq.v, sq.p});
  return orient(t.verts, edges, t.root, 0);
}

}  // namespace rewire
