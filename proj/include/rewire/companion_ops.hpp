#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rewire/rewiring.hpp"

namespace rewire {

// Component of root_v under the given edges, reindexed into a standalone
// tree rooted at (root_v, root_p).  orig tags keep naming source ids.
inline PlaneTree extract_component(const std::vector<TreeVertex>& verts,
                                   const std::vector<Edge>& edges, int root_v, int root_p) {
  std::vector<std::vector<Edge>> adj(verts.size());
  for (const auto& e : edges) {
    adj[e.v].push_back(e);
    adj[e.w].push_back(Edge{e.w, e.pw, e.v, e.pv});
  }
  std::vector<int> to_new(verts.size(), -1);
  std::vector<int> order{root_v};
  to_new[root_v] = 0;
  for (size_t i = 0; i < order.size(); ++i)
    for (const auto& e : adj[order[i]])
      if (to_new[e.w] < 0) {
        to_new[e.w] = static_cast<int>(order.size());
        order.push_back(e.w);
      }
  std::vector<TreeVertex> comp;
  for (int v : order) comp.push_back(verts[v]);
  std::vector<Edge> comp_edges;
  for (const auto& e : edges)
    if (to_new[e.v] >= 0) comp_edges.push_back({to_new[e.v], e.pv, to_new[e.w], e.pw});
  return orient(std::move(comp), comp_edges, 0, root_p);
}

// B <-> C: dropping the root of a balanced companion and picking it back.

inline PlaneTree forget_root(const PlaneTree& t) {
  if (!is_balanced(t)) throw DomainError("unbalanced input");
  std::string canon = serialize_unrooted(t);
  // reroot at the canonical free square rather than reparsing
  for (int v = 0; v < t.size(); ++v)
    if (t.verts[v].kind(0) == Pearl::Sq && !t.has_edge(v, 0)) {
      PlaneTree r = reroot(t, v, 0);
      if (serialize_companion(r) == "@s:" + canon.substr(3)) return r;
    }
  throw DomainError("no free square pearl");
}

// Any square rooting leaves exactly one close unmatched; rooting there
// is the balanced rooting.
inline PlaneTree root_balanced(const PlaneTree& t) {
  OpenedMap om = inverse_closure(t);
  int pos = om.match.unmatched.at(0);
  if (pos == 0) return t;
  return reroot(t, om.corners[pos].v, om.corners[pos].p);
}

// U0 <-> Cd x Ct: an unbalanced square root is claimed by some diamond;
// cutting that diamond's blue edge splits the tree into a diamond-rooted
// and a triangle-rooted half.

inline std::pair<PlaneTree, PlaneTree> split_unbalanced(const PlaneTree& t) {
  if (t.root_kind() != Pearl::Sq) throw DomainError("not square-rooted");
  OpenedMap om = inverse_closure(t);
  int opener = -1;
  for (const auto& [o, c] : om.match.arcs)
    if (c == 0) opener = o;
  if (opener < 0) throw DomainError("balanced input");
  int yv = om.corners[opener].v;
  int yp = om.corners[opener].p;
  // the diamond's blue edge points down or up
  int zv, zp;
  if (t.verts[yv].child[yp] >= 0) {
    zv = t.verts[yv].child[yp];
    zp = t.verts[zv].rot;
  } else {
    zv = t.verts[yv].parent;
    zp = t.verts[yv].ppearl;
  }
  std::vector<Edge> rest;
  for (const auto& e : edges_of(t))
    if (!(e.v == yv && e.pv == yp && e.w == zv && e.pw == zp) &&
        !(e.v == zv && e.pv == zp && e.w == yv && e.pw == yp))
      rest.push_back(e);
  PlaneTree dpart = extract_component(t.verts, rest, yv, yp);
  PlaneTree tpart = extract_component(t.verts, rest, zv, zp);
  return {std::move(dpart), std::move(tpart)};
}

inline PlaneTree join_pair(const PlaneTree& dpart, const PlaneTree& tpart) {
  if (dpart.root_kind() != Pearl::D) throw DomainError("not diamond-rooted");
  if (tpart.root_kind() != Pearl::T) throw DomainError("not triangle-rooted");
  std::vector<TreeVertex> verts = dpart.verts;
  int off = dpart.size();
  for (const auto& v : tpart.verts) {
    TreeVertex c = v;
    verts.push_back(std::move(c));
  }
  std::vector<Edge> edges = edges_of(dpart);
  for (const auto& e : edges_of(tpart)) edges.push_back({e.v + off, e.pv, e.w + off, e.pw});
  int yv = dpart.root, yp = dpart.root_pearl();
  edges.push_back({yv, yp, tpart.root + off, tpart.root_pearl()});
  PlaneTree tmp = orient(verts, edges, yv, yp);
  // the new diamond's opener reclaims a free square; root there
  OpenedMap om = inverse_closure(tmp);
  for (const auto& [o, c] : om.match.arcs)
    if (om.corners[o].v == yv && om.corners[o].p == yp)
      return reroot(tmp, om.corners[c].v, om.corners[c].p);
  throw DomainError("deficit");
}

// C-degree decomposition: cutting every edge at a marked vertex leaves
// one class-typed part per edged pearl.

struct MarkedParts {
  std::string word;
  std::optional<PlaneTree> square_part;              // black-rooted, hangs at the square
  std::vector<std::pair<int, PlaneTree>> slot_parts;  // pearl index -> part
};

inline MarkedParts decompose_marked(const PlaneTree& t, int v) {
  MarkedParts mp;
  mp.word = t.verts[v].word;
  std::vector<Edge> all = edges_of(t);
  std::vector<Edge> rest;
  std::vector<std::pair<int, std::pair<int, int>>> cuts;  // pearl -> far side
  for (const auto& e : all) {
    if (e.v == v) cuts.push_back({e.pv, {e.w, e.pw}});
    else if (e.w == v) cuts.push_back({e.pw, {e.v, e.pv}});
    else rest.push_back(e);
  }
  for (const auto& [p, far] : cuts) {
    PlaneTree part = extract_component(t.verts, rest, far.first, far.second);
    Pearl have = part.root_kind();
    Pearl want = t.verts[v].kind(p) == Pearl::Sq ? Pearl::B
                 : t.verts[v].kind(p) == Pearl::B ? Pearl::Sq
                 : t.verts[v].kind(p) == Pearl::D ? Pearl::T
                                                  : Pearl::D;
    if (have != want) throw DomainError("edge-color mismatch");
    if (t.verts[v].kind(p) == Pearl::Sq) mp.square_part = std::move(part);
    else mp.slot_parts.push_back({p, std::move(part)});
  }
  return mp;
}

// Inverse: rebuild the companion rooted at the marked vertex's square.
inline PlaneTree recompose_marked(const MarkedParts& mp) {
  std::vector<std::pair<int, const PlaneTree*>> children;
  if (mp.square_part) children.push_back({0, &*mp.square_part});
  for (const auto& [p, part] : mp.slot_parts) children.push_back({p, &part});
  return compose_tree(mp.word, 0, children);
}

// Marked excess-0 trees land on the unbalanced companions: rewire, then
// hand the root to the square the marked diamond claims.

inline PlaneTree mark_diamond_reroot(const PlaneTree& qtree, int v, int p) {
  if (qtree.verts[v].kind(p) != Pearl::D) throw DomainError("marked pearl not a diamond");
  if (excess(qtree) != 0) throw DomainError("nonzero excess");
  PlaneTree comp = rewire_tree(qtree);
  OpenedMap om = inverse_closure(comp);
  for (const auto& [o, c] : om.match.arcs)
    if (om.corners[o].v == v && om.corners[o].p == p)
      return reroot(comp, om.corners[c].v, om.corners[c].p);
  throw DomainError("deficit");
}

// Inverse: the root square names the marked diamond, the unmatched
// square restores the balanced rooting.
inline std::pair<PlaneTree, PearlRef> unmark_diamond(const PlaneTree& t) {
  if (t.root_kind() != Pearl::Sq) throw DomainError("not square-rooted");
  OpenedMap om = inverse_closure(t);
  int opener = -1;
  for (const auto& [o, c] : om.match.arcs)
    if (c == 0) opener = o;
  if (opener < 0) throw DomainError("balanced input");
  PearlRef mark{om.corners[opener].v, om.corners[opener].p};
  int pos = om.match.unmatched.at(0);
  PlaneTree balanced = reroot(t, om.corners[pos].v, om.corners[pos].p);
  return {unrewire_tree(balanced), mark};
}

}  // namespace rewire
