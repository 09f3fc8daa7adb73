#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "rewire/errors.hpp"
#include "rewire/necklace.hpp"

namespace rewire {

// One vertex of a pearl tree.  The necklace word is stored unrotated
// (square at pearl index 0, word[i-1] at index i >= 1); `rot` names the
// entry pearl, i.e. the pearl facing the parent (the root pearl at the
// root vertex).  Q-trees have rot == 0 everywhere.
struct TreeVertex {
  std::string word;
  int rot = 0;
  std::vector<int> child;  // per pearl index, -1 when the pearl has no down edge
  int parent = -1;
  int ppearl = -1;  // parent-side pearl carrying the edge to this vertex
  int orig = -1;    // caller-visible identity, preserved across rewiring

  int pearls() const { return static_cast<int>(word.size()) + 1; }
  Pearl kind(int i) const { return i == 0 ? Pearl::Sq : pearl_from_char(word[i - 1]); }
};

struct PlaneTree {
  std::vector<TreeVertex> verts;
  int root = 0;

  int size() const { return static_cast<int>(verts.size()); }
  int root_pearl() const { return verts[root].rot; }
  Pearl root_kind() const { return verts[root].kind(verts[root].rot); }

  bool has_edge(int v, int p) const {
    if (verts[v].child[p] >= 0) return true;
    return v != root && verts[v].rot == p;
  }

  int pearl_total(Pearl k) const {
    int n = 0;
    for (const auto& v : verts)
      for (int i = 0; i < v.pearls(); ++i) n += v.kind(i) == k;
    return n;
  }
};

struct Edge {
  int v, pv, w, pw;
};

inline std::vector<Edge> edges_of(const PlaneTree& t) {
  std::vector<Edge> es;
  for (int c = 0; c < t.size(); ++c)
    if (c != t.root)
      es.push_back(Edge{t.verts[c].parent, t.verts[c].ppearl, c, t.verts[c].rot});
  return es;
}

// Re-orient a vertex set with an explicit edge list from the chosen root.
// Vertex ids, words and orig tags are preserved; only rot/child/parent
// move.  Throws when the edges do not form a tree on the vertex set.
inline PlaneTree orient(std::vector<TreeVertex> verts, const std::vector<Edge>& edges,
                        int root_v, int root_pearl) {
  int n = static_cast<int>(verts.size());
  std::vector<std::vector<std::pair<int, std::pair<int, int>>>> adj(n);  // pearl -> (vertex, pearl)
  for (const auto& e : edges) {
    adj[e.v].push_back({e.pv, {e.w, e.pw}});
    adj[e.w].push_back({e.pw, {e.v, e.pv}});
  }
  for (auto& v : verts) {
    v.rot = 0;
    v.parent = -1;
    v.ppearl = -1;
    v.child.assign(v.pearls(), -1);
  }
  verts[root_v].rot = root_pearl;

  std::vector<int> order{root_v};
  std::vector<bool> seen(n, false);
  seen[root_v] = true;
  for (size_t i = 0; i < order.size(); ++i) {
    int v = order[i];
    for (const auto& [p, other] : adj[v]) {
      auto [w, pw] = other;
      if (seen[w]) continue;
      seen[w] = true;
      if (verts[v].child[p] != -1) throw DomainError("pearl with multiple edges");
      verts[v].child[p] = w;
      verts[w].rot = pw;
      verts[w].parent = v;
      verts[w].ppearl = p;
      order.push_back(w);
    }
  }
  if (static_cast<int>(order.size()) != n || static_cast<int>(edges.size()) != n - 1)
    throw DomainError("not a tree");

  PlaneTree t;
  t.verts = std::move(verts);
  t.root = root_v;
  return t;
}

inline PlaneTree reroot(const PlaneTree& t, int v, int pearl) {
  return orient(t.verts, edges_of(t), v, pearl);
}

// Root word plus child subtrees, one per chosen pearl slot.
inline PlaneTree compose_tree(const std::string& word, int rot,
                              const std::vector<std::pair<int, const PlaneTree*>>& children) {
  PlaneTree t;
  TreeVertex root;
  root.word = word;
  root.rot = rot;
  root.child.assign(static_cast<int>(word.size()) + 1, -1);
  t.verts.push_back(std::move(root));
  for (const auto& [pearl, sub] : children) {
    int off = t.size();
    for (const auto& v : sub->verts) {
      TreeVertex c = v;
      if (c.parent >= 0) c.parent += off;
      for (int& ch : c.child)
        if (ch >= 0) ch += off;
      t.verts.push_back(std::move(c));
    }
    int croot = off + sub->root;
    t.verts[0].child[pearl] = croot;
    t.verts[croot].parent = 0;
    t.verts[croot].ppearl = pearl;
  }
  t.root = 0;
  return t;
}

// ------------ validity ------------

inline bool qtree_edge_ok(Pearl parent, Pearl child) {
  return (parent == Pearl::B || parent == Pearl::D) && child == Pearl::Sq;
}

inline bool companion_edge_ok(Pearl a, Pearl b) {
  return (a == Pearl::Sq && b == Pearl::B) || (a == Pearl::B && b == Pearl::Sq) ||
         (a == Pearl::D && b == Pearl::T) || (a == Pearl::T && b == Pearl::D);
}

inline void check_words_in_system(const PlaneTree& t, const NecklaceSystem& sys) {
  if (sys.regular_all) return;
  for (const auto& v : t.verts) {
    bool found = false;
    for (const auto& n : sys.necklaces)
      if (n.word == v.word) { found = true; break; }
    if (!found) throw DomainError("necklace not in system: '" + (v.word.empty() ? "e" : v.word) + "'");
  }
}

// Q-tree validity: square-rooted, every black/diamond pearl carries its
// child, triangles and squares stay free of down edges.
inline void validate_qtree(const PlaneTree& t, const NecklaceSystem& sys) {
  check_words_in_system(t, sys);
  for (int vi = 0; vi < t.size(); ++vi) {
    const auto& v = t.verts[vi];
    if (v.rot != 0) throw DomainError("q-tree vertex entered off its square");
    for (int p = 0; p < v.pearls(); ++p) {
      Pearl k = v.kind(p);
      bool has_child = v.child[p] >= 0;
      if ((k == Pearl::B || k == Pearl::D) && !has_child)
        throw DomainError("child pearl without child");
      if ((k == Pearl::T || k == Pearl::Sq) && has_child)
        throw DomainError("edge on a free pearl kind");
      if (has_child) {
        const auto& c = t.verts[v.child[p]];
        if (c.parent != vi || c.ppearl != p || c.rot != 0)
          throw DomainError("inconsistent parent link");
      }
    }
  }
}

// Companion validity: black and blue edges only, non-root black/diamond
// pearls have exactly one edge, the root pearl is free.
inline void validate_companion(const PlaneTree& t, const NecklaceSystem& sys) {
  check_words_in_system(t, sys);
  for (int vi = 0; vi < t.size(); ++vi) {
    const auto& v = t.verts[vi];
    if (v.child[v.rot] >= 0)
      throw DomainError(vi == t.root ? "root pearl not free" : "entry pearl with down edge");
    for (int p = 0; p < v.pearls(); ++p) {
      Pearl k = v.kind(p);
      bool edged = t.has_edge(vi, p);
      bool is_root_pearl = vi == t.root && p == v.rot;
      if ((k == Pearl::B || k == Pearl::D) && !edged && !is_root_pearl)
        throw DomainError("free black or diamond pearl");
      if (v.child[p] >= 0) {
        const auto& c = t.verts[v.child[p]];
        if (c.parent != vi || c.ppearl != p) throw DomainError("inconsistent parent link");
        if (!companion_edge_ok(k, c.kind(c.rot))) throw DomainError("edge-color mismatch");
      }
    }
    if (vi != t.root) {
      const auto& par = t.verts[v.parent];
      if (!companion_edge_ok(par.kind(v.ppearl), v.kind(v.rot)))
        throw DomainError("edge-color mismatch");
    }
  }
}

// Free triangle pearls away from the root.
inline int count_defects(const PlaneTree& t) {
  int n = 0;
  for (int vi = 0; vi < t.size(); ++vi) {
    const auto& v = t.verts[vi];
    for (int p = 0; p < v.pearls(); ++p)
      if (v.kind(p) == Pearl::T && !t.has_edge(vi, p) && !(vi == t.root && p == v.rot)) ++n;
  }
  return n;
}

// ------------ excess ------------

// Per-vertex subtree totals of triangle minus diamond pearls.
inline std::vector<int> subtree_excess(const PlaneTree& t) {
  std::vector<int> exc(t.size(), 0);
  // children appear after their parent in a DFS order; accumulate bottom-up
  std::vector<int> order;
  order.reserve(t.size());
  std::vector<int> stack{t.root};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (int c : t.verts[v].child)
      if (c >= 0) stack.push_back(c);
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    int e = 0;
    for (int p = 0; p < t.verts[v].pearls(); ++p) {
      Pearl k = t.verts[v].kind(p);
      e += k == Pearl::T;
      e -= k == Pearl::D;
    }
    for (int c : t.verts[v].child)
      if (c >= 0) e += exc[c];
    exc[v] = e;
  }
  return exc;
}

// Excess of the pearl subtree at (v, p): the pearl itself plus everything
// on the far side of it from the root.
inline int excess_at(const PlaneTree& t, const std::vector<int>& sub, int v, int p) {
  Pearl k = t.verts[v].kind(p);
  int own = (k == Pearl::T) - (k == Pearl::D);
  if (t.verts[v].child[p] >= 0) return own + sub[t.verts[v].child[p]];
  if (p == t.verts[v].rot) return sub[v];  // entry pearl: the whole vertex subtree
  return own;
}

inline int excess(const PlaneTree& t) { return subtree_excess(t)[t.root]; }

inline bool is_nonnegative(const PlaneTree& t) {
  auto sub = subtree_excess(t);
  for (int v = 0; v < t.size(); ++v)
    for (int p = 0; p < t.verts[v].pearls(); ++p)
      if (excess_at(t, sub, v, p) < 0) return false;
  return true;
}

// ------------ serialization ------------
//
// Q-tree grammar:    Node := word "(" Child* ")"
// with the square implicit and children aligned with the black and
// diamond pearls in clockwise order; triangles take no entry.
//
// Companion grammar: "@s:" | "@b:" | "@d:" | "@t:" root prefix, each
// vertex written as its full rotated word starting at the entry pearl
// (square spelled "s"), one slot per remaining pearl, "_" for a free slot.

inline void serialize_qtree_rec(const PlaneTree& t, int v, std::string& out) {
  const auto& tv = t.verts[v];
  out += tv.word.empty() ? "e" : tv.word;
  out += '(';
  for (int p = 1; p < tv.pearls(); ++p)
    if (tv.child[p] >= 0) serialize_qtree_rec(t, tv.child[p], out);
  out += ')';
}

inline std::string serialize_qtree(const PlaneTree& t) {
  std::string out;
  serialize_qtree_rec(t, t.root, out);
  return out;
}

inline void serialize_companion_rec(const PlaneTree& t, int v, std::string& out) {
  const auto& tv = t.verts[v];
  int L = tv.pearls();
  for (int i = 0; i < L; ++i) out += pearl_char(tv.kind((tv.rot + i) % L));
  out += '(';
  for (int i = 1; i < L; ++i) {
    int p = (tv.rot + i) % L;
    if (tv.child[p] >= 0) serialize_companion_rec(t, tv.child[p], out);
    else out += '_';
  }
  out += ')';
}

inline std::string serialize_companion(const PlaneTree& t) {
  std::string out = "@";
  out += pearl_char(t.root_kind());
  out += ':';
  serialize_companion_rec(t, t.root, out);
  return out;
}

// Unrooted canonical form: minimum serialization over rootings at free
// square pearls.
inline std::string serialize_unrooted(const PlaneTree& t) {
  std::string best;
  for (int v = 0; v < t.size(); ++v)
    if (t.verts[v].kind(0) == Pearl::Sq && !t.has_edge(v, 0)) {
      std::string s = serialize_companion(reroot(t, v, 0));
      if (best.empty() || s < best) best = s;
    }
  if (best.empty()) throw DomainError("no free square pearl");
  return "@u:" + best.substr(3);
}

// ------------ parsing ------------

namespace detail {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) ++i;
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) { ++i; return true; }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw DomainError(std::string("expected '") + c + "' in tree text");
  }
};

inline std::string read_word(Cursor& c, const char* allowed) {
  c.skip_ws();
  std::string w;
  while (c.i < c.s.size()) {
    char ch = c.s[c.i];
    if (std::string(allowed).find(ch) != std::string::npos) { w += ch; ++c.i; continue; }
    if (ch == '\xce' && c.i + 1 < c.s.size() && c.s[c.i + 1] == '\xb5') {  // UTF-8 epsilon
      w += 'e';
      c.i += 2;
      continue;
    }
    break;
  }
  if (w.empty()) throw DomainError("expected necklace word in tree text");
  return w;
}

inline int parse_qtree_rec(Cursor& c, PlaneTree& t) {
  std::string w = read_word(c, "bdte");
  if (w == "e") w.clear();
  else if (w.find('e') != std::string::npos) throw DomainError("bad necklace word in tree text");
  int id = t.size();
  t.verts.push_back(TreeVertex{});
  t.verts[id].word = w;
  t.verts[id].child.assign(t.verts[id].pearls(), -1);
  c.expect('(');
  for (int p = 1; p < t.verts[id].pearls(); ++p) {
    Pearl k = t.verts[id].kind(p);
    if (k != Pearl::B && k != Pearl::D) continue;
    int ch = parse_qtree_rec(c, t);
    t.verts[ch].parent = id;
    t.verts[ch].ppearl = p;
    t.verts[id].child[p] = ch;
  }
  c.expect(')');
  return id;
}

inline int parse_companion_rec(Cursor& c, PlaneTree& t) {
  std::string rotated = read_word(c, "sbdt");
  size_t sq = rotated.find('s');
  if (sq == std::string::npos || rotated.find('s', sq + 1) != std::string::npos)
    throw DomainError("companion vertex word must contain exactly one square");
  int L = static_cast<int>(rotated.size());
  int id = t.size();
  t.verts.push_back(TreeVertex{});
  // base word starts right after the square; entry pearl is rotated[0]
  std::string base;
  for (int i = 1; i < L; ++i) base += rotated[(sq + i) % L];
  t.verts[id].word = base;
  t.verts[id].rot = static_cast<int>((L - sq) % L);
  t.verts[id].child.assign(L, -1);
  c.expect('(');
  for (int i = 1; i < L; ++i) {
    int p = (t.verts[id].rot + i) % L;
    if (c.eat('_')) continue;
    int ch = parse_companion_rec(c, t);
    t.verts[ch].parent = id;
    t.verts[ch].ppearl = p;
    t.verts[id].child[p] = ch;
  }
  c.expect(')');
  return id;
}

}  // namespace detail

inline PlaneTree parse_qtree(const std::string& text, const NecklaceSystem& sys) {
  detail::Cursor c{text};
  PlaneTree t;
  t.root = detail::parse_qtree_rec(c, t);
  c.skip_ws();
  if (c.i != text.size()) throw DomainError("trailing input after tree");
  validate_qtree(t, sys);
  return t;
}

// Accepts "@u:" by rooting at the canonical free square.
inline PlaneTree parse_companion(const std::string& text, const NecklaceSystem& sys) {
  detail::Cursor c{text};
  c.expect('@');
  c.skip_ws();
  if (c.i >= text.size()) throw DomainError("missing root kind");
  char kind = text[c.i++];
  if (kind != 's' && kind != 'b' && kind != 'd' && kind != 't' && kind != 'u')
    throw DomainError("bad root kind");
  c.expect(':');
  PlaneTree t;
  t.root = detail::parse_companion_rec(c, t);
  c.skip_ws();
  if (c.i != text.size()) throw DomainError("trailing input after tree");
  if (kind == 'u') {
    if (t.root_kind() != Pearl::Sq) throw DomainError("unrooted form must be written from a square");
  } else if (pearl_char(t.root_kind()) != kind) {
    throw DomainError("root kind does not match root pearl");
  }
  validate_companion(t, sys);
  return t;
}

}  // namespace rewire
