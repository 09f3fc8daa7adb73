#pragma once

#include <string>
#include <vector>

#include "rewire/errors.hpp"
#include "rewire/plane_tree.hpp"

namespace rewire {

// A corner is a gap between consecutive edges around a vertex.  Walking
// the contour of a plane tree touches every corner once; free pearls own
// one corner, edged pearls own one on each side of their edge.
enum class Phase {
  Only,  // the single corner of a free pearl
  Bef,   // before descending a down edge
  Aft,   // after returning from a down edge
  Arr,   // first corner at the entry pearl of a non-root vertex
  Dep,   // last corner before ascending
};

struct Corner {
  int v;
  int p;
  Phase phase;
};

// Clockwise contour lists each vertex's pearls in cyclic order from the
// entry pearl; counter-clockwise reverses the order around every vertex.
inline void contour_rec(const PlaneTree& t, int v, bool cw, std::vector<Corner>& out) {
  const auto& tv = t.verts[v];
  int L = tv.pearls();
  bool root = v == t.root;
  if (tv.child[tv.rot] >= 0) {
    out.push_back({v, tv.rot, Phase::Bef});
    contour_rec(t, tv.child[tv.rot], cw, out);
    out.push_back({v, tv.rot, Phase::Aft});
  } else {
    out.push_back({v, tv.rot, root ? Phase::Only : Phase::Arr});
  }
  for (int i = 1; i < L; ++i) {
    int p = cw ? (tv.rot + i) % L : (tv.rot + L - i) % L;
    if (p == tv.rot) continue;
    if (tv.child[p] >= 0) {
      out.push_back({v, p, Phase::Bef});
      contour_rec(t, tv.child[p], cw, out);
      out.push_back({v, p, Phase::Aft});
    } else {
      out.push_back({v, p, Phase::Only});
    }
  }
  if (!root && tv.child[tv.rot] < 0) out.push_back({v, tv.rot, Phase::Dep});
}

inline std::vector<Corner> contour(const PlaneTree& t, bool clockwise) {
  std::vector<Corner> out;
  contour_rec(t, t.root, clockwise, out);
  return out;
}

// ------------ cyclic matching ------------

enum class Tok { None, Open, Close };

struct ArcMatching {
  std::vector<std::pair<int, int>> arcs;  // (open position, close position)
  std::vector<int> unmatched;             // close positions left over
};

// Non-crossing cyclic matching of Open tokens to later Close tokens.  A
// linear stack pass leaves prefix closes and suffix opens; those wrap
// around pairwise.  Fails when opens outnumber closes.
inline ArcMatching cyclic_match(const std::vector<Tok>& toks) {
  ArcMatching m;
  std::vector<int> stack;
  std::vector<int> early;  // unmatched closes, in position order
  for (int i = 0; i < static_cast<int>(toks.size()); ++i) {
    if (toks[i] == Tok::Open) stack.push_back(i);
    else if (toks[i] == Tok::Close) {
      if (!stack.empty()) {
        m.arcs.push_back({stack.back(), i});
        stack.pop_back();
      } else {
        early.push_back(i);
      }
    }
  }
  if (stack.size() > early.size()) throw DomainError("deficit");
  // last leftover open wraps to the first leftover close, and inward
  for (size_t i = 0; i < stack.size(); ++i)
    m.arcs.push_back({stack[stack.size() - 1 - i], early[i]});
  for (size_t i = stack.size(); i < early.size(); ++i) m.unmatched.push_back(early[i]);
  return m;
}

// Strict cyclic betweenness: x lies inside the arc running a -> b in walk
// direction.  Origin-free, so wrapping arcs enclose consistently.
inline bool cyc_between(int a, int x, int b) {
  if (a < b) return a < x && x < b;
  return x > a || x < b;
}

inline int enclosing_arcs(const ArcMatching& m, int pos) {
  int n = 0;
  for (const auto& [o, c] : m.arcs) n += cyc_between(o, pos, c);
  return n;
}

// Sanity check used by tests: matched arcs never cross cyclically.
inline bool non_crossing(const ArcMatching& m) {
  for (size_t i = 0; i < m.arcs.size(); ++i)
    for (size_t j = i + 1; j < m.arcs.size(); ++j) {
      auto [a, b] = m.arcs[i];
      auto [c, d] = m.arcs[j];
      if (cyc_between(a, c, b) != cyc_between(a, d, b)) return false;
    }
  return true;
}

// ------------ pearl addressing ------------

// Stable root-to-vertex address: "0" for the root, then the pearl index
// of each descent, e.g. "0.2.1@3" is pearl 3 of the vertex reached by
// descending at pearl 2 then pearl 1.
inline std::string pearl_path(const PlaneTree& t, int v, int p) {
  std::vector<int> down;
  for (int a = v; a != t.root; a = t.verts[a].parent) down.push_back(t.verts[a].ppearl);
  std::string out = "0";
  for (auto it = down.rbegin(); it != down.rend(); ++it) out += "." + std::to_string(*it);
  return out + "@" + std::to_string(p);
}

}  // namespace rewire
