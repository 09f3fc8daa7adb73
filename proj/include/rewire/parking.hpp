#pragma once

#include <utility>
#include <vector>

#include "rewire/plane_tree.hpp"

namespace rewire {

// Each triangle pearl is the entry place of one car.  The car drives from
// its vertex toward the root and parks on the first free diamond pearl it
// crosses.  The pearls crossed are exactly the parent-side attachment
// pearls of the ancestor edges, so a car never sees diamonds hanging off
// side branches of the vertices it passes, nor diamonds of its own vertex.

struct ParkingOutcome {
  int cars = 0;
  int parked = 0;
  int spots = 0;
  int filled = 0;
  bool all_spots_filled() const { return filled == spots; }
  bool all_cars_parked() const { return parked == cars; }
};

inline std::vector<std::pair<int, int>> cars_in_discovery_order(const PlaneTree& t) {
  std::vector<std::pair<int, int>> cars;
  // clockwise depth-first scan; triangles recorded as the contour passes them
  struct Frame { int v; int p; };
  std::vector<Frame> fs{{t.root, 1}};
  while (!fs.empty()) {
    auto& f = fs.back();
    const auto& tv = t.verts[f.v];
    if (f.p >= tv.pearls()) { fs.pop_back(); continue; }
    int p = f.p++;
    if (tv.kind(p) == Pearl::T) cars.push_back({f.v, p});
    else if (tv.child[p] >= 0) fs.push_back({tv.child[p], 1});
  }
  return cars;
}

inline ParkingOutcome run_parking(const PlaneTree& t,
                                  const std::vector<std::pair<int, int>>& order) {
  ParkingOutcome out;
  out.cars = static_cast<int>(order.size());
  std::vector<char> occupied(t.size(), 0);  // per vertex: its parent-side diamond spot
  for (const auto& v : t.verts)
    for (int p = 1; p < v.pearls(); ++p) out.spots += v.kind(p) == Pearl::D;
  for (auto [cv, cp] : order) {
    (void)cp;
    for (int a = cv; a != t.root; a = t.verts[a].parent) {
      if (t.verts[t.verts[a].parent].kind(t.verts[a].ppearl) == Pearl::D && !occupied[a]) {
        occupied[a] = 1;
        ++out.parked;
        ++out.filled;
        break;
      }
    }
  }
  return out;
}

inline ParkingOutcome parking_outcome(const PlaneTree& t) {
  return run_parking(t, cars_in_discovery_order(t));
}

// True when every diamond spot ends up occupied.
inline bool parking_oracle(const PlaneTree& t) {
  return parking_outcome(t).all_spots_filled();
}

}  // namespace rewire
