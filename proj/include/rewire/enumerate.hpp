#pragma once

#include <climits>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "rewire/errors.hpp"
#include "rewire/plane_tree.hpp"

namespace rewire {

// Materialization ceiling, counted in tree nodes.  REWIRE_CEILING overrides
// the default.
struct Budget {
  long long limit;
  long long used = 0;

  static long long env_limit() {
    if (const char* s = std::getenv("REWIRE_CEILING")) {
      long long v = std::atoll(s);
      if (v > 0) return v;
    }
    return 10'000'000;
  }

  Budget() : limit(env_limit()) {}
  explicit Budget(long long l) : limit(l) {}

  void charge(long long nodes) {
    used += nodes;
    if (used > limit) throw ResourceCeiling("materialization ceiling exceeded (REWIRE_CEILING)");
  }
};

namespace detail {

inline int necklace_bound(int size, std::optional<int> excess) {
  // children <= size-1; triangles <= excess + diamonds <= excess + size - 1
  int k = excess.value_or(0);
  return std::max(0, size - 1) + std::max(0, k + size - 1);
}

// Shared recursion for non-negative and unconstrained Q-tree enumeration.
// Subtree sets are memoized by (size, excess floor); the floor is the
// sentinel kAny in unconstrained mode.
struct QTreeEnumerator {
  static constexpr int kAny = INT_MIN;

  std::vector<Necklace> necks;
  bool constrained = true;
  bool sigma1 = true;
  bool sigma0_t_free = true;
  int max_t = 0;
  // with an exact excess filter k on size n, a depth-m subtree never
  // exceeds excess k + (n - m): every outside diamond absorbs one unit
  int cap_base = INT_MAX;
  Budget* budget;
  std::map<std::pair<int, int>, std::vector<PlaneTree>> memo;
  std::set<std::pair<int, int>> visiting;

  QTreeEnumerator(const NecklaceSystem& sys, int size, std::optional<int> excess, Budget* b)
      : budget(b) {
    necks = sys.expand(necklace_bound(size, excess));
    if (excess) cap_base = *excess + size;
    for (const auto& n : necks) {
      if (n.size != 1) sigma1 = false;
      if (n.size == 0 && n.n_triangle() > 0) sigma0_t_free = false;
      max_t = std::max(max_t, n.n_triangle());
    }
  }

  int excess_cap(int n) const {
    int c = sigma0_t_free ? n * max_t : INT_MAX;
    if (cap_base != INT_MAX) c = std::min(c, cap_base - n);
    return c;
  }

  const std::vector<PlaneTree>& subtrees(int n, int floor) {
    int cap = excess_cap(n);
    if (floor != kAny && cap != INT_MAX && floor > cap) {
      static const std::vector<PlaneTree> empty;
      return empty;
    }
    auto key = std::pair(n, floor);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    if (!visiting.insert(key).second) throw DomainError("non-wellfounded grading");
    std::vector<PlaneTree> out;
    if (n > 0) {
      for (const auto& s : necks) {
        if (s.size > n) continue;
        std::vector<int> slots;
        for (size_t i = 0; i < s.word.size(); ++i)
          if (s.word[i] == 'b' || s.word[i] == 'd') slots.push_back(static_cast<int>(i) + 1);
        int base = s.n_triangle() - s.n_diamond();
        std::vector<std::pair<int, const PlaneTree*>> picked;
        assemble(s, slots, 0, n - s.size, base, floor, cap, picked, out);
      }
    }
    visiting.erase(key);
    return memo.emplace(key, std::move(out)).first->second;
  }

  void assemble(const Necklace& s, const std::vector<int>& slots, size_t idx, int rem,
                int acc, int floor, int cap,
                std::vector<std::pair<int, const PlaneTree*>>& picked,
                std::vector<PlaneTree>& out) {
    if (idx == slots.size()) {
      if (rem != 0) return;
      if (constrained && floor != kAny && acc < floor) return;
      if (constrained && cap != INT_MAX && acc > cap) return;
      PlaneTree t = compose_tree(s.word, 0, picked);
      budget->charge(t.size());
      out.push_back(std::move(t));
      return;
    }
    int left = static_cast<int>(slots.size() - idx) - 1;  // slots after this one
    bool last = left == 0;
    int slot_floor = kAny;
    if (constrained) {
      slot_floor = s.word[slots[idx] - 1] == 'd' ? 1 : 0;
      if (last && floor != kAny) slot_floor = std::max(slot_floor, floor - acc);
    }
    for (int sz = 1; sz <= rem - left; ++sz) {
      if (last && sz != rem) continue;
      const auto& subs = subtrees(sz, slot_floor);
      for (const auto& sub : subs) {
        picked.push_back({slots[idx], &sub});
        int e = constrained ? excess(sub) : 0;
        assemble(s, slots, idx + 1, rem - sz, acc + e, floor, cap, picked, out);
        picked.pop_back();
      }
    }
  }
};

}  // namespace detail

// All non-negative Q-trees of the given size, optionally filtered to an
// exact excess.  Regular systems need the filter to bound their expansion.
inline std::vector<PlaneTree> enumerate_nonneg(const NecklaceSystem& sys, int size,
                                               std::optional<int> excess,
                                               Budget* budget = nullptr) {
  if (sys.regular_all && !excess)
    throw std::invalid_argument("excess filter required for regular systems");
  Budget local;  // the ceiling applies per operation
  detail::QTreeEnumerator e(sys, size, excess, budget ? budget : &local);
  std::vector<PlaneTree> out;
  for (const auto& t : e.subtrees(size, excess.value_or(0))) {
    if (excess && rewire::excess(t) != *excess) continue;
    out.push_back(t);
    for (int i = 0; i < out.back().size(); ++i) out.back().verts[i].orig = i;
  }
  return out;
}

// Every valid Q-tree of the given size, sign-unconstrained.
inline std::vector<PlaneTree> enumerate_all_qtrees(const NecklaceSystem& sys, int size,
                                                   Budget* budget = nullptr) {
  Budget local;
  detail::QTreeEnumerator e(sys, size, std::nullopt, budget ? budget : &local);
  if (!e.sigma1) throw std::invalid_argument("unconstrained enumeration needs trivial sizes");
  e.constrained = false;
  std::vector<PlaneTree> out = e.subtrees(size, detail::QTreeEnumerator::kAny);
  for (auto& t : out)
    for (int i = 0; i < t.size(); ++i) t.verts[i].orig = i;
  return out;
}

// ------------ counting ------------

// Weighted count of non-negative Q-trees with exact size and excess,
// computed on counts alone.  Independent of both the enumerator above and
// the series solvers; the three routes are cross-checked in tests.
template <class R>
class NonnegCounter {
 public:
  NonnegCounter(const NecklaceSystem& sys, int size, int excess)
      : necks_(sys.expand(detail::necklace_bound(size, excess))) {
    for (const auto& n : necks_) {
      if (n.size == 0 && n.n_triangle() > 0) s0_t_free_ = false;
      max_t_ = std::max(max_t_, n.n_triangle());
    }
  }

  R count(int n, int k) {
    if (n <= 0 || k < 0) return R(0);
    if (s0_t_free_ && k > n * max_t_) return R(0);
    auto key = std::pair(n, k);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (!visiting_.insert(key).second) throw DomainError("non-wellfounded grading");
    R total = R(0);
    for (const auto& s : necks_) {
      if (s.size > n) continue;
      std::vector<char> slots;
      for (char c : s.word)
        if (c == 'b' || c == 'd') slots.push_back(c);
      int base = s.n_triangle() - s.n_diamond();
      R ways = conv(slots, 0, n - s.size, k - base);
      if (!ring_zero(ways)) total += weight_coeff<R>(s.weight) * ways;
    }
    visiting_.erase(key);
    memo_.emplace(key, total);
    return total;
  }

 private:
  R conv(const std::vector<char>& slots, size_t idx, int rem, int need) {
    if (idx == slots.size()) return (rem == 0 && need == 0) ? R(1) : R(0);
    int left = static_cast<int>(slots.size() - idx) - 1;
    int kmin = slots[idx] == 'd' ? 1 : 0;
    if (left == 0) {
      // the closing slot is pinned; keeping the demand exact here is what
      // stops spurious self-dependencies on zero-size necklaces
      if (need < kmin) return R(0);
      return count(rem, need);
    }
    int rest_min = 0;
    for (size_t j = idx + 1; j < slots.size(); ++j) rest_min += slots[j] == 'd';
    R acc = R(0);
    for (int sz = 1; sz <= rem - left; ++sz)
      for (int k = kmin; k <= need - rest_min; ++k) {
        R c = count(sz, k);
        if (ring_zero(c)) continue;
        R rest = conv(slots, idx + 1, rem - sz, need - k);
        if (!ring_zero(rest)) acc += c * rest;
      }
    return acc;
  }

  std::vector<Necklace> necks_;
  bool s0_t_free_ = true;
  int max_t_ = 0;
  std::map<std::pair<int, int>, R> memo_;
  std::set<std::pair<int, int>> visiting_;
};

template <class R = Rat>
inline R count_nonneg(const NecklaceSystem& sys, int size, int excess) {
  return NonnegCounter<R>(sys, size, excess).count(size, excess);
}

// ------------ companion trees ------------

enum class CompanionClass { Sq, B, D, T };

inline Pearl companion_root_pearl(CompanionClass c) {
  switch (c) {
    case CompanionClass::Sq: return Pearl::Sq;
    case CompanionClass::B: return Pearl::B;
    case CompanionClass::D: return Pearl::D;
    case CompanionClass::T: return Pearl::T;
  }
  throw std::logic_error("bad class");
}

namespace detail {

// Grammar-driven companion enumeration: the root vertex is a necklace
// rerooted at the class pearl; black and diamond slots take mandatory
// square- and triangle-rooted subtrees, square slots optionally hang a
// black-rooted subtree, triangle slots are defects or carry a
// diamond-rooted subtree.
struct CompanionEnumerator {
  std::vector<Necklace> necks;
  RerootSets rsets;
  Budget* budget;
  std::map<std::tuple<int, int, int>, std::vector<PlaneTree>> memo;
  std::set<std::tuple<int, int, int>> visiting;

  CompanionEnumerator(const NecklaceSystem& sys, int size, int defects, Budget* b)
      : budget(b) {
    int bound = std::max(0, size - 1) + std::max(0, defects + size - 1);
    necks = sys.expand(bound);
    NecklaceSystem tmp;
    tmp.necklaces = necks;
    rsets = reroot_sets(tmp, bound);
  }

  const std::vector<PlaneTree>& trees(CompanionClass cls, int n, int k) {
    auto key = std::tuple(static_cast<int>(cls), n, k);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    if (k < 0) {
      static const std::vector<PlaneTree> empty;
      return empty;
    }
    if (!visiting.insert(key).second) throw DomainError("non-wellfounded grading");
    std::vector<PlaneTree> out;
    auto consider = [&](const Necklace& s, int rot) {
      if (s.size > n) return;
      int L = static_cast<int>(s.word.size()) + 1;
      std::vector<int> slots;
      for (int i = 1; i < L; ++i) slots.push_back((rot + i) % L);
      std::vector<std::pair<int, const PlaneTree*>> picked;
      assemble(s, rot, slots, 0, n - s.size, k, picked, out);
    };
    if (cls == CompanionClass::Sq) {
      for (const auto& s : necks) consider(s, 0);
    } else {
      const auto& rs = cls == CompanionClass::B    ? rsets.at_black
                       : cls == CompanionClass::D ? rsets.at_diamond
                                                   : rsets.at_triangle;
      for (const auto& r : rs) consider(r.necklace, r.rot);
    }
    visiting.erase(key);
    return memo.emplace(key, std::move(out)).first->second;
  }

  void assemble(const Necklace& s, int rot, const std::vector<int>& slots, size_t idx, int rem,
                int kneed, std::vector<std::pair<int, const PlaneTree*>>& picked,
                std::vector<PlaneTree>& out) {
    if (idx == slots.size()) {
      if (rem != 0 || kneed != 0) return;
      PlaneTree t = compose_tree(s.word, rot, picked);
      budget->charge(t.size());
      out.push_back(std::move(t));
      return;
    }
    int p = slots[idx];
    Pearl kind = p == 0 ? Pearl::Sq : pearl_from_char(s.word[p - 1]);
    auto attach = [&](CompanionClass cls) {
      for (int sz = 0; sz <= rem; ++sz)
        for (int kc = 0; kc <= kneed; ++kc) {
          const auto& subs = trees(cls, sz, kc);
          for (const auto& sub : subs) {
            picked.push_back({p, &sub});
            assemble(s, rot, slots, idx + 1, rem - sz, kneed - kc, picked, out);
            picked.pop_back();
          }
        }
    };
    switch (kind) {
      case Pearl::Sq:
        assemble(s, rot, slots, idx + 1, rem, kneed, picked, out);  // free square
        attach(CompanionClass::B);
        break;
      case Pearl::B:
        attach(CompanionClass::Sq);
        break;
      case Pearl::D:
        attach(CompanionClass::T);
        break;
      case Pearl::T:
        if (kneed > 0)  // defect
          assemble(s, rot, slots, idx + 1, rem, kneed - 1, picked, out);
        attach(CompanionClass::D);
        break;
    }
  }
};

}  // namespace detail

inline std::vector<PlaneTree> enumerate_companion(const NecklaceSystem& sys, int size,
                                                  CompanionClass root, int defects,
                                                  Budget* budget = nullptr) {
  Budget local;
  detail::CompanionEnumerator e(sys, size, defects, budget ? budget : &local);
  std::vector<PlaneTree> out = e.trees(root, size, defects);
  for (auto& t : out)
    for (int i = 0; i < t.size(); ++i) t.verts[i].orig = i;
  return out;
}

// Defect-free unrooted companion trees, one representative each, rooted at
// the canonical free square.
inline std::vector<PlaneTree> enumerate_companion_unrooted(const NecklaceSystem& sys, int size,
                                                           Budget* budget = nullptr) {
  std::map<std::string, PlaneTree> seen;
  for (const auto& t : enumerate_companion(sys, size, CompanionClass::Sq, 0, budget))
    seen.try_emplace(serialize_unrooted(t), t);
  std::vector<PlaneTree> out;
  for (auto& [canon, t] : seen) {
    PlaneTree rep = parse_companion("@s:" + canon.substr(3), sys);
    for (int i = 0; i < rep.size(); ++i) rep.verts[i].orig = i;
    out.push_back(std::move(rep));
  }
  return out;
}

// Oracle generator: unconstrained color-valid trees, validated after the
// fact.  Exercises the companion grammar from the other direction.
inline std::vector<PlaneTree> enumerate_companion_brute(const NecklaceSystem& sys, int size,
                                                        CompanionClass root, int defects) {
  struct Gen {
    std::vector<Necklace> necks;
    RerootSets rsets;
    std::map<std::pair<char, int>, std::vector<PlaneTree>> memo;

    const std::vector<PlaneTree>& gen(Pearl entry, int n) {
      auto key = std::pair(pearl_char(entry), n);
      if (auto it = memo.find(key); it != memo.end()) return it->second;
      std::vector<PlaneTree> out;
      auto consider = [&](const Necklace& s, int rot) {
        if (s.size > n) return;
        int L = static_cast<int>(s.word.size()) + 1;
        std::vector<int> slots;
        for (int i = 1; i < L; ++i) slots.push_back((rot + i) % L);
        std::vector<std::pair<int, const PlaneTree*>> picked;
        build(s, rot, slots, 0, n - s.size, picked, out);
      };
      if (entry == Pearl::Sq) {
        for (const auto& s : necks) consider(s, 0);
      } else {
        const auto& rs = entry == Pearl::B    ? rsets.at_black
                         : entry == Pearl::D ? rsets.at_diamond
                                             : rsets.at_triangle;
        for (const auto& r : rs) consider(r.necklace, r.rot);
      }
      return memo.emplace(key, std::move(out)).first->second;
    }

    void build(const Necklace& s, int rot, const std::vector<int>& slots, size_t idx, int rem,
               std::vector<std::pair<int, const PlaneTree*>>& picked,
               std::vector<PlaneTree>& out) {
      if (idx == slots.size()) {
        if (rem == 0) out.push_back(compose_tree(s.word, rot, picked));
        return;
      }
      build(s, rot, slots, idx + 1, rem, picked, out);  // slot left free
      int p = slots[idx];
      Pearl kind = p == 0 ? Pearl::Sq : pearl_from_char(s.word[p - 1]);
      Pearl mate = kind == Pearl::Sq ? Pearl::B
                   : kind == Pearl::B ? Pearl::Sq
                   : kind == Pearl::D ? Pearl::T
                                      : Pearl::D;
      for (int sz = 1; sz <= rem; ++sz)
        for (const auto& sub : gen(mate, sz)) {
          picked.push_back({p, &sub});
          build(s, rot, slots, idx + 1, rem - sz, picked, out);
          picked.pop_back();
        }
    }
  } g;

  if (!sys.sigma_trivial())
    throw std::invalid_argument("brute-force generation needs trivial sizes");
  int bound = std::max(0, size - 1) + std::max(0, defects + size - 1);
  g.necks = sys.expand(bound);
  NecklaceSystem tmp;
  tmp.necklaces = g.necks;
  g.rsets = reroot_sets(tmp, bound);

  std::vector<PlaneTree> out;
  for (const auto& t : g.gen(companion_root_pearl(root), size)) {
    try {
      validate_companion(t, sys);
    } catch (const DomainError&) {
      continue;
    }
    if (count_defects(t) != defects) continue;
    out.push_back(t);
    for (int i = 0; i < out.back().size(); ++i) out.back().verts[i].orig = i;
  }
  return out;
}

}  // namespace rewire
