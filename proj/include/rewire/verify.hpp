#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "rewire/casebook.hpp"
#include "rewire/companion_ops.hpp"

namespace rewire {

namespace detail {

// Count the free squares of an unrooted companion; every one of them is a
// legal rooting.
inline int free_squares(const PlaneTree& t) {
  int n = 0;
  for (int v = 0; v < t.size(); ++v)
    if (t.verts[v].kind(0) == Pearl::Sq && !t.has_edge(v, 0)) ++n;
  return n;
}

// Series-side checks, templated so formal weights ride along as
// polynomial coefficients.
template <typename R>
void verify_series(const NecklaceSystem& sys, int max_size, int excess_cap, CaseReport& rep) {
  // long enough that truncating a regular system cannot disturb the
  // compared coefficient range
  QPoly<R> q = vertex_gf<R>(sys, 2 * max_size + excess_cap);
  if (q.uses_x()) {
    InhomSolution<R> s = solve_inhomogeneous(q, max_size);
    rep.check(s.ok, "graded series parametrization agrees through order " +
                        std::to_string(max_size));
    return;
  }
  rep.check(check_parametrization(q, max_size).ok,
            "catalytic, companion, and star series agree through order " +
                std::to_string(max_size));
  TSeries<R> F = solve_catalytic(q, max_size);
  bool counts = true;
  for (int n = 1; n <= max_size; ++n)
    for (int e = 0; e <= excess_cap; ++e)
      counts = counts && F.coeff(n, e) == count_nonneg<R>(sys, n, e);
  rep.check(counts, "series coefficients match tree counts for every size and excess");
}

}  // namespace detail

// Run the structural identities at every size up to the bound: the
// rewiring bijection per excess, the diamond/triangle pairing of the
// unbalanced companions, the rooting and marking tilings, and the
// agreement of the three series routes.
inline CaseReport run_verify(const NecklaceSystem& sys, int max_size, int excess_cap = 2,
                             Budget* budget = nullptr) {
  if (max_size < 1) throw std::invalid_argument("max size must be at least 1");
  if (excess_cap < 0) throw std::invalid_argument("excess cap must be non-negative");
  CaseReport rep{.kind = "verify", .name = sys.name};

  std::vector<long long> class_count[2];  // diamond- and triangle-rooted, by size
  for (int n = 1; n <= max_size; ++n) {
    std::string at = "size " + std::to_string(n);
    auto rooted = enumerate_companion(sys, n, CompanionClass::Sq, 0, budget);
    std::vector<std::string> balanced;
    for (const auto& c : rooted)
      if (is_balanced(c)) balanced.push_back(serialize_companion(c));
    std::sort(balanced.begin(), balanced.end());

    std::vector<PlaneTree> flat;  // the excess-0 trees, kept for the marking count
    for (int e = 0; e <= excess_cap; ++e) {
      auto trees = enumerate_nonneg(sys, n, e, budget);
      bool good = true;
      std::vector<std::string> images;
      for (const auto& t : trees) {
        PlaneTree c = rewire_tree(t);
        validate_companion(c, sys);
        DefectReport dr = classify_defects(c);
        good = good && is_balanced(c) && dr.internal.empty() &&
               static_cast<int>(dr.external.size()) == e;
        good = good && serialize_qtree(unrewire_tree(c)) == serialize_qtree(t);
        images.push_back(serialize_companion(c));
      }
      std::sort(images.begin(), images.end());
      good = good && std::adjacent_find(images.begin(), images.end()) == images.end();
      std::vector<std::string> target;
      if (e == 0) {
        target = balanced;
      } else {
        for (const auto& c : enumerate_companion(sys, n, CompanionClass::Sq, e, budget))
          if (is_balanced(c) && classify_defects(c).internal.empty())
            target.push_back(serialize_companion(c));
        std::sort(target.begin(), target.end());
      }
      good = good && images == target;
      rep.check(good, at + ", excess " + std::to_string(e) + ": rewiring bijects " +
                          std::to_string(trees.size()) + " trees onto the balanced companions with " +
                          std::to_string(e) + " external defects");
      if (e == 0) flat = std::move(trees);
    }

    class_count[0].push_back(
        static_cast<long long>(enumerate_companion(sys, n, CompanionClass::D, 0, budget).size()));
    class_count[1].push_back(
        static_cast<long long>(enumerate_companion(sys, n, CompanionClass::T, 0, budget).size()));
    long long unbalanced = static_cast<long long>(rooted.size() - balanced.size());
    long long pairs = 0;
    for (int a = 1; a < n; ++a) pairs += class_count[0][a - 1] * class_count[1][n - a - 1];
    rep.check(unbalanced == pairs,
              at + ": " + std::to_string(unbalanced) +
                  " unbalanced rootings split into diamond/triangle pairs");

    auto unrooted = enumerate_companion_unrooted(sys, n, budget);
    long long rootings = 0;
    for (const auto& u : unrooted) rootings += detail::free_squares(u);
    rep.check(static_cast<long long>(rooted.size()) == rootings &&
                  balanced.size() == unrooted.size(),
              at + ": every unrooted companion carries one balanced square rooting");

    long long marks = 0;
    for (const auto& t : flat) marks += t.pearl_total(Pearl::D);
    rep.check(static_cast<long long>(rooted.size()) ==
                  static_cast<long long>(balanced.size()) + marks,
              at + ": trees plus diamond-marked trees tile the square rootings");
  }

  if (sys.symbols.empty()) detail::verify_series<Rat>(sys, max_size, excess_cap, rep);
  else detail::verify_series<MPoly>(sys, max_size, excess_cap, rep);
  return rep;
}

}  // namespace rewire
