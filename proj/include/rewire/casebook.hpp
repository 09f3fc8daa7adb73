#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rewire/enumerate.hpp"
#include "rewire/parking.hpp"
#include "rewire/series.hpp"

namespace rewire {

// f_n and c_n in closed form, with the recurrence and the 1-to-(n+1)
// relation checked on every call.
inline std::pair<Int, Int> lambda_counts(int n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  Int num = (Int(1) << (2 * n - 1)) * double_factorial(3 * n - 3);
  Int c = checked_div(num, factorial(n) * double_factorial(n - 1));
  Int f = checked_div(c, Int(n + 1));
  if (n >= 3) {
    Int prev = lambda_counts(n - 2).second;
    Int rec = checked_div(Int(16) * 3 * (3 * n - 5) * (3 * n - 7) * prev, Int(n) * (n - 1));
    if (rec != c) throw std::logic_error("closed form and recurrence disagree");
  }
  return {f, c};
}

inline Int tutte_ns_count(int n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  return checked_div(Int(2) * binomial(3 * n, n), Int(n + 1) * (2 * n + 1));
}

struct CheckLine {
  bool good;
  std::string what;
};

struct CaseReport {
  std::string kind = "case";
  std::string name;
  std::vector<CheckLine> checks;
  int failures = 0;

  void check(bool good, const std::string& what) {
    checks.push_back({good, what});
    if (!good) ++failures;
  }
  bool ok() const { return failures == 0; }

  std::string str() const {
    std::string out = kind + " " + name + "\n";
    for (const auto& c : checks)
      out += std::string("  ") + (c.good ? "ok:   " : "FAIL: ") + c.what + "\n";
    out += ok() ? "passed\n" : std::to_string(failures) + " failure(s)\n";
    return out;
  }
};

namespace detail {

inline Rat int_rat(const Int& i) { return Rat(i); }

inline CaseReport case_lambda() {
  CaseReport rep{.name = "lambda"};
  NecklaceSystem sys = builtin_lambda();
  const int N = 12;
  for (int n = 1; n <= 4; ++n) {
    auto [f, c] = lambda_counts(n);
    rep.check(count_nonneg<Rat>(sys, 3 * n - 1, 0) == int_rat(f),
              "closed-form f_" + std::to_string(n) + " matches the tree count");
    rep.check(c == f * (n + 1), "c_" + std::to_string(n) + " = (n+1) f_" + std::to_string(n));
  }
  for (int n = 1; n <= N; ++n)
    if (n % 3 != 2)
      rep.check(count_nonneg<Rat>(sys, n, 0) == Rat(0),
                "no trees at size " + std::to_string(n));
  rep.check(enumerate_nonneg(sys, 8, 0).size() == 32, "enumeration reaches 32 trees at size 8");

  CompanionSolution<Rat> comp = solve_companion_system(vertex_gf<Rat>(sys, 4), N);
  bool series_ok = true;
  for (int n = 1; n <= 4; ++n)
    series_ok = series_ok && comp.square.coeff(3 * n - 1, 0) == int_rat(lambda_counts(n).second);
  rep.check(series_ok, "square series carries c_1..c_4");

  // companions of size 3n-1 expose exactly n+1 square rootings
  for (int n = 1; n <= 3; ++n) {
    bool roots_ok = true;
    for (const auto& u : enumerate_companion_unrooted(sys, 3 * n - 1)) {
      int free_squares = 0;
      for (int v = 0; v < u.size(); ++v)
        if (u.verts[v].kind(0) == Pearl::Sq && !u.has_edge(v, 0)) ++free_squares;
      roots_ok = roots_ok && free_squares == n + 1;
    }
    rep.check(roots_ok, "each size-" + std::to_string(3 * n - 1) + " companion has " +
                            std::to_string(n + 1) + " square rootings");
  }

  // the square series solves its own one-variable equation:
  // square = t*square^2 + 2t^2/(1 - 2t*square)
  TSeries<Rat> t = TSeries<Rat>::one(N).shifted(1);
  TSeries<Rat> tc2 = t * comp.square * comp.square;
  TSeries<Rat> t2 = t * t;
  TSeries<Rat> lhs = comp.square - tc2 - tc2;  // square (1 - 2t square)
  TSeries<Rat> cube = t2 * comp.square * comp.square * comp.square;
  TSeries<Rat> rhs = tc2 - cube - cube + t2 + t2;
  rep.check(lhs == rhs, "single-equation form of the square series");

  rep.check(check_parametrization(vertex_gf<Rat>(sys, 4), N).ok, "parametrization agrees");
  return rep;
}

inline CaseReport case_nonseparable() {
  CaseReport rep{.name = "nonseparable"};
  NecklaceSystem sys = builtin_nonseparable();
  const int N = 12;
  for (int n = 1; n <= 6; ++n)
    rep.check(count_nonneg<Rat>(sys, n, 0) == int_rat(tutte_ns_count(n)),
              "Tutte count matches at size " + std::to_string(n));
  CompanionSolution<Rat> comp = solve_companion_system(vertex_gf<Rat>(sys, 4), N);
  rep.check(comp.square == comp.black && comp.square == comp.diamond &&
                comp.square == comp.triangle,
            "all four companion series coincide");
  // the common series solves T = t (1+T)^3
  TSeries<Rat> onep = one_plus(comp.square);
  rep.check(comp.square == (onep * onep * onep).shifted(1), "ternary-tree equation");
  rep.check(check_parametrization(vertex_gf<Rat>(sys, 4), N).ok, "parametrization agrees");
  return rep;
}

inline CaseReport case_parking() {
  CaseReport rep{.name = "parking"};
  NecklaceSystem sys = *builtin_system("parking");
  QPoly<Rat> q = vertex_gf<Rat>(sys, 4);
  TSeries<Rat> F = solve_catalytic(q, 6);
  for (int n = 1; n <= 6; ++n)
    rep.check(F.coeff(n, 0) == count_nonneg<Rat>(sys, n, 0),
              "series and count agree at size " + std::to_string(n));
  for (int n = 1; n <= 4; ++n) {
    bool parked = true;
    for (const auto& t : enumerate_nonneg(sys, n, 0)) {
      ParkingOutcome o = parking_outcome(t);
      parked = parked && o.all_spots_filled() && o.all_cars_parked();
    }
    rep.check(parked, "every excess-0 tree of size " + std::to_string(n) + " is fully parked");
  }
  rep.check(check_parametrization(q, 6).ok, "parametrization agrees");
  return rep;
}

inline CaseReport case_triangulation() {
  CaseReport rep{.name = "triangulation"};
  QPoly<Rat> q;  // x*u*(1+u*v)^2 + w
  q.add(0, 0, 1, 1, Rat(1));
  q.add(1, 0, 2, 1, Rat(2));
  q.add(2, 0, 3, 1, Rat(1));
  q.add(0, 1, 0, 0, Rat(1));
  InhomSolution<Rat> s = solve_inhomogeneous(q, 5);
  rep.check(s.ok, "graded parametrization agrees");
  bool counts_ok = true;
  for (int n = 1; n <= 5; ++n)
    counts_ok = counts_ok && s.f.coeff(n, 0) == int_rat(lambda_counts(n).first);
  rep.check(counts_ok, "f coefficients equal the first case's counts");
  rep.check(s.diamond == one_plus(s.black), "diamond series is 1 + black");
  return rep;
}

inline CaseReport case_linear_basic() {
  CaseReport rep{.name = "linear-basic"};
  LinearSolution<Rat> s = linear_reduce(Poly<Rat>::var(), Poly<Rat>(Rat(1)), Poly<Rat>(Rat(1)), 12);
  rep.check(s.ok, "reduced and direct series agree");
  bool vals = true;
  for (int n = 1; n <= 12; ++n) vals = vals && s.f.coeff(n, 0) == Rat(n - 1);
  rep.check(vals, "f_n = n - 1 through order 12");
  NecklaceSystem sys = parse_system("b\nd\nt", "linear-basic");
  bool counts = true;
  for (int n = 1; n <= 10; ++n) counts = counts && count_nonneg<Rat>(sys, n, 0) == Rat(n - 1);
  rep.check(counts, "tree counts give the same values");
  return rep;
}

inline CaseReport case_all_necklaces() {
  CaseReport rep{.name = "all-necklaces"};
  NecklaceSystem bounded = *builtin_system("all-necklaces");
  QPoly<Rat> q = vertex_gf<Rat>(bounded, 4);
  TSeries<Rat> F = solve_catalytic(q, 5);
  for (int n = 1; n <= 5; ++n)
    rep.check(F.coeff(n, 0) == count_nonneg<Rat>(bounded, n, 0),
              "series and count agree at size " + std::to_string(n));
  // a size-n tree carries at most n pearls on any one vertex, so the
  // four-pearl cap is invisible below size 5 and bites exactly there
  NecklaceSystem full = builtin_all();
  for (int n = 1; n <= 4; ++n)
    rep.check(count_nonneg<Rat>(full, n, 0) == count_nonneg<Rat>(bounded, n, 0),
              "pearl cap invisible at size " + std::to_string(n));
  rep.check(count_nonneg<Rat>(full, 5, 0) > count_nonneg<Rat>(bounded, 5, 0),
            "pearl cap bites at size 5");
  rep.check(check_parametrization(q, 5).ok, "parametrization agrees");
  return rep;
}

}  // namespace detail

inline std::vector<std::string> case_names() {
  return {"lambda", "nonseparable", "parking", "triangulation", "linear-basic", "all-necklaces"};
}

inline CaseReport run_case(const std::string& name) {
  if (name == "lambda") return detail::case_lambda();
  if (name == "nonseparable") return detail::case_nonseparable();
  if (name == "parking") return detail::case_parking();
  if (name == "triangulation") return detail::case_triangulation();
  if (name == "linear-basic") return detail::case_linear_basic();
  if (name == "all-necklaces") return detail::case_all_necklaces();
  throw std::invalid_argument("unknown case '" + name + "'");
}

}  // namespace rewire
