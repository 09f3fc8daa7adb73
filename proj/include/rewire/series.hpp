#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rewire/errors.hpp"
#include "rewire/poly.hpp"
#include "rewire/qpoly.hpp"

namespace rewire {

// Power series in t truncated at a fixed order, coefficients polynomial
// in u.  All arithmetic is exact; nothing below the truncation order is
// ever dropped.
template <typename R = Rat>
struct TSeries {
  int order = 0;
  std::vector<Poly<R>> c;  // c[n] is the coefficient of t^n

  TSeries() : c(1) {}
  explicit TSeries(int n) : order(n), c(n + 1) {}

  static TSeries one(int n) {
    TSeries s(n);
    s.c[0] = Poly<R>(R(1));
    return s;
  }
  // the literal variable u as a series
  static TSeries u_var(int n) {
    TSeries s(n);
    s.c[0] = Poly<R>::var();
    return s;
  }

  R coeff(int n, int k) const { return n <= order ? c[n][k] : R(0); }

  bool is_zero() const {
    for (const auto& p : c)
      if (!p.is_zero()) return false;
    return true;
  }

  int max_udeg() const {
    int d = 0;
    for (const auto& p : c) d = std::max(d, p.degree());
    return d;
  }

  TSeries& operator+=(const TSeries& o) {
    for (int n = 0; n <= std::min(order, o.order); ++n) c[n] += o.c[n];
    return *this;
  }
  TSeries& operator-=(const TSeries& o) {
    for (int n = 0; n <= std::min(order, o.order); ++n) c[n] -= o.c[n];
    return *this;
  }
  friend TSeries operator+(TSeries a, const TSeries& b) { return a += b; }
  friend TSeries operator-(TSeries a, const TSeries& b) { return a -= b; }

  friend TSeries operator*(const TSeries& a, const TSeries& b) {
    TSeries r(std::min(a.order, b.order));
    for (int i = 0; i <= r.order; ++i) {
      if (a.c[i].is_zero()) continue;
      for (int j = 0; i + j <= r.order; ++j) {
        if (b.c[j].is_zero()) continue;
        r.c[i + j] += a.c[i] * b.c[j];
      }
    }
    return r;
  }

  friend bool operator==(const TSeries& a, const TSeries& b) {
    return a.order == b.order && a.c == b.c;
  }
  friend bool operator!=(const TSeries& a, const TSeries& b) { return !(a == b); }

  void scale(const R& r) {
    Poly<R> s(r);
    for (auto& p : c) p = p * s;
  }

  // multiply by t^k
  TSeries shifted(int k) const {
    TSeries r(order);
    for (int n = 0; n + k <= order; ++n) r.c[n + k] = c[n];
    return r;
  }

  TSeries truncated(int m) const {
    TSeries r(std::min(m, order));
    for (int n = 0; n <= r.order; ++n) r.c[n] = c[n];
    return r;
  }

  // (S(t,u) - S(t,0)) / u, checking that the division is exact
  TSeries dd_u() const {
    TSeries r(order);
    for (int n = 0; n <= order; ++n) {
      Poly<R> q = c[n];
      q -= Poly<R>(c[n].at_zero());
      if (!ring_zero(q[0])) throw DomainError("inconsistent divided difference");
      r.c[n] = q.divided_difference();
    }
    return r;
  }

  // the series at u = 0
  TSeries at_u0() const {
    TSeries r(order);
    for (int n = 0; n <= order; ++n) r.c[n] = Poly<R>(c[n].at_zero());
    return r;
  }

  TSeries deriv_t() const {
    TSeries r(std::max(order - 1, 0));
    for (int n = 0; n + 1 <= order; ++n) r.c[n] = c[n + 1] * Poly<R>(R(n + 1));
    return r;
  }

  std::string str(const std::string& tvar = "t", const std::string& uvar = "u") const {
    std::string out;
    for (int n = 0; n <= order; ++n)
      out += tvar + "^" + std::to_string(n) + ": " + c[n].str(uvar) + "\n";
    return out;
  }
};

template <typename R>
TSeries<R> one_plus(const TSeries<R>& s) {
  TSeries<R> r = s;
  r.c[0] += Poly<R>(R(1));
  return r;
}

// Substitute series into the three pearl slots; x^k shifts by t^k.
template <typename R>
TSeries<R> qpoly_substitute(const QPoly<R>& q, const TSeries<R>& v, const TSeries<R>& w,
                            const TSeries<R>& u) {
  int N = v.order;
  std::vector<TSeries<R>> pv{TSeries<R>::one(N)}, pw{TSeries<R>::one(N)}, pu{TSeries<R>::one(N)};
  auto pow_of = [](std::vector<TSeries<R>>& cache, const TSeries<R>& base,
                   int e) -> const TSeries<R>& {
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * base);
    return cache[e];
  };
  TSeries<R> out(N);
  for (const auto& t : q.terms()) {
    if (ring_zero(t.coeff)) continue;
    if (t.dx > N) continue;
    TSeries<R> m = pow_of(pv, v, t.dv) * pow_of(pw, w, t.dw);
    m = m * pow_of(pu, u, t.du);
    m = m.shifted(t.dx);
    m.scale(t.coeff);
    out += m;
  }
  return out;
}

// The one place that fixes the slot order of the companion substitution:
// the w slot receives the triangle series and the u slot the diamond one.
template <typename R>
TSeries<R> substitute_companion(const QPoly<R>& q, const TSeries<R>& square,
                                const TSeries<R>& triangle, const TSeries<R>& diamond) {
  return qpoly_substitute(q, square, triangle, diamond);
}

// F = t * Q(F, (F - F(t,0))/u, u), solved degree by degree: the t
// prefactor makes each coefficient depend only on lower ones.
template <typename R = Rat>
TSeries<R> solve_catalytic(const QPoly<R>& q, int order) {
  if (order < 1) throw std::invalid_argument("order must be at least 1");
  if (q.uses_x()) throw std::invalid_argument("x-graded input needs the inhomogeneous solver");
  TSeries<R> u = TSeries<R>::u_var(order);
  TSeries<R> f(order);
  for (int round = 0; round <= order; ++round)
    f = qpoly_substitute(q, f, f.dd_u(), u).shifted(1);
  return f;
}

template <typename R = Rat>
struct CompanionSolution {
  TSeries<R> square, black, diamond, triangle;  // the four fixed-point series
  TSeries<R> star;                              // t(1+black)*Q(square, triangle, diamond)
  TSeries<R> f;                                 // square - diamond*triangle
};

template <typename R = Rat>
CompanionSolution<R> solve_companion_system(const QPoly<R>& q, int order) {
  if (order < 1) throw std::invalid_argument("order must be at least 1");
  if (q.uses_x()) throw std::invalid_argument("x-graded input needs the inhomogeneous solver");
  QPoly<R> qv = q.d_v(), qw = q.d_w(), qu = q.d_u();
  CompanionSolution<R> s;
  s.square = s.black = s.diamond = s.triangle = TSeries<R>(order);
  for (int round = 0; round <= order; ++round) {
    TSeries<R> onep = one_plus(s.black);
    TSeries<R> sq = substitute_companion(q, s.square, s.triangle, s.diamond).shifted(1);
    TSeries<R> bl = (onep * substitute_companion(qv, s.square, s.triangle, s.diamond)).shifted(1);
    TSeries<R> di = (onep * substitute_companion(qw, s.square, s.triangle, s.diamond)).shifted(1);
    TSeries<R> tr = (onep * substitute_companion(qu, s.square, s.triangle, s.diamond)).shifted(1);
    s.square = std::move(sq);
    s.black = std::move(bl);
    s.diamond = std::move(di);
    s.triangle = std::move(tr);
  }
  s.star = (one_plus(s.black) * substitute_companion(q, s.square, s.triangle, s.diamond)).shifted(1);
  s.f = s.square - s.diamond * s.triangle;
  return s;
}

// Two routes to f and two routes to its derivative, compared degree by
// degree.  A mismatch is reported, never thrown.
template <typename R = Rat>
struct ParamReport {
  int order = 0;
  TSeries<R> f_catalytic, f_companion;    // F(t,0) vs square - diamond*triangle
  TSeries<R> df_series, df_companion;     // d/dt f vs (1+black)*Q(square, triangle, diamond)
  TSeries<R> star;                        // degree n must carry n*f_n
  std::vector<int> bad;
  bool ok = true;

  std::string str() const {
    std::string out;
    for (int n = 0; n <= order; ++n) {
      bool good =
          std::find(bad.begin(), bad.end(), n) == bad.end();
      out += "t^" + std::to_string(n) + ": f=" + f_catalytic.c[n].str();
      if (!good)
        out += "  MISMATCH (companion f=" + f_companion.c[n].str() +
               ", star=" + star.c[n].str() + ")";
      out += "\n";
    }
    out += ok ? "parametrization: ok\n" : "parametrization: MISMATCH\n";
    return out;
  }
};

template <typename R = Rat>
ParamReport<R> check_parametrization(const QPoly<R>& q, int order) {
  ParamReport<R> rep;
  rep.order = order;
  TSeries<R> F = solve_catalytic(q, order);
  CompanionSolution<R> comp = solve_companion_system(q, order);
  rep.f_catalytic = F.at_u0();
  rep.f_companion = comp.f;
  rep.df_series = rep.f_catalytic.deriv_t();
  rep.df_companion =
      (one_plus(comp.black) * substitute_companion(q, comp.square, comp.triangle, comp.diamond))
          .truncated(order - 1);
  rep.star = comp.star;
  for (int n = 0; n <= order; ++n) {
    bool good = rep.f_catalytic.c[n] == rep.f_companion.c[n];
    if (n < order) good = good && rep.df_series.c[n] == rep.df_companion.c[n];
    Poly<R> nf = rep.f_catalytic.c[n] * Poly<R>(R(n));
    good = good && rep.star.c[n] == nf;
    if (!good) {
      rep.bad.push_back(n);
      rep.ok = false;
    }
  }
  return rep;
}

// Size-graded systems have no global t prefactor; the solution is a
// joint fixed point reached by iteration.  Degrees are layered in x, so
// once the low part stops moving it is final; failure to stabilize
// within the round budget (or runaway u-degree) means the grading does
// not determine the series.
template <typename R = Rat>
struct InhomSolution {
  TSeries<R> F;                                 // series in the size variable
  TSeries<R> square, black, diamond, triangle;  // companion fixed points
  TSeries<R> f;                                 // square - diamond*triangle
  std::vector<int> bad;
  bool ok = true;
};

template <typename R = Rat>
InhomSolution<R> solve_inhomogeneous(const QPoly<R>& q, int order) {
  if (order < 1) throw std::invalid_argument("order must be at least 1");
  const int hard_udeg = (order + 2) * (q.max_du() + 1) + q.max_du();
  const int cap = (order + 2) * (hard_udeg + 6) + 16;
  QPoly<R> qv = q.d_v(), qw = q.d_w(), qu = q.d_u();
  TSeries<R> u = TSeries<R>::u_var(order);
  InhomSolution<R> s;
  s.F = s.square = s.black = s.diamond = s.triangle = TSeries<R>(order);
  bool stable = false;
  for (int round = 0; round < cap && !stable; ++round) {
    TSeries<R> F = qpoly_substitute(q, s.F, s.F.dd_u(), u);
    if (F.max_udeg() > hard_udeg) break;
    TSeries<R> onep = one_plus(s.black);
    TSeries<R> sq = substitute_companion(q, s.square, s.triangle, s.diamond);
    TSeries<R> bl = onep * substitute_companion(qv, s.square, s.triangle, s.diamond);
    TSeries<R> di = onep * substitute_companion(qw, s.square, s.triangle, s.diamond);
    TSeries<R> tr = onep * substitute_companion(qu, s.square, s.triangle, s.diamond);
    stable = F == s.F && sq == s.square && bl == s.black && di == s.diamond && tr == s.triangle;
    s.F = std::move(F);
    s.square = std::move(sq);
    s.black = std::move(bl);
    s.diamond = std::move(di);
    s.triangle = std::move(tr);
  }
  if (!stable) throw DomainError("non-wellfounded grading");
  s.f = s.square - s.diamond * s.triangle;
  TSeries<R> fx = s.F.at_u0();
  TSeries<R> dfx = fx.deriv_t();
  TSeries<R> dfc =
      (one_plus(s.black) * qpoly_substitute(q.d_x(), s.square, s.triangle, s.diamond))
          .truncated(order - 1);
  for (int n = 0; n <= order; ++n) {
    bool good = fx.c[n] == s.f.c[n];
    if (n < order) good = good && dfx.c[n] == dfc.c[n];
    if (!good) {
      s.bad.push_back(n);
      s.ok = false;
    }
  }
  return s;
}

// Q linear in v and w collapses the companion system to two equations.
template <typename R = Rat>
struct LinearSolution {
  TSeries<R> black, diamond, f;
  std::vector<int> bad;
  bool ok = true;
};

// evaluate a u-polynomial at a series
template <typename R>
TSeries<R> poly_at(const Poly<R>& p, const TSeries<R>& x) {
  TSeries<R> acc(x.order);
  for (int i = p.degree(); i >= 0; --i) {
    acc = acc * x;
    acc.c[0] += Poly<R>(p[i]);
  }
  return acc;
}

template <typename R>
QPoly<R> linear_qpoly(const Poly<R>& p, const Poly<R>& r, const Poly<R>& s) {
  QPoly<R> q;
  for (int i = 0; i <= p.degree(); ++i)
    if (!ring_zero(p[i])) q.add(0, 0, i, 0, p[i]);
  for (int i = 0; i <= r.degree(); ++i)
    if (!ring_zero(r[i])) q.add(1, 0, i, 0, r[i]);
  for (int i = 0; i <= s.degree(); ++i)
    if (!ring_zero(s[i])) q.add(0, 1, i, 0, s[i]);
  return q;
}

template <typename R = Rat>
LinearSolution<R> linear_reduce(const Poly<R>& p, const Poly<R>& r, const Poly<R>& s,
                                int order) {
  if (p.is_zero()) throw DomainError("P is zero");
  LinearSolution<R> out;
  out.black = out.diamond = TSeries<R>(order);
  for (int round = 0; round <= order; ++round) {
    TSeries<R> onep = one_plus(out.black);
    TSeries<R> bl = (onep * poly_at(r, out.diamond)).shifted(1);
    TSeries<R> di = (onep * poly_at(s, out.diamond)).shifted(1);
    out.black = std::move(bl);
    out.diamond = std::move(di);
  }
  out.f = (one_plus(out.black) * poly_at(p, out.diamond)).shifted(1);
  TSeries<R> direct = solve_catalytic(linear_qpoly(p, r, s), order).at_u0();
  for (int n = 0; n <= order; ++n)
    if (!(out.f.c[n] == direct.c[n])) {
      out.bad.push_back(n);
      out.ok = false;
    }
  return out;
}

}  // namespace rewire
