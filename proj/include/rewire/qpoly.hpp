#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "rewire/ring.hpp"

namespace rewire {

// Polynomial in the pearl variables v (black), w (diamond), u (triangle)
// and the size marker x, coefficients in R.  This is the shape both the
// vertex generating function and the catalytic/companion solvers consume.
template <class R>
class QPoly {
 public:
  struct Term {
    int dv = 0, dw = 0, du = 0, dx = 0;
    R coeff = R(0);
  };

  QPoly() = default;

  void add(int dv, int dw, int du, int dx, R c) {
    auto key = std::tuple(dv, dw, du, dx);
    auto [it, fresh] = index_.try_emplace(key, terms_.size());
    if (fresh) {
      terms_.push_back(Term{dv, dw, du, dx, std::move(c)});
    } else {
      terms_[it->second].coeff += c;
    }
  }

  // Monomial helpers used by tests and the linear-case builder.
  static QPoly monomial(int dv, int dw, int du, int dx, R c) {
    QPoly q;
    q.add(dv, dw, du, dx, std::move(c));
    return q;
  }

  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const {
    for (const auto& t : terms_)
      if (!ring_zero(t.coeff)) return false;
    return true;
  }

  int max_du() const {
    int m = 0;
    for (const auto& t : terms_) m = std::max(m, t.du);
    return m;
  }

  bool uses_x() const {
    for (const auto& t : terms_)
      if (t.dx != 0 && !ring_zero(t.coeff)) return true;
    return false;
  }

  QPoly d_v() const { return derive(&Term::dv); }
  QPoly d_w() const { return derive(&Term::dw); }
  QPoly d_u() const { return derive(&Term::du); }
  QPoly d_x() const { return derive(&Term::dx); }

  QPoly& operator+=(const QPoly& o) {
    for (const auto& t : o.terms_) add(t.dv, t.dw, t.du, t.dx, t.coeff);
    return *this;
  }

  friend QPoly operator*(const QPoly& a, const QPoly& b) {
    QPoly r;
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_)
        r.add(s.dv + t.dv, s.dw + t.dw, s.du + t.du, s.dx + t.dx, s.coeff * t.coeff);
    return r;
  }

  friend bool operator==(const QPoly& a, const QPoly& b) {
    return a.normalized() == b.normalized();
  }
  friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

  // v-major display order: highest (dv, dw, du, dx) first
  std::string str() const {
    auto n = normalized();
    if (n.empty()) return "0";
    std::string out;
    for (auto it = n.rbegin(); it != n.rend(); ++it) {
      const auto& [key, c] = *it;
      if (!out.empty()) out += " + ";
      auto [dv, dw, du, dx] = key;
      std::string mono;
      auto app = [&mono](const char* v, int d) {
        if (d == 0) return;
        if (!mono.empty()) mono += "*";
        mono += v;
        if (d > 1) mono += "^" + std::to_string(d);
      };
      app("v", dv);
      app("w", dw);
      app("u", du);
      app("x", dx);
      std::string cs = ring_str(c);
      if (mono.empty()) out += cs;
      else if (cs == "1") out += mono;
      else out += cs + "*" + mono;
    }
    return out;
  }

 private:
  std::map<std::tuple<int, int, int, int>, R> normalized() const {
    std::map<std::tuple<int, int, int, int>, R> m;
    for (const auto& t : terms_) {
      if (ring_zero(t.coeff)) continue;
      auto key = std::tuple(t.dv, t.dw, t.du, t.dx);
      auto [it, fresh] = m.try_emplace(key, t.coeff);
      if (!fresh) it->second += t.coeff;
      if (ring_zero(it->second)) m.erase(key);
    }
    return m;
  }

  QPoly derive(int Term::* field) const {
    QPoly r;
    for (const auto& t : terms_) {
      int d = t.*field;
      if (d == 0) continue;
      Term n = t;
      n.*field -= 1;
      n.coeff = t.coeff * R(d);
      r.add(n.dv, n.dw, n.du, n.dx, n.coeff);
    }
    return r;
  }

  std::vector<Term> terms_;
  std::map<std::tuple<int, int, int, int>, size_t> index_;
};

}  // namespace rewire
