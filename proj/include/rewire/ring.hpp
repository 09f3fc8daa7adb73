#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace rewire {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string to_string(const Int& n) { return n.str(); }

// Rationals print as "p" or "p/q"; q is kept positive by cpp_rational.
inline std::string to_string(const Rat& r) {
  Int num = boost::multiprecision::numerator(r);
  Int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline Int binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // exact: r is binomial(n-k+i, i) after this step
  }
  return r;
}

// n!! with (-1)!! = 0!! = 1.
inline Int double_factorial(long n) {
  Int r = 1;
  for (long i = n; i >= 2; i -= 2) r *= i;
  return r;
}

inline Int factorial(long n) {
  Int r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

// Division that must be exact; closed-form count code relies on it.
inline Int checked_div(const Int& a, const Int& b) {
  if (b == 0 || a % b != 0) throw std::domain_error("inexact division");
  return a / b;
}

// Multivariate polynomial in formal weight symbols, rational coefficients.
// Exponent keys are trailing-zero-trimmed so the same monomial compares
// equal regardless of how many symbols the system declares.
class MPoly {
 public:
  using Key = std::vector<int>;

  MPoly() = default;
  MPoly(int n) { if (n != 0) terms_[Key{}] = n; }
  MPoly(const Rat& r) { if (r != 0) terms_[Key{}] = r; }

  static MPoly symbol(int index) {
    MPoly p;
    Key k(index + 1, 0);
    k[index] = 1;
    p.terms_[k] = 1;
    return p;
  }

  bool is_zero() const { return terms_.empty(); }

  // Constant-term accessor; zero polynomial reads as 0.
  Rat constant() const {
    auto it = terms_.find(Key{});
    return it == terms_.end() ? Rat(0) : it->second;
  }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }

  MPoly& operator+=(const MPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator-(const MPoly& a) { return MPoly(0) - a; }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) {
        Key k(std::max(ka.size(), kb.size()), 0);
        for (size_t i = 0; i < ka.size(); ++i) k[i] += ka[i];
        for (size_t i = 0; i < kb.size(); ++i) k[i] += kb[i];
        r.add_term(k, ca * cb);
      }
    return r;
  }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  // Deterministic print: graded-free lex order of the underlying map.
  std::string str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : terms_) {
      if (!out.empty()) out += " + ";
      std::string mono;
      for (size_t i = 0; i < k.size(); ++i) {
        if (k[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += i < names.size() ? names[i] : "q" + std::to_string(i);
        if (k[i] > 1) mono += "^" + std::to_string(k[i]);
      }
      if (mono.empty()) out += to_string(c);
      else if (c == 1) out += mono;
      else out += to_string(c) + "*" + mono;
    }
    return out;
  }

  const std::map<Key, Rat>& terms() const { return terms_; }

 private:
  void add_term(Key k, const Rat& c) {
    while (!k.empty() && k.back() == 0) k.pop_back();
    auto [it, fresh] = terms_.try_emplace(std::move(k), c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::map<Key, Rat> terms_;
};

template <class R>
inline bool ring_zero(const R& r) { return r == R(0); }
inline bool ring_zero(const MPoly& r) { return r.is_zero(); }

inline std::string ring_str(const Rat& r) { return to_string(r); }
inline std::string ring_str(const MPoly& p) { return p.str({}); }

}  // namespace rewire
