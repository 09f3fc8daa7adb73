#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "rewire/ring.hpp"

namespace rewire {

// Dense univariate polynomial over R, trailing zeros trimmed.
template <class R>
class Poly {
 public:
  Poly() = default;
  Poly(R c) { coef_.push_back(std::move(c)); trim(); }
  explicit Poly(std::vector<R> c) : coef_(std::move(c)) { trim(); }

  static Poly var() { return Poly(std::vector<R>{R(0), R(1)}); }

  bool is_zero() const { return coef_.empty(); }
  int degree() const { return static_cast<int>(coef_.size()) - 1; }  // -1 for zero

  const R& operator[](int i) const {
    static const R zero = R(0);
    return i >= 0 && i < static_cast<int>(coef_.size()) ? coef_[i] : zero;
  }
  void set(int i, R c) {
    if (i >= static_cast<int>(coef_.size())) coef_.resize(i + 1, R(0));
    coef_[i] = std::move(c);
    trim();
  }

  R at_zero() const { return (*this)[0]; }

  R eval(const R& x) const {
    R acc = R(0);
    for (int i = degree(); i >= 0; --i) acc = acc * x + coef_[i];
    return acc;
  }

  Poly& operator+=(const Poly& o) {
    if (o.coef_.size() > coef_.size()) coef_.resize(o.coef_.size(), R(0));
    for (size_t i = 0; i < o.coef_.size(); ++i) coef_[i] += o.coef_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.coef_.size() > coef_.size()) coef_.resize(o.coef_.size(), R(0));
    for (size_t i = 0; i < o.coef_.size(); ++i) coef_[i] = coef_[i] - o.coef_[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<R> c(a.coef_.size() + b.coef_.size() - 1, R(0));
    for (size_t i = 0; i < a.coef_.size(); ++i)
      for (size_t j = 0; j < b.coef_.size(); ++j) c[i + j] += a.coef_[i] * b.coef_[j];
    return Poly(std::move(c));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.coef_ == b.coef_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Multiply by u^k.
  Poly shifted(int k) const {
    if (is_zero()) return Poly();
    std::vector<R> c(coef_.size() + k, R(0));
    for (size_t i = 0; i < coef_.size(); ++i) c[i + k] = coef_[i];
    return Poly(std::move(c));
  }

  // (p - p(0)) / u: the divided-difference step.  Exact by construction.
  Poly divided_difference() const {
    if (coef_.size() <= 1) return Poly();
    std::vector<R> c(coef_.begin() + 1, coef_.end());
    return Poly(std::move(c));
  }

  Poly derivative() const {
    if (coef_.size() <= 1) return Poly();
    std::vector<R> c(coef_.size() - 1, R(0));
    for (size_t i = 1; i < coef_.size(); ++i) c[i - 1] = coef_[i] * R(static_cast<int>(i));
    return Poly(std::move(c));
  }

  std::string str(const std::string& var = "u") const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t i = 0; i < coef_.size(); ++i) {
      if (ring_zero(coef_[i])) continue;
      if (!out.empty()) out += " + ";
      std::string c = ring_str(coef_[i]);
      if (i == 0) { out += c; continue; }
      std::string pow = var + (i == 1 ? "" : "^" + std::to_string(i));
      out += (c == "1") ? pow : c + "*" + pow;
    }
    return out;
  }

 private:
  void trim() {
    while (!coef_.empty() && ring_zero(coef_.back())) coef_.pop_back();
  }
  std::vector<R> coef_;
};

}  // namespace rewire
