#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace qtwist {

/// Dense univariate polynomial over a commutative ring C.
///
/// C needs value semantics, a zero default constructor, +, -, *, == and an
/// `is_zero()` member. Coefficients are ascending and trimmed.
template <class C>
class Polynomial {
 public:
  using coefficient_type = C;

  Polynomial() = default;
  Polynomial(C c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) c_.push_back(std::move(c));
  }
  explicit Polynomial(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(C c, int k) {
    Polynomial r;
    if (c.is_zero()) return r;
    r.c_.assign(static_cast<size_t>(k) + 1, C());
    r.c_[k] = std::move(c);
    return r;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<C>& coeffs() const { return c_; }
  C coeff(int i) const { return (i < 0 || i > degree()) ? C() : c_[i]; }
  const C& leading() const { return c_.back(); }

  void set_coeff(int i, C v) {
    if (i > degree()) c_.resize(static_cast<size_t>(i) + 1);
    c_[i] = std::move(v);
    trim();
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<C> r(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j].is_zero()) continue;
        r[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return Polynomial(std::move(r));
  }
  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  /// Multiply every coefficient by s.
  Polynomial scaled(const C& s) const {
    if (s.is_zero()) return {};
    Polynomial r = *this;
    for (auto& c : r.c_) c = c * s;
    r.trim();
    return r;
  }
  /// Multiply by the variable to the power k.
  Polynomial shifted(int k) const {
    if (is_zero() || k == 0) return *this;
    Polynomial r;
    r.c_.assign(static_cast<size_t>(k), C());
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
  }
  /// Keep only the terms of degree <= n.
  Polynomial truncated(int n) const {
    Polynomial r = *this;
    if (r.degree() > n) r.c_.resize(static_cast<size_t>(std::max(n + 1, 0)));
    r.trim();
    return r;
  }
  Polynomial pow(int e) const {
    Polynomial r(C(1));
    for (int i = 0; i < e; ++i) r *= *this;
    return r;
  }
  /// Value at a point of any ring receiving C-coefficients.
  template <class T>
  T eval(const T& at) const {
    T r{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * at + T(*it);
    return r;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<C> c_;
};

}  // namespace qtwist
