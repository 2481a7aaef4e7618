#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace qtwist {

using Integer = mpz_class;
using Rational = mpq_class;

/// Element of Z[q]. Coefficients are stored in ascending degree and the
/// representation is always trimmed, so structural equality is equality.
class QPoly {
 public:
  QPoly() = default;
  QPoly(long c);  // NOLINT(google-explicit-constructor): constants read naturally
  explicit QPoly(const Integer& c);
  explicit QPoly(std::vector<Integer> coeffs);

  static QPoly monomial(const Integer& c, int k);
  /// q^k
  static QPoly q_power(int k) { return monomial(1, k); }
  /// The polynomial q.
  static QPoly q() { return q_power(1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  const std::vector<Integer>& coeffs() const { return c_; }
  /// Coefficient of q^i (zero beyond the degree).
  Integer coeff(int i) const;
  const Integer& leading() const { return c_.back(); }

  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  QPoly& operator*=(const QPoly& o);
  QPoly& operator*=(const Integer& c);

  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(QPoly a, const Integer& c) { return a *= c; }
  friend QPoly operator*(const Integer& c, QPoly a) { return a *= c; }
  QPoly operator-() const;

  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

  Integer eval(const Integer& at) const;
  Integer eval_at_one() const;

  /// q -> q^k
  QPoly substitute_power(int k) const;
  /// Coefficients of f(1 + t) as a polynomial in t.
  QPoly shift_to_t() const;
  /// gcd of the coefficients, non-negative.
  Integer content() const;
  QPoly primitive_part() const;
  /// Divide every coefficient by c; c must divide each exactly.
  QPoly divexact(const Integer& c) const;

  std::string to_string(const char* var = "q") const;

 private:
  void trim();
  std::vector<Integer> c_;
};

/// Quotient of a by b when b divides a in Z[q]; nullopt otherwise.
std::optional<QPoly> divide_exact(const QPoly& a, const QPoly& b);

/// Pseudo-division: lc(b)^(deg a - deg b + 1) a = quot b + rem.
struct PseudoDivision {
  QPoly quotient;
  QPoly remainder;
};
PseudoDivision pseudo_divide(const QPoly& a, const QPoly& b);

/// Greatest common divisor in Z[q], normalized with positive leading coefficient.
QPoly gcd(const QPoly& a, const QPoly& b);

/// p-adic valuation of a nonzero integer.
int p_valuation(Integer n, int p);

}  // namespace qtwist
