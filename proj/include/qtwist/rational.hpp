#pragma once

#include <string>

#include "qtwist/qpoly.hpp"

namespace qtwist {

/// Element of Q(q) as a reduced fraction of integer polynomials.
///
/// Canonical form: gcd(num, den) = 1 in Q[q], the integer contents of num and
/// den are coprime, and lc(den) > 0. Two canonical fractions are equal iff
/// their numerators and denominators are.
class QRat {
 public:
  QRat() : den_(1) {}
  QRat(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  QRat(QPoly num) : num_(std::move(num)), den_(1) {}  // NOLINT(google-explicit-constructor)
  QRat(QPoly num, QPoly den);

  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }

  QRat& operator+=(const QRat& o);
  QRat& operator-=(const QRat& o);
  QRat& operator*=(const QRat& o);
  QRat& operator/=(const QRat& o);
  friend QRat operator+(QRat a, const QRat& b) { return a += b; }
  friend QRat operator-(QRat a, const QRat& b) { return a -= b; }
  friend QRat operator*(QRat a, const QRat& b) { return a *= b; }
  friend QRat operator/(QRat a, const QRat& b) { return a /= b; }
  QRat operator-() const;

  friend bool operator==(const QRat& a, const QRat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const QRat& a, const QRat& b) { return !(a == b); }

  /// q -> q^k
  QRat substitute_power(int k) const;
  std::string to_string() const;

 private:
  struct Canonical {};
  QRat(QPoly num, QPoly den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}
  void canonicalize();

  QPoly num_;
  QPoly den_;
};

/// True iff the denominator of z is a unit of Z[q]_(p,q-1), i.e. den(1) is prime to p.
bool in_base_ring(const QRat& z, int p);

/// Element of the base ring R = Z[q]_(p,q-1).
///
/// The prime is not stored: the unit-denominator fractions for a fixed p are
/// closed under +, -, *, and every entry point that can leave R (construction
/// from a fraction, division) takes p explicitly and checks membership.
class LocScalar {
 public:
  LocScalar() = default;
  LocScalar(long c) : v_(c) {}  // NOLINT(google-explicit-constructor)
  LocScalar(QPoly c) : v_(std::move(c)) {}  // NOLINT(google-explicit-constructor)

  /// num/den, throwing MembershipError when the reduced denominator is not a unit.
  static LocScalar from_fraction(QPoly num, QPoly den, int p);
  static LocScalar from_qrat(QRat z, int p);

  const QRat& value() const { return v_; }
  const QPoly& num() const { return v_.num(); }
  const QPoly& den() const { return v_.den(); }
  bool is_zero() const { return v_.is_zero(); }
  bool is_polynomial() const { return v_.is_polynomial(); }

  LocScalar& operator+=(const LocScalar& o) { v_ += o.v_; return *this; }
  LocScalar& operator-=(const LocScalar& o) { v_ -= o.v_; return *this; }
  LocScalar& operator*=(const LocScalar& o) { v_ *= o.v_; return *this; }
  friend LocScalar operator+(LocScalar a, const LocScalar& b) { return a += b; }
  friend LocScalar operator-(LocScalar a, const LocScalar& b) { return a -= b; }
  friend LocScalar operator*(LocScalar a, const LocScalar& b) { return a *= b; }
  LocScalar operator-() const { return LocScalar(-v_); }

  friend bool operator==(const LocScalar& a, const LocScalar& b) { return a.v_ == b.v_; }
  friend bool operator!=(const LocScalar& a, const LocScalar& b) { return !(a == b); }

  /// The Frobenius lift on R: q -> q^p.
  LocScalar phi(int p) const { return LocScalar(v_.substitute_power(p)); }
  LocScalar substitute_power(int k) const { return LocScalar(v_.substitute_power(k)); }
  /// Value at q = 1 (the denominator does not vanish there).
  Rational eval_at_one() const;

  std::string to_string() const { return v_.to_string(); }

 private:
  explicit LocScalar(QRat v) : v_(std::move(v)) {}
  QRat v_;
};

/// z is invertible in Z[q]_(p,q-1) iff num(1) is prime to p.
bool is_unit(const LocScalar& z, int p);

/// 1/z for a unit z.
LocScalar unit_inverse(const LocScalar& z, int p);

/// z / d for z in dR. Divisibility by the integer d holds iff every numerator
/// coefficient is divisible by d (d a power of p; other integers are units).
LocScalar divide_exact(const LocScalar& z, long d, int p);

/// z / d for z in dR, d a polynomial such as (p)_q.
///
/// The denominator of z is a unit, so z lies in dR iff num/d lies in R. For an
/// irreducible d (the cyclotomic (p)_q) this is exactly "d divides num in Q[q]";
/// in general the reduced quotient is checked for a unit denominator.
LocScalar divide_exact(const LocScalar& z, const QPoly& d, int p);

}  // namespace qtwist
