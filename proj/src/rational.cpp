#include "qtwist/rational.hpp"

#include "qtwist/errors.hpp"

namespace qtwist {

QRat::QRat(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) {
  canonicalize();
}

void QRat::canonicalize() {
  if (den_.is_zero()) throw DomainError("QRat: zero denominator");
  if (num_.is_zero()) {
    den_ = QPoly(1);
    return;
  }
  if (den_.is_one()) return;
  if (den_.is_constant() && den_.leading() == -1) {
    num_ = -num_;
    den_ = QPoly(1);
    return;
  }
  if (auto quot = divide_exact(num_, den_)) {
    num_ = std::move(*quot);
    den_ = QPoly(1);
    return;
  }
  if (!den_.is_constant()) {
    QPoly g = gcd(num_, den_).primitive_part();
    if (!g.is_constant()) {
      num_ = *divide_exact(num_, g);
      den_ = *divide_exact(den_, g);
    }
  }
  Integer c;
  mpz_gcd(c.get_mpz_t(), num_.content().get_mpz_t(), den_.content().get_mpz_t());
  if (den_.leading() < 0) c = -c;
  num_ = num_.divexact(c);
  den_ = den_.divexact(c);
}

QRat& QRat::operator+=(const QRat& o) {
  if (den_.is_one() && o.den_.is_one()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  canonicalize();
  return *this;
}

QRat& QRat::operator-=(const QRat& o) { return *this += -o; }

QRat& QRat::operator*=(const QRat& o) {
  num_ *= o.num_;
  if (den_.is_one() && o.den_.is_one()) return *this;
  den_ *= o.den_;
  canonicalize();
  return *this;
}

QRat& QRat::operator/=(const QRat& o) {
  if (o.is_zero()) throw DomainError("QRat: division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  canonicalize();
  return *this;
}

QRat QRat::operator-() const { return QRat(-num_, den_, Canonical{}); }

QRat QRat::substitute_power(int k) const {
  // q -> q^k is an injective ring map, so it preserves reducedness.
  return QRat(num_.substitute_power(k), den_.substitute_power(k), Canonical{});
}

std::string QRat::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

bool in_base_ring(const QRat& z, int p) {
  Integer d = z.den().eval_at_one();
  return !mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(p));
}

LocScalar LocScalar::from_fraction(QPoly num, QPoly den, int p) {
  return from_qrat(QRat(std::move(num), std::move(den)), p);
}

LocScalar LocScalar::from_qrat(QRat z, int p) {
  if (!in_base_ring(z, p))
    throw MembershipError("fraction " + z.to_string() + " is not in Z[q]_(" + std::to_string(p) +
                          ",q-1)");
  return LocScalar(std::move(z));
}

Rational LocScalar::eval_at_one() const {
  Rational r(num().eval_at_one(), den().eval_at_one());
  r.canonicalize();
  return r;
}

bool is_unit(const LocScalar& z, int p) {
  Integer n = z.num().eval_at_one();
  return !mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p));
}

LocScalar unit_inverse(const LocScalar& z, int p) {
  if (!is_unit(z, p)) throw DomainError("unit_inverse: " + z.to_string() + " is not a unit");
  return LocScalar::from_fraction(z.den(), z.num(), p);
}

LocScalar divide_exact(const LocScalar& z, long d, int p) {
  if (d == 0) throw DomainError("divide_exact: division by zero");
  Integer pd = d;
  Integer ppart = 1;
  const Integer pp = p;
  while (mpz_divisible_p(pd.get_mpz_t(), pp.get_mpz_t())) {
    pd /= pp;
    ppart *= pp;
  }
  for (size_t i = 0; i < z.num().coeffs().size(); ++i) {
    const Integer& c = z.num().coeffs()[i];
    if (!mpz_divisible_p(c.get_mpz_t(), ppart.get_mpz_t()))
      throw NotDivisible("divide_exact: " + z.to_string() + " is not in " + std::to_string(d) + "R",
                         "coefficient of q^" + std::to_string(i) + " = " + c.get_str());
  }
  return LocScalar::from_fraction(z.num().divexact(ppart), z.den() * QPoly(pd), p);
}

LocScalar divide_exact(const LocScalar& z, const QPoly& d, int p) {
  if (d.is_zero()) throw DomainError("divide_exact: division by zero");
  if (z.is_zero()) return z;
  if (auto quot = divide_exact(z.num(), d)) return LocScalar::from_fraction(*quot, z.den(), p);
  QRat r(z.num(), z.den() * d);
  if (!in_base_ring(r, p)) {
    auto pd = pseudo_divide(z.num(), d);
    throw NotDivisible("divide_exact: " + z.to_string() + " is not in (" + d.to_string() + ")R",
                       "pseudo-remainder " + pd.remainder.to_string());
  }
  return LocScalar::from_qrat(std::move(r), p);
}

}  // namespace qtwist
