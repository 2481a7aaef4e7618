#include "qtwist/coordring.hpp"

#include <sstream>

#include "qtwist/errors.hpp"
#include "qtwist/qanalog.hpp"

namespace qtwist {

const char* side_name(Side s) { return s == Side::A ? "A" : "A'"; }

Side side_from_name(const std::string& s) {
  if (s == "A") return Side::A;
  if (s == "A'") return Side::APrime;
  throw DomainError("unknown side tag '" + s + "'");
}

void CoordPoly::check_side(const CoordPoly& o) const {
  if (side_ != o.side_)
    throw DomainError(std::string("cannot combine elements of ") + side_name(side_) + " and " +
                      side_name(o.side_));
}

CoordPoly& CoordPoly::operator+=(const CoordPoly& o) {
  check_side(o);
  poly_ += o.poly_;
  return *this;
}

CoordPoly& CoordPoly::operator-=(const CoordPoly& o) {
  check_side(o);
  poly_ -= o.poly_;
  return *this;
}

CoordPoly& CoordPoly::operator*=(const CoordPoly& o) {
  check_side(o);
  poly_ *= o.poly_;
  return *this;
}

std::string to_string(const XPoly& f, const char* var) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = f.degree(); i >= 0; --i) {
    const LocScalar& c = f.coeffs()[i];
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    const bool unit = (c == LocScalar(1));
    if (!unit || i == 0) {
      const bool wrap = i > 0 && c.is_polynomial() && c.num().coeffs().size() > 1;
      os << (wrap ? "(" : "") << c.to_string() << (wrap ? ")" : "");
    }
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::string CoordPoly::to_string() const {
  return qtwist::to_string(poly_, side_ == Side::A ? "x" : "x'");
}

namespace xpoly {

XPoly sigma_power(const XPoly& f, int k) {
  std::vector<LocScalar> c = f.coeffs();
  for (size_t i = 1; i < c.size(); ++i) c[i] *= LocScalar(QPoly::q_power(k * static_cast<int>(i)));
  return XPoly(std::move(c));
}

XPoly substitute_x_power(const XPoly& f, int e) {
  if (e == 1 || f.degree() <= 0) return f;
  std::vector<LocScalar> c(static_cast<size_t>(f.degree()) * e + 1);
  for (int i = 0; i <= f.degree(); ++i) c[static_cast<size_t>(i) * e] = f.coeffs()[i];
  return XPoly(std::move(c));
}

XPoly substitute_q_power(const XPoly& f, int k) {
  std::vector<LocScalar> c = f.coeffs();
  for (auto& v : c) v = v.substitute_power(k);
  return XPoly(std::move(c));
}

XPoly phi_abs(const XPoly& f, int p) { return substitute_x_power(substitute_q_power(f, p), p); }

XPoly delta(const XPoly& f, int p) {
  XPoly diff = phi_abs(f, p) - f.pow(p);
  std::vector<LocScalar> c = diff.coeffs();
  for (auto& v : c) v = divide_exact(v, static_cast<long>(p), p);
  return XPoly(std::move(c));
}

XPoly q_derivative(const XPoly& f, int k) {
  if (f.degree() <= 0) return {};
  std::vector<LocScalar> c(static_cast<size_t>(f.degree()));
  for (int n = 1; n <= f.degree(); ++n) c[n - 1] = f.coeffs()[n] * LocScalar(q_int(n, k));
  return XPoly(std::move(c));
}

XPoly monomial(const QPoly& c, int e) { return XPoly::monomial(LocScalar(c), e); }

}  // namespace xpoly

CoordPoly sigma_power(const CoordPoly& f, int k) {
  if (k <= 0) throw DomainError("sigma_power: exponent must be positive");
  return {f.side(), xpoly::sigma_power(f.poly(), k)};
}

CoordPoly phi_abs(const CoordPoly& f, int p) { return {f.side(), xpoly::phi_abs(f.poly(), p)}; }

CoordPoly delta(const CoordPoly& f, int p) {
  try {
    return {f.side(), xpoly::delta(f.poly(), p)};
  } catch (const NotDivisible& e) {
    throw Error(std::string("delta: Frobenius congruence violated: ") + e.what());
  }
}

CoordPoly q_derivative(const CoordPoly& f, int k) {
  if (k <= 0) throw DomainError("q_derivative: exponent must be positive");
  return {f.side(), xpoly::q_derivative(f.poly(), k)};
}

CoordPoly rel_frobenius(const CoordPoly& f, int p) {
  if (f.side() != Side::APrime) throw DomainError("rel_frobenius expects an element of A'");
  return {Side::A, xpoly::substitute_x_power(f.poly(), p)};
}

CoordPoly pullback_map(const CoordPoly& f, int p) {
  if (f.side() != Side::A) throw DomainError("pullback_map expects an element of A");
  return {Side::APrime, xpoly::substitute_q_power(f.poly(), p)};
}

std::vector<CoordPoly> frobenius_decompose(const CoordPoly& f, int p) {
  if (f.side() != Side::A) throw DomainError("frobenius_decompose expects an element of A");
  std::vector<std::vector<LocScalar>> parts(static_cast<size_t>(p));
  for (int e = 0; e <= f.degree(); ++e) {
    auto& part = parts[e % p];
    if (static_cast<int>(part.size()) <= e / p) part.resize(static_cast<size_t>(e / p) + 1);
    part[e / p] = f.poly().coeffs()[e];
  }
  std::vector<CoordPoly> out;
  out.reserve(parts.size());
  for (auto& part : parts) out.emplace_back(Side::APrime, XPoly(std::move(part)));
  return out;
}

CoordPoly frobenius_recombine(const std::vector<CoordPoly>& parts, int p) {
  if (static_cast<int>(parts.size()) != p) throw DomainError("frobenius_recombine: need p parts");
  CoordPoly r(Side::A, {});
  for (int i = 0; i < p; ++i) r += rel_frobenius(parts[i], p) * CoordPoly::x(Side::A).pow(i);
  return r;
}

BiCoordPoly::BiCoordPoly(int p) : p_(p), rows_(static_cast<size_t>(p)) {
  if (p < 2) throw DomainError("BiCoordPoly: p must be a prime");
}

BiCoordPoly::BiCoordPoly(int p, std::vector<XPoly> rows) : p_(p), rows_(std::move(rows)) {
  if (p < 2) throw DomainError("BiCoordPoly: p must be a prime");
  normalize();
}

void BiCoordPoly::normalize() {
  // Fold x2^j for j >= p back into x1^p x2^(j-p).
  for (size_t j = rows_.size(); j-- > static_cast<size_t>(p_);) {
    rows_[j - p_] += rows_[j].shifted(p_);
  }
  rows_.resize(static_cast<size_t>(p_));
}

LocScalar BiCoordPoly::coeff(int i, int j) const {
  if (j < 0 || j >= p_) return {};
  return rows_[j].coeff(i);
}

bool BiCoordPoly::is_zero() const {
  for (const auto& r : rows_)
    if (!r.is_zero()) return false;
  return true;
}

void BiCoordPoly::add_term(const LocScalar& c, int i, int j) {
  i += p_ * (j / p_);
  j %= p_;
  rows_[j] += XPoly::monomial(c, i);
}

BiCoordPoly& BiCoordPoly::operator+=(const BiCoordPoly& o) {
  if (o.p_ != p_) throw DomainError("BiCoordPoly: mismatched primes");
  for (int j = 0; j < p_; ++j) rows_[j] += o.rows_[j];
  return *this;
}

BiCoordPoly& BiCoordPoly::operator-=(const BiCoordPoly& o) {
  if (o.p_ != p_) throw DomainError("BiCoordPoly: mismatched primes");
  for (int j = 0; j < p_; ++j) rows_[j] -= o.rows_[j];
  return *this;
}

BiCoordPoly operator*(const BiCoordPoly& a, const BiCoordPoly& b) {
  if (a.p_ != b.p_) throw DomainError("BiCoordPoly: mismatched primes");
  std::vector<XPoly> rows(static_cast<size_t>(2 * a.p_ - 1));
  for (int j = 0; j < a.p_; ++j)
    for (int k = 0; k < a.p_; ++k) rows[j + k] += a.rows_[j] * b.rows_[k];
  return BiCoordPoly(a.p_, std::move(rows));
}

BiCoordPoly BiCoordPoly::scaled(const LocScalar& c) const {
  BiCoordPoly r = *this;
  for (auto& row : r.rows_) row = row.scaled(c);
  return r;
}

std::string BiCoordPoly::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int j = 0; j < p_; ++j) {
    if (rows_[j].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << qtwist::to_string(rows_[j], "x1") << ")";
    if (j > 0) os << "*x2" << (j > 1 ? "^" + std::to_string(j) : "");
  }
  return first ? "0" : os.str();
}

BiCoordPoly tensor_reduce(const Polynomial<XPoly>& raw, int p) {
  return BiCoordPoly(p, raw.coeffs());
}

BiCoordPoly tensor_embed_left(const CoordPoly& f, int p) {
  if (f.side() != Side::A) throw DomainError("tensor_embed_left expects an element of A");
  return BiCoordPoly(p, {f.poly()});
}

BiCoordPoly tensor_embed_right(const CoordPoly& f, int p) {
  if (f.side() != Side::A) throw DomainError("tensor_embed_right expects an element of A");
  BiCoordPoly r(p);
  for (int e = 0; e <= f.degree(); ++e) r.add_term(f.poly().coeffs()[e], 0, e);
  return r;
}

}  // namespace qtwist
