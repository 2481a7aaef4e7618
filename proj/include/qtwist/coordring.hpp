#pragma once

#include <string>
#include <vector>

#include "qtwist/polynomial.hpp"
#include "qtwist/rational.hpp"

namespace qtwist {

/// Polynomial in one coordinate with coefficients in R.
using XPoly = Polynomial<LocScalar>;

/// Which coordinate ring an element lives in: A = R[x] or its Frobenius pullback A' = R[x'].
enum class Side { A, APrime };

const char* side_name(Side s);  // "A" / "A'"
Side side_from_name(const std::string& s);

/// Element of A = R[x] or A' = R[x'].
///
/// Arithmetic across sides is a DomainError: the semilinear maps between A and
/// A' (pullback, relative Frobenius) must be applied explicitly.
class CoordPoly {
 public:
  CoordPoly() = default;
  CoordPoly(Side side, XPoly poly) : side_(side), poly_(std::move(poly)) {}

  static CoordPoly x(Side side) { return {side, XPoly::monomial(LocScalar(1), 1)}; }
  static CoordPoly constant(LocScalar c, Side side) { return {side, XPoly(std::move(c))}; }

  Side side() const { return side_; }
  const XPoly& poly() const { return poly_; }
  bool is_zero() const { return poly_.is_zero(); }
  int degree() const { return poly_.degree(); }
  LocScalar coeff(int i) const { return poly_.coeff(i); }

  CoordPoly& operator+=(const CoordPoly& o);
  CoordPoly& operator-=(const CoordPoly& o);
  CoordPoly& operator*=(const CoordPoly& o);
  friend CoordPoly operator+(CoordPoly a, const CoordPoly& b) { return a += b; }
  friend CoordPoly operator-(CoordPoly a, const CoordPoly& b) { return a -= b; }
  friend CoordPoly operator*(CoordPoly a, const CoordPoly& b) { return a *= b; }
  CoordPoly operator-() const { return {side_, -poly_}; }
  CoordPoly scaled(const LocScalar& c) const { return {side_, poly_.scaled(c)}; }
  CoordPoly pow(int e) const { return {side_, poly_.pow(e)}; }

  friend bool operator==(const CoordPoly& a, const CoordPoly& b) {
    return a.side_ == b.side_ && a.poly_ == b.poly_;
  }
  friend bool operator!=(const CoordPoly& a, const CoordPoly& b) { return !(a == b); }

  std::string to_string() const;

 private:
  void check_side(const CoordPoly& o) const;
  Side side_ = Side::A;
  XPoly poly_;
};

std::string to_string(const XPoly& f, const char* var = "x");

// Side-agnostic kernels on coefficient vectors.
namespace xpoly {

/// x -> q^k x
XPoly sigma_power(const XPoly& f, int k);
/// q -> q^p on coefficients and x -> x^p.
XPoly phi_abs(const XPoly& f, int p);
/// (phi(f) - f^p) / p
XPoly delta(const XPoly& f, int p);
/// x^n -> (n)_{q^k} x^(n-1)
XPoly q_derivative(const XPoly& f, int k);
/// x -> x^e, coefficients untouched.
XPoly substitute_x_power(const XPoly& f, int e);
/// q -> q^k on coefficients only.
XPoly substitute_q_power(const XPoly& f, int k);
/// The constant-coefficient polynomial c * x^e.
XPoly monomial(const QPoly& c, int e);

}  // namespace xpoly

/// sigma^k: x -> q^k x. R-linear.
CoordPoly sigma_power(const CoordPoly& f, int k);

/// Absolute Frobenius lift with x of rank one: q -> q^p and x -> x^p.
CoordPoly phi_abs(const CoordPoly& f, int p);

/// delta(f) = (phi(f) - f^p) / p; always exact on A.
CoordPoly delta(const CoordPoly& f, int p);

/// q^k-derivative, computed termwise: x^n -> (n)_{q^k} x^(n-1).
CoordPoly q_derivative(const CoordPoly& f, int k);

/// Relative Frobenius F: A' -> A, x' -> x^p, R-linear.
CoordPoly rel_frobenius(const CoordPoly& f, int p);

/// Pullback A -> A', f -> 1 (x) f: x -> x', q -> q^p on coefficients.
CoordPoly pullback_map(const CoordPoly& f, int p);

/// Unique g_0..g_{p-1} in A' with f = sum_i F(g_i) x^i (A is free of rank p over A').
std::vector<CoordPoly> frobenius_decompose(const CoordPoly& f, int p);
CoordPoly frobenius_recombine(const std::vector<CoordPoly>& parts, int p);

/// Element of A (x)_{A'} A, presented as R[x1, x2]/(x1^p - x2^p) in normal form
/// (x2-exponent < p). rows()[j] is the coefficient of x2^j as a polynomial in x1.
class BiCoordPoly {
 public:
  explicit BiCoordPoly(int p);
  BiCoordPoly(int p, std::vector<XPoly> rows);

  int p() const { return p_; }
  const std::vector<XPoly>& rows() const { return rows_; }
  /// Coefficient of x1^i x2^j in normal form (j < p).
  LocScalar coeff(int i, int j) const;
  bool is_zero() const;

  /// Adds c x1^i x2^j, rewriting x2^p -> x1^p.
  void add_term(const LocScalar& c, int i, int j);

  BiCoordPoly& operator+=(const BiCoordPoly& o);
  BiCoordPoly& operator-=(const BiCoordPoly& o);
  friend BiCoordPoly operator+(BiCoordPoly a, const BiCoordPoly& b) { return a += b; }
  friend BiCoordPoly operator-(BiCoordPoly a, const BiCoordPoly& b) { return a -= b; }
  friend BiCoordPoly operator*(const BiCoordPoly& a, const BiCoordPoly& b);
  BiCoordPoly scaled(const LocScalar& c) const;

  friend bool operator==(const BiCoordPoly& a, const BiCoordPoly& b) {
    return a.p_ == b.p_ && a.rows_ == b.rows_;
  }

  std::string to_string() const;

 private:
  void normalize();
  int p_;
  std::vector<XPoly> rows_;
};

/// Normal form of an arbitrary polynomial in x2 whose coefficients are polynomials in x1.
BiCoordPoly tensor_reduce(const Polynomial<XPoly>& raw, int p);
/// f(x) -> f(x1)
BiCoordPoly tensor_embed_left(const CoordPoly& f, int p);
/// f(x) -> f(x2)
BiCoordPoly tensor_embed_right(const CoordPoly& f, int p);

}  // namespace qtwist
