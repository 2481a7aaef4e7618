#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qtwist/coordring.hpp"

namespace qtwist {

/// Polynomial in xi (or omega) with coefficients in A: an element of A[xi].
using XiPoly = Polynomial<XPoly>;

inline constexpr int kDefaultMaxIndex = 64;

/// Parameters of a twisted divided-power algebra A<xi>_{Q,y}.
///
/// The algebra is fixed by the q-power Q = q^q_power and the twist y in A.
/// `level` gives A<omega>_{q(-m)} = A<omega>_{q^(p^m),(1-q)x}; `divided`
/// gives A<xi>_{q^(p^r)} whose twist is (1-q^(p^r))x; `generic` accepts any y.
struct DPContext {
  int p = 2;
  int m = 0;
  int q_power = 1;
  XPoly twist;
  Side side = Side::A;
  std::string symbol = "xi";
  int max_index = kDefaultMaxIndex;

  static DPContext level(int p, int m, Side side = Side::A);
  static DPContext divided(int p, int r = 0, Side side = Side::A);
  static DPContext generic(int p, int q_power, XPoly twist, Side side = Side::A,
                           std::string symbol = "xi");

  /// Same underlying algebra (prime, q-power, twist, side); names and caps may differ.
  bool same_algebra(const DPContext& o) const {
    return p == o.p && q_power == o.q_power && side == o.side && twist == o.twist;
  }
  CoordPoly twist_element() const { return {side, twist}; }
};

void validate_prime(int p);

/// Finitely supported A-linear combination of divided-power basis symbols.
class DPElem {
 public:
  explicit DPElem(DPContext ctx) : ctx_(std::move(ctx)) {}
  DPElem(DPContext ctx, std::map<int, XPoly> terms);

  /// The basis element xi^[n] (omega^{n}).
  static DPElem basis(const DPContext& ctx, int n);
  static DPElem one(const DPContext& ctx) { return basis(ctx, 0); }
  static DPElem constant(const DPContext& ctx, XPoly c);

  const DPContext& ctx() const { return ctx_; }
  const std::map<int, XPoly>& terms() const { return terms_; }
  XPoly coeff(int n) const;
  bool is_zero() const { return terms_.empty(); }
  /// Largest index with a nonzero coefficient, -1 for zero.
  int support_max() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }

  void add_term(int n, const XPoly& c);

  DPElem& operator+=(const DPElem& o);
  DPElem& operator-=(const DPElem& o);
  friend DPElem operator+(DPElem a, const DPElem& b) { return a += b; }
  friend DPElem operator-(DPElem a, const DPElem& b) { return a -= b; }
  friend DPElem operator*(const DPElem& a, const DPElem& b);
  DPElem operator-() const;
  /// Left multiplication by an element of A.
  DPElem scaled(const XPoly& c) const;
  DPElem pow(int e) const;
  /// Drop every index above n (reduction modulo the filtration ideal).
  DPElem truncated(int n) const;

  friend bool operator==(const DPElem& a, const DPElem& b);
  friend bool operator!=(const DPElem& a, const DPElem& b) { return !(a == b); }

  std::string to_string() const;

 private:
  void check_algebra(const DPElem& o) const;
  DPContext ctx_;
  std::map<int, XPoly> terms_;
};

/// Product in the divided-power algebra; both factors must share the algebra.
DPElem dp_mul(const DPElem& u, const DPElem& v);

/// Coefficients of xi^(n1) xi^(n2) on the twisted-power basis, with y kept as
/// a symbol: entry i is the coefficient of y^i xi^(n1+n2-i).
std::vector<QPoly> twisted_power_mul(int n1, int n2, int q_power);

/// The twisted-power product specialized to a concrete twist: coefficient of xi^(k).
std::map<int, XPoly> twisted_power_mul(int n1, int n2, const DPContext& ctx);

/// Generic-y structure constants for xi^[n1] xi^[n2]: entry i multiplies
/// y^i xi^[n1+n2-i]. Derived from twisted_power_mul by exact division of
/// q-factorials in Q(q), asserted integral, and memoized (thread-safe).
std::shared_ptr<const std::vector<QPoly>> structure_constants(int n1, int n2, int q_power);

/// The same constants from the closed form
/// (-1)^i Q^(i(i-1)/2) (n1+n2-i choose n1)_Q (n1 choose i)_Q.
std::vector<QPoly> structure_constants_closed_form(int n1, int n2, int q_power);

/// prod_{i<n} (xi + (i)_Q y) expanded in powers of xi, y symbolic: entry j is
/// the coefficient of xi^j y^(n-j).
std::vector<QPoly> twisted_power_expand(int n, int q_power);
/// The same expansion for the twist of ctx.
XiPoly twisted_power_expand(int n, const DPContext& ctx);

/// Rewrite a polynomial in xi on the twisted-power basis of ctx.
std::map<int, XPoly> monomial_to_twisted(const XiPoly& f, const DPContext& ctx);
XiPoly twisted_to_monomial(const std::map<int, XPoly>& t, const DPContext& ctx);

/// The ring map A[xi] -> A<xi>_{Q,y}, xi^(n) -> (n)_Q! xi^[n].
DPElem from_polynomial(const XiPoly& f, const DPContext& ctx);

/// xi^[n] -> z^n omega^[n] from the algebra with twist z*y to the one with twist y.
DPElem blowup(const DPElem& e, const XPoly& z, const DPContext& target);

/// Semilinear base change A<xi>_{q^k,y} -> A'<xi>_{q^(kp),y'}, xi^[n] -> xi^[n].
DPElem frobenius_base_change(const DPElem& e);

}  // namespace qtwist
