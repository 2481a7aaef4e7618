#pragma once

#include <vector>

#include "qtwist/divpow.hpp"
#include "qtwist/report.hpp"

namespace qtwist {

/// a_{n,i} = sum_j (-1)^(n-j) q^(p(n-j)(n-j-1)/2) (n choose j)_{q^p} (pj choose i)_q, 0 <= i <= pn.
QPoly coeff_a(int n, int i, int p);

/// b_{n,i} = (i)_q! a_{n,i} / ((n)_{q^p}! (p)_q^n), n <= i <= pn. Memoized.
/// Throws MembershipError if the quotient leaves Z[q]_(p,q-1).
LocScalar coeff_b(int n, int i, int p);

/// prod_{k=1..n} prod_{i=1..p-1} (kp - i)_q, the expected leading coefficient b_{n,pn}.
QPoly leading_coefficient_product(int n, int p);

/// Table of a_{n,i}, b_{n,i} for n <= n_max and n <= i <= pn.
class FrobCoeffTable {
 public:
  struct Entry {
    int n;
    int i;
    QPoly a;
    LocScalar b;
  };

  FrobCoeffTable(int p, int n_max);

  int p() const { return p_; }
  int n_max() const { return n_max_; }
  const std::vector<Entry>& entries() const { return entries_; }
  /// is_unit(b_{n,pn})
  bool leading_is_unit(int n) const;

 private:
  int p_;
  int n_max_;
  std::vector<Entry> entries_;
};

/// [F]: A'<omega>_{q(-1)} -> A<xi>_q, omega^{n} -> sum_i b_{n,i} x^(pn-i) xi^[i],
/// coefficients mapped by the relative Frobenius.
DPElem divided_frobenius(const DPElem& e);

/// Frobenius of A<xi>_q: base change, blow-up xi -> (p)_q omega, then [F].
DPElem phi_xi(const DPElem& e);

/// Frobenius of A<omega>_{q(-1)}: phi_A-semilinear,
/// omega^{n} -> sum_i (p)_q^i phi(b_{n,i}) x^(pn-i) omega^{i}.
DPElem phi_dp(const DPElem& e);

/// delta(e) = (phi(e) - e^p) / p with e^p by repeated dp_mul.
DPElem delta_dp(const DPElem& e);

/// The symmetric Frobenius on A[xi]: q -> q^p, x -> x^p, xi -> (x + xi)^p - x^p.
XiPoly phi_symmetric(const XiPoly& f, int p);
/// The symmetric delta-structure (phi(f) - f^p) / p on A[xi].
XiPoly symmetric_delta_xi(const XiPoly& f, int p);

/// The blow-up A[xi] -> A<omega>_{q(-1)}, xi^(n)_{q^p} -> (n)_{q^p}! (p)_q^n omega^{n}.
DPElem blowup_polynomial_to_level(const XiPoly& f, int p);

/// v_n = prod_r delta^r(omega)^(a_r) for the base-p digits a_r of n.
DPElem envelope_basis_element(int n, int p, Side side = Side::A);

struct EnvelopeRow {
  int r = 0;
  LocScalar c;              // coefficient of omega^{p^r} in delta^r(omega)
  bool top_is_p_power = false;  // no index above p^r survives
  bool c_is_constant = false;   // coefficient has x-degree 0
  bool c_is_unit = false;
  int phi_valuation = 0;   // v_p at q=1 of the omega^{p^(r+1)} coefficient of phi(omega^{p^r})
  int pow_valuation = 0;   // same for (omega^{p^r})^p
};

struct EnvelopeReport {
  int p = 0;
  std::vector<EnvelopeRow> rows;
  CheckList checks;
  bool pass() const { return all_pass(checks); }
};

EnvelopeReport envelope_basis_check(int r_max, int p);

/// Image of the twisted power xi^(n)_q under xi -> 1(x)x - x(x)1.
BiCoordPoly u_twisted_power(int n, int p);
/// Closed form of u(xi^[p]_q), constant term ((p-1)/2)_{q^p} for odd p.
BiCoordPoly u_divided_power_p(int p);
/// The same closed form with constant term ((p-3)/2)_{q^p}; fails the identity for odd p.
BiCoordPoly u_divided_power_p_printed(int p);

/// u on an element of A<xi>_q supported in indices <= p.
BiCoordPoly u_apply(const DPElem& e);

/// (D, D u(e)) with D = (N)_q!, N the top index of e: evaluates u through
/// (i)_q! u(xi^[i]) = u(xi^(i)) without dividing.
struct ClearedImage {
  QPoly factor;
  BiCoordPoly value;
};
ClearedImage u_apply_cleared(const DPElem& e);

struct UReport {
  int p = 0;
  BiCoordPoly closed_form{2};
  /// Informational: whether the ((p-3)/2) constant-term variant passes the factorial-cleared identity.
  bool printed_form_matches = false;
  CheckList checks;
  bool pass() const { return all_pass(checks); }
};

UReport u_consistency_check(int p, int n_cap);

}  // namespace qtwist
