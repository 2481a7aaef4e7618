#pragma once

#include <string>
#include <variant>
#include <vector>

#include "qtwist/coordring.hpp"
#include "qtwist/report.hpp"

namespace qtwist {

using Vec = std::vector<XPoly>;
using Matrix = std::vector<std::vector<XPoly>>;

/// Free module of rank r over A (or A') with a twisted connection of level -m.
/// theta(e_j) = sum_i theta[i][j] e_i.
struct ConnModule {
  int p = 2;
  int m = 1;
  Side side = Side::A;
  int rank = 0;
  Matrix theta;

  static ConnModule trivial(int p, int m, Side side, int rank);
  /// Throws DomainError unless theta is rank x rank and p, m are admissible.
  void validate() const;

  friend bool operator==(const ConnModule& a, const ConnModule& b) {
    return a.p == b.p && a.m == b.m && a.side == b.side && a.rank == b.rank && a.theta == b.theta;
  }
  friend bool operator!=(const ConnModule& a, const ConnModule& b) { return !(a == b); }
};

struct TruncationSpec {
  int N = 1;  // work modulo (p, q-1)^N
  int d = 0;  // x-degree bound for sections
};

/// theta(sum_j f_j e_j) = sum_j (p^m)_q d_{q^(p^m)}(f_j) e_j + sigma^(p^m)(f_j) theta(e_j).
Vec theta_apply(const ConnModule& mod, const Vec& v);

/// Theta = x^(p-1) F(Theta') for a module over A' of level -m; result over A of level -m+1.
ConnModule level_raise(const ConnModule& mod);

/// F applied entrywise, A' -> A.
Vec rel_frobenius(const Vec& v, int p);
Matrix rel_frobenius(const Matrix& a, int p);

/// a * b, entries multiplied in A.
Matrix mat_mul(const Matrix& a, const Matrix& b);
/// theta2(u v) = u theta1(v) for all v: z d(u) + Theta2 sigma(u) = u Theta1.
bool is_horizontal(const Matrix& u, const ConnModule& m1, const ConnModule& m2);

struct CommuteSides {
  XPoly sigma_lhs, sigma_rhs;  // F(sigma^(p^m) f), sigma^(p^(m-1)) F(f)
  XPoly deriv_lhs, deriv_rhs;  // (p)_{q^(p^(m-1))} x^(p-1) F(d_{q^(p^m)} f), d_{q^(p^(m-1))} F(f)
  bool pass() const { return sigma_lhs == sigma_rhs && deriv_lhs == deriv_rhs; }
};
CommuteSides commute_check(int p, int m, const CoordPoly& f);

struct NoSolution {
  int row = -1;
  int col = -1;
  std::string reason;
};
using DescentResult = std::variant<ConnModule, NoSolution>;

/// Same-basis inverse of level_raise: finds Theta' over A' with x^(p-1) F(Theta') = Theta.
DescentResult descent_solve(const ConnModule& mod);

/// Membership of z in (p, q-1)^n.
bool in_adic_ideal(const LocScalar& z, int p, int n);

struct QuasiNilpotence {
  bool nilpotent = false;
  int k = 0;           // iterations needed by the slowest section (when nilpotent)
  std::string detail;  // first offending section otherwise
};

/// Iterates theta on the sections x^j e_i, j <= t.d, until each lies in (p, q-1)^N,
/// giving up after k_cap iterations.
QuasiNilpotence quasi_nilpotence_check(const ConnModule& mod, const TruncationSpec& t, int k_cap);

/// S = Z[t]/(p, t)^N with t = q - 1. As a group S is sum_{b<N} Z/p^(N-b) t^b.
class TruncRing {
 public:
  using Elem = std::vector<long long>;  // coefficient of t^b, reduced mod p^(N-b)

  static constexpr long long kSizeCap = 1000000;

  /// Throws ResourceCapError when |S| exceeds kSizeCap.
  TruncRing(int p, int n);

  int p() const { return p_; }
  int n() const { return n_; }
  long long modulus(int b) const { return mod_[b]; }
  long long size() const { return size_; }

  Elem zero() const { return Elem(n_, 0); }
  Elem reduce(Elem a) const;
  Elem from_integer(const Integer& c) const;
  Elem from_poly(const QPoly& f) const;
  /// Throws DomainError if the denominator is not a unit of S.
  Elem from_scalar(const LocScalar& z) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem scale(const Elem& a, long long c) const;
  bool is_zero(const Elem& a) const;
  std::string to_string(const Elem& a) const;

 private:
  int p_;
  int n_;
  std::vector<long long> mod_;
  long long size_;
};

/// A section sum_{i,j} c_{ij} x^j e_i with c_{ij} in S: entries[i][j].
using TruncSection = std::vector<std::vector<TruncRing::Elem>>;

struct H0Result {
  int p = 2;
  int N = 1;
  int d = 0;
  int rank = 0;
  /// Generators of the kernel as an abelian group.
  std::vector<TruncSection> generators;
  /// log_p of the kernel's order.
  int log_order = 0;
};

/// theta on a truncated section, computed over S.
TruncSection theta_apply_truncated(const ConnModule& mod, const TruncRing& ring,
                                   const TruncSection& s);

/// Kernel of theta on sections of x-degree <= d with coefficients in R/(p, q-1)^N.
H0Result h0_truncated(const ConnModule& mod, const TruncationSpec& t);

std::string to_string(const TruncSection& s, const TruncRing& ring);

}  // namespace qtwist
