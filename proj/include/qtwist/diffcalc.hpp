#pragma once

#include <map>
#include <string>
#include <utility>

#include "qtwist/divpow.hpp"

namespace qtwist {

/// Where an operator ring lives. `level` is D^(-m): the generator acts as
/// (p^m)_q d_{q^(p^m)}. `plain` is the level-zero ring of d_{q^k} itself.
struct OpContext {
  int p = 2;
  int m = 0;
  int q_power = 1;    // k in sigma^k and d_{q^k}
  QPoly scale{1};     // z: generator = z * d_{q^k}
  Side side = Side::A;

  static OpContext level(int p, int m, Side side = Side::A);
  static OpContext plain(int p, int q_power, Side side = Side::A);

  bool operator==(const OpContext& o) const {
    return p == o.p && m == o.m && q_power == o.q_power && scale == o.scale && side == o.side;
  }
  bool operator!=(const OpContext& o) const { return !(*this == o); }
};

/// sum_n f_n d<n>, coefficients on the left.
class TwistedDiffOp {
 public:
  explicit TwistedDiffOp(OpContext ctx) : ctx_(std::move(ctx)) {}
  TwistedDiffOp(OpContext ctx, std::map<int, XPoly> terms);

  /// d<n>
  static TwistedDiffOp generator(const OpContext& ctx, int n);
  /// Multiplication by f (order zero).
  static TwistedDiffOp multiplication(const OpContext& ctx, XPoly f);

  const OpContext& ctx() const { return ctx_; }
  const std::map<int, XPoly>& terms() const { return terms_; }
  XPoly coeff(int n) const;
  int order() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(int n, const XPoly& c);

  TwistedDiffOp& operator+=(const TwistedDiffOp& o);
  TwistedDiffOp& operator-=(const TwistedDiffOp& o);
  friend TwistedDiffOp operator+(TwistedDiffOp a, const TwistedDiffOp& b) { return a += b; }
  friend TwistedDiffOp operator-(TwistedDiffOp a, const TwistedDiffOp& b) { return a -= b; }

  friend bool operator==(const TwistedDiffOp& a, const TwistedDiffOp& b) {
    return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const TwistedDiffOp& a, const TwistedDiffOp& b) { return !(a == b); }

  std::string to_string() const;

 private:
  OpContext ctx_;
  std::map<int, XPoly> terms_;
};

/// D(f) = sum_n f_n z^n d_{q^k}^n (f).
CoordPoly op_apply(const TwistedDiffOp& d, const CoordPoly& f);
XPoly op_apply(const TwistedDiffOp& d, const XPoly& f);

/// Normal form of d1 o d2 via d<1> o g = z d(g) + sigma^k(g) d<1>.
TwistedDiffOp op_compose(const TwistedDiffOp& d1, const TwistedDiffOp& d2);

/// Image in the plain ring of d_{q^(p^m)}: d<n> -> (p^m)_q^n d^n.
TwistedDiffOp level_zero_image(const TwistedDiffOp& d);

/// Truncated Taylor map f -> sum_{i<=n} d<i>(f) omega^{i} into A<omega>_{q(-m)}.
DPElem taylor(const CoordPoly& f, int n, int p, int m);

/// Whether the coefficients z^n (n)_{q^k}! of the completed Taylor series lie in
/// (p, q-1)^target for every n >= n_from. Decided on the single term n_from,
/// since the sequence of ideals is decreasing in n.
bool taylor_converges_at(int p, int m, int n_from, int target);

/// omega^{i} -> sum_{i1+i2=i} omega^{i1} (x) omega^{i2}, keeping i1 <= n1, i2 <= n2.
using TensorTerms = std::map<std::pair<int, int>, XPoly>;
TensorTerms comult(const DPElem& e, int n1, int n2);
std::string to_string(const TensorTerms& t, const std::string& symbol = "omega");

/// <d, e> with <d<n>, omega^{k}> = [n = k], A-bilinear.
XPoly pairing(const TwistedDiffOp& d, const DPElem& e);

}  // namespace qtwist
