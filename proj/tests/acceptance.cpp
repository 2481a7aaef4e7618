// Acceptance gate: one line per criterion, exit status 0 iff every line passes.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "qtwist/connect.hpp"
#include "qtwist/diffcalc.hpp"
#include "qtwist/errors.hpp"
#include "qtwist/frobdiv.hpp"
#include "qtwist/qanalog.hpp"
#include "qtwist/random.hpp"

using namespace qtwist;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

XPoly xmono(const QPoly& c, int e) { return XPoly::monomial(LocScalar(c), e); }

Outcome frobenius_example() {
  Outcome o;
  const DPContext xi = DPContext::divided(2, 0), lvl = DPContext::level(2, 1);
  const QPoly one_q = QPoly(1) + QPoly::q();
  DPElem want_xi(xi);
  want_xi.add_term(2, XPoly(LocScalar(one_q)));
  want_xi.add_term(1, xmono(one_q, 1));
  DPElem want_w(lvl);
  want_w.add_term(2, XPoly(LocScalar(one_q * one_q)));
  want_w.add_term(1, xmono(one_q, 1));
  const DPElem got_xi = phi_xi(DPElem::basis(xi, 1));
  const DPElem got_w = phi_dp(DPElem::basis(lvl, 1));
  if (got_xi != want_xi) o.fail("phi(xi) = " + got_xi.to_string());
  if (got_w != want_w) o.fail("phi(omega) = " + got_w.to_string());
  if (o.ok) o.detail = "phi(xi) = " + got_xi.to_string() + "; phi(omega) = " + got_w.to_string();
  return o;
}

Outcome coefficient_integrality() {
  Outcome o;
  int count = 0;
  for (int p : {2, 3, 5})
    for (int n = 0; n <= 8; ++n) {
      for (int i = n; i <= p * n; ++i) {
        try {
          coeff_b(n, i, p);
          ++count;
        } catch (const MembershipError& e) {
          o.fail("b_{" + std::to_string(n) + "," + std::to_string(i) + "} at p=" + std::to_string(p) + ": " + e.what());
        }
      }
      const LocScalar lead = coeff_b(n, p * n, p);
      if (lead != LocScalar(leading_coefficient_product(n, p)))
        o.fail("b_{n,pn} product mismatch at p=" + std::to_string(p) + " n=" + std::to_string(n));
      if (!is_unit(lead, p)) o.fail("b_{n,pn} not a unit at p=" + std::to_string(p) + " n=" + std::to_string(n));
    }
  if (o.ok) o.detail = std::to_string(count) + " coefficients in R, 27 leading units";
  return o;
}

Outcome divided_frobenius_hom() {
  Outcome o;
  int pairs = 0;
  for (int p : {2, 3}) {
    const DPContext lp = DPContext::level(p, 1, Side::APrime);
    for (int a = 0; a <= 6; ++a)
      for (int b = 0; a + b <= 6; ++b) {
        const DPElem wa = DPElem::basis(lp, a), wb = DPElem::basis(lp, b);
        if (divided_frobenius(wa * wb) != divided_frobenius(wa) * divided_frobenius(wb))
          o.fail("p=" + std::to_string(p) + " n1=" + std::to_string(a) + " n2=" + std::to_string(b));
        ++pairs;
      }
  }
  if (o.ok) o.detail = std::to_string(pairs) + " basis pairs";
  return o;
}

Outcome delta_structure() {
  Outcome o;
  for (int p : {2, 3}) {
    const DPContext l = DPContext::level(p, 1);
    for (int a = 0; a <= 6; ++a)
      for (int b = 0; a + b <= 6; ++b) {
        const DPElem wa = DPElem::basis(l, a), wb = DPElem::basis(l, b);
        if (phi_dp(wa * wb) != phi_dp(wa) * phi_dp(wb))
          o.fail("phi not multiplicative at p=" + std::to_string(p) + " n1=" + std::to_string(a) +
                 " n2=" + std::to_string(b));
      }
    for (int n = 0; n <= 4; ++n) {
      const DPElem w = DPElem::basis(l, n);
      const DPElem diff = phi_dp(w) - w.pow(p);
      for (const auto& [k, c] : diff.terms())
        for (const auto& s : c.coeffs())
          try {
            divide_exact(s, static_cast<long>(p), p);
          } catch (const NotDivisible& e) {
            o.fail("phi(e) - e^p not divisible at p=" + std::to_string(p) + " n=" + std::to_string(n) +
                   " index " + std::to_string(k) + ": " + e.what());
          }
    }
  }
  if (o.ok) o.detail = "p in {2,3}: multiplicative for n1+n2 <= 6, divisible for n <= 4";
  return o;
}

Outcome envelope_basis() {
  Outcome o;
  std::string vals;
  for (auto [p, r] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 1}}) {
    const EnvelopeReport rep = envelope_basis_check(r, p);
    for (const auto& c : rep.checks)
      if (!c.pass) o.fail("p=" + std::to_string(p) + " " + c.id + ": " + c.detail);
    const EnvelopeRow& row = rep.rows.back();
    if (row.phi_valuation != ipow(p, r + 1) || row.pow_valuation != 1)
      o.fail("valuations at p=" + std::to_string(p) + " r=" + std::to_string(r));
    vals += " (p,r)=(" + std::to_string(p) + "," + std::to_string(r) + "): v=" + std::to_string(row.phi_valuation) +
            "," + std::to_string(row.pow_valuation);
  }
  if (o.ok) o.detail = "c_r units;" + vals;
  return o;
}

Outcome descent_map_u() {
  Outcome o;
  for (int p : {2, 3, 5}) {
    const BiCoordPoly lhs = u_divided_power_p(p).scaled(LocScalar(q_factorial(p)));
    // image of prod_{i<p} (xi + (i)_q (1-q) x) under xi -> x2 - x1
    BiCoordPoly rhs(p);
    rhs.add_term(LocScalar(1), 0, 0);
    for (int i = 0; i < p; ++i) {
      BiCoordPoly factor(p);
      factor.add_term(LocScalar(1), 0, 1);
      factor.add_term(LocScalar(-1), 1, 0);
      factor.add_term(LocScalar(q_int(i) * (QPoly(1) - QPoly::q())), 1, 0);
      rhs = rhs * factor;
    }
    if (!(lhs == rhs)) o.fail("(p)_q! u(xi[p]) mismatch at p=" + std::to_string(p));
    const DPContext lvl = DPContext::level(p, 1, Side::APrime);
    for (int n = 1; n <= p; ++n) {
      const DPElem img = divided_frobenius(DPElem::basis(lvl, n));
      const bool zero = img.support_max() <= p ? u_apply(img).is_zero() : u_apply_cleared(img).value.is_zero();
      if (!zero) o.fail("u([F](omega{" + std::to_string(n) + "})) != 0 at p=" + std::to_string(p));
    }
  }
  if (o.ok) o.detail = "p in {2,3,5}; u kills [F](omega{n}) for n <= p";
  return o;
}

Outcome commute_identities() {
  Outcome o;
  RandomSource rs(20240501);
  int total = 0;
  for (int p : {2, 3})
    for (int m : {1, 2})
      for (int s = 0; s < 500; ++s) {
        const CoordPoly f(Side::APrime, rs.xpoly(p, 8, 2, 6, true));
        const CommuteSides sides = commute_check(p, m, f);
        if (sides.sigma_lhs != sides.sigma_rhs) o.fail("sigma identity fails for f=" + f.to_string());
        if (sides.deriv_lhs != sides.deriv_rhs) o.fail("derivative identity fails for f=" + f.to_string());
        ++total;
      }
  if (o.ok) o.detail = std::to_string(total) + " random f";
  return o;
}

Outcome level_raising() {
  Outcome o;
  RandomSource rs(20240502);
  for (int s = 0; s < 100; ++s) {
    const int p = s % 2 == 0 ? 2 : 3;
    const int m = 1 + (s / 2) % 2;
    const ConnModule mp = rs.module(p, m, Side::APrime, 3, 3);
    const ConnModule raised = level_raise(mp);
    const int k = ipow(p, m - 1);
    const LocScalar z(q_int(k));
    // Leibniz rule at level -m+1
    const XPoly f = rs.xpoly(p, 4, 2, 4, true);
    Vec v(raised.rank), fv(raised.rank);
    for (int i = 0; i < raised.rank; ++i) {
      v[i] = rs.xpoly(p, 4, 2, 4, true);
      fv[i] = f * v[i];
    }
    const Vec lhs = theta_apply(raised, fv), tv = theta_apply(raised, v);
    const XPoly df = xpoly::q_derivative(f, k).scaled(z), sf = xpoly::sigma_power(f, k);
    for (int i = 0; i < raised.rank; ++i)
      if (lhs[i] != df * v[i] + sf * tv[i]) o.fail("Leibniz fails for module " + std::to_string(s));
    // theta(1 (x) s) = x^(p-1) (x) theta'(s), checked on F(v') for random v'
    Vec vp(mp.rank);
    for (auto& g : vp) g = rs.xpoly(p, 3, 2, 4, true);
    Vec want = rel_frobenius(theta_apply(mp, vp), p);
    for (auto& g : want) g = g * xmono(QPoly(1), p - 1);
    if (theta_apply(raised, rel_frobenius(vp, p)) != want) o.fail("pullback formula fails for module " + std::to_string(s));
    const DescentResult back = descent_solve(raised);
    if (!std::holds_alternative<ConnModule>(back) || std::get<ConnModule>(back) != mp)
      o.fail("round trip fails for module " + std::to_string(s));
  }
  if (o.ok) o.detail = "100 modules, rank <= 3";
  return o;
}

Outcome taylor_multiplicativity() {
  Outcome o;
  RandomSource rs(20240503);
  const std::pair<int, int> levels[] = {{2, 1}, {3, 1}, {2, 2}, {3, 2}};
  for (int s = 0; s < 200; ++s) {
    const auto [p, m] = levels[s % 4];
    const int n = rs.uniform(0, 5);
    const CoordPoly f(Side::A, rs.xpoly(p, 5, 2, 5, true)), g(Side::A, rs.xpoly(p, 5, 2, 5, true));
    if (taylor(f * g, n, p, m) != (taylor(f, n, p, m) * taylor(g, n, p, m)).truncated(n))
      o.fail("pair " + std::to_string(s) + " N=" + std::to_string(n) + " f=" + f.to_string() + " g=" + g.to_string());
  }
  if (o.ok) o.detail = "200 pairs, N <= 5";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "p=2 Frobenius example", 1, frobenius_example},
      {2, "coefficient integrality and leading units", 30, coefficient_integrality},
      {3, "divided Frobenius is multiplicative", 60, divided_frobenius_hom},
      {4, "delta-structure on level -1", 60, delta_structure},
      {5, "envelope basis", 120, envelope_basis},
      {6, "descent map u", 30, descent_map_u},
      {7, "commutation identities", 60, commute_identities},
      {8, "level raising", 120, level_raising},
      {9, "Taylor multiplicativity", 60, taylor_multiplicativity},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) o.fail("over time budget");
    all = all && o.ok;
    std::printf("[%s] %d. %s (%.2fs): %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
