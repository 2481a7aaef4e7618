#include "qtwist/frobdiv.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "qtwist/errors.hpp"
#include "qtwist/qanalog.hpp"

namespace qtwist {

QPoly coeff_a(int n, int i, int p) {
  if (n < 0 || i < 0 || i > p * n) throw DomainError("coeff_a: need 0 <= i <= pn");
  QPoly a;
  for (int j = 0; j <= n; ++j) {
    if (i > p * j) continue;
    const int d = n - j;
    QPoly term = q_pow(static_cast<long>(p) * d * (d - 1) / 2) * q_binomial(n, j, p) *
                 q_binomial(p * j, i);
    if (d % 2 == 0)
      a += term;
    else
      a -= term;
  }
  return a;
}

namespace {

struct BCache {
  std::mutex mu;
  std::map<std::tuple<int, int, int>, LocScalar> table;
};

BCache& b_cache() {
  static BCache cache;
  return cache;
}

}  // namespace

LocScalar coeff_b(int n, int i, int p) {
  validate_prime(p);
  if (n < 0 || i < n || i > p * n) throw DomainError("coeff_b: need n <= i <= pn");
  const auto key = std::make_tuple(p, n, i);
  auto& cache = b_cache();
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.table.find(key);
    if (it != cache.table.end()) return it->second;
  }
  QPoly den = q_factorial(n, p);
  const QPoly qp = q_int(p);
  for (int k = 0; k < n; ++k) den *= qp;
  LocScalar b = LocScalar::from_fraction(q_factorial(i) * coeff_a(n, i, p), den, p);
  std::lock_guard<std::mutex> lock(cache.mu);
  return cache.table.try_emplace(key, std::move(b)).first->second;
}

QPoly leading_coefficient_product(int n, int p) {
  QPoly r(1);
  for (int k = 1; k <= n; ++k)
    for (int i = 1; i < p; ++i) r *= q_int(k * p - i);
  return r;
}

FrobCoeffTable::FrobCoeffTable(int p, int n_max) : p_(p), n_max_(n_max) {
  validate_prime(p);
  if (n_max < 0) throw DomainError("FrobCoeffTable: n_max must be non-negative");
  for (int n = 0; n <= n_max; ++n)
    for (int i = n; i <= p * n; ++i) entries_.push_back({n, i, coeff_a(n, i, p), coeff_b(n, i, p)});
}

bool FrobCoeffTable::leading_is_unit(int n) const { return is_unit(coeff_b(n, p_ * n, p_), p_); }

namespace {

XPoly x_power(int e) { return XPoly::monomial(LocScalar(1), e); }

void require_level_one(const DPElem& e, Side side, const char* who) {
  const DPContext want = DPContext::level(e.ctx().p, 1, side);
  if (!e.ctx().same_algebra(want))
    throw DomainError(std::string(who) + ": expected an element of " + side_name(side) +
                      "<omega>_{q(-1)}");
}

}  // namespace

DPElem divided_frobenius(const DPElem& e) {
  require_level_one(e, Side::APrime, "divided_frobenius");
  const int p = e.ctx().p;
  DPContext target = DPContext::divided(p, 0, Side::A);
  target.max_index = std::max(target.max_index, e.ctx().max_index);
  DPElem r(target);
  for (const auto& [n, c] : e.terms()) {
    const XPoly fc = xpoly::substitute_x_power(c, p);
    for (int i = n; i <= p * n; ++i) {
      const LocScalar b = coeff_b(n, i, p);
      if (b.is_zero()) continue;
      r.add_term(i, (fc * x_power(p * n - i)).scaled(b));
    }
  }
  return r;
}

DPElem phi_xi(const DPElem& e) {
  const int p = e.ctx().p;
  if (!e.ctx().same_algebra(DPContext::divided(p, 0, Side::A)))
    throw DomainError("phi_xi: expected an element of A<xi>_q");
  DPElem base = frobenius_base_change(e);
  DPContext level = DPContext::level(p, 1, Side::APrime);
  level.max_index = e.ctx().max_index;
  DPElem blown = blowup(base, XPoly(LocScalar(q_int(p))), level);
  return divided_frobenius(blown);
}

DPElem phi_dp(const DPElem& e) {
  const int p = e.ctx().p;
  require_level_one(e, e.ctx().side, "phi_dp");
  DPElem r(e.ctx());
  const LocScalar pq(q_int(p));
  for (const auto& [n, c] : e.terms()) {
    const XPoly fc = xpoly::phi_abs(c, p);
    LocScalar scale(1);
    for (int k = 0; k < n; ++k) scale *= pq;
    for (int i = n; i <= p * n; ++i) {
      const LocScalar b = coeff_b(n, i, p);
      if (!b.is_zero()) r.add_term(i, (fc * x_power(p * n - i)).scaled(scale * b.phi(p)));
      scale *= pq;
    }
  }
  return r;
}

DPElem delta_dp(const DPElem& e) {
  const int p = e.ctx().p;
  DPElem diff = phi_dp(e) - e.pow(p);
  DPElem r(e.ctx());
  for (const auto& [n, c] : diff.terms()) {
    std::vector<LocScalar> cs = c.coeffs();
    for (auto& v : cs) v = divide_exact(v, static_cast<long>(p), p);
    r.add_term(n, XPoly(std::move(cs)));
  }
  return r;
}

XiPoly phi_symmetric(const XiPoly& f, int p) {
  const XiPoly shifted_xi(std::vector<XPoly>{x_power(1), XPoly(LocScalar(1))});  // x + xi
  const XiPoly fxi = shifted_xi.pow(p) - XiPoly(x_power(p));
  XiPoly r;
  XiPoly fpow(XPoly(LocScalar(1)));
  for (int j = 0; j <= f.degree(); ++j) {
    if (j > 0) fpow *= fxi;
    const XPoly& c = f.coeffs()[j];
    if (!c.is_zero()) r += fpow * XiPoly(xpoly::phi_abs(c, p));
  }
  return r;
}

XiPoly symmetric_delta_xi(const XiPoly& f, int p) {
  XiPoly diff = phi_symmetric(f, p) - f.pow(p);
  std::vector<XPoly> out;
  for (const auto& c : diff.coeffs()) {
    std::vector<LocScalar> cs = c.coeffs();
    for (auto& v : cs) v = divide_exact(v, static_cast<long>(p), p);
    out.push_back(XPoly(std::move(cs)));
  }
  return XiPoly(std::move(out));
}

DPElem blowup_polynomial_to_level(const XiPoly& f, int p) {
  const DPContext source = DPContext::divided(p, 1, Side::A);
  const DPContext target = DPContext::level(p, 1, Side::A);
  DPElem r(target);
  const QPoly pq = q_int(p);
  for (const auto& [n, c] : monomial_to_twisted(f, source)) {
    QPoly scale = q_factorial(n, p);
    for (int k = 0; k < n; ++k) scale *= pq;
    r.add_term(n, c.scaled(LocScalar(scale)));
  }
  return r;
}

DPElem envelope_basis_element(int n, int p, Side side) {
  const DPContext ctx = DPContext::level(p, 1, side);
  DPElem v = DPElem::one(ctx);
  DPElem dr = DPElem::basis(ctx, 1);
  for (int rest = n; rest > 0; rest /= p) {
    v = dp_mul(v, dr.pow(rest % p));
    if (rest / p > 0) dr = delta_dp(dr);
  }
  return v;
}

namespace {

int valuation_at_one(const XPoly& c, int p) {
  if (c.degree() != 0) throw Error("expected an x-constant coefficient");
  Rational v = c.coeffs()[0].eval_at_one();
  return p_valuation(v.get_num(), p) - p_valuation(v.get_den(), p);
}

}  // namespace

EnvelopeReport envelope_basis_check(int r_max, int p) {
  validate_prime(p);
  if (r_max < 0) throw DomainError("envelope_basis_check: r_max must be non-negative");
  EnvelopeReport rep;
  rep.p = p;
  const DPContext ctx = DPContext::level(p, 1, Side::A);
  DPElem dr = DPElem::basis(ctx, 1);
  for (int r = 0; r <= r_max; ++r) {
    if (r > 0) dr = delta_dp(dr);
    const int top = ipow(p, r);
    EnvelopeRow row;
    row.r = r;
    row.top_is_p_power = dr.support_max() == top;
    const XPoly c = dr.coeff(top);
    row.c_is_constant = c.degree() == 0;
    row.c = row.c_is_constant ? c.coeffs()[0] : LocScalar();
    row.c_is_unit = row.c_is_constant && is_unit(row.c, p);

    const DPElem w = DPElem::basis(ctx, top);
    row.phi_valuation = valuation_at_one(phi_dp(w).coeff(p * top), p);
    row.pow_valuation = valuation_at_one(w.pow(p).coeff(p * top), p);
    rep.rows.push_back(row);

    const std::string rs = "r=" + std::to_string(r);
    rep.checks.push_back({"envelope.congruence." + rs, "delta^r(omega) = c_r omega^{p^r} mod lower",
                          row.top_is_p_power && row.c_is_constant,
                          "top index " + std::to_string(dr.support_max()) + ", expected " +
                              std::to_string(top)});
    rep.checks.push_back({"envelope.unit." + rs, "c_r is a unit of R", row.c_is_unit,
                          "c_r = " + row.c.to_string()});
    const int want_phi = ipow(p, r + 1);
    rep.checks.push_back({"envelope.valuation_phi." + rs,
                          "v_p at q=1 of phi(omega^{p^r}) top coefficient is p^(r+1)",
                          row.phi_valuation == want_phi,
                          std::to_string(row.phi_valuation) + " vs " + std::to_string(want_phi)});
    rep.checks.push_back({"envelope.valuation_pow." + rs,
                          "v_p at q=1 of (omega^{p^r})^p top coefficient is 1",
                          row.pow_valuation == 1, std::to_string(row.pow_valuation) + " vs 1"});
  }
  return rep;
}

BiCoordPoly u_twisted_power(int n, int p) {
  BiCoordPoly r(p);
  r.add_term(LocScalar(1), 0, 0);
  for (int i = 0; i < n; ++i) {
    BiCoordPoly factor(p);  // x2 - q^i x1
    factor.add_term(LocScalar(1), 0, 1);
    factor.add_term(LocScalar(-QPoly::q_power(i)), 1, 0);
    r = r * factor;
  }
  return r;
}

namespace {

BiCoordPoly u_closed_form(int p, int half_offset) {
  BiCoordPoly r(p);
  if (p == 2) {
    r.add_term(LocScalar(1), 2, 0);
    r.add_term(LocScalar(-1), 1, 1);
    return r;
  }
  const int h = (p - half_offset) / 2;
  r.add_term(LocScalar::from_fraction((QPoly(1) - QPoly::q()) * q_int(h, p), q_factorial(p - 1), p),
             p, 0);
  for (int i = 1; i < p; ++i) {
    QPoly num = QPoly::q_power(i * (i - 1) / 2);
    if (i % 2 == 1) num = -num;
    r.add_term(LocScalar::from_fraction(num, q_factorial(i) * q_factorial(p - i), p), i, p - i);
  }
  return r;
}

}  // namespace

BiCoordPoly u_divided_power_p(int p) { return u_closed_form(p, 1); }
BiCoordPoly u_divided_power_p_printed(int p) { return u_closed_form(p, 3); }

BiCoordPoly u_apply(const DPElem& e) {
  const int p = e.ctx().p;
  if (!e.ctx().same_algebra(DPContext::divided(p, 0, Side::A)))
    throw DomainError("u_apply: expected an element of A<xi>_q");
  if (e.support_max() > p) throw DomainError("u_apply: closed values are known only up to xi^[p]");
  BiCoordPoly r(p);
  for (const auto& [i, c] : e.terms()) {
    BiCoordPoly ui = (i == p) ? u_divided_power_p(p)
                              : u_twisted_power(i, p).scaled(
                                    unit_inverse(LocScalar(q_factorial(i)), p));
    r += tensor_embed_left({Side::A, c}, p) * ui;
  }
  return r;
}

ClearedImage u_apply_cleared(const DPElem& e) {
  const int p = e.ctx().p;
  if (!e.ctx().same_algebra(DPContext::divided(p, 0, Side::A)))
    throw DomainError("u_apply_cleared: expected an element of A<xi>_q");
  const int top = std::max(e.support_max(), 0);
  ClearedImage out{q_factorial(top), BiCoordPoly(p)};
  for (const auto& [i, c] : e.terms()) {
    auto cofactor = divide_exact(out.factor, q_factorial(i));
    out.value += (tensor_embed_left({Side::A, c}, p) * u_twisted_power(i, p))
                     .scaled(LocScalar(*cofactor));
  }
  return out;
}

UReport u_consistency_check(int p, int n_cap) {
  validate_prime(p);
  UReport rep;
  rep.p = p;
  const std::string ps = "p=" + std::to_string(p);

  // (a) the closed form has coefficients in R (from_fraction checks membership)
  try {
    rep.closed_form = u_divided_power_p(p);
    rep.checks.push_back({"u.closed_form_in_R." + ps, "u(xi^[p]) closed form lies over R", true,
                          rep.closed_form.to_string()});
  } catch (const MembershipError& err) {
    rep.checks.push_back({"u.closed_form_in_R." + ps, "u(xi^[p]) closed form lies over R", false,
                          err.what()});
    return rep;
  }

  // (b) (p)_q! u(xi^[p]) = u(xi^(p))
  const BiCoordPoly expanded = u_twisted_power(p, p);
  const BiCoordPoly cleared = rep.closed_form.scaled(LocScalar(q_factorial(p)));
  const bool ok_b = cleared == expanded;
  rep.checks.push_back({"u.factorial_cleared." + ps, "(p)_q! u(xi^[p]) = u(xi^(p)_q)", ok_b,
                        ok_b ? "equal" : "lhs " + cleared.to_string() + " rhs " + expanded.to_string()});
  if (p > 2) {
    rep.printed_form_matches =
        u_divided_power_p_printed(p).scaled(LocScalar(q_factorial(p))) == expanded;
  } else {
    rep.printed_form_matches = ok_b;
  }

  // (c) u kills [F](omega^{n}) for 1 <= n <= n_cap
  const DPContext lvl = DPContext::level(p, 1, Side::APrime);
  for (int n = 1; n <= n_cap; ++n) {
    const DPElem img = divided_frobenius(DPElem::basis(lvl, n));
    std::string method;
    bool zero;
    if (img.support_max() <= p) {
      method = "closed values";
      zero = u_apply(img).is_zero();
    } else {
      method = "factorial-cleared";
      zero = u_apply_cleared(img).value.is_zero();
    }
    rep.checks.push_back({"u.kills_frobenius." + ps + ".n=" + std::to_string(n),
                          "u([F](omega^{n})) = 0", zero, method});
  }
  return rep;
}

}  // namespace qtwist
