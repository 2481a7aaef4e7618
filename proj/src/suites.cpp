#include "qtwist/suites.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "qtwist/connect.hpp"
#include "qtwist/diffcalc.hpp"
#include "qtwist/errors.hpp"
#include "qtwist/frobdiv.hpp"
#include "qtwist/qanalog.hpp"
#include "qtwist/random.hpp"

namespace qtwist {

void VerifyConfig::validate() const {
  validate_prime(p);
  if (m < 1 || m > 3) throw DomainError("m must be in 1..3");
  if (n_max < 0 || n_max > 12) throw DomainError("n-max must be in 0..12");
  if (degree < 0 || degree > 16) throw DomainError("degree cap must be in 0..16");
  if (trunc_n < 1 || deg_d < 0) throw DomainError("need trunc-N >= 1 and deg-d >= 0");
  if (samples < 1 || samples > 10000) throw DomainError("samples must be in 1..10000");
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"qarith", "divpow", "frobdiv", "diffcalc", "connect"};
  return names;
}

namespace {

using Outcome = std::pair<bool, std::string>;

class Runner {
 public:
  explicit Runner(CheckList& out) : out_(out) {}

  void run(const std::string& id, const std::string& ref, const std::function<Outcome()>& fn) {
    CheckResult r{id, ref, false, ""};
    try {
      auto [ok, detail] = fn();
      r.pass = ok;
      r.detail = std::move(detail);
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    out_.push_back(std::move(r));
  }

 private:
  CheckList& out_;
};

Outcome ok(std::string detail = "") { return {true, std::move(detail)}; }
Outcome bad(std::string detail) { return {false, std::move(detail)}; }
std::string count(int n, const char* what) { return std::to_string(n) + " " + what; }

XPoly xp(std::initializer_list<long> c) {
  std::vector<LocScalar> v;
  for (long a : c) v.emplace_back(a);
  return XPoly(std::move(v));
}

// ---------------------------------------------------------------- qarith

void suite_qarith(const VerifyConfig& cfg, Runner& run) {
  const int p = cfg.p;
  const int top = std::max(2, p * std::max(cfg.n_max, 1));

  run.run("qarith.q_int_at_one", "(n)_q at q=1 equals n", [&] {
    for (int n = 0; n <= top; ++n)
      if (q_int(n).eval_at_one() != n) return bad("n=" + std::to_string(n));
    return ok(count(top + 1, "values"));
  });

  run.run("qarith.binomial_pascal", "(n k)_q = (n-1 k-1)_q + q^k (n-1 k)_q", [&] {
    for (int n = 1; n <= top; ++n)
      for (int k = 1; k < n; ++k)
        if (q_binomial(n, k) != q_binomial(n - 1, k - 1) + QPoly::q_power(k) * q_binomial(n - 1, k))
          return bad("n=" + std::to_string(n) + " k=" + std::to_string(k));
    return ok();
  });

  run.run("qarith.binomial_factorial", "(n)_Q! = (k)_Q! (n-k)_Q! (n k)_Q", [&] {
    const int k0 = ipow(p, cfg.m);
    for (int n = 0; n <= 10; ++n)
      for (int k = 0; k <= n; ++k)
        if (q_factorial(n, k0) != q_factorial(k, k0) * q_factorial(n - k, k0) * q_binomial(n, k, k0))
          return bad("n=" + std::to_string(n) + " k=" + std::to_string(k));
    return ok();
  });

  run.run("qarith.local_ring_axioms", "Z[q]_(p,q-1) is a commutative ring", [&] {
    RandomSource rs(cfg.seed);
    for (int s = 0; s < cfg.samples; ++s) {
      const LocScalar a = rs.scalar(p, 3, 5, true), b = rs.scalar(p, 3, 5, true),
                      c = rs.scalar(p, 3, 5, true);
      if ((a * b) * c != a * (b * c) || a * (b + c) != a * b + a * c || a * b != b * a)
        return bad("a=" + a.to_string() + " b=" + b.to_string() + " c=" + c.to_string());
    }
    return ok(count(cfg.samples, "triples"));
  });

  run.run("qarith.unit_inverse", "units of Z[q]_(p,q-1) are invertible", [&] {
    RandomSource rs(cfg.seed + 1);
    int tried = 0;
    for (int s = 0; s < cfg.samples; ++s) {
      const LocScalar a = rs.scalar(p, 3, 5, true);
      if (!is_unit(a, p)) continue;
      ++tried;
      if (a * unit_inverse(a, p) != LocScalar(1)) return bad("a=" + a.to_string());
    }
    return ok(count(tried, "units"));
  });

  run.run("qarith.frobenius_congruence", "phi(f) = f^p mod p on A", [&] {
    RandomSource rs(cfg.seed + 2);
    for (int s = 0; s < cfg.samples; ++s) {
      const XPoly f = rs.xpoly(p, std::min(cfg.degree, 4), 2, 4, true);
      const XPoly d = xpoly::delta(f, p);
      XPoly pd = d;
      pd = pd.scaled(LocScalar(p));
      if (xpoly::phi_abs(f, p) != f.pow(p) + pd) return bad("f=" + to_string(f));
    }
    return ok(count(cfg.samples, "functions"));
  });
}

// ---------------------------------------------------------------- divpow

void suite_divpow(const VerifyConfig& cfg, Runner& run) {
  const int p = cfg.p;
  const DPContext ctx = DPContext::level(p, cfg.m);
  const int qpow = ctx.q_power;
  const int top = std::min(cfg.n_max, 6);

  run.run("divpow.structure_constants_closed_form",
          "omega{a} omega{b} constants: twisted-power route equals the closed form", [&] {
            for (int a = 0; a <= 2 * top; ++a)
              for (int b = 0; a + b <= 2 * top; ++b)
                if (*structure_constants(a, b, qpow) != structure_constants_closed_form(a, b, qpow))
                  return bad("a=" + std::to_string(a) + " b=" + std::to_string(b));
            return ok();
          });

  auto random_elem = [&](RandomSource& rs, int support) {
    DPElem e(ctx);
    for (int n = 0; n <= support; ++n)
      if (rs.coin(0.6)) e.add_term(n, rs.xpoly(p, 2, 1, 3, true));
    return e;
  };

  run.run("divpow.associative_commutative", "A<omega> is commutative and associative", [&] {
    RandomSource rs(cfg.seed + 10);
    const int samples = std::max(1, cfg.samples / 5);
    for (int s = 0; s < samples; ++s) {
      const DPElem a = random_elem(rs, 2), b = random_elem(rs, 2), c = random_elem(rs, 2);
      if (a * b != b * a) return bad("ab != ba for a=" + a.to_string() + " b=" + b.to_string());
      if ((a * b) * c != a * (b * c))
        return bad("(ab)c != a(bc) for a=" + a.to_string() + " b=" + b.to_string() +
                   " c=" + c.to_string());
    }
    return ok(count(samples, "triples"));
  });

  run.run("divpow.twisted_basis_roundtrip", "monomial and twisted-power bases are inverse", [&] {
    RandomSource rs(cfg.seed + 11);
    for (int s = 0; s < cfg.samples; ++s) {
      std::vector<XPoly> c;
      const int deg = rs.uniform(0, top);
      for (int i = 0; i <= deg; ++i) c.push_back(rs.xpoly(p, 2, 1, 3, false));
      const XiPoly f(std::move(c));
      if (twisted_to_monomial(monomial_to_twisted(f, ctx), ctx) != f) return bad("degree " + std::to_string(deg));
    }
    return ok(count(cfg.samples, "polynomials"));
  });

  run.run("divpow.polynomial_map_multiplicative", "A[omega] -> A<omega> is a ring map", [&] {
    RandomSource rs(cfg.seed + 12);
    const int samples = std::max(1, cfg.samples / 5);
    for (int s = 0; s < samples; ++s) {
      std::vector<XPoly> a, b;
      for (int i = 0, d = rs.uniform(0, 3); i <= d; ++i) a.push_back(rs.xpoly(p, 1, 1, 3, false));
      for (int i = 0, d = rs.uniform(0, 3); i <= d; ++i) b.push_back(rs.xpoly(p, 1, 1, 3, false));
      const XiPoly fa(a), fb(b);
      if (from_polynomial(fa * fb, ctx) != from_polynomial(fa, ctx) * from_polynomial(fb, ctx))
        return bad("sample " + std::to_string(s));
    }
    return ok(count(samples, "pairs"));
  });
}

// ---------------------------------------------------------------- frobdiv

void suite_frobdiv(const VerifyConfig& cfg, Runner& run) {
  const int p = cfg.p;
  const DPContext lvl = DPContext::level(p, 1);
  const DPContext lvl_prime = DPContext::level(p, 1, Side::APrime);
  const DPContext xi = DPContext::divided(p, 0);

  if (p == 2) {
    run.run("frobdiv.phi_omega_example", "phi(omega) = (1+q)^2 omega{2} + (1+q) x omega", [&] {
      DPElem want(lvl);
      want.add_term(2, XPoly(LocScalar(q_int(2) * q_int(2))));
      want.add_term(1, XPoly::monomial(LocScalar(q_int(2)), 1));
      const DPElem got = phi_dp(DPElem::basis(lvl, 1));
      return got == want ? ok(got.to_string()) : bad(got.to_string());
    });
    run.run("frobdiv.phi_xi_example", "phi(xi) = (1+q) xi[2] + (1+q) x xi", [&] {
      DPElem want(xi);
      want.add_term(2, XPoly(LocScalar(q_int(2))));
      want.add_term(1, XPoly::monomial(LocScalar(q_int(2)), 1));
      const DPElem got = phi_xi(DPElem::basis(xi, 1));
      return got == want ? ok(got.to_string()) : bad(got.to_string());
    });
  }

  run.run("frobdiv.b_integrality", "b_{n,i} lies in Z[q]_(p,q-1)", [&] {
    int seen = 0;
    for (int n = 0; n <= cfg.n_max; ++n)
      for (int i = n; i <= p * n; ++i) {
        coeff_b(n, i, p);  // throws MembershipError otherwise
        ++seen;
      }
    return ok(count(seen, "coefficients"));
  });

  run.run("frobdiv.b_leading_unit", "b_{n,pn} = prod_k prod_i (kp-i)_q is a unit", [&] {
    for (int n = 0; n <= cfg.n_max; ++n) {
      const LocScalar b = coeff_b(n, p * n, p);
      if (b != LocScalar(leading_coefficient_product(n, p)))
        return bad("n=" + std::to_string(n) + " b=" + b.to_string());
      if (!is_unit(b, p)) return bad("n=" + std::to_string(n) + " not a unit");
    }
    return ok();
  });

  const int hom = std::min(cfg.n_max, 6);
  run.run("frobdiv.divided_frobenius_multiplicative", "[F](omega{a} omega{b}) = [F](omega{a}) [F](omega{b})", [&] {
    for (int a = 0; a <= hom; ++a)
      for (int b = a; a + b <= hom; ++b) {
        const DPElem wa = DPElem::basis(lvl_prime, a), wb = DPElem::basis(lvl_prime, b);
        if (divided_frobenius(wa * wb) != divided_frobenius(wa) * divided_frobenius(wb))
          return bad("a=" + std::to_string(a) + " b=" + std::to_string(b));
      }
    return ok("a+b <= " + std::to_string(hom));
  });

  run.run("frobdiv.phi_multiplicative", "phi(omega{a} omega{b}) = phi(omega{a}) phi(omega{b})", [&] {
    for (int a = 0; a <= hom; ++a)
      for (int b = a; a + b <= hom; ++b) {
        const DPElem wa = DPElem::basis(lvl, a), wb = DPElem::basis(lvl, b);
        if (phi_dp(wa * wb) != phi_dp(wa) * phi_dp(wb))
          return bad("a=" + std::to_string(a) + " b=" + std::to_string(b));
      }
    return ok("a+b <= " + std::to_string(hom));
  });

  run.run("frobdiv.phi_congruence", "phi(e) - e^p is divisible by p", [&] {
    const int top = std::min(cfg.n_max, 4);
    for (int n = 0; n <= top; ++n) delta_dp(DPElem::basis(lvl, n));  // throws NotDivisible otherwise
    return ok("n <= " + std::to_string(top));
  });

  run.run("frobdiv.phi_xi_extends_symmetric", "phi on A<xi>_q restricts to xi -> (x+xi)^p - x^p", [&] {
    RandomSource rs(cfg.seed + 20);
    const int samples = std::max(1, cfg.samples / 10);
    for (int s = 0; s < samples; ++s) {
      std::vector<XPoly> c;
      for (int i = 0, d = rs.uniform(0, 2); i <= d; ++i) c.push_back(rs.xpoly(p, 1, 1, 3, false));
      const XiPoly f(c);
      const DPElem lhs = phi_xi(from_polynomial(f, xi));
      const DPElem rhs = from_polynomial(phi_symmetric(f, p), xi);
      if (lhs != rhs) return bad("lhs " + lhs.to_string() + " rhs " + rhs.to_string());
    }
    return ok(count(samples, "polynomials"));
  });

  run.run("frobdiv.blowup_compatible", "phi_xi = [F] o blow-up o base change on basis elements", [&] {
    for (int n = 0; n <= std::min(cfg.n_max, 4); ++n) {
      const DPElem e = DPElem::basis(xi, n);
      DPElem blown = blowup(frobenius_base_change(e), XPoly(LocScalar(q_int(p))), lvl_prime);
      if (phi_xi(e) != divided_frobenius(blown)) return bad("n=" + std::to_string(n));
    }
    return ok();
  });

  run.run("frobdiv.envelope_basis", "delta^r(omega) = c_r omega{p^r} + lower, c_r a unit", [&] {
    const int r_max = p == 2 ? 2 : 1;
    const EnvelopeReport rep = envelope_basis_check(r_max, p);
    for (const auto& c : rep.checks)
      if (!c.pass) return bad(c.id + ": " + c.detail);
    return ok("r <= " + std::to_string(r_max));
  });

  run.run("frobdiv.u_descent", "u(xi[p]) closed form and u o [F] = 0", [&] {
    const UReport rep = u_consistency_check(p, p);
    for (const auto& c : rep.checks)
      if (!c.pass) return bad(c.id + ": " + c.detail);
    return ok(rep.closed_form.to_string());
  });
}

// ---------------------------------------------------------------- diffcalc

void suite_diffcalc(const VerifyConfig& cfg, Runner& run) {
  const int p = cfg.p, m = cfg.m;
  const OpContext oc = OpContext::level(p, m);
  const int k = oc.q_power;
  const LocScalar z(oc.scale);
  const DPContext dctx = DPContext::level(p, m);

  auto random_op = [&](RandomSource& rs, int order, int deg) {
    TwistedDiffOp d(oc);
    for (int n = 0; n <= order; ++n)
      if (rs.coin(0.6)) d.add_term(n, rs.xpoly(p, deg, 1, 3, false));
    return d;
  };

  run.run("diffcalc.apply_examples", "d<1>(x) = (p^m)_q and d<2>(x^2) = (p^m)_q^2 (2)_{q^(p^m)}", [&] {
    const XPoly one = op_apply(TwistedDiffOp::generator(oc, 1), xp({0, 1}));
    const XPoly two = op_apply(TwistedDiffOp::generator(oc, 2), xp({0, 0, 1}));
    if (one != XPoly(z)) return bad(to_string(one));
    if (two != XPoly(z * z * LocScalar(q_int(2, k)))) return bad(to_string(two));
    return ok();
  });

  run.run("diffcalc.compose_example", "d<1> o x = (p^m)_q + q^(p^m) x d<1>", [&] {
    const TwistedDiffOp got =
        op_compose(TwistedDiffOp::generator(oc, 1), TwistedDiffOp::multiplication(oc, xp({0, 1})));
    TwistedDiffOp want(oc);
    want.add_term(0, XPoly(z));
    want.add_term(1, XPoly::monomial(LocScalar(QPoly::q_power(k)), 1));
    if (got != want) return bad(got.to_string());
    const TwistedDiffOp gg = op_compose(TwistedDiffOp::generator(oc, 1), TwistedDiffOp::generator(oc, 1));
    if (gg != TwistedDiffOp::generator(oc, 2)) return bad("d<1> o d<1> = " + gg.to_string());
    return ok();
  });

  run.run("diffcalc.compose_associative", "(D1 D2) D3 = D1 (D2 D3)", [&] {
    RandomSource rs(cfg.seed + 30);
    const int samples = std::max(1, cfg.samples / 5);
    for (int s = 0; s < samples; ++s) {
      const TwistedDiffOp a = random_op(rs, 3, 2), b = random_op(rs, 3, 2), c = random_op(rs, 3, 2);
      if (op_compose(op_compose(a, b), c) != op_compose(a, op_compose(b, c)))
        return bad("a=" + a.to_string() + " b=" + b.to_string() + " c=" + c.to_string());
    }
    return ok(count(samples, "triples"));
  });

  run.run("diffcalc.action_respects_compose", "(D1 D2)(f) = D1(D2(f)) on x^d, d <= 8", [&] {
    RandomSource rs(cfg.seed + 31);
    const int samples = std::max(1, cfg.samples / 5);
    for (int s = 0; s < samples; ++s) {
      const TwistedDiffOp a = random_op(rs, 3, 2), b = random_op(rs, 3, 2);
      const TwistedDiffOp ab = op_compose(a, b);
      for (int d = 0; d <= 8; ++d) {
        const XPoly f = XPoly::monomial(LocScalar(1), d);
        if (op_apply(ab, f) != op_apply(a, op_apply(b, f)))
          return bad("d=" + std::to_string(d) + " a=" + a.to_string() + " b=" + b.to_string());
      }
    }
    return ok(count(samples, "pairs"));
  });

  run.run("diffcalc.taylor_multiplicative", "theta(fg) = theta(f) theta(g) mod omega{>N}", [&] {
    RandomSource rs(cfg.seed + 32);
    for (int s = 0; s < cfg.samples; ++s) {
      const int n = rs.uniform(0, 5);
      const CoordPoly f(Side::A, rs.xpoly(p, std::min(cfg.degree, 4), 2, 4, true));
      const CoordPoly g(Side::A, rs.xpoly(p, std::min(cfg.degree, 4), 2, 4, true));
      const DPElem lhs = taylor(f * g, n, p, m);
      const DPElem rhs = (taylor(f, n, p, m) * taylor(g, n, p, m)).truncated(n);
      if (lhs != rhs) return bad("N=" + std::to_string(n) + " f=" + f.to_string() + " g=" + g.to_string());
    }
    return ok(count(cfg.samples, "pairs"));
  });

  run.run("diffcalc.taylor_example", "theta(x) = x + (p^m)_q omega", [&] {
    const DPElem got = taylor(CoordPoly::x(Side::A), 3, p, m);
    DPElem want(dctx);
    want.add_term(0, xp({0, 1}));
    want.add_term(1, XPoly(z));
    return got == want ? ok(got.to_string()) : bad(got.to_string());
  });

  run.run("diffcalc.comult_coassociative", "(Delta x 1) Delta = (1 x Delta) Delta on omega{i}, i <= 6", [&] {
    for (int i = 0; i <= 6; ++i) {
      std::map<std::tuple<int, int, int>, int> left, right;
      for (const auto& [ab, c] : comult(DPElem::basis(dctx, i), i, i)) {
        for (const auto& [uv, c2] : comult(DPElem::basis(dctx, ab.first), i, i))
          left[{uv.first, uv.second, ab.second}] += 1;
        for (const auto& [uv, c2] : comult(DPElem::basis(dctx, ab.second), i, i))
          right[{ab.first, uv.first, uv.second}] += 1;
      }
      if (left != right) return bad("i=" + std::to_string(i));
      if (comult(DPElem::basis(dctx, i), i, i).size() != static_cast<size_t>(i + 1))
        return bad("wrong number of terms at i=" + std::to_string(i));
    }
    return ok();
  });

  run.run("diffcalc.pairing_duality", "<D, theta(f)> = D(f) and <d<n>, omega{k}> = [n=k]", [&] {
    for (int n = 0; n <= 4; ++n)
      for (int kk = 0; kk <= 4; ++kk) {
        const XPoly v = pairing(TwistedDiffOp::generator(oc, n), DPElem::basis(dctx, kk));
        if (v != XPoly(LocScalar(n == kk ? 1 : 0))) return bad("n=" + std::to_string(n));
      }
    RandomSource rs(cfg.seed + 33);
    for (int s = 0; s < cfg.samples; ++s) {
      const TwistedDiffOp d = random_op(rs, 4, 2);
      const CoordPoly f(Side::A, rs.xpoly(p, std::min(cfg.degree, 6), 2, 4, true));
      if (pairing(d, taylor(f, 4, p, m)) != op_apply(d, f.poly()))
        return bad("D=" + d.to_string() + " f=" + f.to_string());
    }
    return ok(count(cfg.samples, "pairs"));
  });

  run.run("diffcalc.pairing_comult", "<d<a> d<b>, omega{i}> = sum <d<a>, omega{i1}><d<b>, omega{i2}>", [&] {
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 3; ++b)
        for (int i = 0; i <= 6; ++i) {
          const TwistedDiffOp ab =
              op_compose(TwistedDiffOp::generator(oc, a), TwistedDiffOp::generator(oc, b));
          XPoly rhs;
          for (const auto& [uv, c] : comult(DPElem::basis(dctx, i), i, i))
            rhs += c * pairing(TwistedDiffOp::generator(oc, a), DPElem::basis(dctx, uv.first)) *
                   pairing(TwistedDiffOp::generator(oc, b), DPElem::basis(dctx, uv.second));
          if (pairing(ab, DPElem::basis(dctx, i)) != rhs)
            return bad("a=" + std::to_string(a) + " b=" + std::to_string(b) + " i=" + std::to_string(i));
        }
    return ok();
  });

  run.run("diffcalc.level_comparison", "d<n> -> (p^m)_q^n d^n commutes with the action", [&] {
    RandomSource rs(cfg.seed + 34);
    const int samples = std::max(1, cfg.samples / 5);
    for (int s = 0; s < samples; ++s) {
      const TwistedDiffOp d = random_op(rs, 4, 2);
      const TwistedDiffOp img = level_zero_image(d);
      for (int e = 0; e <= 8; ++e) {
        const XPoly f = XPoly::monomial(LocScalar(1), e);
        if (op_apply(d, f) != op_apply(img, f)) return bad("D=" + d.to_string() + " e=" + std::to_string(e));
      }
    }
    return ok(count(samples, "operators"));
  });
}

// ---------------------------------------------------------------- connect

void suite_connect(const VerifyConfig& cfg, Runner& run) {
  const int p = cfg.p, m = cfg.m;

  run.run("connect.trivial_theta", "trivial connection: theta(f) = (p^m)_q d(f)", [&] {
    const ConnModule triv = ConnModule::trivial(p, m, Side::A, 1);
    const int k = ipow(p, m);
    const XPoly f = xp({3, -1, 0, 2});
    const Vec got = theta_apply(triv, {f});
    const XPoly want = xpoly::q_derivative(f, k).scaled(LocScalar(q_int(k)));
    return got[0] == want ? ok() : bad(to_string(got[0]));
  });

  run.run("connect.leibniz", "theta(fv) = (p^m)_q d(f) v + sigma(f) theta(v)", [&] {
    RandomSource rs(cfg.seed + 40);
    const int samples = std::max(1, cfg.samples / 5);
    const int k = ipow(p, m);
    for (int s = 0; s < samples; ++s) {
      const ConnModule mod = rs.module(p, m, Side::A, 3, 2);
      const XPoly f = rs.xpoly(p, 3, 1, 3, true);
      Vec v(mod.rank), fv(mod.rank);
      for (int i = 0; i < mod.rank; ++i) {
        v[i] = rs.xpoly(p, 3, 1, 3, true);
        fv[i] = f * v[i];
      }
      const Vec lhs = theta_apply(mod, fv);
      const Vec tv = theta_apply(mod, v);
      const XPoly df = xpoly::q_derivative(f, k).scaled(LocScalar(q_int(k)));
      const XPoly sf = xpoly::sigma_power(f, k);
      for (int i = 0; i < mod.rank; ++i)
        if (lhs[i] != df * v[i] + sf * tv[i]) return bad("sample " + std::to_string(s));
    }
    return ok(count(samples, "modules"));
  });

  run.run("connect.level_raise_examples", "Theta' = (1) -> (x^(p-1)), (x') -> (x^(2p-1))", [&] {
    ConnModule one{p, m, Side::APrime, 1, {{xp({1})}}};
    ConnModule lin{p, m, Side::APrime, 1, {{xp({0, 1})}}};
    if (level_raise(one).theta[0][0] != XPoly::monomial(LocScalar(1), p - 1)) return bad("Theta' = (1)");
    if (level_raise(lin).theta[0][0] != XPoly::monomial(LocScalar(1), 2 * p - 1)) return bad("Theta' = (x')");
    if (level_raise(ConnModule::trivial(p, m, Side::APrime, 2)) != ConnModule::trivial(p, m - 1, Side::A, 2))
      return bad("Theta' = 0");
    return ok();
  });

  run.run("connect.level_raise_well_defined", "theta(F(v')) = x^(p-1) F(theta'(v'))", [&] {
    RandomSource rs(cfg.seed + 41);
    const int samples = std::max(1, cfg.samples / 5);
    for (int s = 0; s < samples; ++s) {
      const ConnModule mp = rs.module(p, m, Side::APrime, 3, 2);
      const ConnModule raised = level_raise(mp);
      Vec v(mp.rank);
      for (auto& f : v) f = rs.xpoly(p, std::min(cfg.degree, 5), 1, 3, true);
      const Vec lhs = theta_apply(raised, rel_frobenius(v, p));
      Vec rhs = rel_frobenius(theta_apply(mp, v), p);
      for (auto& f : rhs) f = f * XPoly::monomial(LocScalar(1), p - 1);
      if (lhs != rhs) return bad("sample " + std::to_string(s));
    }
    return ok(count(samples, "modules"));
  });

  run.run("connect.descent_roundtrip", "descent_solve o level_raise = id", [&] {
    RandomSource rs(cfg.seed + 42);
    for (int s = 0; s < cfg.samples; ++s) {
      const ConnModule mp = rs.module(p, m, Side::APrime, 3, 3);
      const DescentResult back = descent_solve(level_raise(mp));
      if (!std::holds_alternative<ConnModule>(back)) return bad("no solution at sample " + std::to_string(s));
      if (std::get<ConnModule>(back) != mp) return bad("mismatch at sample " + std::to_string(s));
    }
    ConnModule xp_mod{p, m - 1, Side::A, 1, {{XPoly::monomial(LocScalar(1), p)}}};
    if (!std::holds_alternative<NoSolution>(descent_solve(xp_mod))) return bad("Theta = (x^p) was solved");
    return ok(count(cfg.samples, "modules"));
  });

  run.run("connect.functoriality", "horizontal U' raises to the horizontal F(U')", [&] {
    RandomSource rs(cfg.seed + 43);
    const int samples = std::max(1, cfg.samples / 10);
    const int k = ipow(p, m);
    for (int s = 0; s < samples; ++s) {
      const ConnModule m2 = rs.module(p, m, Side::APrime, 3, 2);
      const int r = m2.rank;
      // unipotent U and its inverse
      Matrix u(r, Vec(r)), uinv(r, Vec(r));
      for (int i = 0; i < r; ++i) {
        u[i][i] = xp({1});
        for (int j = i + 1; j < r; ++j) u[i][j] = rs.xpoly(p, 2, 1, 3, false);
      }
      for (int j = 0; j < r; ++j) {
        // solve u * col = e_j by back substitution
        for (int i = r - 1; i >= 0; --i) {
          XPoly acc = i == j ? xp({1}) : XPoly();
          for (int l = i + 1; l < r; ++l) acc -= u[i][l] * uinv[l][j];
          uinv[i][j] = acc;
        }
      }
      // Theta1 = U^-1 (z dU + Theta2 sigma(U))
      Matrix du(r, Vec(r)), su(r, Vec(r));
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
          du[i][j] = xpoly::q_derivative(u[i][j], k).scaled(LocScalar(q_int(k)));
          su[i][j] = xpoly::sigma_power(u[i][j], k);
        }
      Matrix inner = mat_mul(m2.theta, su);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) inner[i][j] += du[i][j];
      const ConnModule m1{p, m, Side::APrime, r, mat_mul(uinv, inner)};
      if (!is_horizontal(u, m1, m2)) return bad("constructed U' is not horizontal");
      if (!is_horizontal(rel_frobenius(u, p), level_raise(m1), level_raise(m2)))
        return bad("F(U') is not horizontal at sample " + std::to_string(s));
    }
    return ok(count(samples, "intertwiners"));
  });

  run.run("connect.commutation_identities", "F sigma^(p^m) = sigma^(p^(m-1)) F and (p)_{q^(p^(m-1))} x^(p-1) F d = d F", [&] {
    RandomSource rs(cfg.seed + 44);
    for (int s = 0; s < cfg.samples; ++s) {
      const CoordPoly f(Side::APrime, rs.xpoly(p, cfg.degree, 2, 5, true));
      if (!commute_check(p, m, f).pass()) return bad("f=" + f.to_string());
    }
    return ok(count(cfg.samples, "functions"));
  });

  run.run("connect.quasi_nilpotence", "trivial connection is quasi-nilpotent; theta(s)=s at level 0 is not", [&] {
    const TruncationSpec t{cfg.trunc_n, cfg.deg_d};
    const int cap = 4 * cfg.trunc_n + cfg.deg_d + 4;
    const QuasiNilpotence triv = quasi_nilpotence_check(ConnModule::trivial(p, m, Side::A, 2), t, cap);
    if (!triv.nilpotent) return bad("trivial: " + triv.detail);
    if (!quasi_nilpotence_check(ConnModule::trivial(p, m, Side::A, 0), t, cap).nilpotent)
      return bad("zero module");
    const ConnModule ident{p, 0, Side::A, 1, {{xp({1})}}};
    if (quasi_nilpotence_check(ident, t, cap).nilpotent) return bad("identity derivation reported nilpotent");
    return ok("k=" + std::to_string(triv.k));
  });

  run.run("connect.h0_trivial", "H^0 of the trivial connection mod (p, q-1)", [&] {
    const TruncRing ring(p, 1);
    const H0Result h = h0_truncated(ConnModule::trivial(p, m, Side::A, 1), {1, cfg.deg_d});
    if (h.log_order != cfg.deg_d + 1) return bad("log order " + std::to_string(h.log_order));
    const H0Result h2 = h0_truncated(ConnModule::trivial(p, m, Side::A, 1), {cfg.trunc_n, cfg.deg_d});
    for (const auto& g : h2.generators) {
      const TruncRing r2(p, cfg.trunc_n);
      for (const auto& c : theta_apply_truncated(ConnModule::trivial(p, m, Side::A, 1), r2, g))
        for (const auto& e : c)
          if (!r2.is_zero(e)) return bad("generator " + to_string(g, r2) + " not in the kernel");
    }
    return ok("log_p |H^0| = " + std::to_string(h2.log_order) + " at N=" + std::to_string(cfg.trunc_n));
  });
}

}  // namespace

CheckList run_suite(const std::string& name, const VerifyConfig& cfg) {
  cfg.validate();
  CheckList out;
  Runner run(out);
  const bool all = name == "all";
  bool known = all;
  auto want = [&](const char* s) {
    if (all || name == s) {
      known = true;
      return true;
    }
    return false;
  };
  if (want("qarith")) suite_qarith(cfg, run);
  if (want("divpow")) suite_divpow(cfg, run);
  if (want("frobdiv")) suite_frobdiv(cfg, run);
  if (want("diffcalc")) suite_diffcalc(cfg, run);
  if (want("connect")) suite_connect(cfg, run);
  if (!known) throw DomainError("unknown suite \"" + name + "\"");
  std::sort(out.begin(), out.end(), [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
  return out;
}

}  // namespace qtwist
