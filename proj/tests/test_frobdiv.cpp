#include <doctest.h>

#include "qtwist/errors.hpp"
#include "qtwist/frobdiv.hpp"
#include "qtwist/qanalog.hpp"
#include "support.hpp"

using namespace qtwist;
using testing::qp;
using testing::xmono;
using testing::xp;

namespace {

struct Frozen {
  int p, n, i;
  std::vector<long> a, b;
};

QPoly from_list(const std::vector<long>& c) {
  std::vector<Integer> v(c.begin(), c.end());
  return QPoly(v);
}

}  // namespace

TEST_SUITE("frobdiv") {
  TEST_CASE("a and b against independently computed values") {
    const std::vector<Frozen> table{
        {2, 2, 2, {0, 1, 1, 1, 1}, {0, 1}},
        {2, 2, 3, {1, 1, 1, 1}, {1, 1, 1}},
        {2, 2, 4, {1}, {1, 1, 1}},
        {2, 3, 3, {0, 0, 0, 1, 1, 1, 2, 1, 1, 1}, {0, 0, 0, 1}},
        {2, 3, 4, {0, 1, 1, 2, 2, 2, 2, 1, 1}, {0, 1, 1, 2, 1, 1}},
        {2, 3, 5, {1, 1, 1, 1, 1, 1}, {1, 2, 3, 3, 3, 2, 1}},
        {2, 3, 6, {1}, {1, 2, 3, 3, 3, 2, 1}},
        {3, 2, 2, {0, 0, 1, 1, 2, 1, 2, 1, 1}, {0, 0, 1}},
        {3, 2, 3, {0, 1, 2, 2, 3, 3, 3, 2, 1, 1}, {0, 1, 2, 1, 1, 1}},
        {3, 2, 4, {1, 1, 2, 2, 3, 2, 2, 1, 1}, {1, 2, 3, 4, 4, 3, 2, 1}},
        {3, 2, 5, {1, 1, 1, 1, 1, 1}, {1, 3, 5, 7, 8, 7, 5, 3, 1}},
        {3, 2, 6, {1}, {1, 3, 5, 7, 8, 7, 5, 3, 1}},
    };
    for (const auto& row : table) {
      CAPTURE(row.p);
      CAPTURE(row.n);
      CAPTURE(row.i);
      CHECK(coeff_a(row.n, row.i, row.p) == from_list(row.a));
      CHECK(coeff_b(row.n, row.i, row.p) == LocScalar(from_list(row.b)));
    }
    CHECK(coeff_b(1, 1, 2) == LocScalar(1));
    CHECK(coeff_b(1, 2, 2) == LocScalar(1));
    CHECK(coeff_a(0, 0, 3) == QPoly(1));
    CHECK_THROWS_AS(coeff_b(2, 1, 2), DomainError);
  }

  TEST_CASE("leading coefficient") {
    for (int p : {2, 3, 5})
      for (int n = 0; n <= 5; ++n) {
        CHECK(coeff_b(n, p * n, p) == LocScalar(leading_coefficient_product(n, p)));
        CHECK(is_unit(coeff_b(n, p * n, p), p));
      }
    const FrobCoeffTable t(3, 2);
    CHECK(t.entries().size() == 1 + 3 + 5);
    CHECK(t.leading_is_unit(2));
  }

  TEST_CASE("p = 2 Frobenius examples") {
    const DPContext lvl = DPContext::level(2, 1), xi = DPContext::divided(2, 0);
    DPElem phi_w(lvl);
    phi_w.add_term(2, XPoly(LocScalar(qp({1, 2, 1}))));
    phi_w.add_term(1, xmono(qp({1, 1}), 1));
    CHECK(phi_dp(DPElem::basis(lvl, 1)) == phi_w);

    DPElem phi_x(xi);
    phi_x.add_term(2, XPoly(LocScalar(qp({1, 1}))));
    phi_x.add_term(1, xmono(qp({1, 1}), 1));
    CHECK(phi_xi(DPElem::basis(xi, 1)) == phi_x);

    DPElem delta_w(lvl);
    delta_w.add_term(2, XPoly(LocScalar(QPoly::q())));
    delta_w.add_term(1, xp({0, 1}));
    CHECK(delta_dp(DPElem::basis(lvl, 1)) == delta_w);

    // [F](omega) = x xi[1] + xi[2]
    const DPElem fw = divided_frobenius(DPElem::basis(DPContext::level(2, 1, Side::APrime), 1));
    DPElem want(xi);
    want.add_term(1, xp({0, 1}));
    want.add_term(2, xp({1}));
    CHECK(fw == want);
  }

  TEST_CASE("divided Frobenius needs the primed level -1 algebra") {
    CHECK_THROWS_AS(divided_frobenius(DPElem::basis(DPContext::level(2, 1), 1)), DomainError);
    CHECK_THROWS_AS(phi_xi(DPElem::basis(DPContext::level(2, 1), 1)), DomainError);
  }

  TEST_CASE("[F] and phi are multiplicative") {
    for (int p : {2, 3}) {
      const DPContext lp = DPContext::level(p, 1, Side::APrime), l = DPContext::level(p, 1);
      for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 4; ++b) {
          CHECK(divided_frobenius(DPElem::basis(lp, a) * DPElem::basis(lp, b)) ==
                divided_frobenius(DPElem::basis(lp, a)) * divided_frobenius(DPElem::basis(lp, b)));
          CHECK(phi_dp(DPElem::basis(l, a) * DPElem::basis(l, b)) ==
                phi_dp(DPElem::basis(l, a)) * phi_dp(DPElem::basis(l, b)));
        }
    }
  }

  TEST_CASE("phi is semilinear over phi_A") {
    const DPContext l = DPContext::level(3, 1);
    const XPoly f = xmono(qp({1, 2}), 2);
    const DPElem w = DPElem::basis(l, 2);
    CHECK(phi_dp(w.scaled(f)) == phi_dp(w).scaled(xpoly::phi_abs(f, 3)));
  }

  TEST_CASE("symmetric delta on A[xi]") {
    // p = 2: phi(xi) = 2 x xi + xi^2, delta(xi) = x xi
    const XiPoly xi(std::vector<XPoly>{XPoly(), xp({1})});
    CHECK(phi_symmetric(xi, 2) == XiPoly(std::vector<XPoly>{XPoly(), xp({0, 2}), xp({1})}));
    CHECK(symmetric_delta_xi(xi, 2) == XiPoly(std::vector<XPoly>{XPoly(), xp({0, 1})}));
  }

  TEST_CASE("blow-up of A[xi] into level -1") {
    // xi -> (p)_q omega
    const XiPoly xi(std::vector<XPoly>{XPoly(), xp({1})});
    for (int p : {2, 3}) {
      const DPElem e = blowup_polynomial_to_level(xi, p);
      CHECK(e == DPElem::basis(DPContext::level(p, 1), 1).scaled(XPoly(LocScalar(q_int(p)))));
    }
  }

  TEST_CASE("envelope basis") {
    for (auto [p, r] : {std::pair{2, 2}, std::pair{3, 1}}) {
      const EnvelopeReport rep = envelope_basis_check(r, p);
      CHECK(rep.pass());
      REQUIRE(rep.rows.size() == static_cast<size_t>(r + 1));
      for (const auto& row : rep.rows) {
        CHECK(row.phi_valuation == ipow(p, row.r + 1));
        CHECK(row.pow_valuation == 1);
      }
    }
    // p = 2: delta(omega) has top coefficient q
    CHECK(envelope_basis_check(1, 2).rows[1].c == LocScalar(QPoly::q()));
    // v_3 = delta(omega) * omega^{?}: digits of 3 in base 2 are (1, 1)
    const DPContext l = DPContext::level(2, 1);
    CHECK(envelope_basis_element(3, 2) == DPElem::basis(l, 1) * delta_dp(DPElem::basis(l, 1)));
  }

  TEST_CASE("descent map u") {
    for (int p : {2, 3, 5}) {
      const UReport rep = u_consistency_check(p, p);
      CHECK(rep.pass());
      CHECK(rep.printed_form_matches == (p == 2));
    }
    // p = 2: u(xi[2]) = x1^2 - x1 x2
    BiCoordPoly want(2);
    want.add_term(LocScalar(1), 2, 0);
    want.add_term(LocScalar(-1), 1, 1);
    CHECK(u_divided_power_p(2) == want);
    // p = 3: (x2 - x1)(x2 - q x1)(x2 - q^2 x1) with x2^3 = x1^3
    BiCoordPoly cube(3);
    cube.add_term(LocScalar(qp({1, 0, 0, -1})), 3, 0);
    cube.add_term(LocScalar(qp({0, 1, 1, 1})), 2, 1);
    cube.add_term(LocScalar(qp({-1, -1, -1})), 1, 2);
    CHECK(u_twisted_power(3, 3) == cube);
    CHECK(u_divided_power_p(3).scaled(LocScalar(q_factorial(3))) == cube);
  }
}
