#include <doctest.h>

#include <random>

#include "qtwist/errors.hpp"
#include "qtwist/qanalog.hpp"
#include "support.hpp"

using namespace qtwist;
using testing::qp;
using testing::xmono;
using testing::xp;

namespace {

XPoly random_xpoly(std::mt19937_64& gen, int max_deg) {
  std::uniform_int_distribution<int> c(-5, 5), d(0, max_deg), qd(0, 2);
  std::vector<LocScalar> v;
  for (int i = 0, n = d(gen); i <= n; ++i) {
    std::vector<Integer> cc;
    for (int j = 0, m = qd(gen); j <= m; ++j) cc.emplace_back(c(gen));
    v.emplace_back(QPoly(cc));
  }
  return XPoly(v);
}

}  // namespace

TEST_SUITE("coordring") {
  TEST_CASE("sigma, phi and the q-derivative") {
    // sigma^2(1 + x + x^2) = 1 + q^2 x + q^4 x^2
    CHECK(xpoly::sigma_power(xp({1, 1, 1}), 2) ==
          XPoly(std::vector<LocScalar>{LocScalar(1), LocScalar(QPoly::q_power(2)), LocScalar(QPoly::q_power(4))}));
    // phi(q x) = q^p x^p
    CHECK(xpoly::phi_abs(xmono(QPoly::q(), 1), 3) == xmono(QPoly::q_power(3), 3));
    // d_q(x^3) = (3)_q x^2, d_{q^2}(x^3) = (3)_{q^2} x^2
    CHECK(xpoly::q_derivative(xp({0, 0, 0, 1}), 1) == xmono(q_int(3), 2));
    CHECK(xpoly::q_derivative(xp({0, 0, 0, 1}), 2) == xmono(q_int(3, 2), 2));
    CHECK(xpoly::q_derivative(xp({7}), 1).is_zero());
  }

  TEST_CASE("delta on A") {
    // delta(x) = 0 since phi(x) = x^p
    CHECK(xpoly::delta(xp({0, 1}), 2).is_zero());
    // delta(q) = (q^2 - q^2)/2 = 0; delta(1 + x) at p=2 = (1 + x^2 - (1+x)^2)/2 = -x
    CHECK(xpoly::delta(xp({1, 1}), 2) == xp({0, -1}));
  }

  TEST_CASE("q-Leibniz rule d(fg) = d(f) g + sigma(f) d(g)") {
    std::mt19937_64 gen(11);
    for (int k : {1, 2, 4, 9}) {
      for (int s = 0; s < 40; ++s) {
        const XPoly f = random_xpoly(gen, 5), g = random_xpoly(gen, 5);
        CHECK(xpoly::q_derivative(f * g, k) ==
              xpoly::q_derivative(f, k) * g + xpoly::sigma_power(f, k) * xpoly::q_derivative(g, k));
      }
    }
  }

  TEST_CASE("delta is exact and phi is multiplicative") {
    std::mt19937_64 gen(12);
    for (int p : {2, 3, 5}) {
      for (int s = 0; s < 20; ++s) {
        const XPoly f = random_xpoly(gen, 3), g = random_xpoly(gen, 3);
        CHECK_NOTHROW(xpoly::delta(f, p));
        CHECK(xpoly::phi_abs(f * g, p) == xpoly::phi_abs(f, p) * xpoly::phi_abs(g, p));
      }
    }
  }

  TEST_CASE("sides do not mix") {
    const CoordPoly a = CoordPoly::x(Side::A), b = CoordPoly::x(Side::APrime);
    CHECK_THROWS_AS(a + b, DomainError);
    CHECK_THROWS_AS(rel_frobenius(a, 2), DomainError);
    CHECK(rel_frobenius(b, 3) == CoordPoly(Side::A, xp({0, 0, 0, 1})));
    CHECK(a.to_string() == "x");
    CHECK(b.to_string() == "x'");
    CHECK(side_from_name("A'") == Side::APrime);
  }

  TEST_CASE("A is free over A' with basis 1, x, ..., x^(p-1)") {
    std::mt19937_64 gen(13);
    for (int p : {2, 3, 5}) {
      for (int s = 0; s < 20; ++s) {
        const CoordPoly f(Side::A, random_xpoly(gen, 12));
        const auto parts = frobenius_decompose(f, p);
        REQUIRE(parts.size() == static_cast<size_t>(p));
        CHECK(frobenius_recombine(parts, p) == f);
      }
    }
  }

  TEST_CASE("tensor product over A'") {
    // x1^p = x2^p
    for (int p : {2, 3}) {
      const CoordPoly g(Side::APrime, xp({2, -1, 3}));
      const CoordPoly fg = rel_frobenius(g, p);
      CHECK(tensor_embed_left(fg, p) == tensor_embed_right(fg, p));
      CHECK_FALSE(tensor_embed_left(CoordPoly::x(Side::A), p) == tensor_embed_right(CoordPoly::x(Side::A), p));
    }
    BiCoordPoly t(2);
    t.add_term(LocScalar(1), 0, 3);  // x2^3 = x1^2 x2
    CHECK(t.coeff(2, 1) == LocScalar(1));
  }
}
