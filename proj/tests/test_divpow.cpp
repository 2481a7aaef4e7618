#include <doctest.h>

#include <random>

#include "qtwist/divpow.hpp"
#include "qtwist/errors.hpp"
#include "qtwist/qanalog.hpp"
#include "support.hpp"

using namespace qtwist;
using testing::qp;
using testing::xmono;
using testing::xp;

namespace {

using Homog = std::vector<QPoly>;  // entry j: coefficient of xi^j y^(deg-j)

Homog homog_mul(const Homog& a, const Homog& b) {
  Homog r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Homog twisted_power(int n, int qpow) {
  Homog r{QPoly(1)};
  for (int i = 0; i < n; ++i) r = homog_mul(r, Homog{q_int(i, qpow), QPoly(1)});
  return r;
}

// Divided-power constants by expanding xi^(a) xi^(b) and peeling off twisted powers from the top.
std::vector<QPoly> oracle_constants(int a, int b, int qpow) {
  Homog prod = homog_mul(twisted_power(a, qpow), twisted_power(b, qpow));
  const int n = a + b;
  std::vector<QPoly> t(n + 1);  // t[k]: coefficient of y^(n-k) xi^(k)
  for (int k = n; k >= 0; --k) {
    t[k] = prod[k];
    const Homog tp = twisted_power(k, qpow);
    for (int j = 0; j <= k; ++j) prod[j] -= t[k] * tp[j];
  }
  std::vector<QPoly> s(n + 1);
  const QPoly den = q_factorial(a, qpow) * q_factorial(b, qpow);
  for (int i = 0; i <= std::min(a, b); ++i) {
    auto v = divide_exact(t[n - i] * q_factorial(n - i, qpow), den);
    REQUIRE(v.has_value());
    s[i] = *v;
  }
  while (!s.empty() && s.back().is_zero()) s.pop_back();
  return s;
}

std::vector<QPoly> trimmed(std::vector<QPoly> v) {
  while (!v.empty() && v.back().is_zero()) v.pop_back();
  return v;
}

}  // namespace

TEST_SUITE("divpow") {
  TEST_CASE("structure constants agree with the expansion oracle") {
    for (int qpow : {1, 2, 3, 4, 9})
      for (int a = 0; a <= 5; ++a)
        for (int b = 0; b <= 5; ++b) {
          CAPTURE(qpow);
          CAPTURE(a);
          CAPTURE(b);
          const auto want = oracle_constants(a, b, qpow);
          CHECK(trimmed(*structure_constants(a, b, qpow)) == want);
          CHECK(trimmed(structure_constants_closed_form(a, b, qpow)) == want);
        }
  }

  TEST_CASE("twisted powers") {
    // xi^(2) = xi^2 + y xi
    CHECK(twisted_power_expand(2, 1) == std::vector<QPoly>{QPoly(0), QPoly(1), QPoly(1)});
    CHECK(twisted_power_expand(3, 2) == twisted_power(3, 2));
  }

  TEST_CASE("omega * omega at level -1, p = 2") {
    const DPContext ctx = DPContext::level(2, 1);
    const DPElem w = DPElem::basis(ctx, 1);
    DPElem want(ctx);
    want.add_term(2, XPoly(LocScalar(qp({1, 0, 1}))));   // (2)_{q^2}
    want.add_term(1, xmono(qp({-1, 1}), 1));             // -(1 - q) x
    CHECK(w * w == want);
    CHECK(w.to_string() == "omega{1}");
  }

  TEST_CASE("xi^[1]^n = (n)_q! xi^[n] when y = 0") {
    const DPContext ctx = DPContext::generic(3, 1, XPoly(), Side::A);
    const DPElem xi = DPElem::basis(ctx, 1);
    for (int n = 0; n <= 6; ++n) CHECK(xi.pow(n) == DPElem::basis(ctx, n).scaled(XPoly(LocScalar(q_factorial(n)))));
  }

  TEST_CASE("contexts") {
    CHECK_THROWS_AS(DPContext::level(4, 1), DomainError);
    CHECK_THROWS_AS(DPContext::level(2, 4), DomainError);
    const DPContext a = DPContext::level(3, 1), b = DPContext::divided(3, 1);
    CHECK(a.q_power == 3);
    CHECK(b.q_power == 3);
    CHECK_FALSE(a.same_algebra(b));
    CHECK_THROWS_AS(DPElem::basis(a, 1) * DPElem::basis(b, 1), DomainError);
    DPContext small = a;
    small.max_index = 3;
    CHECK_THROWS_AS(DPElem::basis(small, 2) * DPElem::basis(small, 2), DegreeCapError);
  }

  TEST_CASE("property: commutative, associative, unital") {
    std::mt19937_64 gen(21);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int p : {2, 3}) {
      const DPContext ctx = DPContext::level(p, 1);
      auto rnd = [&] {
        DPElem e(ctx);
        for (int n = 0; n <= 3; ++n) e.add_term(n, xp({c(gen), c(gen)}));
        return e;
      };
      for (int s = 0; s < 15; ++s) {
        const DPElem a = rnd(), b = rnd(), d = rnd();
        CHECK(a * b == b * a);
        CHECK((a * b) * d == a * (b * d));
        CHECK(a * DPElem::one(ctx) == a);
        CHECK((a + b) * d == a * d + b * d);
      }
    }
  }

  TEST_CASE("blow-up is a ring map") {
    // A<xi>_{q^p} with twist (1-q^p)x  ->  A<omega>_{q(-1)} with twist (1-q)x, z = (p)_q
    for (int p : {2, 3}) {
      const DPContext src = DPContext::divided(p, 1), dst = DPContext::level(p, 1);
      const XPoly z(LocScalar(q_int(p)));
      for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b) {
          const DPElem ea = DPElem::basis(src, a), eb = DPElem::basis(src, b);
          CHECK(blowup(ea * eb, z, dst) == blowup(ea, z, dst) * blowup(eb, z, dst));
        }
    }
  }
}
