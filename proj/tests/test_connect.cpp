#include <doctest.h>

#include <random>
#include <set>

#include "qtwist/connect.hpp"
#include "qtwist/errors.hpp"
#include "qtwist/qanalog.hpp"
#include "qtwist/random.hpp"
#include "support.hpp"

using namespace qtwist;
using testing::qp;
using testing::xmono;
using testing::xp;

namespace {

// Exhaustive kernel count over S = Z[t]/(p,t)^N: every section with x-degree <= d
// is lifted to Z[q] (t -> q - 1), pushed through theta exactly, and tested for
// membership in (p, q-1)^N by expanding in t with binomial coefficients.
bool oracle_in_ideal(const QPoly& f, int p, int n) {
  std::vector<Integer> t(static_cast<size_t>(std::max(f.degree() + 1, 1)), 0);
  for (int e = 0; e <= f.degree(); ++e) {
    Integer binom = 1;  // C(e, b)
    for (int b = 0; b <= e; ++b) {
      t[b] += f.coeff(e) * binom;
      binom = binom * (e - b) / (b + 1);
    }
  }
  for (int b = 0; b < n && b < static_cast<int>(t.size()); ++b) {
    Integer pw = 1;
    for (int i = 0; i < n - b; ++i) pw *= p;
    if (t[b] % pw != 0) return false;
  }
  return true;
}

long long oracle_kernel_size(const ConnModule& mod, int n, int d, std::vector<Vec>* kernel) {
  const int p = mod.p;
  std::vector<long long> mods(n);
  for (int b = 0; b < n; ++b) {
    mods[b] = 1;
    for (int i = 0; i < n - b; ++i) mods[b] *= p;
  }
  const int slots = mod.rank * (d + 1) * n;
  std::vector<long long> digits(slots, 0);
  long long count = 0;
  while (true) {
    Vec v(mod.rank);
    for (int i = 0; i < mod.rank; ++i)
      for (int j = 0; j <= d; ++j) {
        QPoly c;
        QPoly tb(1);
        for (int b = 0; b < n; ++b) {
          c += tb * QPoly(Integer(static_cast<long>(digits[(i * (d + 1) + j) * n + b])));
          tb *= qp({-1, 1});
        }
        v[i] += xmono(c, j);
      }
    const Vec w = theta_apply(mod, v);
    bool zero = true;
    for (const auto& f : w)
      for (const auto& c : f.coeffs())
        if (!oracle_in_ideal(c.num(), p, n)) zero = false;
    if (zero) {
      ++count;
      if (kernel) kernel->push_back(v);
    }
    int s = 0;
    for (; s < slots; ++s) {
      if (++digits[s] < mods[s % n]) break;
      digits[s] = 0;
    }
    if (s == slots) break;
  }
  return count;
}

long long span_size(const std::vector<TruncSection>& gens, const TruncRing& ring) {
  std::set<TruncSection> seen;
  if (gens.empty()) return 1;
  TruncSection zero = gens[0];
  for (auto& row : zero)
    for (auto& c : row) c = ring.zero();
  std::vector<TruncSection> frontier{zero};
  seen.insert(zero);
  while (!frontier.empty()) {
    TruncSection cur = frontier.back();
    frontier.pop_back();
    for (const auto& g : gens) {
      TruncSection nxt = cur;
      for (size_t i = 0; i < nxt.size(); ++i)
        for (size_t j = 0; j < nxt[i].size(); ++j) nxt[i][j] = ring.add(nxt[i][j], g[i][j]);
      if (seen.insert(nxt).second) frontier.push_back(nxt);
    }
  }
  return static_cast<long long>(seen.size());
}

long long ipow_ll(int p, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

}  // namespace

TEST_SUITE("connect") {
  TEST_CASE("theta on the trivial connection and on constant sections") {
    const ConnModule triv = ConnModule::trivial(2, 1, Side::A, 1);
    CHECK(theta_apply(triv, {xp({0, 0, 1})})[0] == xmono(qp({1, 1}) * q_int(2, 2), 1));
    ConnModule mod{3, 1, Side::A, 2, {{xp({1}), xp({0, 1})}, {XPoly(), xp({2})}}};
    const Vec e1 = theta_apply(mod, {xp({1}), XPoly()});
    CHECK(e1 == Vec{xp({1}), XPoly()});
    CHECK_THROWS_AS(theta_apply(mod, {xp({1})}), DomainError);
  }

  TEST_CASE("level raising examples") {
    for (int p : {2, 3}) {
      const ConnModule one{p, 1, Side::APrime, 1, {{xp({1})}}};
      const ConnModule lin{p, 1, Side::APrime, 1, {{xp({0, 1})}}};
      CHECK(level_raise(one).theta[0][0] == xmono(QPoly(1), p - 1));
      CHECK(level_raise(lin).theta[0][0] == xmono(QPoly(1), 2 * p - 1));
      CHECK(level_raise(lin).m == 0);
      CHECK(level_raise(lin).side == Side::A);
    }
    CHECK_THROWS_AS(level_raise(ConnModule::trivial(2, 1, Side::A, 1)), DomainError);
    CHECK_THROWS_AS(level_raise(ConnModule::trivial(2, 0, Side::APrime, 1)), DomainError);
  }

  TEST_CASE("descent") {
    const ConnModule zero = ConnModule::trivial(2, 0, Side::A, 2);
    auto r0 = descent_solve(zero);
    REQUIRE(std::holds_alternative<ConnModule>(r0));
    CHECK(std::get<ConnModule>(r0) == ConnModule::trivial(2, 1, Side::APrime, 2));
    for (int p : {2, 3}) {
      const ConnModule lift{p, 0, Side::A, 1, {{xmono(QPoly(1), p - 1)}}};
      auto r = descent_solve(lift);
      REQUIRE(std::holds_alternative<ConnModule>(r));
      CHECK(std::get<ConnModule>(r).theta[0][0] == xp({1}));
      const ConnModule bad{p, 0, Side::A, 1, {{xmono(QPoly(1), p)}}};
      auto rb = descent_solve(bad);
      REQUIRE(std::holds_alternative<NoSolution>(rb));
      CHECK(std::get<NoSolution>(rb).row == 0);
    }
  }

  TEST_CASE("commutation identities examples") {
    for (int p : {2, 3}) {
      const CommuteSides one = commute_check(p, 1, CoordPoly::constant(LocScalar(1), Side::APrime));
      CHECK(one.sigma_lhs == xp({1}));
      CHECK(one.deriv_lhs.is_zero());
      CHECK(one.pass());
      const CommuteSides lin = commute_check(p, 1, CoordPoly::x(Side::APrime));
      CHECK(lin.deriv_lhs == xmono(q_int(p), p - 1));
      CHECK(lin.deriv_rhs == xmono(q_int(p), p - 1));
    }
  }

  TEST_CASE("property: level raising is well defined, round-trips and is functorial") {
    RandomSource rs(51);
    for (int p : {2, 3})
      for (int m : {1, 2})
        for (int s = 0; s < 8; ++s) {
          const ConnModule mp = rs.module(p, m, Side::APrime, 3, 2);
          const ConnModule raised = level_raise(mp);
          Vec v(mp.rank);
          for (auto& f : v) f = rs.xpoly(p, 4, 1, 3, true);
          Vec rhs = rel_frobenius(theta_apply(mp, v), p);
          for (auto& f : rhs) f = f * xmono(QPoly(1), p - 1);
          CHECK(theta_apply(raised, rel_frobenius(v, p)) == rhs);
          auto back = descent_solve(raised);
          REQUIRE(std::holds_alternative<ConnModule>(back));
          CHECK(std::get<ConnModule>(back) == mp);
          // the identity is horizontal from a module to itself
          Matrix id(mp.rank, Vec(mp.rank));
          for (int i = 0; i < mp.rank; ++i) id[i][i] = xp({1});
          CHECK(is_horizontal(id, raised, raised));
        }
  }

  TEST_CASE("adic ideal membership") {
    // (p^m)_q lies in (p, q-1) but (2)_q = 2 + t is not in (2, t)^2
    CHECK(in_adic_ideal(LocScalar(q_int(2)), 2, 1));
    CHECK_FALSE(in_adic_ideal(LocScalar(q_int(2)), 2, 2));
    CHECK(in_adic_ideal(LocScalar(q_int(2) * q_int(2)), 2, 2));
    CHECK(in_adic_ideal(LocScalar(qp({-1, 1}) * qp({-1, 1})), 3, 2));
    CHECK(in_adic_ideal(LocScalar(0), 5, 9));
  }

  TEST_CASE("quasi-nilpotence") {
    CHECK(quasi_nilpotence_check(ConnModule::trivial(2, 1, Side::A, 0), {3, 2}, 10).nilpotent);
    for (int n = 1; n <= 3; ++n) {
      const QuasiNilpotence r = quasi_nilpotence_check(ConnModule::trivial(2, 1, Side::A, 1), {n, 2}, 10);
      CHECK(r.nilpotent);
      CHECK(r.k <= n);
    }
    const ConnModule ident{2, 0, Side::A, 1, {{xp({1})}}};
    CHECK_FALSE(quasi_nilpotence_check(ident, {2, 1}, 20).nilpotent);
  }

  TEST_CASE("truncated ring") {
    const TruncRing s(2, 3);
    CHECK(s.size() == 8 * 4 * 2);
    // 1/(1+q) = 1/(2+t) is not defined at p = 2, but 1/(3+t) is
    CHECK_THROWS_AS(s.from_scalar(LocScalar::from_fraction(QPoly(1), q_int(2), 3)), DomainError);
    const LocScalar inv = LocScalar::from_fraction(QPoly(1), qp({2, 1}), 2);
    CHECK(s.mul(s.from_scalar(inv), s.from_poly(qp({2, 1}))) == s.from_integer(1));
    CHECK_THROWS_AS(TruncRing(2, 6), ResourceCapError);
  }

  TEST_CASE("H^0 of the trivial connection at N = 1 is everything") {
    const H0Result h = h0_truncated(ConnModule::trivial(3, 1, Side::A, 2), {1, 2});
    CHECK(h.log_order == 2 * 3);
    CHECK(h0_truncated(ConnModule::trivial(3, 1, Side::A, 0), {2, 1}).generators.empty());
  }

  TEST_CASE("H^0 against exhaustive enumeration") {
    RandomSource rs(52);
    std::vector<std::pair<ConnModule, TruncationSpec>> cases{
        {ConnModule::trivial(2, 1, Side::A, 1), {2, 1}},
        {ConnModule::trivial(3, 1, Side::A, 1), {2, 1}},
        {ConnModule{2, 0, Side::A, 1, {{xp({1})}}}, {2, 1}},
        {ConnModule{2, 1, Side::A, 1, {{xp({0, 1})}}}, {2, 2}},
    };
    for (int s = 0; s < 4; ++s) cases.push_back({rs.module(2, 1, Side::A, 2, 1), {2, 1}});
    for (const auto& [mod, t] : cases) {
      CAPTURE(mod.rank);
      const H0Result h = h0_truncated(mod, t);
      std::vector<Vec> kernel;
      const long long brute = oracle_kernel_size(mod, t.N, t.d, &kernel);
      CHECK(ipow_ll(mod.p, h.log_order) == brute);
      const TruncRing ring(mod.p, t.N);
      for (const auto& g : h.generators) {
        const TruncSection img = theta_apply_truncated(mod, ring, g);
        for (const auto& row : img)
          for (const auto& c : row) CHECK(ring.is_zero(c));
      }
      CHECK(span_size(h.generators, ring) == brute);
    }
  }
}
