#include "qtwist/random.hpp"

namespace qtwist {

int RandomSource::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }

bool RandomSource::coin(double p_true) { return std::bernoulli_distribution(p_true)(eng_); }

QPoly RandomSource::qpoly(int max_deg, int bound) {
  const int deg = uniform(0, max_deg);
  std::vector<Integer> c;
  for (int i = 0; i <= deg; ++i) c.emplace_back(uniform(-bound, bound));
  return QPoly(std::move(c));
}

LocScalar RandomSource::scalar(int p, int max_deg, int bound, bool fractions) {
  const QPoly num = qpoly(max_deg, bound);
  if (!fractions || !coin(0.3)) return LocScalar(num);
  QPoly den;
  do {
    den = qpoly(2, 3);
  } while (den.is_zero() || den.eval_at_one() % p == 0);
  return LocScalar::from_fraction(num, den, p);
}

XPoly RandomSource::xpoly(int p, int max_xdeg, int q_deg, int bound, bool fractions) {
  const int deg = uniform(0, max_xdeg);
  std::vector<LocScalar> c;
  for (int i = 0; i <= deg; ++i) c.push_back(coin(0.7) ? scalar(p, q_deg, bound, fractions) : LocScalar());
  return XPoly(std::move(c));
}

ConnModule RandomSource::module(int p, int m, Side side, int max_rank, int max_xdeg, bool nonzero_rank) {
  ConnModule mod;
  mod.p = p;
  mod.m = m;
  mod.side = side;
  mod.rank = uniform(nonzero_rank ? 1 : 0, max_rank);
  mod.theta.assign(mod.rank, Vec(mod.rank));
  for (auto& row : mod.theta)
    for (auto& f : row) f = xpoly(p, max_xdeg, 2, 3, true);
  mod.validate();
  return mod;
}

}  // namespace qtwist
