#pragma once

#include <initializer_list>
#include <vector>

#include "qtwist/coordring.hpp"
#include "qtwist/qpoly.hpp"

namespace testing {

inline qtwist::QPoly qp(std::initializer_list<long> c) {
  std::vector<qtwist::Integer> v;
  for (long a : c) v.emplace_back(a);
  return qtwist::QPoly(std::move(v));
}

inline qtwist::XPoly xp(std::initializer_list<long> c) {
  std::vector<qtwist::LocScalar> v;
  for (long a : c) v.emplace_back(a);
  return qtwist::XPoly(std::move(v));
}

inline qtwist::XPoly xmono(const qtwist::QPoly& c, int e) {
  return qtwist::XPoly::monomial(qtwist::LocScalar(c), e);
}

// Gaussian binomial by counting: the coefficient of q^s in (n k)_q is the number
// of k-subsets of {0..n-1} whose element sum exceeds 0+1+..+(k-1) by s.
inline qtwist::QPoly gauss_binomial_by_subsets(int n, int k, int qpow = 1) {
  std::vector<qtwist::Integer> c(static_cast<size_t>(k * (n - k) * qpow + 1), 0);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    int sum = 0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) sum += i;
    c[static_cast<size_t>((sum - k * (k - 1) / 2) * qpow)] += 1;
  }
  return qtwist::QPoly(std::move(c));
}

}  // namespace testing
