#include "qtwist/qanalog.hpp"

#include "qtwist/errors.hpp"

namespace qtwist {

QPoly q_int(int n, int qpow) {
  if (n < 0) throw DomainError("q_int: negative argument");
  if (qpow <= 0) throw DomainError("q_int: q-power must be positive");
  if (n == 0) return QPoly();
  std::vector<Integer> c(static_cast<size_t>(n - 1) * qpow + 1, Integer(0));
  for (int i = 0; i < n; ++i) c[static_cast<size_t>(i) * qpow] = 1;
  return QPoly(std::move(c));
}

QPoly q_factorial(int n, int qpow) {
  if (n < 0) throw DomainError("q_factorial: negative argument");
  QPoly r(1);
  for (int j = 2; j <= n; ++j) r *= q_int(j, qpow);
  return r;
}

QPoly q_binomial(int n, int k, int qpow) {
  if (n < 0 || k < 0 || k > n) throw DomainError("q_binomial: need 0 <= k <= n");
  if (qpow <= 0) throw DomainError("q_binomial: q-power must be positive");
  if (k > n - k) k = n - k;
  // prod_{j=1..k} (1 - Q^(n-k+j)) / (1 - Q^j); every partial product is a
  // Gaussian binomial, so each division is exact.
  QPoly r(1);
  for (int j = 1; j <= k; ++j) {
    r *= (QPoly(1) - QPoly::q_power((n - k + j) * qpow));
    auto quot = divide_exact(r, QPoly(1) - QPoly::q_power(j * qpow));
    if (!quot) throw Error("q_binomial: internal division failure");
    r = std::move(*quot);
  }
  return r;
}

int ipow(int p, int m) {
  if (m < 0) throw DomainError("ipow: negative exponent");
  int r = 1;
  for (int i = 0; i < m; ++i) r *= p;
  return r;
}

}  // namespace qtwist
