#pragma once

#include "qtwist/qpoly.hpp"

namespace qtwist {

// q-analogs evaluated at Q = q^qpow. The default qpow = 1 gives the usual
// (n)_q = 1 + q + ... + q^(n-1).

/// (n)_{q^qpow}; (0) = 0.
QPoly q_int(int n, int qpow = 1);

/// (n)_{q^qpow}! = prod_{j=1..n} (j)_{q^qpow}; (0)! = 1.
QPoly q_factorial(int n, int qpow = 1);

/// Gaussian binomial (n choose k)_{q^qpow}; domain error unless 0 <= k <= n.
QPoly q_binomial(int n, int k, int qpow = 1);

/// q^(qpow * e), the common q-power factor in the structure constants.
inline QPoly q_pow(long e, int qpow = 1) { return QPoly::q_power(static_cast<int>(e * qpow)); }

/// The prime power p^m as an int.
int ipow(int p, int m);

}  // namespace qtwist
