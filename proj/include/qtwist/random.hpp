#pragma once

#include <cstdint>
#include <random>

#include "qtwist/connect.hpp"

namespace qtwist {

/// Seeded generators for property checks.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : eng_(seed) {}

  std::mt19937_64& engine() { return eng_; }
  int uniform(int lo, int hi);
  bool coin(double p_true = 0.5);

  /// Integer coefficients in [-bound, bound], degree <= max_deg (may be zero).
  QPoly qpoly(int max_deg, int bound);
  /// Element of Z[q]_(p,q-1); with `fractions`, sometimes divided by a random unit.
  LocScalar scalar(int p, int max_deg, int bound, bool fractions);
  XPoly xpoly(int p, int max_xdeg, int q_deg, int bound, bool fractions);
  /// Rank in [0, max_rank] (at least 1 when nonzero_rank), entries of x-degree <= max_xdeg.
  ConnModule module(int p, int m, Side side, int max_rank, int max_xdeg, bool nonzero_rank = true);

 private:
  std::mt19937_64 eng_;
};

}  // namespace qtwist
