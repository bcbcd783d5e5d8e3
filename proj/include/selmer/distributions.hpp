#pragma once

// Closed-form counts of maximal isotropic subspaces and the isotropy-rank
// laws of the six rational types.

#include "selmer/rational.hpp"
#include "selmer/types.hpp"

#include <utility>
#include <vector>

namespace selmer {

/// Number of MTIs in H^t (and in I^2 + H^t).
BigInt b_count(unsigned t);

/// Number of MTIs of H^n + H^(n+m) meeting the left block in dimension k.
BigInt d_count(unsigned n, unsigned m, unsigned k);

/// The isotropy-rank weights C_0 and C_1.
BigRational C_delta(unsigned delta, unsigned n, unsigned m, unsigned k);

struct Distribution {
  std::vector<std::pair<unsigned, BigRational>> support; // increasing k

  BigRational at(unsigned k) const;
  BigRational total() const;
  unsigned min_k() const { return support.front().first; }
  unsigned max_k() const { return support.back().first; }
  bool operator==(const Distribution &) const = default;
};

/// Law of the isotropy rank for a type with r1 real and r2 complex places.
/// r1 must be even and at least 2. Throws std::invalid_argument for
/// combinations where the law is undefined.
Distribution isotropy_distribution(QType type, unsigned r1, unsigned r2);

} // namespace selmer
