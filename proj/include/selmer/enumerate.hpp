#pragma once

// Maximal totally isotropic subspaces (MTIs) of a symmetric F2 space.

#include "selmer/f2.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

namespace selmer {

inline constexpr std::size_t kDefaultEnumerationCap = 14;

/// Thrown when a space is larger than the enumeration cap.
class CapExceeded : public std::length_error {
public:
  using std::length_error::length_error;
};

/// Calls `visit` once per MTI containing `containing`, in a fixed order.
/// Throws std::invalid_argument if `containing` is not totally isotropic.
void for_each_mti(const BilinearSpace &space, const Subspace &containing,
                  const std::function<void(const Subspace &)> &visit,
                  std::size_t cap = kDefaultEnumerationCap);

/// All MTIs containing `containing`, sorted.
std::vector<Subspace> enumerate_mti(const BilinearSpace &space,
                                    const Subspace &containing,
                                    std::size_t cap = kDefaultEnumerationCap);

std::uint64_t count_mti(const BilinearSpace &space, const Subspace &containing,
                        std::size_t cap = kDefaultEnumerationCap);

/// dim of S intersected with the left block of the split.
std::size_t isotropy_rank(const BilinearSpace &space, const Subspace &s);

using RankHistogram = std::map<std::size_t, std::uint64_t>;

RankHistogram rank_histogram(const BilinearSpace &space, const Subspace &containing,
                             std::size_t cap = kDefaultEnumerationCap);

/// Uniform sampler over the MTIs containing a fixed subspace. Draw i uses its
/// own generator seeded from (seed, i), so draws can be made in any order or
/// from several threads and still agree.
class MtiSampler {
public:
  MtiSampler(const BilinearSpace &space, const Subspace &containing,
             std::uint64_t seed, std::size_t cap = kDefaultEnumerationCap);

  const Subspace &draw(std::uint64_t counter) const;
  std::size_t index(std::uint64_t counter) const;
  const std::vector<Subspace> &candidates() const { return all_; }

private:
  std::vector<Subspace> all_;
  std::uint64_t seed_;
};

Subspace sample_uniform_mti(const BilinearSpace &space, const Subspace &containing,
                            std::uint64_t seed,
                            std::size_t cap = kDefaultEnumerationCap);

/// SplitMix64 finalizer; used for per-draw stream splitting.
std::uint64_t splitmix64(std::uint64_t x);

} // namespace selmer
