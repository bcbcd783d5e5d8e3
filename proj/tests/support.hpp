#pragma once

// Shared helpers for the unit tests: random spaces and brute-force oracles.

#include "selmer/f2.hpp"

#include <random>
#include <set>
#include <vector>

namespace selmer::testing {

inline BilinearSpace random_space(std::mt19937_64 &rng, std::size_t n) {
  for (;;) {
    std::vector<std::uint64_t> g(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        if (rng() & 1U) {
          g[i] |= std::uint64_t{1} << j;
          g[j] |= std::uint64_t{1} << i;
        }
    if (f2::rank(g) == n)
      return BilinearSpace(n, g);
  }
}

inline std::vector<std::uint64_t> random_invertible(std::mt19937_64 &rng, std::size_t n) {
  for (;;) {
    std::vector<std::uint64_t> p(n);
    for (auto &r : p)
      r = rng() & f2::mask(n);
    if (f2::rank(p) == n)
      return p;
  }
}

/// The Gram matrix of the same form in the basis given by the rows of p.
inline BilinearSpace change_basis(const BilinearSpace &space,
                                  const std::vector<std::uint64_t> &p) {
  const std::size_t n = space.dim();
  std::vector<std::uint64_t> g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (space.eval_bits(p[i], p[j]))
        g[i] |= std::uint64_t{1} << j;
  return BilinearSpace(n, g);
}

/// Every totally isotropic subspace, found by growing spans one vector at a
/// time. Only usable for small dimensions.
inline std::set<Subspace> brute_isotropic_subspaces(const BilinearSpace &space) {
  const std::size_t n = space.dim();
  std::set<Subspace> seen{Subspace(n)};
  std::vector<Subspace> frontier{Subspace(n)};
  while (!frontier.empty()) {
    std::vector<Subspace> next;
    for (const auto &s : frontier) {
      for (std::uint64_t v = 1; v < (std::uint64_t{1} << n); ++v) {
        if (s.contains_bits(v) || space.eval_bits(v, v))
          continue;
        bool orth = true;
        for (auto r : s.rows())
          orth = orth && !space.eval_bits(v, r);
        if (!orth)
          continue;
        auto rows = s.rows();
        rows.push_back(v);
        auto t = Subspace::from_bits(n, rows);
        if (seen.insert(t).second)
          next.push_back(t);
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

/// Maximal elements under inclusion of the brute-force isotropic family.
inline std::vector<Subspace> brute_mti(const BilinearSpace &space,
                                       const Subspace &containing) {
  const auto all = brute_isotropic_subspaces(space);
  std::vector<Subspace> out;
  for (const auto &s : all) {
    if (!s.contains(containing))
      continue;
    bool maximal = true;
    for (const auto &t : all)
      if (t.dim() > s.dim() && t.contains(s)) {
        maximal = false;
        break;
      }
    if (maximal)
      out.push_back(s);
  }
  return out; // std::set iteration order is already sorted
}

} // namespace selmer::testing
