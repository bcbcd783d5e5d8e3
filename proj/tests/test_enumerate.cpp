#include "doctest.h"
#include "support.hpp"

#include "selmer/enumerate.hpp"

#include <map>

using namespace selmer;
using selmer::testing::brute_isotropic_subspaces;
using selmer::testing::brute_mti;
using selmer::testing::random_space;

namespace {

Subspace span(std::size_t n, std::initializer_list<std::uint64_t> rows) {
  return Subspace::from_bits(n, rows);
}

} // namespace

TEST_CASE("enumerate_mti examples") {
  CHECK(enumerate_mti(BilinearSpace::H(), Subspace(2)).size() == 3);
  CHECK(enumerate_mti(BilinearSpace::hyperbolic(2), Subspace(4)).size() == 15);
  auto space = BilinearSpace::i2_plus_h(1);
  auto mtis = enumerate_mti(space, Subspace(4));
  CHECK(mtis.size() == 3);
  for (const auto &s : mtis)
    CHECK(s.contains_bits(space.canonical_bits()));
  CHECK(enumerate_mti(BilinearSpace::zero(), Subspace(0)).size() == 1);
  CHECK(enumerate_mti(BilinearSpace::I(), Subspace(1)).front().dim() == 0);
}

TEST_CASE("enumeration matches the brute-force oracle") {
  std::mt19937_64 rng(41);
  for (std::size_t n = 1; n <= 7; ++n) {
    for (int t = 0; t < 4; ++t) {
      auto space = random_space(rng, n);
      CHECK(enumerate_mti(space, Subspace(n)) == brute_mti(space, Subspace(n)));
      // Constrained: pick a random isotropic subspace as the fixed part.
      auto iso = brute_isotropic_subspaces(space);
      auto it = iso.begin();
      std::advance(it, static_cast<long>(rng() % iso.size()));
      CHECK(enumerate_mti(space, *it) == brute_mti(space, *it));
    }
  }
}

TEST_CASE("model families give equal counts and every output is maximal") {
  for (std::size_t t = 0; t <= 5; ++t) {
    auto h = BilinearSpace::hyperbolic(t);
    auto i2 = BilinearSpace::i2_plus_h(t);
    auto a = enumerate_mti(h, Subspace(h.dim()));
    auto b = enumerate_mti(i2, Subspace(i2.dim()));
    CHECK(a.size() == b.size());
    CHECK(std::is_sorted(a.begin(), a.end()));
    CHECK(std::adjacent_find(a.begin(), a.end()) == a.end());
    for (const auto &s : a)
      CHECK(h.is_maximal_totally_isotropic(s));
    for (const auto &s : b)
      CHECK(i2.is_maximal_totally_isotropic(s));
  }
  // H^2 and H^3 against the oracle.
  for (std::size_t t = 1; t <= 3; ++t) {
    auto h = BilinearSpace::hyperbolic(t);
    CHECK(enumerate_mti(h, Subspace(2 * t)) == brute_mti(h, Subspace(2 * t)));
  }
}

TEST_CASE("enumeration errors") {
  auto h = BilinearSpace::H();
  CHECK_THROWS_AS(enumerate_mti(h, Subspace::full(2)), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_mti(h, Subspace(3)), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_mti(BilinearSpace::hyperbolic(8), Subspace(16)), CapExceeded);
  CHECK_THROWS_AS(count_mti(BilinearSpace::hyperbolic(3), Subspace(6), 4), CapExceeded);
}

TEST_CASE("isotropy rank") {
  auto space = BilinearSpace::orthogonal_sum(BilinearSpace::H(), BilinearSpace::H());
  CHECK(isotropy_rank(space, span(4, {0b0001})) == 1);
  CHECK(isotropy_rank(space, span(4, {0b0100})) == 0);
  CHECK(isotropy_rank(space, span(4, {0b0101, 0b0010})) == 1);
  CHECK_THROWS_AS(isotropy_rank(BilinearSpace::hyperbolic(2), span(4, {1})),
                  std::invalid_argument);

  auto h = rank_histogram(space, Subspace(4));
  std::map<std::size_t, std::uint64_t> oracle;
  for (const auto &s : brute_mti(space, Subspace(4))) {
    std::size_t k = 0;
    for (std::uint64_t v = 1; v < 4; ++v)
      if (s.contains_bits(v))
        ++k; // nonzero vectors of S inside V
    oracle[k == 0 ? 0 : k == 1 ? 1 : 2]++;
  }
  CHECK(h == RankHistogram(oracle.begin(), oracle.end()));
  CHECK(h == RankHistogram{{0, 6}, {1, 9}});
}

TEST_CASE("sampling") {
  auto h = BilinearSpace::H();
  auto support = enumerate_mti(h, Subspace(2));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto s = sample_uniform_mti(h, Subspace(2), seed);
    CHECK(std::find(support.begin(), support.end(), s) != support.end());
  }

  auto h2 = BilinearSpace::hyperbolic(2);
  MtiSampler sampler(h2, Subspace(4), 12345);
  REQUIRE(sampler.candidates().size() == 15);
  std::vector<int> hits(15);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i)
    ++hits[sampler.index(static_cast<std::uint64_t>(i))];
  for (int c : hits)
    CHECK(std::abs(static_cast<double>(c) / draws - 1.0 / 15) < 0.01);

  MtiSampler again(h2, Subspace(4), 12345);
  MtiSampler other(h2, Subspace(4), 54321);
  int same = 0, differ = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    same += sampler.index(i) == again.index(i);
    differ += sampler.index(i) != other.index(i);
  }
  CHECK(same == 200);
  CHECK(differ > 0);

  // A constrained sampler only returns subspaces containing the constraint.
  auto v = BilinearSpace::orthogonal_sum(BilinearSpace::i2_plus_h(1), BilinearSpace::i2_plus_h(1));
  const std::uint64_t wcan = v.canonical_bits();
  MtiSampler constrained(v, span(8, {wcan}), 99);
  for (std::uint64_t i = 0; i < 500; ++i)
    CHECK(constrained.draw(i).contains_bits(wcan));
}
