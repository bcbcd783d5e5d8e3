#include "doctest.h"

#include "selmer/euler.hpp"
#include "selmer/masses.hpp"

#include <cmath>

using namespace selmer;

TEST_CASE("sieve") {
  CHECK(primes_up_to(1).empty());
  CHECK(primes_up_to(2) == std::vector<std::uint64_t>{2});
  CHECK(primes_up_to(30) == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  auto ps = primes_up_to(20000);
  std::size_t count = 0;
  for (std::uint64_t n = 2; n <= 20000; ++n)
    count += is_prime(n);
  CHECK(ps.size() == count);
  CHECK(primes_up_to(1000000).size() == 78498);
}

TEST_CASE("finite prime sets are exact") {
  auto one = prob_X_ST(4, {2}, {});
  REQUIRE(one.exact);
  CHECK(*one.exact == parse_rational("3/17"));
  auto empty = prob_X_ST(4, {}, {});
  CHECK(*empty.exact == 1);
  auto mixed = prob_X_ST(4, {2}, PrimeSet{{3, 5}, std::nullopt});
  CHECK(*mixed.exact == prob_p_in_selmer(4, 2) * (1 - prob_p_in_selmer(4, 3)) *
                            (1 - prob_p_in_selmer(4, 5)));
  // Listing a prime twice does not count it twice.
  CHECK(*prob_X_ST(4, {}, PrimeSet{{3, 3}, std::nullopt}).exact ==
        1 - prob_p_in_selmer(4, 3));
}

TEST_CASE("prob_X_ST errors") {
  CHECK_THROWS_AS(prob_X_ST(4, {3}, PrimeSet{{3}, std::nullopt}), std::invalid_argument);
  CHECK_THROWS_AS(prob_X_ST(4, {7}, PrimeSet{{}, PrimeClass{4, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(prob_X_ST(2, {}, PrimeSet{{}, PrimeClass{4, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(prob_X_ST(5, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(prob_X_ST(4, {4}, {}), std::invalid_argument);
  CHECK_NOTHROW(prob_X_ST(4, {5}, PrimeSet{{}, PrimeClass{4, 3}}, 1000));
}

TEST_CASE("Euler product over primes 3 mod 4") {
  auto b = prob_X_ST(4, {}, PrimeSet{{}, PrimeClass{4, 3}});
  CHECK(!b.exact);
  CHECK(b.value.error < 1e-6);
  CHECK(std::abs(b.value.value - 0.87434) < 1e-5);
  // Reference from a separate script: truncated product to 10^6, 0.87433646.
  CHECK(std::abs(b.value.value - 0.87433646) < 1e-6);
}

TEST_CASE("halving the truncation stays within the reported bound") {
  for (unsigned n : {4u, 6u, 10u}) {
    for (std::uint64_t bound : {2000ull, 20000ull, 200000ull}) {
      auto fine = selmer_free_product(n, PrimeClass{1, 0}, bound);
      auto coarse = selmer_free_product(n, PrimeClass{1, 0}, bound / 2);
      CHECK(std::abs(fine.value - coarse.value) <= coarse.error + fine.error);
    }
  }
}

TEST_CASE("divergent products") {
  auto d = selmer_free_product(2, PrimeClass{4, 3});
  CHECK(d.divergent);
  CHECK(d.value == 0);
  CHECK(d.error == 0);
  CHECK_THROWS_AS(selmer_free_product(3, PrimeClass{}), std::invalid_argument);
  CHECK_THROWS_AS(selmer_free_product(4, PrimeClass{0, 0}), std::invalid_argument);
}
