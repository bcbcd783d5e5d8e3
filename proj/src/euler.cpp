#include "selmer/euler.hpp"

#include "selmer/masses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace selmer {

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound < 2)
    return out;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i])
      continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i)
      composite[j] = true;
  }
  return out;
}

namespace {

unsigned half_degree(unsigned n, const char *what) {
  if (n == 0 || n % 2 != 0)
    throw std::invalid_argument(std::string(what) + ": degree must be even and positive");
  return n / 2;
}

long double horner(const MassPoly &poly, long double x) {
  long double acc = 0;
  const auto &c = poly.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it)
    acc = acc * x + it->get_d();
  return acc;
}

} // namespace

Certified selmer_free_product(unsigned n, const PrimeClass &cls, std::uint64_t prime_bound,
                              const std::vector<std::uint64_t> &skip) {
  const unsigned m = half_degree(n, "selmer_free_product");
  if (cls.modulus == 0)
    throw std::invalid_argument("selmer_free_product: modulus must be positive");
  if (m == 1)
    return {0.0, 0.0, true}; // sum of 1/p over a class of primes diverges
  if (prime_bound < 2)
    throw std::invalid_argument("selmer_free_product: prime bound must be at least 2");

  const MassPoly num = c_poly(m), den = c_poly(2 * m);
  long double product = 1;
  std::size_t factors = 0;
  for (auto p : primes_up_to(prime_bound)) {
    if (!cls.contains(p) || std::find(skip.begin(), skip.end(), p) != skip.end())
      continue;
    const long double x = 1.0L / static_cast<long double>(p);
    const long double t = horner(num, x) / horner(den, x) * std::pow(x, static_cast<long double>(m));
    product *= 1 - t;
    ++factors;
  }
  // c(m,p) <= c(2m,p), so t_p <= p^-m and the tail sum is at most
  // sum_{k > P} k^-m <= P^(1-m) / (m - 1).
  const double tail = std::pow(static_cast<double>(prime_bound), 1.0 - m) / (m - 1);
  const double b = static_cast<double>(product);
  const double rounding = 8.0 * static_cast<double>(factors + 1) *
                          std::numeric_limits<double>::epsilon() * b;
  return {b * (1 - tail / 2), b * tail / 2 + rounding, false};
}

ProductValue prob_X_ST(unsigned n, const std::vector<std::uint64_t> &S, const PrimeSet &T,
                       std::uint64_t prime_bound) {
  half_degree(n, "prob_X_ST");
  for (auto p : S) {
    if (!is_prime(p))
      throw std::invalid_argument("prob_X_ST: S contains a non-prime");
    if (std::find(T.finite.begin(), T.finite.end(), p) != T.finite.end() ||
        (T.family && T.family->contains(p)))
      throw std::invalid_argument("prob_X_ST: S and T must be disjoint");
  }
  for (auto q : T.finite)
    if (!is_prime(q))
      throw std::invalid_argument("prob_X_ST: T contains a non-prime");

  BigRational exact = 1;
  for (auto p : S)
    exact *= prob_p_in_selmer(n, p);
  std::vector<std::uint64_t> seen;
  for (auto q : T.finite) {
    if (std::find(seen.begin(), seen.end(), q) != seen.end())
      continue;
    seen.push_back(q);
    exact *= 1 - prob_p_in_selmer(n, q);
  }

  if (!T.family)
    return {{exact.get_d(), 0.0, false}, exact};
  if (n == 2)
    throw std::invalid_argument(
        "prob_X_ST: an infinite family of primes is only allowed for n > 2");
  std::vector<std::uint64_t> skip;
  for (auto q : seen)
    if (T.family->contains(q))
      skip.push_back(q);
  const Certified tail = selmer_free_product(n, *T.family, prime_bound, skip);
  const double scale = exact.get_d();
  return {{tail.value * scale,
           tail.error * scale + 4 * std::numeric_limits<double>::epsilon() * scale, false},
          std::nullopt};
}

} // namespace selmer
