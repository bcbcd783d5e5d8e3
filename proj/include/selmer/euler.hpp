#pragma once

// Euler products of the local Selmer probabilities with certified tails.

#include "selmer/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace selmer {

inline constexpr std::uint64_t kDefaultPrimeBound = 1000000;

/// Primes up to and including bound, by the sieve of Eratosthenes.
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

/// The primes p = residue mod modulus (all primes when modulus is 1).
struct PrimeClass {
  std::uint64_t modulus = 1;
  std::uint64_t residue = 0;
  bool contains(std::uint64_t p) const { return p % modulus == residue % modulus; }
};

/// A set T of primes: finitely many listed primes, optionally together with
/// a whole residue class.
struct PrimeSet {
  std::vector<std::uint64_t> finite;
  std::optional<PrimeClass> family;
};

/// prod over p in the class of (1 - t_p) with t_p the local probability of
/// lying in the Selmer group in degree n = 2m. m = 1 diverges to 0 and is
/// returned as exactly 0 with the divergent flag.
Certified selmer_free_product(unsigned n, const PrimeClass &cls,
                              std::uint64_t prime_bound = kDefaultPrimeBound,
                              const std::vector<std::uint64_t> &skip = {});

struct ProductValue {
  Certified value;
  std::optional<BigRational> exact; // set when only finitely many factors occur
};

/// prod_{p in S} t_p * prod_{q in T} (1 - t_q). Throws std::invalid_argument
/// when S and T overlap, when n is odd, or when T contains a residue class
/// and n = 2 (the product then diverges).
ProductValue prob_X_ST(unsigned n, const std::vector<std::uint64_t> &S, const PrimeSet &T,
                       std::uint64_t prime_bound = kDefaultPrimeBound);

} // namespace selmer
