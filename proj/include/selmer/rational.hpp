#pragma once

// Exact rationals (GMP) plus the small amount of float plumbing the tables need.

#include <gmpxx.h>

#include <string>

namespace selmer {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// num/den in lowest terms.
BigRational make_rational(const BigInt &num, const BigInt &den);
/// 2^e for any integer e.
BigRational pow2(long e);
/// q^e for q >= 1 and any integer e.
BigRational pow_rational(unsigned long q, long e);

/// "num/den", or just "num" when the denominator is 1.
std::string to_string(const BigRational &r);
/// Parses "num/den" or an integer.
BigRational parse_rational(const std::string &text);

/// Rounds half-to-even at `digits` decimals and prints with exactly that many.
std::string format_fixed(const BigRational &r, int digits);
/// Same for a double, using its exact binary value.
std::string format_fixed(double x, int digits);

/// A float value with a certified absolute error bound.
struct Certified {
  double value = 0;
  double error = 0;
  bool divergent = false; // the underlying product diverges to 0
};

/// (q)_m = prod_{i=1..m} (1 - q^-i).
BigRational q_pochhammer(unsigned long q, unsigned long m);

/// (q)_inf truncated so the certified error is below tol.
Certified q_pochhammer_limit(unsigned long q, double tol);

} // namespace selmer
