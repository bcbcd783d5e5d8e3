#pragma once

// Splitting symbols, partitions and local mass polynomials in x = 1/p.

#include "selmer/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace selmer {

/// Number of partitions of k into at most max_parts parts.
BigInt count_partitions(unsigned k, unsigned max_parts);

class MassPoly {
public:
  MassPoly() = default;
  explicit MassPoly(std::vector<BigRational> coeffs);
  static MassPoly constant(const BigRational &c);
  static MassPoly monomial(const BigRational &c, unsigned degree);

  /// Coefficient of x^i (zero past the end).
  BigRational coeff(unsigned i) const;
  const std::vector<BigRational> &coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  BigRational evaluate(const BigRational &x) const;
  /// Value at x = 1/p.
  BigRational at_prime(unsigned long p) const;

  MassPoly &operator+=(const MassPoly &o);
  MassPoly &operator*=(const MassPoly &o);
  MassPoly &operator*=(const BigRational &c);
  friend MassPoly operator+(MassPoly a, const MassPoly &b) { return a += b; }
  friend MassPoly operator*(MassPoly a, const MassPoly &b) { return a *= b; }
  friend MassPoly operator*(MassPoly a, const BigRational &c) { return a *= c; }

  bool operator==(const MassPoly &o) const { return coeffs_ == o.coeffs_; }
  std::string to_string() const;

private:
  void trim();
  std::vector<BigRational> coeffs_; // coeffs_[i] multiplies x^i
};

/// c(n, p) = sum_k q(k, n - k) x^k.
MassPoly c_poly(unsigned n);

struct SymbolPart {
  unsigned f; // inertia degree
  unsigned e; // ramification index
  auto operator<=>(const SymbolPart &) const = default;
};

class SplittingSymbol {
public:
  SplittingSymbol() = default;
  /// Stores the parts sorted; throws std::invalid_argument on a zero entry.
  explicit SplittingSymbol(std::vector<SymbolPart> parts);

  const std::vector<SymbolPart> &parts() const { return parts_; }
  unsigned degree() const;
  /// Discriminant exponent sum (e - 1) f.
  unsigned disc_exponent() const;
  bool all_even() const;
  /// Number of permutations of the parts that fix the symbol.
  BigInt symmetry() const;
  std::string to_string() const;

  auto operator<=>(const SplittingSymbol &) const = default;

private:
  std::vector<SymbolPart> parts_;
};

std::vector<SplittingSymbol> enumerate_symbols(unsigned n);
/// Symbols of degree n whose ramification indices are all even.
std::vector<SplittingSymbol> enumerate_symbols_even(unsigned n);

struct Partition {
  std::vector<unsigned> parts; // weakly decreasing, zeros allowed
  unsigned total() const;
  bool operator==(const Partition &) const = default;
  auto operator<=>(const Partition &) const = default;
  std::string to_string() const;
};

/// Partitions of k into exactly `count` parts, zero parts allowed.
std::vector<Partition> partitions_exact(unsigned k, unsigned count);
/// Partitions of k into exactly `count` odd parts.
std::vector<Partition> odd_partitions_exact(unsigned k, unsigned count);

/// e - 1 repeated f times for each part, padded with zeros to n - k parts.
Partition symbol_partition(const SplittingSymbol &s);

/// Halves every ramification index (all must be even).
SplittingSymbol phi(const SplittingSymbol &s);
SplittingSymbol phi_inverse(const SplittingSymbol &s);
/// Sends each odd part v to (v - 1) / 2.
Partition psi(const Partition &odd);
Partition psi_inverse(const Partition &p);

/// x^k / ((prod f) * symmetry).
MassPoly symbol_mass(const SplittingSymbol &s);

/// Mass of extensions with inertia f and ramification e over a base field
/// with residue degree f0, discriminant exponent `disc_exponent` and
/// `aut_divisor` automorphisms.
MassPoly component_mass(unsigned f, unsigned e, unsigned disc_exponent,
                        unsigned residue_degree = 1, unsigned aut_divisor = 1);

struct FamilyMass {
  MassPoly by_symbols;  // summed over symbols
  MassPoly closed_form; // x^(disc * m) c(m)
};

/// Total mass of degree divisor*m algebras that become split-unramified-like
/// over a degree `divisor` base with the given discriminant exponent, computed
/// two ways. Throws std::logic_error if they disagree.
FamilyMass mass_unramified_family(unsigned m, unsigned disc_exponent, unsigned divisor = 2);

/// c(m,p) / c(2m,p) / p^m for n = 2m.
BigRational prob_p_in_selmer(unsigned n, unsigned long p);

bool is_prime(unsigned long p);

} // namespace selmer
