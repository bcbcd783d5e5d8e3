#pragma once

// Rational type classification, the model of the rational Selmer image,
// and the density predictions built from the local probabilities.

#include "selmer/distributions.hpp"
#include "selmer/euler.hpp"
#include "selmer/f2.hpp"
#include "selmer/types.hpp"

#include <optional>
#include <vector>

namespace selmer {

/// Which rational classes lie in the Selmer group and how they look 2-adically.
/// The two sign conditions on 2 and -2 only make sense when 2 is present and
/// must be left unset otherwise.
struct SelmerFlags {
  bool has_p3mod4 = false;
  bool has_two = false;
  std::optional<bool> sgn2_two_zero;
  std::optional<bool> sgn2_minus_two_zero;
  bool sgn2_minus_one_zero = false;
  bool has_p1mod4 = false; // only feeds the `trivial` tag
};

struct TypeResult {
  QType type;
  bool trivial; // the rational part is just {1, -1}
  bool merged;  // r1 = 0, where B(i) = B(iii) and B(ii) = B(iv)
};

/// Throws std::invalid_argument for a combination the classification excludes.
TypeResult classify_type(const SelmerFlags &flags, std::optional<unsigned> r1 = std::nullopt);

/// V + W with V = I^2 + H^(r1/2-1) and W = H^(r1/2+r2) for A types or
/// I^2 + H^(r1/2+r2-1) for B types, and the span of the rational generators.
struct SignatureModel {
  BilinearSpace space;
  Subspace sq;
};

SignatureModel signature_model(QType type, unsigned r1, unsigned r2);
Subspace sq_basis(QType type, unsigned r1, unsigned r2);

/// Isotropy-rank law including the r1 = 0 convention (rank 0 surely).
Distribution isotropy_law(QType type, unsigned r1, unsigned r2);

struct Abcde {
  unsigned n = 0;
  BigRational a, c, d, e;
  Certified b;
  bool e_defined = false;
};

Abcde abcde(unsigned n, std::uint64_t prime_bound = kDefaultPrimeBound);

struct TypeDensity {
  QType type;
  BigRational constant; // density = constant + slope * b
  BigRational slope;
  Certified value;
};

std::vector<TypeDensity> type_density_table(unsigned n,
                                            std::uint64_t prime_bound = kDefaultPrimeBound);
std::vector<TypeDensity> type_density_table(const Abcde &k);

Certified trivial_type_density(unsigned n, std::uint64_t prime_bound = kDefaultPrimeBound);

/// Probability that the class group has 2-rank rho.
Certified class_rank_distribution(unsigned r1, unsigned r2, unsigned rho);
/// n-th moment of 2^rank.
BigRational class_moments(unsigned r1, unsigned r2, unsigned n);
/// Average number of 2-torsion elements of the narrow class group.
BigRational narrow_avg_2torsion(unsigned r1, unsigned r2);

} // namespace selmer
