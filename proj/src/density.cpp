#include "selmer/density.hpp"

#include "selmer/masses.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace selmer {

TypeResult classify_type(const SelmerFlags &flags, std::optional<unsigned> r1) {
  QType type;
  if (!flags.has_two) {
    if (flags.sgn2_two_zero || flags.sgn2_minus_two_zero)
      throw std::invalid_argument(
          "classify_type: sign conditions on 2 and -2 need 2 in the Selmer group");
    if (flags.sgn2_minus_one_zero)
      throw std::invalid_argument(
          "classify_type: sgn2(-1) = 0 is excluded when 2 is not in the Selmer group");
    type = flags.has_p3mod4 ? QType::B3 : QType::B1;
  } else {
    if (!flags.sgn2_two_zero || !flags.sgn2_minus_two_zero)
      throw std::invalid_argument(
          "classify_type: sign conditions on 2 and -2 are required when 2 is present");
    const bool two = *flags.sgn2_two_zero, minus_two = *flags.sgn2_minus_two_zero,
               minus_one = flags.sgn2_minus_one_zero;
    const int zeros = two + minus_two + minus_one;
    if (zeros == 3)
      type = QType::A1;
    else if (zeros == 2)
      throw std::invalid_argument(
          "classify_type: two of sgn2(2), sgn2(-2), sgn2(-1) vanishing forces the third");
    else if (minus_one)
      type = QType::A2;
    else if (zeros == 0)
      type = flags.has_p3mod4 ? QType::B4 : QType::B2;
    else if (two)
      type = flags.has_p3mod4 ? QType::B3 : QType::B1;
    else
      type = QType::B3;
  }
  const bool trivial = !flags.has_p3mod4 && !flags.has_two && !flags.has_p1mod4;
  const bool merged = r1 && *r1 == 0 && !is_type_a(type);
  return {type, trivial, merged};
}

SignatureModel signature_model(QType type, unsigned r1, unsigned r2) {
  if (r1 < 2 || r1 % 2 != 0)
    throw std::invalid_argument("sq_basis: r1 must be even and at least 2");
  const unsigned h = r1 / 2;
  const auto v = BilinearSpace::i2_plus_h(h - 1);
  const bool alternating = is_type_a(type);
  const unsigned w_h = alternating ? h + r2 : h + r2 - 1;
  const auto w = alternating ? BilinearSpace::hyperbolic(w_h) : BilinearSpace::i2_plus_h(w_h);
  const auto space = BilinearSpace::orthogonal_sum(v, w);

  const std::size_t shift = v.dim();
  const std::uint64_t v_can = v.canonical_bits();
  const std::uint64_t w_can = w.canonical_bits() << shift;
  // First standard hyperbolic basis vector of W.
  const bool needs_w = type == QType::A2 || type == QType::B2 || type == QType::B4;
  if (needs_w && w_h == 0)
    throw std::invalid_argument("sq_basis: W has no hyperbolic summand for this type");
  const std::uint64_t w_plain = std::uint64_t{1} << (shift + (alternating ? 0 : 2));

  std::vector<std::uint64_t> gens;
  switch (type) {
  case QType::A1: gens = {v_can}; break;
  case QType::A2: gens = {v_can, w_plain}; break;
  case QType::B1: gens = {v_can | w_can}; break;
  case QType::B2: gens = {v_can | w_can, w_plain}; break;
  case QType::B3: gens = {v_can | w_can, w_can}; break;
  case QType::B4: gens = {v_can | w_can, w_can, w_plain}; break;
  }
  auto sq = Subspace::from_bits(space.dim(), gens);
  if (!space.is_totally_isotropic(sq))
    throw std::logic_error("sq_basis: generators are not totally isotropic");
  return {space, sq};
}

Subspace sq_basis(QType type, unsigned r1, unsigned r2) {
  return signature_model(type, r1, r2).sq;
}

Distribution isotropy_law(QType type, unsigned r1, unsigned r2) {
  if (r1 == 0)
    return Distribution{{{0u, BigRational(1)}}};
  return isotropy_distribution(type, r1, r2);
}

Abcde abcde(unsigned n, std::uint64_t prime_bound) {
  if (n == 0 || n % 2 != 0)
    throw std::invalid_argument("abcde: degree must be even and positive");
  const unsigned m = n / 2;
  Abcde k;
  k.n = n;
  const BigRational ratio = c_poly(m).at_prime(2) / c_poly(n).at_prime(2);
  k.a = prob_p_in_selmer(n, 2);
  k.c = ratio * pow2(-2L * m);
  k.d = ratio * pow2(-3L * m);
  k.e_defined = n % 4 == 0;
  if (k.e_defined) {
    const unsigned mm = n / 4;
    k.e = c_poly(mm).at_prime(2) / c_poly(n).at_prime(2) * pow2(-8L * mm);
  }
  if (n == 2)
    k.b = {0.0, 0.0, true};
  else
    k.b = prob_X_ST(n, {}, PrimeSet{{}, PrimeClass{4, 3}}, prime_bound).value;
  return k;
}

std::vector<TypeDensity> type_density_table(const Abcde &k) {
  const BigRational free_two = 1 - k.a + k.d - k.e;
  const BigRational ramified = k.a - k.c - 2 * k.d + 2 * k.e;
  std::vector<TypeDensity> rows{
      {QType::A1, k.e, 0, {}},
      {QType::A2, k.c - k.e, 0, {}},
      {QType::B1, 0, free_two, {}},
      {QType::B2, 0, ramified, {}},
      {QType::B3, free_two + k.d - k.e, -free_two, {}},
      {QType::B4, ramified, -ramified, {}},
  };
  for (auto &r : rows) {
    const double slope = r.slope.get_d();
    r.value = {r.constant.get_d() + slope * k.b.value,
               std::abs(slope) * k.b.error + 4 * std::numeric_limits<double>::epsilon(), false};
  }
  return rows;
}

std::vector<TypeDensity> type_density_table(unsigned n, std::uint64_t prime_bound) {
  return type_density_table(abcde(n, prime_bound));
}

Certified trivial_type_density(unsigned n, std::uint64_t prime_bound) {
  return selmer_free_product(n, PrimeClass{1, 0}, prime_bound);
}

Certified class_rank_distribution(unsigned r1, unsigned r2, unsigned rho) {
  if (r1 + r2 == 0)
    throw std::invalid_argument("class_rank_distribution: needs r1 + r2 >= 1");
  const unsigned u = r1 + r2 - 1;
  const long e = static_cast<long>(rho) * u + static_cast<long>(rho) * (rho + 1) / 2;
  const BigRational front =
      pow2(-e) / q_pochhammer(2, rho) * q_pochhammer(4, u) / q_pochhammer(2, u);
  const Certified two = q_pochhammer_limit(2, 1e-15);
  const Certified four = q_pochhammer_limit(4, 1e-15);
  const double f = front.get_d();
  const double value = f * two.value / four.value;
  const double rel = two.error / two.value + four.error / (four.value - four.error) +
                     8 * std::numeric_limits<double>::epsilon();
  return {value, std::abs(value) * rel * 1.01, false};
}

BigRational class_moments(unsigned r1, unsigned r2, unsigned n) {
  if (r1 + r2 == 0)
    throw std::invalid_argument("class_moments: needs r1 + r2 >= 1");
  BigRational out = 1;
  for (unsigned i = 1; i <= n; ++i)
    out *= 1 + pow2(static_cast<long>(i) - r1 - r2);
  return out;
}

BigRational narrow_avg_2torsion(unsigned r1, unsigned r2) {
  if (r1 + r2 == 0)
    throw std::invalid_argument("narrow_avg_2torsion: needs r1 + r2 >= 1");
  return r1 > 0 ? 1 + pow2(-static_cast<long>(r2)) : 1 + pow2(1 - static_cast<long>(r2));
}

} // namespace selmer
