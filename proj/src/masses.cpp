#include "selmer/masses.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace selmer {

BigInt count_partitions(unsigned k, unsigned max_parts) {
  // Counts partitions with parts of size at most max_parts; conjugation
  // matches these with partitions into at most max_parts parts.
  std::vector<BigInt> row(k + 1, 0);
  row[0] = 1;
  for (unsigned j = 1; j <= max_parts; ++j)
    for (unsigned s = j; s <= k; ++s)
      row[s] += row[s - j];
  return row[k];
}

// ---------------------------------------------------------------- MassPoly

MassPoly::MassPoly(std::vector<BigRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

MassPoly MassPoly::constant(const BigRational &c) { return MassPoly({c}); }

MassPoly MassPoly::monomial(const BigRational &c, unsigned degree) {
  std::vector<BigRational> v(degree + 1, 0);
  v[degree] = c;
  return MassPoly(std::move(v));
}

void MassPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0)
    coeffs_.pop_back();
}

BigRational MassPoly::coeff(unsigned i) const {
  return i < coeffs_.size() ? coeffs_[i] : BigRational(0);
}

BigRational MassPoly::evaluate(const BigRational &x) const {
  BigRational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * x + *it;
  return acc;
}

BigRational MassPoly::at_prime(unsigned long p) const {
  return evaluate(BigRational(BigInt(1), BigInt(p)));
}

MassPoly &MassPoly::operator+=(const MassPoly &o) {
  if (o.coeffs_.size() > coeffs_.size())
    coeffs_.resize(o.coeffs_.size(), 0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
    coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

MassPoly &MassPoly::operator*=(const MassPoly &o) {
  if (coeffs_.empty() || o.coeffs_.empty()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<BigRational> out(coeffs_.size() + o.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      out[i + j] += coeffs_[i] * o.coeffs_[j];
  coeffs_ = std::move(out);
  trim();
  return *this;
}

MassPoly &MassPoly::operator*=(const BigRational &c) {
  for (auto &a : coeffs_)
    a *= c;
  trim();
  return *this;
}

std::string MassPoly::to_string() const {
  if (coeffs_.empty())
    return "0";
  std::string s;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0)
      continue;
    std::string term;
    const bool unit = coeffs_[i] == 1 && i > 0;
    if (!unit)
      term = selmer::to_string(coeffs_[i]);
    if (i > 0)
      term += (unit ? "" : "*") + std::string("x") + (i > 1 ? "^" + std::to_string(i) : "");
    s += (s.empty() ? "" : " + ") + term;
  }
  return s;
}

MassPoly c_poly(unsigned n) {
  if (n == 0)
    throw std::invalid_argument("c_poly: n must be at least 1");
  std::vector<BigRational> v;
  for (unsigned k = 0; k < n; ++k)
    v.emplace_back(count_partitions(k, n - k));
  return MassPoly(std::move(v));
}

// --------------------------------------------------------- SplittingSymbol

SplittingSymbol::SplittingSymbol(std::vector<SymbolPart> parts) : parts_(std::move(parts)) {
  for (const auto &p : parts_)
    if (p.f == 0 || p.e == 0)
      throw std::invalid_argument("SplittingSymbol: f and e must be positive");
  std::sort(parts_.begin(), parts_.end());
}

unsigned SplittingSymbol::degree() const {
  unsigned n = 0;
  for (const auto &p : parts_)
    n += p.f * p.e;
  return n;
}

unsigned SplittingSymbol::disc_exponent() const {
  unsigned k = 0;
  for (const auto &p : parts_)
    k += (p.e - 1) * p.f;
  return k;
}

bool SplittingSymbol::all_even() const {
  return std::all_of(parts_.begin(), parts_.end(), [](const SymbolPart &p) { return p.e % 2 == 0; });
}

BigInt SplittingSymbol::symmetry() const {
  BigInt n = 1;
  std::size_t run = 0;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    run = (i > 0 && parts_[i] == parts_[i - 1]) ? run + 1 : 1;
    n *= static_cast<unsigned long>(run);
  }
  return n;
}

std::string SplittingSymbol::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i)
      s += ",";
    s += std::to_string(parts_[i].f);
    if (parts_[i].e > 1)
      s += "^" + std::to_string(parts_[i].e);
  }
  return s + ")";
}

namespace {

std::vector<SplittingSymbol> symbols_with(unsigned n, unsigned e_step) {
  std::vector<SymbolPart> kinds;
  for (unsigned f = 1; f <= n; ++f)
    for (unsigned e = e_step; f * e <= n; e += e_step)
      kinds.push_back({f, e});
  std::sort(kinds.begin(), kinds.end());
  std::vector<SplittingSymbol> out;
  std::vector<SymbolPart> cur;
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t from, unsigned left) {
    if (left == 0) {
      out.emplace_back(cur);
      return;
    }
    for (std::size_t i = from; i < kinds.size(); ++i) {
      const unsigned w = kinds[i].f * kinds[i].e;
      if (w > left)
        continue;
      cur.push_back(kinds[i]);
      rec(i, left - w);
      cur.pop_back();
    }
  };
  rec(0, n);
  return out;
}

} // namespace

std::vector<SplittingSymbol> enumerate_symbols(unsigned n) {
  if (n == 0)
    throw std::invalid_argument("enumerate_symbols: degree must be at least 1");
  return symbols_with(n, 1);
}

std::vector<SplittingSymbol> enumerate_symbols_even(unsigned n) {
  if (n == 0)
    throw std::invalid_argument("enumerate_symbols_even: degree must be at least 1");
  return symbols_with(n, 2);
}

// -------------------------------------------------------------- partitions

unsigned Partition::total() const {
  unsigned s = 0;
  for (auto p : parts)
    s += p;
  return s;
}

std::string Partition::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < parts.size(); ++i)
    s += (i ? "," : "") + std::to_string(parts[i]);
  return s + "]";
}

namespace {

void partitions_rec(unsigned left, unsigned max_part, unsigned slots, unsigned step,
                    bool allow_zero, std::vector<unsigned> &cur, std::vector<Partition> &out) {
  if (slots == 0) {
    if (left == 0)
      out.push_back({cur});
    return;
  }
  if (allow_zero && left == 0) {
    auto padded = cur;
    padded.resize(cur.size() + slots, 0);
    out.push_back({padded});
    return;
  }
  for (unsigned v = std::min(max_part, left); v >= 1; --v) {
    if (step == 2 && v % 2 == 0)
      continue;
    cur.push_back(v);
    partitions_rec(left - v, v, slots - 1, step, allow_zero, cur, out);
    cur.pop_back();
  }
}

} // namespace

std::vector<Partition> partitions_exact(unsigned k, unsigned count) {
  std::vector<Partition> out;
  std::vector<unsigned> cur;
  partitions_rec(k, k, count, 1, true, cur, out);
  return out;
}

std::vector<Partition> odd_partitions_exact(unsigned k, unsigned count) {
  std::vector<Partition> out;
  std::vector<unsigned> cur;
  partitions_rec(k, k, count, 2, false, cur, out);
  return out;
}

Partition symbol_partition(const SplittingSymbol &s) {
  Partition p;
  for (const auto &part : s.parts())
    for (unsigned i = 0; i < part.f; ++i)
      p.parts.push_back(part.e - 1);
  std::sort(p.parts.begin(), p.parts.end(), std::greater<>());
  return p;
}

SplittingSymbol phi(const SplittingSymbol &s) {
  if (!s.all_even())
    throw std::invalid_argument("phi: every ramification index must be even");
  std::vector<SymbolPart> parts;
  for (const auto &p : s.parts())
    parts.push_back({p.f, p.e / 2});
  return SplittingSymbol(std::move(parts));
}

SplittingSymbol phi_inverse(const SplittingSymbol &s) {
  std::vector<SymbolPart> parts;
  for (const auto &p : s.parts())
    parts.push_back({p.f, p.e * 2});
  return SplittingSymbol(std::move(parts));
}

Partition psi(const Partition &odd) {
  Partition p;
  for (auto v : odd.parts) {
    if (v % 2 == 0)
      throw std::invalid_argument("psi: every part must be odd");
    p.parts.push_back((v - 1) / 2);
  }
  return p;
}

Partition psi_inverse(const Partition &p) {
  Partition odd;
  for (auto v : p.parts)
    odd.parts.push_back(2 * v + 1);
  return odd;
}

// ------------------------------------------------------------------ masses

MassPoly symbol_mass(const SplittingSymbol &s) {
  BigInt denom = s.symmetry();
  for (const auto &p : s.parts())
    denom *= p.f;
  return MassPoly::monomial(BigRational(BigInt(1), denom), s.disc_exponent());
}

MassPoly component_mass(unsigned f, unsigned e, unsigned disc_exponent, unsigned residue_degree,
                        unsigned aut_divisor) {
  if (f == 0 || e == 0 || residue_degree == 0 || aut_divisor == 0)
    throw std::invalid_argument("component_mass: arguments must be positive");
  const unsigned exponent = residue_degree * f * (e - 1) + disc_exponent * e * f;
  return MassPoly::monomial(BigRational(BigInt(1), BigInt(f) * aut_divisor), exponent);
}

FamilyMass mass_unramified_family(unsigned m, unsigned disc_exponent, unsigned divisor) {
  if (m == 0)
    throw std::invalid_argument("mass_unramified_family: m must be at least 1");
  if (divisor == 0)
    throw std::invalid_argument("mass_unramified_family: divisor must be positive");
  FamilyMass out;
  for (const auto &s : enumerate_symbols(divisor * m)) {
    bool fits = true;
    for (const auto &p : s.parts())
      fits = fits && p.e % divisor == 0;
    if (!fits)
      continue;
    MassPoly term = MassPoly::constant(BigRational(BigInt(1), s.symmetry()));
    for (const auto &p : s.parts())
      term *= component_mass(p.f, p.e / divisor, disc_exponent, 1, divisor) *
              BigRational(divisor);
    out.by_symbols += term;
  }
  out.closed_form = MassPoly::monomial(1, disc_exponent * m) * c_poly(m);
  if (!(out.by_symbols == out.closed_form))
    throw std::logic_error("mass_unramified_family: symbol sum " + out.by_symbols.to_string() +
                           " differs from closed form " + out.closed_form.to_string());
  return out;
}

bool is_prime(unsigned long p) {
  if (p < 2)
    return false;
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0)
      return false;
  return true;
}

BigRational prob_p_in_selmer(unsigned n, unsigned long p) {
  if (n == 0 || n % 2 != 0)
    throw std::invalid_argument("prob_p_in_selmer: degree must be even and positive");
  if (!is_prime(p))
    throw std::invalid_argument("prob_p_in_selmer: p must be prime");
  const unsigned m = n / 2;
  return c_poly(m).at_prime(p) / c_poly(n).at_prime(p) / pow_rational(p, m);
}

} // namespace selmer
