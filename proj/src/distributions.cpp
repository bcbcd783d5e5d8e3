#include "selmer/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

namespace selmer {

std::string_view type_label(QType t) {
  switch (t) {
  case QType::A1: return "A(i)";
  case QType::A2: return "A(ii)";
  case QType::B1: return "B(i)";
  case QType::B2: return "B(ii)";
  case QType::B3: return "B(iii)";
  case QType::B4: return "B(iv)";
  }
  return "?";
}

std::string_view type_code(QType t) {
  switch (t) {
  case QType::A1: return "A1";
  case QType::A2: return "A2";
  case QType::B1: return "B1";
  case QType::B2: return "B2";
  case QType::B3: return "B3";
  case QType::B4: return "B4";
  }
  return "?";
}

QType parse_type(std::string_view text) {
  std::string s;
  for (char c : text)
    s.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  for (QType t : kAllTypes) {
    std::string label(type_label(t));
    std::transform(label.begin(), label.end(), label.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (s == type_code(t) || s == label)
      return t;
  }
  throw std::invalid_argument("unknown type '" + std::string(text) +
                              "' (expected A1, A2, B1, B2, B3 or B4)");
}

namespace {

BigInt exact_integer(const BigRational &r, const char *what) {
  if (r.get_den() != 1)
    throw std::logic_error(std::string(what) + ": result is not an integer");
  return r.get_num();
}

} // namespace

BigInt b_count(unsigned t) {
  const long e = static_cast<long>(t) * (t + 1) / 2;
  return exact_integer(pow2(e) * q_pochhammer(4, t) / q_pochhammer(2, t), "b_count");
}

BigInt d_count(unsigned n, unsigned m, unsigned k) {
  if (k > n)
    throw std::invalid_argument("d_count: k must satisfy 0 <= k <= n");
  const long s = 2L * n + m;
  const long e = (s + 1) * s / 2 - static_cast<long>(k) * (k + m);
  BigRational r = pow2(e) * q_pochhammer(4, n) * q_pochhammer(4, n + m) /
                  (q_pochhammer(4, n - k) * q_pochhammer(2, k) * q_pochhammer(2, k + m));
  return exact_integer(r, "d_count");
}

BigRational C_delta(unsigned delta, unsigned n, unsigned m, unsigned k) {
  if (delta > 1)
    throw std::invalid_argument("C_delta: delta must be 0 or 1");
  if (k > n)
    throw std::invalid_argument("C_delta: k must satisfy 0 <= k <= n");
  const unsigned s = 2 * n + m + delta;
  return pow2(-static_cast<long>(k) * (k + m)) * q_pochhammer(2, s) * q_pochhammer(4, n) *
         q_pochhammer(4, n + m) /
         (q_pochhammer(4, s) * q_pochhammer(4, n - k) * q_pochhammer(2, k) *
          q_pochhammer(2, k + m));
}

BigRational Distribution::at(unsigned k) const {
  for (const auto &[kk, p] : support)
    if (kk == k)
      return p;
  return 0;
}

BigRational Distribution::total() const {
  BigRational s = 0;
  for (const auto &[k, p] : support)
    s += p;
  return s;
}

namespace {

// C_1 law with the carry term: weight C_1(n, m, k) + C_1(n, m, k-1) / 2^shift
// on k = offset .. offset + n + 1, boundary terms dropped where out of range.
Distribution carried(unsigned n, unsigned m, unsigned shift, unsigned offset) {
  Distribution d;
  const BigRational carry = pow2(-static_cast<long>(shift));
  for (unsigned j = 0; j <= n + 1; ++j) {
    BigRational p = 0;
    if (j <= n)
      p += C_delta(1, n, m, j);
    if (j >= 1)
      p += C_delta(1, n, m, j - 1) * carry;
    d.support.emplace_back(j + offset, p);
  }
  return d;
}

// C_0(n, m, j) placed at k = j + offset.
Distribution shifted(unsigned n, unsigned m, unsigned offset) {
  Distribution d;
  for (unsigned j = 0; j <= n; ++j)
    d.support.emplace_back(j + offset, C_delta(0, n, m, j));
  return d;
}

} // namespace

Distribution isotropy_distribution(QType type, unsigned r1, unsigned r2) {
  if (r1 < 2 || r1 % 2 != 0)
    throw std::invalid_argument("isotropy_distribution: r1 must be even and at least 2");
  const unsigned h = r1 / 2;
  switch (type) {
  case QType::A1:
    return shifted(h - 1, r2 + 1, 1);
  case QType::A2:
  case QType::B3:
    return shifted(h - 1, r2, 1);
  case QType::B1:
    return carried(h - 1, r2, r1 + r2 - 1, 0);
  case QType::B2:
    if (r2 == 0) {
      if (r1 < 4)
        throw std::invalid_argument("isotropy_distribution: B(ii) with r2 = 0 needs r1 >= 4");
      return carried(h - 2, 1, r1 + r2 - 2, 1);
    }
    return carried(h - 1, r2 - 1, r1 + r2 - 2, 0);
  case QType::B4:
    if (r2 == 0) {
      if (r1 < 4)
        throw std::invalid_argument("isotropy_distribution: B(iv) with r2 = 0 needs r1 >= 4");
      return shifted(h - 2, 1, 2);
    }
    return shifted(h - 1, r2 - 1, 1);
  }
  throw std::invalid_argument("isotropy_distribution: unknown type");
}

} // namespace selmer
