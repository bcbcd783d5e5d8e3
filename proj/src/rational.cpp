#include "selmer/rational.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace selmer {

BigRational make_rational(const BigInt &num, const BigInt &den) {
  if (den == 0)
    throw std::invalid_argument("make_rational: zero denominator");
  BigRational r(num, den);
  r.canonicalize();
  return r;
}

BigRational pow_rational(unsigned long q, long e) {
  if (q == 0)
    throw std::invalid_argument("pow_rational: base must be positive");
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), q, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? BigRational(BigInt(1), p) : BigRational(p);
}

BigRational pow2(long e) { return pow_rational(2, e); }

std::string to_string(const BigRational &r) {
  if (r.get_den() == 1)
    return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

BigRational parse_rational(const std::string &text) {
  BigRational r;
  if (r.set_str(text, 10) != 0 || r.get_den() == 0)
    throw std::invalid_argument("parse_rational: bad rational '" + text + "'");
  r.canonicalize();
  return r;
}

std::string format_fixed(const BigRational &r, int digits) {
  if (digits < 0)
    throw std::invalid_argument("format_fixed: negative precision");
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const BigRational scaled = abs(r) * scale;
  BigInt q, rem;
  mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), scaled.get_num().get_mpz_t(),
              scaled.get_den().get_mpz_t());
  const int c = cmp(BigInt(2 * rem), scaled.get_den());
  if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t())))
    ++q;
  std::string s = q.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits))
      s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  if (sgn(r) < 0 && q != 0)
    s.insert(0, "-");
  return s;
}

std::string format_fixed(double x, int digits) {
  if (!std::isfinite(x))
    throw std::invalid_argument("format_fixed: non-finite value");
  return format_fixed(BigRational(x), digits);
}

BigRational q_pochhammer(unsigned long q, unsigned long m) {
  if (q < 2)
    throw std::invalid_argument("q_pochhammer: q must be at least 2");
  BigRational out(1);
  for (unsigned long i = 1; i <= m; ++i)
    out *= 1 - pow_rational(q, -static_cast<long>(i));
  return out;
}

Certified q_pochhammer_limit(unsigned long q, double tol) {
  if (!(tol > 0))
    throw std::invalid_argument("q_pochhammer_limit: tol must be positive");
  // (q)_N - (q)_inf <= (q)_N * sum_{i>N} q^-i <= q^-N / (q - 1).
  unsigned long n = 0;
  auto tail = [&](unsigned long k) {
    return std::pow(static_cast<double>(q), -static_cast<double>(k)) /
           static_cast<double>(q - 1);
  };
  while (tail(n) >= tol / 2)
    ++n;
  const double partial = q_pochhammer(q, n).get_d();
  const double bound = tail(n);
  const double slack = 4 * std::numeric_limits<double>::epsilon();
  return {partial - bound / 2, bound / 2 + slack, false};
}

} // namespace selmer
