#include "selmer/f2.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace selmer {

namespace f2 {

std::size_t rref(std::vector<std::uint64_t> &rows) {
  std::size_t r = 0;
  for (int col = 0; col < 64 && r < rows.size(); ++col) {
    const std::uint64_t bit = std::uint64_t{1} << col;
    std::size_t pivot = r;
    while (pivot < rows.size() && !(rows[pivot] & bit))
      ++pivot;
    if (pivot == rows.size())
      continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && (rows[i] & bit))
        rows[i] ^= rows[r];
    ++r;
  }
  rows.resize(r);
  return r;
}

std::size_t rank(std::vector<std::uint64_t> rows) { return rref(rows); }

namespace {

// Inverts the n x n matrix whose rows are given; nullopt if singular.
std::optional<std::vector<std::uint64_t>> invert(std::vector<std::uint64_t> a,
                                                 std::size_t n) {
  std::vector<std::uint64_t> inv(n);
  for (std::size_t i = 0; i < n; ++i)
    inv[i] = std::uint64_t{1} << i;
  for (std::size_t col = 0; col < n; ++col) {
    const std::uint64_t bit = std::uint64_t{1} << col;
    std::size_t pivot = col;
    while (pivot < n && !(a[pivot] & bit))
      ++pivot;
    if (pivot == n)
      return std::nullopt;
    std::swap(a[col], a[pivot]);
    std::swap(inv[col], inv[pivot]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != col && (a[i] & bit)) {
        a[i] ^= a[col];
        inv[i] ^= inv[col];
      }
    }
  }
  return inv;
}

// Row vector times matrix: XOR of the rows selected by v.
std::uint64_t combine(std::uint64_t v, const std::vector<std::uint64_t> &rows) {
  std::uint64_t out = 0;
  while (v) {
    out ^= rows[static_cast<std::size_t>(lowest(v))];
    v &= v - 1;
  }
  return out;
}

} // namespace
} // namespace f2

// ---------------------------------------------------------------- F2Vector

F2Vector::F2Vector(std::size_t size, std::uint64_t bits) : size_(size), bits_(bits) {
  if (size > kMaxDim)
    throw std::invalid_argument("F2Vector: dimension exceeds 64");
  if (bits & ~f2::mask(size))
    throw std::invalid_argument("F2Vector: bits set beyond the vector length");
}

F2Vector::F2Vector(std::initializer_list<int> coords) : size_(coords.size()) {
  if (size_ > kMaxDim)
    throw std::invalid_argument("F2Vector: dimension exceeds 64");
  std::size_t i = 0;
  for (int c : coords) {
    if (c & 1)
      bits_ |= std::uint64_t{1} << i;
    ++i;
  }
}

F2Vector F2Vector::parse(std::string_view text) {
  F2Vector v(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1')
      v.set(i, true);
    else if (text[i] != '0')
      throw std::invalid_argument("F2Vector::parse: expected '0' or '1'");
  }
  return v;
}

F2Vector F2Vector::unit(std::size_t size, std::size_t index) {
  if (index >= size)
    throw std::invalid_argument("F2Vector::unit: index out of range");
  return F2Vector(size, std::uint64_t{1} << index);
}

void F2Vector::set(std::size_t i, bool value) {
  if (i >= size_)
    throw std::out_of_range("F2Vector::set");
  const std::uint64_t bit = std::uint64_t{1} << i;
  bits_ = value ? (bits_ | bit) : (bits_ & ~bit);
}

std::size_t F2Vector::weight() const {
  return static_cast<std::size_t>(__builtin_popcountll(bits_));
}

F2Vector &F2Vector::operator^=(const F2Vector &other) {
  if (size_ != other.size_)
    throw std::invalid_argument("F2Vector: dimension mismatch");
  bits_ ^= other.bits_;
  return *this;
}

F2Vector F2Vector::concat(const F2Vector &right) const {
  if (size_ + right.size_ > kMaxDim)
    throw std::invalid_argument("F2Vector::concat: dimension exceeds 64");
  return F2Vector(size_ + right.size_,
                  bits_ | (right.size_ ? right.bits_ << size_ : 0));
}

F2Vector F2Vector::slice(std::size_t begin, std::size_t end) const {
  if (begin > end || end > size_)
    throw std::out_of_range("F2Vector::slice");
  const std::size_t n = end - begin;
  return F2Vector(n, n ? (bits_ >> begin) & f2::mask(n) : 0);
}

std::string F2Vector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i)
    if ((*this)[i])
      s[i] = '1';
  return s;
}

std::strong_ordering F2Vector::operator<=>(const F2Vector &other) const {
  const std::size_t n = std::min(size_, other.size_);
  const std::uint64_t diff = (bits_ ^ other.bits_) & f2::mask(n);
  if (diff) {
    const auto i = f2::lowest(diff);
    return ((bits_ >> i) & 1U) ? std::strong_ordering::greater
                               : std::strong_ordering::less;
  }
  return size_ <=> other.size_;
}

// ------------------------------------------------------------- SpaceClass

std::string SpaceClass::label() const {
  switch (cls) {
  case IsometryClass::Hm:
    return "H^" + std::to_string(m);
  case IsometryClass::HmI:
    return "H^" + std::to_string(m) + "+I";
  case IsometryClass::Hm1I2:
    return "H^" + std::to_string(m - 1) + "+I^2";
  }
  return {};
}

// ---------------------------------------------------------- BilinearSpace

BilinearSpace::BilinearSpace(std::size_t dim, std::vector<std::uint64_t> gram_rows,
                             std::optional<std::size_t> split)
    : dim_(dim), gram_(std::move(gram_rows)), split_(split) {
  if (dim_ > kMaxDim)
    throw std::invalid_argument("BilinearSpace: dimension exceeds 64");
  if (gram_.size() != dim_)
    throw std::invalid_argument("BilinearSpace: Gram matrix must have dim rows");
  for (std::size_t i = 0; i < dim_; ++i) {
    if (gram_[i] & ~f2::mask(dim_))
      throw std::invalid_argument("BilinearSpace: Gram row wider than dim");
    for (std::size_t j = 0; j < i; ++j)
      if (gram_entry(i, j) != gram_entry(j, i))
        throw std::invalid_argument("BilinearSpace: Gram matrix is not symmetric");
  }
  if (split_) {
    if (*split_ > dim_)
      throw std::invalid_argument("BilinearSpace: split index exceeds dim");
    const std::uint64_t left = f2::mask(*split_);
    for (std::size_t i = 0; i < dim_; ++i) {
      const std::uint64_t cross = i < *split_ ? gram_[i] & ~left : gram_[i] & left;
      if (cross)
        throw std::invalid_argument(
            "BilinearSpace: Gram matrix is not block diagonal across the split");
    }
  }
  // Solve G w = diag(G); this doubles as the nondegeneracy test.
  std::vector<std::uint64_t> a = gram_;
  std::vector<std::uint8_t> rhs(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    rhs[i] = gram_entry(i, i);
  for (std::size_t col = 0; col < dim_; ++col) {
    const std::uint64_t bit = std::uint64_t{1} << col;
    std::size_t pivot = col;
    while (pivot < dim_ && !(a[pivot] & bit))
      ++pivot;
    if (pivot == dim_)
      throw std::domain_error("BilinearSpace: Gram matrix is degenerate");
    std::swap(a[col], a[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (i != col && (a[i] & bit)) {
        a[i] ^= a[col];
        rhs[i] ^= rhs[col];
      }
    }
  }
  for (std::size_t i = 0; i < dim_; ++i)
    if (rhs[i])
      canonical_ |= std::uint64_t{1} << i;
}

BilinearSpace BilinearSpace::zero() { return BilinearSpace(0, {}); }
BilinearSpace BilinearSpace::I() { return BilinearSpace(1, {1}); }
BilinearSpace BilinearSpace::H() { return BilinearSpace(2, {0b10, 0b01}); }

BilinearSpace BilinearSpace::identity(std::size_t n) {
  std::vector<std::uint64_t> rows(n);
  for (std::size_t i = 0; i < n; ++i)
    rows[i] = std::uint64_t{1} << i;
  return BilinearSpace(n, std::move(rows));
}

BilinearSpace BilinearSpace::hyperbolic(std::size_t t) {
  std::vector<std::uint64_t> rows(2 * t);
  for (std::size_t i = 0; i < t; ++i) {
    rows[2 * i] = std::uint64_t{1} << (2 * i + 1);
    rows[2 * i + 1] = std::uint64_t{1} << (2 * i);
  }
  return BilinearSpace(2 * t, std::move(rows));
}

BilinearSpace BilinearSpace::i2_plus_h(std::size_t t) {
  std::vector<std::uint64_t> rows{0b01, 0b10};
  const auto h = hyperbolic(t);
  for (auto r : h.gram())
    rows.push_back(r << 2);
  return BilinearSpace(2 + 2 * t, std::move(rows));
}

BilinearSpace BilinearSpace::orthogonal_sum(const BilinearSpace &left,
                                            const BilinearSpace &right) {
  const std::size_t n = left.dim() + right.dim();
  if (n > kMaxDim)
    throw std::invalid_argument("orthogonal_sum: dimension exceeds 64");
  std::vector<std::uint64_t> rows = left.gram();
  for (auto r : right.gram())
    rows.push_back(r << left.dim());
  return BilinearSpace(n, std::move(rows), left.dim());
}

BilinearSpace BilinearSpace::with_split(std::optional<std::size_t> split) const {
  return BilinearSpace(dim_, gram_, split);
}

std::uint64_t BilinearSpace::apply(std::uint64_t v) const {
  return f2::combine(v, gram_);
}

bool BilinearSpace::eval_bits(std::uint64_t u, std::uint64_t v) const {
  return f2::parity(u & apply(v));
}

bool BilinearSpace::eval(const F2Vector &u, const F2Vector &v) const {
  if (u.size() != dim_ || v.size() != dim_)
    throw std::invalid_argument("eval_form: dimension mismatch");
  return eval_bits(u.bits(), v.bits());
}

bool BilinearSpace::is_alternating() const { return canonical_ == 0; }

F2Vector BilinearSpace::canonical_vector() const { return F2Vector(dim_, canonical_); }

SpaceClass BilinearSpace::classify() const {
  if (dim_ == 0)
    throw std::invalid_argument("classify_space: requires dim >= 1");
  const std::size_t m = dim_ / 2;
  if (dim_ % 2 == 1)
    return {IsometryClass::HmI, m, CanonicalKind::Anisotropic};
  if (canonical_ == 0)
    return {IsometryClass::Hm, m, CanonicalKind::Zero};
  return {IsometryClass::Hm1I2, m, CanonicalKind::NonzeroIsotropic};
}

Subspace BilinearSpace::orthogonal(const Subspace &s) const {
  if (s.ambient_dim() != dim_)
    throw std::invalid_argument("orthogonal: dimension mismatch");
  std::vector<std::uint64_t> images;
  images.reserve(s.dim());
  for (auto r : s.rows())
    images.push_back(apply(r));
  return Subspace::from_bits(dim_, std::move(images)).annihilator();
}

bool BilinearSpace::is_totally_isotropic(const Subspace &s) const {
  if (s.ambient_dim() != dim_)
    throw std::invalid_argument("is_totally_isotropic: dimension mismatch");
  const auto &rows = s.rows();
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i; j < rows.size(); ++j)
      if (eval_bits(rows[i], rows[j]))
        return false;
  return true;
}

bool BilinearSpace::is_maximal_totally_isotropic(const Subspace &s) const {
  if (!is_totally_isotropic(s))
    return false;
  // Isotropic vectors form the kernel of b(w_can, .), so the vectors that
  // could extend S make up the subspace S^perp cap w_can^perp.
  auto perp = orthogonal(s);
  auto iso = Subspace::from_bits(dim_, canonical_ ? std::vector{apply(canonical_)}
                                                  : std::vector<std::uint64_t>{})
                 .annihilator();
  return intersection(perp, iso).dim() == s.dim();
}

bool eval_form(const BilinearSpace &space, const F2Vector &u, const F2Vector &v) {
  return space.eval(u, v);
}
F2Vector canonical_vector(const BilinearSpace &space) { return space.canonical_vector(); }
SpaceClass classify_space(const BilinearSpace &space) { return space.classify(); }
bool is_totally_isotropic(const BilinearSpace &space, const Subspace &s) {
  return space.is_totally_isotropic(s);
}
bool is_maximal_totally_isotropic(const BilinearSpace &space, const Subspace &s) {
  return space.is_maximal_totally_isotropic(s);
}

// --------------------------------------------------------------- Subspace

Subspace::Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {
  if (ambient_dim > kMaxDim)
    throw std::invalid_argument("Subspace: dimension exceeds 64");
}

Subspace Subspace::from_bits(std::size_t ambient_dim, std::vector<std::uint64_t> rows) {
  Subspace s(ambient_dim);
  for (auto r : rows)
    if (r & ~f2::mask(ambient_dim))
      throw std::invalid_argument("Subspace: vector wider than ambient dimension");
  f2::rref(rows);
  s.rows_ = std::move(rows);
  return s;
}

Subspace Subspace::from_echelon(std::size_t ambient_dim, std::vector<std::uint64_t> rows) {
  Subspace s(ambient_dim);
  s.rows_ = std::move(rows);
  return s;
}

Subspace Subspace::canonicalize(std::size_t ambient_dim,
                                const std::vector<F2Vector> &vectors) {
  std::vector<std::uint64_t> rows;
  rows.reserve(vectors.size());
  for (const auto &v : vectors) {
    if (v.size() != ambient_dim)
      throw std::invalid_argument("canonicalize: dimension mismatch");
    rows.push_back(v.bits());
  }
  return from_bits(ambient_dim, std::move(rows));
}

Subspace Subspace::full(std::size_t ambient_dim) {
  std::vector<std::uint64_t> rows(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i)
    rows[i] = std::uint64_t{1} << i;
  return from_echelon(ambient_dim, std::move(rows));
}

std::vector<F2Vector> Subspace::basis() const {
  std::vector<F2Vector> out;
  out.reserve(rows_.size());
  for (auto r : rows_)
    out.emplace_back(ambient_, r);
  return out;
}

std::uint64_t Subspace::pivot_mask() const {
  std::uint64_t m = 0;
  for (auto r : rows_)
    m |= r & (~r + 1);
  return m;
}

std::uint64_t Subspace::reduce(std::uint64_t v) const {
  for (auto r : rows_)
    if (v & r & (~r + 1))
      v ^= r;
  return v;
}

bool Subspace::contains_bits(std::uint64_t v) const { return reduce(v) == 0; }

bool Subspace::contains(const F2Vector &v) const {
  if (v.size() != ambient_)
    throw std::invalid_argument("contains: dimension mismatch");
  return contains_bits(v.bits());
}

bool Subspace::contains(const Subspace &other) const {
  if (other.ambient_ != ambient_)
    throw std::invalid_argument("contains: dimension mismatch");
  return std::all_of(other.rows_.begin(), other.rows_.end(),
                     [this](std::uint64_t r) { return contains_bits(r); });
}

Subspace Subspace::annihilator() const {
  const std::uint64_t pivots = pivot_mask();
  std::vector<std::uint64_t> out;
  for (std::size_t f = 0; f < ambient_; ++f) {
    const std::uint64_t bit = std::uint64_t{1} << f;
    if (pivots & bit)
      continue;
    std::uint64_t x = bit;
    for (auto r : rows_)
      if (r & bit)
        x |= r & (~r + 1);
    out.push_back(x);
  }
  return from_bits(ambient_, std::move(out));
}

std::string Subspace::to_string() const {
  std::string s = "<";
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i)
      s += ",";
    s += F2Vector(ambient_, rows_[i]).to_string();
  }
  return s + ">";
}

std::strong_ordering Subspace::operator<=>(const Subspace &other) const {
  const std::size_t n = std::min(rows_.size(), other.rows_.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto c = F2Vector(ambient_, rows_[i]) <=> F2Vector(other.ambient_, other.rows_[i]);
    if (c != 0)
      return c;
  }
  if (auto c = rows_.size() <=> other.rows_.size(); c != 0)
    return c;
  return ambient_ <=> other.ambient_;
}

Subspace sum(const Subspace &a, const Subspace &b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("sum: dimension mismatch");
  std::vector<std::uint64_t> rows = a.rows();
  rows.insert(rows.end(), b.rows().begin(), b.rows().end());
  return Subspace::from_bits(a.ambient_dim(), std::move(rows));
}

Subspace intersection(const Subspace &a, const Subspace &b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("intersection: dimension mismatch");
  return sum(a.annihilator(), b.annihilator()).annihilator();
}

// ---------------------------------------------------------- decomposition

F2Vector Summand::push(const F2Vector &local) const {
  if (local.size() != embedding.size())
    throw std::invalid_argument("Summand::push: dimension mismatch");
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < embedding.size(); ++i)
    if (local[i])
      out ^= embedding[i].bits();
  return F2Vector(ambient_dim, out);
}

namespace {

Summand make_summand(const BilinearSpace &space, const std::vector<std::uint64_t> &basis) {
  std::vector<std::uint64_t> gram(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (space.eval_bits(basis[i], basis[j]))
        gram[i] |= std::uint64_t{1} << j;
  std::vector<F2Vector> embedding;
  for (auto b : basis)
    embedding.emplace_back(space.dim(), b);
  return Summand{BilinearSpace(basis.size(), std::move(gram)), std::move(embedding),
                 space.dim()};
}

// Some u with b(w, u) = 1 and b(c, u) = 0, when c is not a multiple of w.
std::uint64_t solve_pair(const BilinearSpace &space, std::uint64_t w, std::uint64_t c) {
  const std::uint64_t gw = space.apply(w);
  const std::uint64_t gc = space.apply(c);
  // First free solution of x.gw = 1 subject to x.gc = 0.
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const std::uint64_t e = std::uint64_t{1} << i;
    if (f2::parity(e & gw) && !f2::parity(e & gc))
      return e;
  }
  // Otherwise gc covers gw; pair a gw coordinate with one only gc sees.
  for (std::size_t i = 0; i < space.dim(); ++i)
    for (std::size_t j = i + 1; j < space.dim(); ++j) {
      const std::uint64_t e = (std::uint64_t{1} << i) | (std::uint64_t{1} << j);
      if (f2::parity(e & gw) && !f2::parity(e & gc))
        return e;
    }
  throw std::logic_error("orthogonal_decomposition: no hyperbolic partner found");
}

} // namespace

OrthogonalDecomposition orthogonal_decomposition(const BilinearSpace &space,
                                                 const F2Vector &w) {
  if (w.size() != space.dim())
    throw std::invalid_argument("orthogonal_decomposition: w not in space");
  if (w.is_zero())
    throw std::invalid_argument("orthogonal_decomposition: w must be nonzero");
  const std::uint64_t wb = w.bits();
  const std::uint64_t can = space.canonical_bits();
  const bool anisotropic = space.eval_bits(wb, wb);

  std::vector<std::uint64_t> part;
  SummandKind kind;
  std::uint64_t w_local;
  if (anisotropic) {
    part = {wb};
    kind = SummandKind::I;
    w_local = 1;
  } else if (wb == can) {
    // Any u with b(w, u) = 1 is anisotropic; {u, u + w} is orthonormal.
    std::uint64_t u = solve_pair(space, wb, 0);
    part = {u, u ^ wb};
    kind = SummandKind::I2;
    w_local = 0b11;
  } else {
    std::uint64_t u = solve_pair(space, wb, can);
    part = {wb, u};
    kind = SummandKind::H;
    w_local = 0b01;
  }

  auto local = Subspace::from_bits(space.dim(), part);
  auto perp = space.orthogonal(local);

  OrthogonalDecomposition d{space.dim(), kind, make_summand(space, part),
                            make_summand(space, perp.rows()),
                            F2Vector(part.size(), w_local), {}};
  std::vector<std::uint64_t> all = part;
  all.insert(all.end(), perp.rows().begin(), perp.rows().end());
  auto inv = f2::invert(all, space.dim());
  if (!inv)
    throw std::logic_error("orthogonal_decomposition: summands do not span");
  d.inverse = std::move(*inv);
  return d;
}

std::pair<F2Vector, F2Vector> OrthogonalDecomposition::project(const F2Vector &v) const {
  if (v.size() != ambient_dim)
    throw std::invalid_argument("project: dimension mismatch");
  const std::uint64_t c = f2::combine(v.bits(), inverse);
  const std::size_t k = part.embedding.size();
  F2Vector all(ambient_dim, c);
  return {all.slice(0, k), all.slice(k, ambient_dim)};
}

std::pair<Subspace, Subspace> OrthogonalDecomposition::restrict(const Subspace &s) const {
  if (s.ambient_dim() != ambient_dim)
    throw std::invalid_argument("restrict: dimension mismatch");
  const std::size_t k = part.embedding.size();
  std::vector<std::uint64_t> coords;
  for (auto r : s.rows())
    coords.push_back(f2::combine(r, inverse));
  auto local = Subspace::from_bits(ambient_dim, coords);
  std::vector<std::uint64_t> low, high;
  for (std::size_t i = 0; i < ambient_dim; ++i)
    (i < k ? low : high).push_back(std::uint64_t{1} << i);
  auto in_part = intersection(local, Subspace::from_bits(ambient_dim, low));
  auto in_comp = intersection(local, Subspace::from_bits(ambient_dim, high));
  std::vector<std::uint64_t> a, b;
  for (auto r : in_part.rows())
    a.push_back(r & f2::mask(k));
  for (auto r : in_comp.rows())
    b.push_back(r >> k);
  return {Subspace::from_bits(k, a), Subspace::from_bits(ambient_dim - k, b)};
}

} // namespace selmer
