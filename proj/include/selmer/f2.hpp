#pragma once

// Linear algebra over F2 for nondegenerate symmetric bilinear spaces.
//
// Vectors are packed into a single 64-bit word: coordinate i lives in bit i.
// Echelon forms use the lowest set coordinate of a row as its pivot, so
// "pivot order" and "coordinate order" agree.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace selmer {

inline constexpr std::size_t kMaxDim = 64;

class F2Vector {
public:
  F2Vector() = default;
  explicit F2Vector(std::size_t size, std::uint64_t bits = 0);
  F2Vector(std::initializer_list<int> coords);

  /// Parses a string of '0'/'1' characters, coordinate 0 first.
  static F2Vector parse(std::string_view text);
  static F2Vector unit(std::size_t size, std::size_t index);

  std::size_t size() const { return size_; }
  std::uint64_t bits() const { return bits_; }
  bool operator[](std::size_t i) const { return (bits_ >> i) & 1U; }
  void set(std::size_t i, bool value);
  bool is_zero() const { return bits_ == 0; }
  std::size_t weight() const;

  F2Vector &operator^=(const F2Vector &other);
  friend F2Vector operator^(F2Vector a, const F2Vector &b) { return a ^= b; }

  /// Concatenation: this vector occupies the low coordinates.
  F2Vector concat(const F2Vector &right) const;
  F2Vector slice(std::size_t begin, std::size_t end) const;

  std::string to_string() const;

  bool operator==(const F2Vector &) const = default;
  /// Lexicographic order on the coordinate sequence (coordinate 0 first).
  std::strong_ordering operator<=>(const F2Vector &other) const;

private:
  std::size_t size_ = 0;
  std::uint64_t bits_ = 0;
};

/// Isometry classes of nondegenerate symmetric F2 spaces.
enum class IsometryClass { Hm, HmI, Hm1I2 };
enum class CanonicalKind { Zero, Anisotropic, NonzeroIsotropic };

struct SpaceClass {
  IsometryClass cls;
  std::size_t m; // exponent of H in the label H^m, H^m+I, H^(m-1)+I^2
  CanonicalKind canonical;
  std::string label() const;
  bool operator==(const SpaceClass &) const = default;
};

class Subspace;

class BilinearSpace {
public:
  /// Builds a space from its Gram rows; row i is a bitmask over columns.
  /// Throws std::invalid_argument if the Gram matrix is not symmetric,
  /// std::domain_error if it is degenerate. `split` marks coordinates
  /// [0, split) as the left block and requires block-diagonal form.
  BilinearSpace(std::size_t dim, std::vector<std::uint64_t> gram_rows,
                std::optional<std::size_t> split = std::nullopt);

  static BilinearSpace zero();
  static BilinearSpace I();
  static BilinearSpace H();
  static BilinearSpace identity(std::size_t n);
  static BilinearSpace hyperbolic(std::size_t t); // H^t
  static BilinearSpace i2_plus_h(std::size_t t);  // I^2 + H^t
  /// Orthogonal sum; the result is split between the two summands.
  static BilinearSpace orthogonal_sum(const BilinearSpace &left,
                                      const BilinearSpace &right);

  std::size_t dim() const { return dim_; }
  const std::vector<std::uint64_t> &gram() const { return gram_; }
  bool gram_entry(std::size_t i, std::size_t j) const {
    return (gram_[i] >> j) & 1U;
  }
  std::optional<std::size_t> split() const { return split_; }
  BilinearSpace with_split(std::optional<std::size_t> split) const;

  bool eval(const F2Vector &u, const F2Vector &v) const;
  bool eval_bits(std::uint64_t u, std::uint64_t v) const;
  /// G*v as a bitmask; b(u, v) = parity(u & apply(v)).
  std::uint64_t apply(std::uint64_t v) const;

  bool is_alternating() const;
  F2Vector canonical_vector() const;
  std::uint64_t canonical_bits() const { return canonical_; }
  SpaceClass classify() const;

  /// {v : b(v, s) = 0 for all s in S}.
  Subspace orthogonal(const Subspace &s) const;
  bool is_totally_isotropic(const Subspace &s) const;
  bool is_maximal_totally_isotropic(const Subspace &s) const;

  bool operator==(const BilinearSpace &other) const {
    return dim_ == other.dim_ && gram_ == other.gram_ && split_ == other.split_;
  }

private:
  std::size_t dim_;
  std::vector<std::uint64_t> gram_;
  std::optional<std::size_t> split_;
  std::uint64_t canonical_ = 0;
};

/// Free function forms of the space operations.
bool eval_form(const BilinearSpace &space, const F2Vector &u, const F2Vector &v);
F2Vector canonical_vector(const BilinearSpace &space);
SpaceClass classify_space(const BilinearSpace &space);
bool is_totally_isotropic(const BilinearSpace &space, const Subspace &s);
bool is_maximal_totally_isotropic(const BilinearSpace &space, const Subspace &s);

/// A subspace stored by its reduced row echelon basis. Rows are ordered by
/// strictly increasing pivot and every pivot column is zero in the other
/// rows, so two Subspace values are equal iff they span the same space.
class Subspace {
public:
  explicit Subspace(std::size_t ambient_dim = 0);

  static Subspace canonicalize(std::size_t ambient_dim,
                               const std::vector<F2Vector> &vectors);
  static Subspace from_bits(std::size_t ambient_dim,
                            std::vector<std::uint64_t> rows);
  static Subspace full(std::size_t ambient_dim);
  /// Trusted constructor: `rows` must already be in reduced echelon form.
  static Subspace from_echelon(std::size_t ambient_dim,
                               std::vector<std::uint64_t> rows);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<std::uint64_t> &rows() const { return rows_; }
  std::vector<F2Vector> basis() const;
  std::uint64_t pivot_mask() const;

  bool contains(const F2Vector &v) const;
  bool contains_bits(std::uint64_t v) const;
  bool contains(const Subspace &other) const;
  /// Reduces v against the basis; zero iff v is in the subspace.
  std::uint64_t reduce(std::uint64_t v) const;

  /// {x : x.s = 0 for all s} under the standard dot product.
  Subspace annihilator() const;

  std::string to_string() const;

  bool operator==(const Subspace &) const = default;
  /// Lexicographic order on the concatenated basis bits.
  std::strong_ordering operator<=>(const Subspace &other) const;

private:
  std::size_t ambient_;
  std::vector<std::uint64_t> rows_;
};

Subspace sum(const Subspace &a, const Subspace &b);
Subspace intersection(const Subspace &a, const Subspace &b);
inline bool contains(const Subspace &s, const F2Vector &v) { return s.contains(v); }
inline std::size_t dim(const Subspace &s) { return s.dim(); }

/// One summand of an orthogonal decomposition: the summand as a space in its
/// own coordinates, plus the ambient images of its basis vectors.
struct Summand {
  BilinearSpace space;
  std::vector<F2Vector> embedding;
  std::size_t ambient_dim = 0;
  /// Pushes a vector of the summand into the ambient space.
  F2Vector push(const F2Vector &local) const;
};

enum class SummandKind { I, I2, H };

struct OrthogonalDecomposition {
  std::size_t ambient_dim;
  SummandKind kind;
  Summand part;       // contains w
  Summand complement; // its orthogonal complement
  F2Vector w_local;   // w in the coordinates of `part`

  /// Splits an ambient vector into its components in each summand.
  std::pair<F2Vector, F2Vector> project(const F2Vector &v) const;
  /// The part of S lying in each summand, in local coordinates.
  std::pair<Subspace, Subspace> restrict(const Subspace &s) const;

  std::vector<std::uint64_t> inverse; // ambient -> (part, complement) coords
};

/// V = V_w + V_w^perp with w in V_w. V_w is I when w is the anisotropic
/// canonical vector, I^2 when w is the isotropic canonical vector and H when
/// w is isotropic and not canonical. A noncanonical anisotropic w spans an I
/// summand.
OrthogonalDecomposition orthogonal_decomposition(const BilinearSpace &space,
                                                 const F2Vector &w);

namespace f2 {
/// Reduced row echelon form in place; returns the rank.
std::size_t rref(std::vector<std::uint64_t> &rows);
std::size_t rank(std::vector<std::uint64_t> rows);
inline int lowest(std::uint64_t v) { return __builtin_ctzll(v); }
inline bool parity(std::uint64_t v) { return __builtin_parityll(v); }
inline std::uint64_t mask(std::size_t n) {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}
} // namespace f2

} // namespace selmer
