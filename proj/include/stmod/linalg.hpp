#pragma once

// Exact dense linear algebra over a prime field F_p (2 <= p <= 97).
//
// Entries are stored as bytes in [0, p), row-major. Row reduction over F_2
// runs on bit-packed 64-bit words; other primes use byte rows with a Barrett
// reduction. Pivoting is always "first nonzero entry in column order", so
// every basis produced here is reproducible across runs and thread counts.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace stmod {

class PrimeField {
 public:
  PrimeField() : PrimeField(2) {}
  explicit PrimeField(int p);

  int p() const noexcept { return p_; }

  std::uint8_t reduce(std::uint32_t x) const noexcept {
    std::uint32_t q = static_cast<std::uint32_t>((static_cast<std::uint64_t>(x) * barrett_) >> 32);
    std::uint32_t r = x - q * static_cast<std::uint32_t>(p_);
    r -= static_cast<std::uint32_t>(p_) & (0u - static_cast<std::uint32_t>(r >= static_cast<std::uint32_t>(p_)));
    return static_cast<std::uint8_t>(r);
  }
  std::uint8_t from_int(long v) const noexcept {
    long r = v % p_;
    return static_cast<std::uint8_t>(r < 0 ? r + p_ : r);
  }
  std::uint8_t add(std::uint8_t a, std::uint8_t b) const noexcept { return reduce(std::uint32_t{a} + b); }
  std::uint8_t sub(std::uint8_t a, std::uint8_t b) const noexcept {
    return reduce(std::uint32_t{a} + static_cast<std::uint32_t>(p_) - b);
  }
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const noexcept { return reduce(std::uint32_t{a} * b); }
  std::uint8_t neg(std::uint8_t a) const noexcept { return a == 0 ? 0 : static_cast<std::uint8_t>(p_ - a); }
  // a must be nonzero.
  std::uint8_t inv(std::uint8_t a) const;

  bool operator==(const PrimeField& o) const noexcept { return p_ == o.p_; }

 private:
  int p_;
  std::uint64_t barrett_;
};

bool is_prime(int n);

class Matrix {
 public:
  Matrix() = default;
  Matrix(PrimeField field, std::size_t rows, std::size_t cols);

  static Matrix identity(PrimeField field, std::size_t n);
  static Matrix from_rows(PrimeField field, const std::vector<std::vector<long>>& rows);
  // Single column from a vector of residues.
  static Matrix column_vector(PrimeField field, std::span<const std::uint8_t> v);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  std::uint8_t operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, long v) { data_[r * cols_ + c] = field_.from_int(v); }
  void set_raw(std::size_t r, std::size_t c, std::uint8_t v) noexcept { data_[r * cols_ + c] = v; }

  std::span<const std::uint8_t> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<std::uint8_t> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const std::uint8_t> data() const noexcept { return data_; }
  std::span<std::uint8_t> data() noexcept { return data_; }

  bool is_zero() const noexcept;
  bool is_identity() const noexcept;
  bool operator==(const Matrix& o) const noexcept;

  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  Matrix select_columns(std::span<const std::size_t> cols) const;
  Matrix select_rows(std::span<const std::size_t> rows) const;
  std::vector<std::uint8_t> column(std::size_t c) const;
  // Row-major flattening as a single row / inverse.
  std::vector<std::uint8_t> flatten() const { return data_; }
  static Matrix unflatten(PrimeField field, std::size_t rows, std::size_t cols, std::span<const std::uint8_t> v);

  std::vector<std::vector<long>> to_rows() const;

 private:
  PrimeField field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix scaled(const Matrix& a, std::uint8_t s);
Matrix hstack(const std::vector<Matrix>& blocks);
Matrix vstack(const std::vector<Matrix>& blocks);
Matrix block_diagonal(const std::vector<Matrix>& blocks);

struct RrefResult {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

RrefResult rref(const Matrix& a);
std::size_t rank(const Matrix& a);

// Columns spanning {x : A x = 0}, one per free column of rref(A), in free-column order.
Matrix kernel_basis(const Matrix& a);

struct Solution {
  Matrix particular;  // A * particular = B
  Matrix nullspace;   // columns spanning ker A
};

// Solves A X = B. Returns nullopt when some column of B is outside the column space of A.
std::optional<Solution> solve(const Matrix& a, const Matrix& b);

std::optional<Matrix> inverse(const Matrix& a);

// Row indices of a maximal independent subset of the rows, chosen greedily top to bottom.
std::vector<std::size_t> independent_rows(const Matrix& a);
// Columns of `a` forming a basis of its column space, chosen greedily left to right.
std::vector<std::size_t> independent_columns(const Matrix& a);

// Coordinates with respect to a fixed set of independent column vectors.
class ColumnBasis {
 public:
  ColumnBasis() = default;
  // Columns of `basis` must be linearly independent.
  explicit ColumnBasis(Matrix basis);

  std::size_t ambient_dim() const noexcept { return basis_.rows(); }
  std::size_t size() const noexcept { return basis_.cols(); }
  const Matrix& basis() const noexcept { return basis_; }

  // X with basis * X = v (column by column), or nullopt if some column is outside the span.
  std::optional<Matrix> coordinates(const Matrix& v) const;
  // Same, without the span check; caller guarantees membership.
  Matrix coordinates_unchecked(const Matrix& v) const;
  bool contains(const Matrix& v) const { return coordinates(v).has_value(); }

 private:
  Matrix basis_;
  std::vector<std::size_t> pivot_rows_;
  Matrix pivot_inverse_;
};

// A subspace U inside a space W, both given by spanning column vectors in a common
// ambient space. Chooses complement columns of W (greedy, in order) so that U ⊕ C = W
// and reports coordinates of vectors of W modulo U in the basis C.
class QuotientCoordinates {
 public:
  QuotientCoordinates() = default;
  QuotientCoordinates(const Matrix& sub_span, const Matrix& space_basis);

  const Matrix& sub_basis() const noexcept { return sub_basis_; }
  const Matrix& complement() const noexcept { return complement_; }
  const std::vector<std::size_t>& complement_indices() const noexcept { return complement_indices_; }
  std::size_t quotient_dim() const noexcept { return complement_.cols(); }

  // Coordinates in the complement basis of each column of v modulo U; nullopt if outside W.
  std::optional<Matrix> coordinates(const Matrix& v) const;
  bool in_sub(const Matrix& v) const;

 private:
  Matrix sub_basis_;
  Matrix complement_;
  std::vector<std::size_t> complement_indices_;
  ColumnBasis joint_;
};

}  // namespace stmod
