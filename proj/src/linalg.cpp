#include "stmod/linalg.hpp"

#include <algorithm>
#include <string>

#include "stmod/errors.hpp"
#include "stmod/kernels.hpp"

namespace stmod {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(int p) : p_(p) {
  if (p < 2 || p > 97 || !is_prime(p)) throw InvalidInput("field characteristic must be a prime in [2, 97], got " + std::to_string(p));
  barrett_ = (std::uint64_t{1} << 32) / static_cast<std::uint64_t>(p);
}

std::uint8_t PrimeField::inv(std::uint8_t a) const {
  if (a == 0) throw InvalidInput("inverse of zero in F_p");
  // a^(p-2)
  std::uint32_t result = 1, base = a;
  for (int e = p_ - 2; e > 0; e >>= 1) {
    if (e & 1) result = reduce(result * base);
    base = reduce(base * base);
  }
  return static_cast<std::uint8_t>(result);
}

Matrix::Matrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::identity(PrimeField field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

Matrix Matrix::from_rows(PrimeField field, const std::vector<std::vector<long>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows[0].size();
  Matrix m(field, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw InvalidInput("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Matrix Matrix::column_vector(PrimeField field, std::span<const std::uint8_t> v) {
  Matrix m(field, v.size(), 1);
  std::copy(v.begin(), v.end(), m.data_.begin());
  return m;
}

Matrix Matrix::unflatten(PrimeField field, std::size_t rows, std::size_t cols, std::span<const std::uint8_t> v) {
  if (v.size() != rows * cols) throw InvalidInput("unflatten: size mismatch");
  Matrix m(field, rows, cols);
  std::copy(v.begin(), v.end(), m.data_.begin());
  return m;
}

bool Matrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](std::uint8_t x) { return x == 0; });
}

bool Matrix::is_identity() const noexcept {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (data_[i * cols_ + j] != (i == j ? 1 : 0)) return false;
  return true;
}

bool Matrix::operator==(const Matrix& o) const noexcept {
  return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = data_[i * cols_ + j];
  return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw InvalidInput("block out of range");
  Matrix b(field_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    std::copy_n(data_.begin() + (r0 + i) * cols_ + c0, nc, b.data_.begin() + i * nc);
  return b;
}

Matrix Matrix::select_columns(std::span<const std::size_t> cols) const {
  Matrix b(field_, rows_, cols.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) b.data_[i * cols.size() + j] = data_[i * cols_ + cols[j]];
  return b;
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const {
  Matrix b(field_, rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    std::copy_n(data_.begin() + rows[i] * cols_, cols_, b.data_.begin() + i * cols_);
  return b;
}

std::vector<std::uint8_t> Matrix::column(std::size_t c) const {
  std::vector<std::uint8_t> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = data_[i * cols_ + c];
  return v;
}

std::vector<std::vector<long>> Matrix::to_rows() const {
  std::vector<std::vector<long>> out(rows_, std::vector<long>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i][j] = data_[i * cols_ + j];
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) { return kernels::multiply(a, b); }

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidInput("add: shape mismatch");
  Matrix c(a.field(), a.rows(), a.cols());
  auto x = a.data(), y = b.data();
  auto z = c.data();
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = a.field().add(x[i], y[i]);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidInput("sub: shape mismatch");
  Matrix c(a.field(), a.rows(), a.cols());
  auto x = a.data(), y = b.data();
  auto z = c.data();
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = a.field().sub(x[i], y[i]);
  return c;
}

Matrix scaled(const Matrix& a, std::uint8_t s) {
  Matrix c = a;
  for (auto& x : c.data()) x = a.field().mul(x, s);
  return c;
}

Matrix hstack(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) throw InvalidInput("hstack of nothing");
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != blocks[0].rows()) throw InvalidInput("hstack: row mismatch");
    cols += b.cols();
  }
  Matrix m(blocks[0].field(), blocks[0].rows(), cols);
  std::size_t c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m.set_raw(i, c0 + j, b(i, j));
    c0 += b.cols();
  }
  return m;
}

Matrix vstack(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) throw InvalidInput("vstack of nothing");
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != blocks[0].cols()) throw InvalidInput("vstack: column mismatch");
    rows += b.rows();
  }
  Matrix m(blocks[0].field(), rows, blocks[0].cols());
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m.set_raw(r0 + i, j, b(i, j));
    r0 += b.rows();
  }
  return m;
}

Matrix block_diagonal(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) throw InvalidInput("block_diagonal of nothing");
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix m(blocks[0].field(), rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m.set_raw(r0 + i, c0 + j, b(i, j));
    r0 += b.rows();
    c0 += b.cols();
  }
  return m;
}

RrefResult rref(const Matrix& a) {
  RrefResult r{a, 0, {}};
  r.pivots = kernels::rref_inplace(r.reduced);
  r.rank = r.pivots.size();
  return r;
}

std::size_t rank(const Matrix& a) { return rref(a).rank; }

Matrix kernel_basis(const Matrix& a) {
  const auto r = rref(a);
  const std::size_t n = a.cols();
  std::vector<char> is_pivot(n, 0);
  for (auto c : r.pivots) is_pivot[c] = 1;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix k(a.field(), n, free.size());
  const PrimeField f = a.field();
  for (std::size_t j = 0; j < free.size(); ++j) {
    k.set_raw(free[j], j, 1);
    for (std::size_t i = 0; i < r.rank; ++i) k.set_raw(r.pivots[i], j, f.neg(r.reduced(i, free[j])));
  }
  return k;
}

std::optional<Solution> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw InvalidInput("solve: A and B have different row counts");
  const std::size_t n = a.cols();
  const auto r = rref(hstack({a, b}));
  for (auto c : r.pivots)
    if (c >= n) return std::nullopt;
  Matrix x(a.field(), n, b.cols());
  for (std::size_t i = 0; i < r.rank; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x.set_raw(r.pivots[i], j, r.reduced(i, n + j));
  return Solution{std::move(x), kernel_basis(a)};
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw InvalidInput("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return a;
  const auto r = rref(hstack({a, Matrix::identity(a.field(), n)}));
  if (r.rank < n || r.pivots[n - 1] != n - 1) return std::nullopt;
  return r.reduced.block(0, n, n, n);
}

std::vector<std::size_t> independent_columns(const Matrix& a) { return rref(a).pivots; }

std::vector<std::size_t> independent_rows(const Matrix& a) { return rref(a.transpose()).pivots; }

ColumnBasis::ColumnBasis(Matrix basis) : basis_(std::move(basis)) {
  const std::size_t k = basis_.cols();
  if (k == 0) return;
  pivot_rows_ = independent_rows(basis_);
  if (pivot_rows_.size() != k) throw InvalidInput("ColumnBasis: columns are linearly dependent");
  auto inv = inverse(basis_.select_rows(pivot_rows_));
  if (!inv) throw InternalError("ColumnBasis: pivot block not invertible");
  pivot_inverse_ = std::move(*inv);
}

Matrix ColumnBasis::coordinates_unchecked(const Matrix& v) const {
  if (v.rows() != basis_.rows()) throw InvalidInput("coordinates: ambient dimension mismatch");
  if (basis_.cols() == 0) return Matrix(v.field(), 0, v.cols());
  return pivot_inverse_ * v.select_rows(pivot_rows_);
}

std::optional<Matrix> ColumnBasis::coordinates(const Matrix& v) const {
  Matrix x = coordinates_unchecked(v);
  if (basis_.cols() == 0) {
    if (!v.is_zero()) return std::nullopt;
    return x;
  }
  if (!(basis_ * x == v)) return std::nullopt;
  return x;
}

QuotientCoordinates::QuotientCoordinates(const Matrix& sub_span, const Matrix& space_basis) {
  const PrimeField f = space_basis.field();
  const std::size_t ambient = space_basis.rows();
  if (sub_span.rows() != ambient) throw InvalidInput("QuotientCoordinates: ambient mismatch");
  auto sub_idx = independent_columns(sub_span);
  sub_basis_ = sub_span.select_columns(sub_idx);
  // Greedily extend the subspace basis by columns of the space basis.
  Matrix joint = hstack({sub_basis_, space_basis});
  auto joint_idx = independent_columns(joint);
  for (auto c : joint_idx)
    if (c >= sub_basis_.cols()) complement_indices_.push_back(c - sub_basis_.cols());
  if (joint_idx.size() - complement_indices_.size() != sub_basis_.cols())
    throw InternalError("QuotientCoordinates: subspace basis lost rank");
  complement_ = space_basis.select_columns(complement_indices_);
  if (sub_basis_.cols() + complement_.cols() == 0) {
    joint_ = ColumnBasis(Matrix(f, ambient, 0));
  } else {
    joint_ = ColumnBasis(hstack({sub_basis_.cols() ? sub_basis_ : Matrix(f, ambient, 0),
                                 complement_.cols() ? complement_ : Matrix(f, ambient, 0)}));
  }
}

std::optional<Matrix> QuotientCoordinates::coordinates(const Matrix& v) const {
  auto x = joint_.coordinates(v);
  if (!x) return std::nullopt;
  return x->block(sub_basis_.cols(), 0, complement_.cols(), v.cols());
}

bool QuotientCoordinates::in_sub(const Matrix& v) const {
  auto x = coordinates(v);
  return x && x->is_zero();
}

}  // namespace stmod
