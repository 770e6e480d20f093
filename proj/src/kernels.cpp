#include "stmod/kernels.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "stmod/errors.hpp"

namespace stmod::kernels {

namespace {

using Word = std::uint64_t;

std::vector<std::size_t> rref_gf2(Matrix& a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const std::size_t words = (cols + 63) / 64;
  std::vector<Word> bits(rows * words, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    auto src = a.row(r);
    Word* dst = bits.data() + r * words;
    for (std::size_t c = 0; c < cols; ++c)
      if (src[c]) dst[c / 64] |= Word{1} << (c % 64);
  }

  const bool parallel = rows * cols >= kParallelThreshold;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    const std::size_t w = c / 64;
    const Word mask = Word{1} << (c % 64);
    std::size_t piv = rows;
    for (std::size_t r = rank; r < rows; ++r)
      if (bits[r * words + w] & mask) {
        piv = r;
        break;
      }
    if (piv == rows) continue;
    if (piv != rank)
      std::swap_ranges(bits.begin() + piv * words, bits.begin() + (piv + 1) * words, bits.begin() + rank * words);
    const Word* prow = bits.data() + rank * words;
    const long long nrows = static_cast<long long>(rows);
#pragma omp parallel for schedule(static) if (parallel)
    for (long long rr = 0; rr < nrows; ++rr) {
      const auto r = static_cast<std::size_t>(rr);
      if (r == rank) continue;
      Word* row = bits.data() + r * words;
      if (!(row[w] & mask)) continue;
      for (std::size_t k = w; k < words; ++k) row[k] ^= prow[k];
    }
    pivots.push_back(c);
    ++rank;
  }

  for (std::size_t r = 0; r < rows; ++r) {
    auto dst = a.row(r);
    const Word* src = bits.data() + r * words;
    for (std::size_t c = 0; c < cols; ++c) dst[c] = static_cast<std::uint8_t>((src[c / 64] >> (c % 64)) & 1u);
  }
  return pivots;
}

std::vector<std::size_t> rref_bytes(Matrix& a) {
  const PrimeField f = a.field();
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const bool parallel = rows * cols >= kParallelThreshold;
  const auto p = static_cast<std::uint32_t>(f.p());
  auto data = a.data();
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t r = rank; r < rows; ++r)
      if (data[r * cols + c]) {
        piv = r;
        break;
      }
    if (piv == rows) continue;
    if (piv != rank)
      std::swap_ranges(data.begin() + piv * cols, data.begin() + (piv + 1) * cols, data.begin() + rank * cols);
    std::uint8_t* prow = data.data() + rank * cols;
    const std::uint8_t s = f.inv(prow[c]);
    if (s != 1)
      for (std::size_t k = c; k < cols; ++k) prow[k] = f.mul(prow[k], s);
    const long long nrows = static_cast<long long>(rows);
#pragma omp parallel for schedule(static) if (parallel)
    for (long long rr = 0; rr < nrows; ++rr) {
      const auto r = static_cast<std::size_t>(rr);
      if (r == rank) continue;
      std::uint8_t* row = data.data() + r * cols;
      const std::uint32_t factor = row[c];
      if (factor == 0) continue;
      const std::uint32_t negf = p - factor;
      for (std::size_t k = c; k < cols; ++k) row[k] = f.reduce(row[k] + negf * prow[k]);
    }
    pivots.push_back(c);
    ++rank;
  }
  return pivots;
}

void check_transfer_shapes(std::span<const Matrix> left, std::span<const Matrix> right) {
  if (left.size() != right.size()) throw InvalidInput("transfer_images: group size mismatch");
  for (std::size_t g = 0; g < left.size(); ++g) {
    if (left[g].rows() != left[0].rows() || left[g].cols() != left[0].cols() || right[g].rows() != right[0].rows() ||
        right[g].cols() != right[0].cols())
      throw InvalidInput("transfer_images: inconsistent shapes");
  }
}

}  // namespace

std::vector<std::size_t> rref_inplace(Matrix& a) {
  if (a.empty()) return {};
  return a.field().p() == 2 ? rref_gf2(a) : rref_bytes(a);
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("multiply: shape mismatch");
  if (!(a.field() == b.field())) throw InvalidInput("multiply: field mismatch");
  const PrimeField f = a.field();
  Matrix c(f, a.rows(), b.cols());
  const std::size_t n = b.cols();
  const std::size_t inner = a.cols();
  const bool parallel = a.rows() * inner * n >= kParallelThreshold * 16;
  const long long arows = static_cast<long long>(a.rows());
#pragma omp parallel for schedule(static) if (parallel)
  for (long long ii = 0; ii < arows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    std::vector<std::uint32_t> acc(n, 0);
    auto arow = a.row(i);
    for (std::size_t k = 0; k < inner; ++k) {
      const std::uint32_t s = arow[k];
      if (s == 0) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < n; ++j) acc[j] += s * brow[j];
    }
    auto crow = c.row(i);
    for (std::size_t j = 0; j < n; ++j) crow[j] = f.reduce(acc[j]);
  }
  return c;
}

Matrix transfer_images(std::span<const Matrix> left, std::span<const Matrix> right) {
  if (left.empty()) throw InvalidInput("transfer_images: empty group");
  check_transfer_shapes(left, right);
  const PrimeField f = left[0].field();
  const std::size_t n = left[0].rows();
  const std::size_t ln = left[0].cols();
  const std::size_t rm = right[0].rows();
  const std::size_t m = right[0].cols();
  Matrix out(f, ln * rm, n * m);
  const bool parallel = ln * rm * n * m * left.size() >= kParallelThreshold * 16;
  const long long pairs = static_cast<long long>(ln * rm);
#pragma omp parallel for schedule(static) if (parallel)
  for (long long pp = 0; pp < pairs; ++pp) {
    const auto pair = static_cast<std::size_t>(pp);
    const std::size_t i = pair / rm;
    const std::size_t j = pair % rm;
    std::vector<std::uint32_t> acc(n * m, 0);
    for (std::size_t g = 0; g < left.size(); ++g) {
      auto rrow = right[g].row(j);
      for (std::size_t a = 0; a < n; ++a) {
        const std::uint32_t s = left[g](a, i);
        if (s == 0) continue;
        std::uint32_t* dst = acc.data() + a * m;
        for (std::size_t b = 0; b < m; ++b) dst[b] += s * rrow[b];
      }
    }
    auto orow = out.row(pair);
    for (std::size_t k = 0; k < n * m; ++k) orow[k] = f.reduce(acc[k]);
  }
  return out;
}

namespace reference {

std::vector<std::size_t> rref_inplace(Matrix& a) {
  const PrimeField f = a.field();
  const int p = f.p();
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
    std::size_t piv = a.rows();
    for (std::size_t r = rank; r < a.rows(); ++r)
      if (a(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv == a.rows()) continue;
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto t = a(piv, k);
      a.set_raw(piv, k, a(rank, k));
      a.set_raw(rank, k, t);
    }
    const int s = f.inv(a(rank, c));
    for (std::size_t k = 0; k < a.cols(); ++k) a.set(rank, k, static_cast<long>(a(rank, k)) * s);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == rank || a(r, c) == 0) continue;
      const long factor = a(r, c);
      for (std::size_t k = 0; k < a.cols(); ++k)
        a.set(r, k, (static_cast<long>(a(r, k)) - factor * a(rank, k)) % p);
    }
    pivots.push_back(c);
    ++rank;
  }
  return pivots;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("multiply: shape mismatch");
  Matrix c(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      long s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += static_cast<long>(a(i, k)) * b(k, j);
      c.set(i, j, s);
    }
  return c;
}

Matrix transfer_images(std::span<const Matrix> left, std::span<const Matrix> right) {
  if (left.empty()) throw InvalidInput("transfer_images: empty group");
  check_transfer_shapes(left, right);
  const PrimeField f = left[0].field();
  const std::size_t ln = left[0].cols();
  const std::size_t rm = right[0].rows();
  const std::size_t n = left[0].rows();
  const std::size_t m = right[0].cols();
  Matrix out(f, ln * rm, n * m);
  for (std::size_t i = 0; i < ln; ++i)
    for (std::size_t j = 0; j < rm; ++j) {
      Matrix e(f, ln, rm);
      e.set(i, j, 1);
      Matrix sum(f, n, m);
      for (std::size_t g = 0; g < left.size(); ++g) {
        Matrix term = multiply(multiply(left[g], e), right[g]);
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < m; ++b) sum.set(a, b, static_cast<long>(sum(a, b)) + term(a, b));
      }
      auto flat = sum.flatten();
      std::copy(flat.begin(), flat.end(), out.row(i * rm + j).begin());
    }
  return out;
}

}  // namespace reference

}  // namespace stmod::kernels
