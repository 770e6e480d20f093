#pragma once

// Hot loops of the engine. Each kernel has an OpenMP-parallel implementation
// and a plain serial reference in `reference::` kept for cross-checking and
// benchmarking. Both produce identical results on every input.

#include <cstddef>
#include <span>
#include <vector>

#include "stmod/linalg.hpp"

namespace stmod::kernels {

// Below this many matrix entries the parallel kernels stay on one thread.
inline constexpr std::size_t kParallelThreshold = 1 << 14;

// Reduces `a` to reduced row echelon form in place; returns pivot columns.
// Uses 64-bit packed rows when p = 2.
std::vector<std::size_t> rref_inplace(Matrix& a);

Matrix multiply(const Matrix& a, const Matrix& b);

// Row (i * right_cols + j) of the result is the row-major flattening of
//   sum_g  left[g](:, i) * right[g](j, :)
// i.e. the image of the elementary matrix E_ij under X -> sum_g left[g] X right[g].
// All `left` share a shape (n x n), all `right` share a shape (m x m).
Matrix transfer_images(std::span<const Matrix> left, std::span<const Matrix> right);

namespace reference {
std::vector<std::size_t> rref_inplace(Matrix& a);
Matrix multiply(const Matrix& a, const Matrix& b);
Matrix transfer_images(std::span<const Matrix> left, std::span<const Matrix> right);
}  // namespace reference

}  // namespace stmod::kernels
