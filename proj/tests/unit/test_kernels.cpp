#include "doctest.h"
#include "helpers.hpp"

using namespace stmod;

TEST_SUITE("kernels") {

TEST_CASE("rref: parallel equals reference") {
  std::mt19937_64 rng(11);
  for (int p : {2, 3, 5}) {
    PrimeField f(p);
    for (std::size_t n : {3u, 17u, 65u, 160u, 230u}) {
      auto a = testing::random_matrix(f, n, n + 7, rng);
      // force some dependence
      for (std::size_t c = 0; c < a.cols(); ++c) a.set_raw(n - 1, c, a(0, c));
      Matrix x = a, y = a;
      auto px = kernels::rref_inplace(x);
      auto py = kernels::reference::rref_inplace(y);
      CHECK(px == py);
      CHECK(x == y);
    }
  }
}

TEST_CASE("multiply: parallel equals reference") {
  std::mt19937_64 rng(12);
  for (int p : {2, 7}) {
    PrimeField f(p);
    for (std::size_t n : {1u, 9u, 130u, 200u}) {
      auto a = testing::random_matrix(f, n, n + 3, rng);
      auto b = testing::random_matrix(f, n + 3, n / 2 + 1, rng);
      CHECK(kernels::multiply(a, b) == kernels::reference::multiply(a, b));
    }
  }
}

TEST_CASE("transfer images: parallel equals reference") {
  std::mt19937_64 rng(13);
  PrimeField f(3);
  for (std::size_t g : {1u, 4u, 9u})
    for (std::size_t n : {2u, 6u, 14u}) {
      std::vector<Matrix> left, right;
      for (std::size_t i = 0; i < g; ++i) {
        left.push_back(testing::random_matrix(f, n, n, rng));
        right.push_back(testing::random_matrix(f, n + 1, n + 1, rng));
      }
      auto a = kernels::transfer_images(left, right);
      CHECK(a == kernels::reference::transfer_images(left, right));
      CHECK(a.rows() == n * (n + 1));
    }
}

TEST_CASE("transfer image of E_ij") {
  PrimeField f(5);
  std::mt19937_64 rng(14);
  std::vector<Matrix> left = {testing::random_matrix(f, 3, 3, rng), testing::random_matrix(f, 3, 3, rng)};
  std::vector<Matrix> right = {testing::random_matrix(f, 2, 2, rng), testing::random_matrix(f, 2, 2, rng)};
  auto t = kernels::transfer_images(left, right);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      Matrix e(f, 3, 2);
      e.set(i, j, 1);
      Matrix s = left[0] * e * right[0] + left[1] * e * right[1];
      auto row = t.row(i * 2 + j);
      CHECK(std::vector<std::uint8_t>(row.begin(), row.end()) == s.flatten());
    }
}

}
