#include "doctest.h"
#include "helpers.hpp"

using namespace stmod;

TEST_SUITE("linalg") {

TEST_CASE("barrett reduction matches %") {
  for (int p : {2, 3, 5, 7, 11, 13, 97}) {
    PrimeField f(p);
    for (std::uint32_t x = 0; x < 70000; x += 7) CHECK(f.reduce(x) == x % static_cast<std::uint32_t>(p));
    CHECK(f.from_int(-1) == p - 1);
    CHECK(f.from_int(-3L * p) == 0);
  }
}

TEST_CASE("primes") {
  CHECK(is_prime(2));
  CHECK(is_prime(251));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(9));
  CHECK_THROWS_AS(PrimeField(4), InvalidInput);
}

TEST_CASE("rref of a fixed matrix") {
  PrimeField f(5);
  auto a = Matrix::from_rows(f, {{1, 2, 3}, {2, 4, 6}, {0, 1, 1}});
  auto r = rref(a);
  CHECK(r.rank == 2);
  CHECK(r.pivots == std::vector<std::size_t>{0, 1});
  CHECK(r.reduced == Matrix::from_rows(f, {{1, 0, 1}, {0, 1, 1}, {0, 0, 0}}));
}

TEST_CASE("kernel, solve, inverse on random matrices") {
  std::mt19937_64 rng(7);
  for (int p : {2, 3, 5, 7}) {
    PrimeField f(p);
    for (int t = 0; t < 20; ++t) {
      std::size_t r = 1 + rng() % 9, c = 1 + rng() % 9;
      auto a = testing::random_matrix(f, r, c, rng);
      auto k = kernel_basis(a);
      CHECK(k.cols() == c - rank(a));
      CHECK((a * k).is_zero());
      CHECK(rank(k) == k.cols());
      CHECK(rank(a) == rank(a.transpose()));

      auto x = testing::random_matrix(f, c, 2, rng);
      auto b = a * x;
      auto s = solve(a, b);
      REQUIRE(s.has_value());
      CHECK(a * s->particular == b);

      auto sq = testing::random_matrix(f, 5, 5, rng);
      auto inv = inverse(sq);
      CHECK(inv.has_value() == (rank(sq) == 5));
      if (inv) CHECK((sq * *inv).is_identity());
    }
  }
}

TEST_CASE("solve reports inconsistency") {
  PrimeField f(3);
  auto a = Matrix::from_rows(f, {{1, 0}, {0, 0}});
  auto b = Matrix::from_rows(f, {{0}, {1}});
  CHECK_FALSE(solve(a, b).has_value());
}

TEST_CASE("column basis coordinates") {
  PrimeField f(7);
  auto basis = Matrix::from_rows(f, {{1, 0}, {2, 1}, {3, 5}});
  ColumnBasis cb(basis);
  auto v = basis * Matrix::from_rows(f, {{4}, {6}});
  auto x = cb.coordinates(v);
  REQUIRE(x.has_value());
  CHECK(*x == Matrix::from_rows(f, {{4}, {6}}));
  CHECK(cb.contains(Matrix::from_rows(f, {{1}, {0}, {0}})));
  CHECK_FALSE(cb.contains(Matrix::from_rows(f, {{0}, {0}, {1}})));
}

TEST_CASE("quotient coordinates") {
  PrimeField f(2);
  auto sub = Matrix::from_rows(f, {{1}, {1}, {0}});
  auto space = Matrix::identity(f, 3);
  QuotientCoordinates q(sub, space);
  CHECK(q.quotient_dim() == 2);
  CHECK(q.in_sub(Matrix::from_rows(f, {{1}, {1}, {0}})));
  CHECK_FALSE(q.in_sub(Matrix::from_rows(f, {{1}, {0}, {0}})));
}

TEST_CASE("independent rows and columns") {
  PrimeField f(2);
  auto a = Matrix::from_rows(f, {{1, 1, 0}, {1, 1, 0}, {0, 1, 1}});
  CHECK(independent_rows(a) == std::vector<std::size_t>{0, 2});
  CHECK(independent_columns(a) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("stacking and flattening") {
  PrimeField f(3);
  auto a = Matrix::from_rows(f, {{1, 2}, {0, 1}});
  CHECK(hstack({a, a}).cols() == 4);
  CHECK(vstack({a, a}).rows() == 4);
  CHECK(block_diagonal({a, a}).block(2, 2, 2, 2) == a);
  CHECK(Matrix::unflatten(f, 2, 2, a.flatten()) == a);
  CHECK(scaled(a, 2) == a + a);
  CHECK((a - a).is_zero());
}

}
