#include "doctest.h"
#include "helpers.hpp"
#include "../oracle.hpp"

using namespace stmod;

TEST_SUITE("cohom") {

TEST_CASE("tate dims against minimal resolutions") {
  struct C {
    GroupPtr g;
    oracle::Table t;
    int p;
    int span;
  };
  std::vector<C> cs = {{cyclic_group(2), oracle::cyclic(2), 2, 6}, {cyclic_group(4), oracle::cyclic(4), 2, 6},
                       {cyclic_group(9), oracle::cyclic(9), 3, 6}, {elementary_abelian_group(2, 2), oracle::klein(), 2, 6},
                       {quaternion_group(), oracle::quaternion(), 2, 8}};
  for (const auto& c : cs) {
    auto dims = tate_dims(trivial_module(c.g, PrimeField(c.p)), -c.span, c.span);
    auto want = oracle::tate_dims(c.t, c.p, -c.span, c.span);
    REQUIRE(dims.size() == want.size());
    for (std::size_t i = 0; i < dims.size(); ++i) CHECK(dims[i] == static_cast<std::size_t>(want[i]));
  }
}

TEST_CASE("positive degrees are ordinary cohomology") {
  PrimeField f(2);
  auto g = dihedral_group(8);
  auto dims = tate_dims(trivial_module(g, f), 0, 4);
  CHECK(dims == std::vector<std::size_t>{1, 2, 3, 4, 5});
  auto h0 = ordinary_h0(regular_module(g, f));
  CHECK(h0.hom.dim() == 1);
  CHECK(h0.to_tate.rows() == 0);
}

TEST_CASE("identity induces identity") {
  PrimeField f(2);
  auto m = syzygy(trivial_module(elementary_abelian_group(2, 2), f), 1);
  for (int i = -3; i <= 3; ++i) {
    auto a = tate_induced(identity_map(m), i);
    CHECK(a.is_identity());
  }
}

TEST_CASE("periodicity witnesses") {
  CHECK(periodicity_witness(cyclic_group(2), PrimeField(2), 8)->d == 1);
  CHECK(periodicity_witness(cyclic_group(9), PrimeField(3), 8)->d == 2);
  auto w = periodicity_witness(quaternion_group(), PrimeField(2), 8);
  REQUIRE(w.has_value());
  CHECK(w->d == 4);
  CHECK(verify_periodicity(*w, quaternion_group(), PrimeField(2), -3, 3));
  CHECK_FALSE(periodicity_witness(elementary_abelian_group(2, 2), PrimeField(2), 6).has_value());
}

TEST_CASE("ring generator bounds") {
  PrimeField f(2);
  auto rg = ring_generator_bound(elementary_abelian_group(2, 2), f, 6);
  CHECK(rg.d == 1);
  CHECK(rg.trusted);
  CHECK(rg.added.front() == 2);
  CHECK(trusted_ring_bound(*quaternion_group(), 2) == 4);
  CHECK(trusted_ring_bound(*cyclic_group(4), 2) == 2);
}

TEST_CASE("cup product with the unit") {
  PrimeField f(3);
  auto g = cyclic_group(3);
  auto k = trivial_module(g, f);
  auto one = tate_group(k, 0).basis().front();
  auto z = tate_group(k, 2).basis().front();
  auto prod = cup_compose(one, 0, z, 2);
  auto c = tate_group(k, 2).coordinates(prod.mat);
  REQUIRE(c.has_value());
  CHECK((*c)[0] != 0);
}

TEST_CASE("multiplication by the periodicity class is bijective") {
  PrimeField f(2);
  auto g = cyclic_group(4);
  auto w = periodicity_witness(g, f, 4);
  REQUIRE(w.has_value());
  auto m = jordan_module(g, f, 2);
  for (int i = -2; i <= 2; ++i) {
    auto a = multiplication_matrix(w->u, w->d, m, i);
    CHECK(a.rows() == a.cols());
    CHECK(rank(a) == a.rows());
  }
}

TEST_CASE("eta over V4 is nonzero only where it multiplies 1") {
  PrimeField f(2);
  auto g = elementary_abelian_group(2, 2);
  auto eta = tate_dual_of_identity(g, f);
  CHECK_FALSE(is_stably_zero(eta));
  for (int i = -6; i <= 6; ++i) CHECK(rank(tate_induced(eta, i)) == (i == -1 ? 1u : 0u));
}

}
