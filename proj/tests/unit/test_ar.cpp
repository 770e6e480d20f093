#include "doctest.h"
#include "helpers.hpp"

using namespace stmod;

TEST_SUITE("ar") {

TEST_CASE("endomorphism algebra of a Jordan block") {
  PrimeField f(5);
  auto e = end_algebra(jordan_module(cyclic_group(5), f, 3));
  CHECK(e.basis.dim() == 3);
  CHECK(e.radical.cols() == 2);
  CHECK(e.singular_count == 25);
}

TEST_CASE("decomposable modules have no local endomorphism ring") {
  PrimeField f(2);
  auto g = cyclic_group(4);
  auto m = direct_sum({jordan_module(g, f, 1), jordan_module(g, f, 3)}).module;
  CHECK_THROWS(end_algebra(m));
}

TEST_CASE("AR class is annihilated by the radical") {
  PrimeField f(5);
  auto m = jordan_module(cyclic_group(5), f, 2);
  auto c = ar_class(m);
  CHECK_FALSE(is_stably_zero(c.phi));
  CHECK(c.solution_dim == 1);
  for (const auto& r : c.end.radical_maps) {
    CHECK(is_stably_zero(compose(c.phi, r)));
  }
}

TEST_CASE("almost split sequences over C4") {
  PrimeField f(2);
  auto g = cyclic_group(4);
  for (std::size_t i = 1; i <= 3; ++i) {
    auto m = jordan_module(g, f, i);
    auto s = ar_sequence(m, default_lift_fixtures(m));
    CHECK(s.exact);
    CHECK(s.non_split);
    CHECK(s.lifting_ok);
    std::size_t expect = i == 2 ? 4 : 2;  // J_{i-1} + J_{i+1} without kG
    CHECK(s.middle.dim() == s.start.dim() + m.dim());
    CHECK(s.stripped.dim() + 4 * s.free_rank == s.middle.dim());
    CHECK(s.stripped.dim() == expect);
  }
}

TEST_CASE("relative projectivity") {
  PrimeField f(2);
  auto g = cyclic_group(4);
  auto c2 = generated_subgroup(g, {2});
  CHECK(relatively_projective(regular_module(g, f), trivial_subgroup(g)));
  CHECK_FALSE(relatively_projective(trivial_module(g, f), c2));
  CHECK(relatively_projective(induce(trivial_module(c2.as_group(), f), c2).module, c2));
}

TEST_CASE("no witness over small cyclic groups") {
  CHECK_FALSE(strong_ghost_witness(cyclic_group(2), PrimeField(2)).has_value());
  CHECK_FALSE(strong_ghost_witness(cyclic_group(3), PrimeField(3)).has_value());
  CHECK_FALSE(strong_ghost_witness(cyclic_group(4), PrimeField(2)).has_value());
}

TEST_CASE("witness over C5") {
  auto w = strong_ghost_witness(cyclic_group(5), PrimeField(5));
  REQUIRE(w.has_value());
  CHECK(w->module.dim() == 2);
  CHECK(w->evidence.verified);
  CHECK(w->evidence.strong.ghost());
  CHECK_FALSE(w->evidence.stably_zero);
}

}
