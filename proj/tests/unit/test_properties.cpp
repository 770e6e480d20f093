#include "doctest.h"
#include "helpers.hpp"

using namespace stmod;

TEST_SUITE("properties") {

TEST_CASE("ghost iff dual is a ghost") {
  struct C {
    GroupPtr g;
    int p;
    std::vector<std::string> specs;
  };
  std::vector<C> cs = {{cyclic_group(4), 2, {"jordan:1", "jordan:2", "jordan:3"}},
                       {cyclic_group(5), 5, {"jordan:1", "jordan:2", "jordan:4"}},
                       {elementary_abelian_group(2, 2), 2, {"trivial", "v4band:1:1"}}};
  for (const auto& c : cs) {
    PrimeField f(c.p);
    for (const auto& a : c.specs)
      for (const auto& b : c.specs) {
        const auto& s = stable_hom(standard_module(c.g, f, a), standard_module(c.g, f, b));
        for (const auto& phi : s.coset_basis()) {
          GhostOptions o;
          o.cap = 6;
          CHECK(is_ghost(phi, o).ghost() == is_ghost(dual_map(phi), o).ghost());
          CHECK(is_strong_ghost(phi, o).ghost() == is_strong_ghost(dual_map(phi), o).ghost());
        }
      }
  }
}

TEST_CASE("tate duality on random modules") {
  std::mt19937_64 rng(31);
  PrimeField f(2);
  auto g = cyclic_group(8);
  for (int t = 0; t < 3; ++t) {
    std::vector<Module> parts;
    for (int q = 0; q < 2; ++q) parts.push_back(jordan_module(g, f, 1 + rng() % 7));
    Module m = testing::conjugated(direct_sum(parts).module, rng);
    for (int i = -3; i <= 3; ++i) CHECK(tate_group(m, -i - 1).dim() == tate_group(dual(m), i).dim());
  }
}

TEST_CASE("every ghost is an eventual ghost") {
  PrimeField f(3);
  auto g = cyclic_group(9);
  for (std::size_t i : {2u, 4u, 7u})
    for (std::size_t j : {3u, 5u}) {
      const auto& s = stable_hom(jordan_module(g, f, i), jordan_module(g, f, j));
      for (const auto& phi : s.coset_basis())
        if (is_ghost(phi).ghost()) CHECK(is_eventual_ghost_window(phi, 1, 6).ghost_on_window);
    }
}

TEST_CASE("induction carries strong ghosts from C5 to C10") {
  PrimeField f(5);
  auto g = cyclic_group(10);
  Subgroup h = sylow_subgroup(g, 5);
  Module j2 = jordan_module(h.as_group(), f, 2);
  auto phi = ar_class(j2).phi;
  REQUIRE(is_strong_ghost(phi).ghost());
  auto up = induce_map(phi, h);
  CHECK_FALSE(is_stably_zero(up));
  auto c = is_strong_ghost(up);
  CHECK(c.ghost());
  for (const auto& s : c.subgroups) CHECK(s.cert.front().ghost());
}

TEST_CASE("stable triviality is detected on the Sylow subgroup") {
  std::mt19937_64 rng(33);
  PrimeField f(2);
  auto g = symmetric3_group();
  Subgroup syl = sylow_subgroup(g, 2);
  std::vector<Module> ms = {trivial_module(g, f), regular_module(g, f),
                            induce(trivial_module(syl.as_group(), f), syl).module};
  for (const auto& a : ms)
    for (const auto& b : ms)
      for (int t = 0; t < 3; ++t) {
        auto phi = testing::random_hom(a, b, rng);
        CHECK(is_stably_zero(phi) == is_stably_zero(restrict_map(phi, syl)));
      }
}

TEST_CASE("stable dims are basis independent") {
  std::mt19937_64 rng(34);
  PrimeField f(3);
  auto g = elementary_abelian_group(3, 2);
  Module k = trivial_module(g, f);
  Module om = syzygy(k, 1);
  Module om2 = testing::conjugated(om, rng);
  CHECK(stable_hom(om, k).dim() == stable_hom(om2, k).dim());
  CHECK(stable_hom(om, k).dim() == 2);
}

}
