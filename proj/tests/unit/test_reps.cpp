#include "doctest.h"
#include "helpers.hpp"

using namespace stmod;

TEST_SUITE("reps") {

TEST_CASE("standard modules validate") {
  PrimeField f2(2), f3(3), f5(5);
  CHECK_FALSE(validate_module(regular_module(symmetric3_group(), f3)).has_value());
  CHECK_FALSE(validate_module(jordan_module(cyclic_group(9), f3, 4)).has_value());
  CHECK_FALSE(validate_module(v4_band_module(elementary_abelian_group(2, 2), f2, 3, 1)).has_value());
  CHECK_FALSE(validate_module(dual(jordan_module(cyclic_group(5), f5, 3))).has_value());
}

TEST_CASE("a non-homomorphism is rejected") {
  PrimeField f2(2);
  auto g = cyclic_group(2);
  Module bad(g, f2, 2, {Matrix::identity(f2, 2), Matrix::from_rows(f2, {{1, 1}, {1, 0}})});
  auto v = validate_module(bad);
  CHECK(v.has_value());
}

TEST_CASE("hom dimensions between Jordan blocks") {
  PrimeField f(5);
  auto g = cyclic_group(5);
  for (std::size_t i = 1; i <= 5; ++i)
    for (std::size_t j = 1; j <= 5; ++j) {
      auto h = hom_basis(jordan_module(g, f, i), jordan_module(g, f, j));
      CHECK(h.dim() == std::min(i, j));
      for (const auto& b : h.basis) CHECK((ModuleMap{h.domain, h.codomain, b}).is_equivariant());
    }
}

TEST_CASE("fixed points and socle") {
  PrimeField f(2);
  auto v4 = elementary_abelian_group(2, 2);
  auto reg = regular_module(v4, f);
  CHECK(fixed_points(reg).basis.cols() == 1);
  auto rs = radical_and_socle(reg);
  CHECK(rs.radical.cols() == 3);
  CHECK(rs.socle.cols() == 1);
}

TEST_CASE("dual of dual") {
  std::mt19937_64 rng(3);
  PrimeField f(3);
  auto m = testing::conjugated(regular_module(symmetric3_group(), f), rng);
  CHECK(dual(dual(m)) == m);
  auto phi = testing::random_hom(m, m, rng);
  CHECK(dual_map(dual_map(phi)).mat == phi.mat);
  CHECK(dual_map(phi).is_equivariant());
}

TEST_CASE("restriction and induction") {
  PrimeField f(5);
  auto g = cyclic_group(10);
  Subgroup h = sylow_subgroup(g, 5);
  Module j2 = jordan_module(h.as_group(), f, 2);
  auto ind = induce(j2, h);
  CHECK(ind.module.dim() == 4);
  CHECK(ind.transversal.size() == 2);
  CHECK_FALSE(validate_module(ind.module).has_value());
  CHECK(restrict(ind.module, h).dim() == 4);
  auto phi = hom_basis(j2, j2).basis.back();
  auto im = induce_map({j2, j2, phi}, h);
  CHECK(im.is_equivariant());
}

TEST_CASE("Frobenius reciprocity round trips") {
  std::mt19937_64 rng(5);
  PrimeField f(2);
  auto g = symmetric3_group();
  Subgroup h = generated_subgroup(g, {1});
  Module b = regular_module(g, f);
  Module m = trivial_module(h.as_group(), f);
  Module ind = induce(m, h).module;
  for (int t = 0; t < 5; ++t) {
    auto x = testing::random_hom(restrict(b, h), m, rng);
    auto up = adjoint_hom(Adjunction::ToInduced, x, b, m, h);
    CHECK(up.is_equivariant());
    CHECK(adjoint_hom(Adjunction::FromInduced, up, b, m, h).mat == x.mat);

    auto y = testing::random_hom(m, restrict(b, h), rng);
    auto across = adjoint_hom(Adjunction::FromRestricted, y, b, m, h);
    CHECK(across.is_equivariant());
    CHECK(adjoint_hom(Adjunction::ToRestricted, across, b, m, h).mat == y.mat);
  }
  CHECK(hom_basis(b, ind).dim() == hom_basis(restrict(b, h), m).dim());
}

TEST_CASE("isomorphism test") {
  std::mt19937_64 rng(9);
  PrimeField f(3);
  auto g = cyclic_group(9);
  Module j4 = jordan_module(g, f, 4);
  auto iso = is_isomorphic(j4, testing::conjugated(j4, rng));
  CHECK(iso.isomorphic());
  REQUIRE(iso.witness.has_value());
  CHECK(iso.witness->is_equivariant());
  CHECK_FALSE(is_isomorphic(j4, direct_sum({jordan_module(g, f, 2), jordan_module(g, f, 2)}).module).isomorphic());
}

TEST_CASE("indecomposability") {
  PrimeField f(2);
  auto g = cyclic_group(4);
  CHECK(is_indecomposable(jordan_module(g, f, 3)).indecomposable);
  auto r = is_indecomposable(direct_sum({jordan_module(g, f, 1), jordan_module(g, f, 2)}).module);
  CHECK_FALSE(r.indecomposable);
  CHECK(r.splitting.has_value());
  CHECK(is_indecomposable(v4_band_module(elementary_abelian_group(2, 2), f, 3, 1)).indecomposable);
}

TEST_CASE("quotients, submodules and flags") {
  PrimeField f(3);
  auto g = cyclic_group(3);
  Module reg = regular_module(g, f);
  auto fp = fixed_points(reg);
  auto q = quotient_module(reg, fp.basis);
  CHECK(q.module.dim() == 2);
  CHECK(q.projection.is_equivariant());
  auto s = submodule(reg, fp.basis);
  CHECK(s.module.dim() == 1);
  CHECK(s.inclusion.is_equivariant());
  auto flag = composition_flag(reg);
  REQUIRE(flag.size() == 3);
  for (std::size_t i = 0; i < flag.size(); ++i) CHECK(rank(flag[i]) == i + 1);
}

TEST_CASE("Mackey decomposition over S3") {
  PrimeField f(2);
  auto g = symmetric3_group();
  Subgroup t = generated_subgroup(g, {2});
  auto md = mackey(trivial_module(t.as_group(), f), t, t);
  CHECK(md.terms.size() == 2);
  CHECK(md.restricted.dim() == 3);
  CHECK(is_isomorphic(md.restricted, md.sum.module).isomorphic());
}

TEST_CASE("direct sums") {
  PrimeField f(5);
  auto g = cyclic_group(5);
  auto ds = direct_sum({jordan_module(g, f, 2), jordan_module(g, f, 3)});
  CHECK(ds.module.dim() == 5);
  for (std::size_t i = 0; i < 2; ++i) CHECK(compose(ds.projections[i], ds.inclusions[i]).mat.is_identity());
  CHECK(field_power(5, 3) == 125);
  CHECK(field_power(2, 200) == UINT64_MAX);
}

}
