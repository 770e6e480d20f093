#pragma once

// kG-modules as explicit matrix representations over F_p.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stmod/groups.hpp"
#include "stmod/linalg.hpp"

namespace stmod {

// A finite-dimensional kG-module with an action matrix for every group element.
// Immutable; copies share storage.
class Module {
 public:
  Module() = default;
  // Checks shapes and that the identity acts trivially. The full homomorphism
  // check is validate_module().
  Module(GroupPtr group, PrimeField field, std::size_t dim, std::vector<Matrix> action);

  const GroupPtr& group() const noexcept { return impl_->group; }
  const PrimeField& field() const noexcept { return impl_->field; }
  std::size_t dim() const noexcept { return impl_->dim; }
  const Matrix& action(int g) const noexcept { return impl_->action[static_cast<std::size_t>(g)]; }
  const std::vector<Matrix>& actions() const noexcept { return impl_->action; }
  // Byte fingerprint of (group, p, dim, action); equal keys mean identical modules.
  const std::string& key() const noexcept { return impl_->key; }
  bool valid() const noexcept { return impl_ != nullptr; }

  bool operator==(const Module& o) const noexcept { return impl_ == o.impl_ || impl_->key == o.impl_->key; }

 private:
  struct Impl {
    GroupPtr group;
    PrimeField field;
    std::size_t dim = 0;
    std::vector<Matrix> action;
    std::string key;
  };
  std::shared_ptr<const Impl> impl_;
};

// An equivariant linear map; mat is codomain.dim x domain.dim.
struct ModuleMap {
  Module domain;
  Module codomain;
  Matrix mat;

  bool is_equivariant() const;
};

ModuleMap compose(const ModuleMap& second, const ModuleMap& first);
ModuleMap identity_map(const Module& m);
ModuleMap zero_map(const Module& from, const Module& to);
ModuleMap add_maps(const ModuleMap& a, const ModuleMap& b);
ModuleMap subtract_maps(const ModuleMap& a, const ModuleMap& b);
ModuleMap scale_map(const ModuleMap& a, std::uint8_t s);

struct HomSpace {
  Module domain;
  Module codomain;
  std::vector<Matrix> basis;

  std::size_t dim() const noexcept { return basis.size(); }
  // Basis maps flattened row-major, one per column.
  Matrix as_columns() const;
  ModuleMap element(const std::vector<std::uint8_t>& coeffs) const;
};

// Flattened (row-major) map as a single column.
Matrix flatten_column(const Matrix& m);
// Flattened columns of a list of equally shaped matrices.
Matrix flatten_columns(const std::vector<Matrix>& ms, PrimeField field, std::size_t rows, std::size_t cols);

// Specs: "trivial", "regular", "jordan:i" (cyclic G), "v4band:n:lambda" (V_4, p = 2).
// jordan:i makes the cyclic generator act by a single i x i Jordan block at eigenvalue 1.
// v4band:n:l has basis u_1..u_n, v_1..v_n with (a-1)u_i = v_i, (b-1)u_i = l v_i + v_{i+1},
// (a-1)v_i = (b-1)v_i = 0, where a, b are elements 1 and 2.
Module standard_module(const GroupPtr& g, PrimeField field, const std::string& spec);
Module trivial_module(const GroupPtr& g, PrimeField field);
Module regular_module(const GroupPtr& g, PrimeField field);
Module jordan_module(const GroupPtr& g, PrimeField field, std::size_t size);
Module v4_band_module(const GroupPtr& g, PrimeField field, std::size_t n, int lambda);
Module zero_module(const GroupPtr& g, PrimeField field);

struct ModuleViolation {
  int g = -1;
  int h = -1;
  std::string what;
};
// nullopt when every invariant holds; otherwise the first failing pair.
std::optional<ModuleViolation> validate_module(const Module& m);

Module dual(const Module& m);
ModuleMap dual_map(const ModuleMap& f);

struct DirectSum {
  Module module;
  std::vector<ModuleMap> inclusions;
  std::vector<ModuleMap> projections;
};
DirectSum direct_sum(const std::vector<Module>& parts);
ModuleMap direct_sum_map(const std::vector<ModuleMap>& parts);

HomSpace hom_basis(const Module& m, const Module& n);

struct FixedPoints {
  Matrix basis;  // columns spanning M^G
  HomSpace hom;  // Hom(k, M)
};
FixedPoints fixed_points(const Module& m);

struct RadicalSocle {
  Matrix radical;  // columns
  Matrix socle;    // columns
};
// p-groups only.
RadicalSocle radical_and_socle(const Module& m);

struct Quotient {
  Module module;
  ModuleMap projection;
  Matrix complement;  // dim M x dim Q, a linear (not equivariant) section of the projection
};
Quotient quotient_module(const Module& m, const Matrix& sub_columns);

struct Submodule {
  Module module;
  ModuleMap inclusion;
};
Submodule submodule(const Module& m, const Matrix& sub_columns);

// 0 < A_1 < ... < A_dim = M, each an action-closed subspace; entry i spans A_{i+1}.
std::vector<Matrix> composition_flag(const Module& m);

Module restrict(const Module& m, const Subgroup& h);
ModuleMap restrict_map(const ModuleMap& f, const Subgroup& h);

struct Induced {
  Module module;
  std::vector<int> transversal;  // left coset representatives in the parent group
};
// m must be a module over h.as_group().
Induced induce(const Module& m, const Subgroup& h);
ModuleMap induce_map(const ModuleMap& f, const Subgroup& h);

struct Conjugated {
  Module module;      // over conjugate.as_group()
  Subgroup conjugate;  // x H x^-1
};
Conjugated conjugate_module(const Module& m, const Subgroup& h, int x);

enum class Adjunction {
  ToInduced,        // Hom_H(B|H, M) -> Hom_G(B, M^G)
  FromInduced,      // Hom_G(B, M^G) -> Hom_H(B|H, M)
  ToRestricted,     // Hom_G(M^G, B) -> Hom_H(M, B|H)
  FromRestricted,   // Hom_H(M, B|H) -> Hom_G(M^G, B)
};

// `b` is the G-module, `m` the H-module. The input map must have the shape that
// `direction` consumes; throws otherwise.
ModuleMap adjoint_hom(Adjunction direction, const ModuleMap& f, const Module& b, const Module& m, const Subgroup& h);

inline constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << 20;

enum class IsoVerdict { Isomorphic, NotIsomorphic, ProbablyNotIsomorphic };

struct IsoResult {
  IsoVerdict verdict = IsoVerdict::NotIsomorphic;
  std::optional<ModuleMap> witness;
  bool isomorphic() const noexcept { return verdict == IsoVerdict::Isomorphic; }
};
IsoResult is_isomorphic(const Module& m, const Module& n, std::uint64_t seed = 0x5eed);

struct IndecomposableResult {
  bool indecomposable = false;
  bool exact = true;
  std::optional<Matrix> splitting;  // an endomorphism that is neither nilpotent nor invertible
};
IndecomposableResult is_indecomposable(const Module& m, std::uint64_t seed = 0x5eed);

struct MackeyTerm {
  int representative = 0;   // g in Q g H
  Subgroup intersection;    // Q cap gHg^-1, inside the parent
  Module module;            // Ind from the intersection to Q of the conjugated restriction, over Q.as_group()
};

struct MackeyDecomposition {
  std::vector<MackeyTerm> terms;
  DirectSum sum;            // over Q.as_group()
  Module restricted;        // (M induced to G) restricted to Q
};

// m over h.as_group(); h and q subgroups of the same group.
MackeyDecomposition mackey(const Module& m, const Subgroup& h, const Subgroup& q);

// Number of elements p^k, saturating at UINT64_MAX.
std::uint64_t field_power(int p, std::size_t k);

}  // namespace stmod
