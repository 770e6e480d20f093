#pragma once

// Tate cohomology through the stable category: H^i(G, M) = stable maps Omega^i k -> M.

#include <optional>
#include <vector>

#include "stmod/stable.hpp"

namespace stmod {

inline constexpr int kDefaultDegreeCap = 12;

struct CohomologyGroup {
  int degree = 0;
  Module coeff;
  Module source;  // Omega^degree k
  StableHomSpace space;

  std::size_t dim() const noexcept { return space.dim(); }
  const std::vector<ModuleMap>& basis() const noexcept { return space.coset_basis(); }
  std::optional<std::vector<std::uint8_t>> coordinates(const Matrix& cls) const { return space.coordinates(cls); }
};

// Ordinary H^0 = Hom(k, M) with the quotient onto the Tate group.
struct OrdinaryH0 {
  HomSpace hom;
  Matrix to_tate;  // dim H^0-hat x dim Hom(k, M)
};

Module omega_k(const GroupPtr& g, PrimeField f, int i, StableContext& ctx = default_context());

CohomologyGroup tate_group(const Module& m, int i, int cap = kDefaultDegreeCap, StableContext& ctx = default_context());
OrdinaryH0 ordinary_h0(const Module& m, StableContext& ctx = default_context());
std::vector<std::size_t> tate_dims(const Module& m, int lo, int hi, int cap = kDefaultDegreeCap,
                                   StableContext& ctx = default_context());

// Matrix of f_*: H^i(M) -> H^i(N) in the stored bases (rows: target coordinates).
Matrix tate_induced(const ModuleMap& f, int i, int cap = kDefaultDegreeCap, StableContext& ctx = default_context());

// zeta: Omega^i k -> k, theta: Omega^j k -> M. Returns theta o Omega^j(zeta), a map
// Omega^{i+j} k -> M. When Omega^j Omega^i k is not literally Omega^{i+j} k (mixed signs)
// the identification is the unique stable class up to scalar.
ModuleMap cup_compose(const ModuleMap& zeta, int i, const ModuleMap& theta, int j, StableContext& ctx = default_context());

struct RingGenerator {
  int degree = 0;
  ModuleMap cls;
};

struct RingGenerators {
  std::vector<RingGenerator> gens;
  std::vector<std::size_t> added;  // new generators per degree 1..cap (index 0 is degree 1)
  int d = 0;                       // last degree with a new generator
  int cap = 0;
  std::optional<int> table_d;      // built-in value when the group is in the table
  bool trusted = false;            // d comes from the built-in table
  bool verified = false;           // sweep saw no new generator in (d, cap] with cap >= 2d
};

// Known ring generation degree for the built-in families (elementary abelian, cyclic, Q_8).
std::optional<int> trusted_ring_bound(const Group& g, int p);

RingGenerators ring_generator_bound(const GroupPtr& g, PrimeField f, int cap = kDefaultDegreeCap,
                                    StableContext& ctx = default_context());

struct ModuleGeneration {
  int m = 0;
  std::vector<std::size_t> deficits;  // new module generators needed in degrees 0..cap
  bool verified = false;              // m + d <= cap
};

ModuleGeneration module_generation_bound(const Module& m, const RingGenerators& ring, int cap = kDefaultDegreeCap,
                                         StableContext& ctx = default_context());

struct GeneratorBounds {
  int d = 0;
  int m = 0;
  int n = 0;
  int cap = 0;
  bool d_trusted = false;
  bool d_verified = false;
  bool m_verified = false;
  bool n_verified = false;
};

GeneratorBounds generator_bounds(const ModuleMap& f, int cap = kDefaultDegreeCap, StableContext& ctx = default_context());

struct PeriodicityWitness {
  int d = 0;
  ModuleMap u;  // Omega^d k -> k
  ModuleMap v;  // Omega^-d k -> k, the dual of w
  ModuleMap w;  // k -> Omega^d k with u o w = id stably
};

std::optional<PeriodicityWitness> periodicity_witness(const GroupPtr& g, PrimeField f, int max_d,
                                                      StableContext& ctx = default_context());

// u o w is the identity class of H^0(k) and multiplication by u is bijective H^i -> H^{i+d}
// for lo <= i <= hi on the trivial module.
bool verify_periodicity(const PeriodicityWitness& w, const GroupPtr& g, PrimeField f, int lo, int hi,
                        StableContext& ctx = default_context());

// Multiplication by a class u in H^d(k) as a matrix H^i(M) -> H^{i+d}(M).
Matrix multiplication_matrix(const ModuleMap& u, int d, const Module& m, int i, int cap = kDefaultDegreeCap,
                             StableContext& ctx = default_context());

// A nonzero class eta in H^-1(G, k); unique up to scalar for p-groups.
ModuleMap tate_dual_of_identity(const GroupPtr& g, PrimeField f, StableContext& ctx = default_context());

}  // namespace stmod
