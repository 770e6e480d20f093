#pragma once

// Stable module category of kG: projective covers, syzygies, maps factoring
// through projectives, stable hom spaces, syzygies of maps and cones.

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>

#include "stmod/reps.hpp"

namespace stmod {

inline constexpr int kDefaultSyzygyCap = 24;

struct ProjectiveCover {
  Module projective;   // (regular kG)^rank; basis (i, g) at index i * |G| + g
  ModuleMap cover;     // projective -> M, column (i, g) is rho(g) t_i
  Matrix tops;         // dim M x rank, the t_i (lift a basis of M / rad M)
  std::size_t rank = 0;
  Module kernel;       // Omega M
  ModuleMap inclusion; // Omega M -> projective
  ColumnBasis kernel_coords;
};

struct SyzygyResult {
  Module source;
  int n = 0;
  Module result;
  // n > 0: the last step's cover P -> Omega^{n-1} M and kernel inclusion.
  std::optional<ModuleMap> cover;
  std::optional<ModuleMap> kernel;
  // n < 0: the last step's hull Omega^{n+1} M -> I and cokernel I -> Omega^n M.
  std::optional<ModuleMap> hull;
  std::optional<ModuleMap> cokernel;
};

struct StrippedModule {
  Module module;          // M / F with F the largest free summand
  ModuleMap projection;   // M -> module
  Matrix free_part;       // columns spanning F inside M
  std::size_t free_rank = 0;
};

class StableHomSpace {
 public:
  StableHomSpace() = default;
  StableHomSpace(HomSpace hom, Matrix phom_columns);

  const HomSpace& hom() const noexcept { return hom_; }
  // Flattened basis of the maps that factor through a projective (one per column).
  const Matrix& phom() const noexcept { return phom_; }
  std::size_t phom_dim() const noexcept { return phom_.cols(); }
  std::size_t dim() const noexcept { return coset_.size(); }
  // Representatives of a basis of Hom / PHom, chosen among the hom basis.
  const std::vector<ModuleMap>& coset_basis() const noexcept { return coset_; }
  // Coordinates of an equivariant map in the coset basis; nullopt if not in Hom.
  std::optional<std::vector<std::uint8_t>> coordinates(const Matrix& map) const;
  bool is_stably_zero(const Matrix& map) const;
  ModuleMap element(const std::vector<std::uint8_t>& coeffs) const;

 private:
  HomSpace hom_;
  Matrix phom_;
  std::vector<ModuleMap> coset_;
  QuotientCoordinates quot_;
};

struct Cone {
  Module cone;
  Module shift;        // Omega^{-1} A
  ModuleMap to_cone;   // B -> C
  ModuleMap to_shift;  // C -> Omega^{-1} A
  ModuleMap hull;      // A -> I(A)
};

// Per-thread computation context holding syzygy, cover and stable-hom caches.
class StableContext {
 public:
  explicit StableContext(int degree_cap = kDefaultSyzygyCap) : degree_cap_(degree_cap) {}

  int degree_cap() const noexcept { return degree_cap_; }
  void set_degree_cap(int cap) { degree_cap_ = cap; }
  void clear();

  const ProjectiveCover& projective_cover(const Module& m);
  Module syzygy(const Module& m, int n);
  SyzygyResult syzygy_result(const Module& m, int n);
  const StrippedModule& strip_projective(const Module& m);

  // Flattened spanning set (independent columns) of PHom(M, N), as the image of the
  // transfer X -> sum_g rho_N(g) X rho_M(g^-1). Valid for any finite group.
  const Matrix& phom_basis(const Module& m, const Module& n);
  const StableHomSpace& stable_hom(const Module& m, const Module& n);
  bool is_stably_zero(const ModuleMap& f);

  ModuleMap omega_map(const ModuleMap& f, int n);
  Cone cone(const ModuleMap& f);

 private:
  void check_degree(int n) const;
  ModuleMap omega_map_once(const ModuleMap& f);
  const Matrix& strip_section(const Module& m);

  int degree_cap_;
  std::unordered_map<std::string, std::unique_ptr<ProjectiveCover>> covers_;
  std::unordered_map<std::string, Module> syzygies_;
  std::unordered_map<std::string, std::unique_ptr<StrippedModule>> strips_;
  std::unordered_map<std::string, Matrix> sections_;
  std::unordered_map<std::string, Matrix> phoms_;
  std::unordered_map<std::string, std::unique_ptr<StableHomSpace>> stable_homs_;
};

// The calling thread's context.
StableContext& default_context();

const ProjectiveCover& projective_cover(const Module& m);
Module syzygy(const Module& m, int n);
const StrippedModule& strip_projective(const Module& m);
const Matrix& phom_basis(const Module& m, const Module& n);
const StableHomSpace& stable_hom(const Module& m, const Module& n);
bool is_stably_zero(const ModuleMap& f);
// Decides stable triviality on a Sylow p-subgroup (restriction is faithful there).
bool is_stably_zero_via_sylow(const ModuleMap& f);
ModuleMap omega_map(const ModuleMap& f, int n);
Cone cone(const ModuleMap& f);

// Number of free summands kG in M (rank of the norm element). p-groups only.
std::size_t free_rank(const Module& m);

void require_p_group(const Module& m, const char* what);

}  // namespace stmod
