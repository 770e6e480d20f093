#pragma once

// Endomorphism algebras, almost split sequences and strong-ghost witnesses.

#include <optional>
#include <string>
#include <vector>

#include "stmod/ghosts.hpp"

namespace stmod {

struct EndAlgebra {
  Module module;
  HomSpace basis;  // End(M)
  // table[i][j] = coordinates of basis[i] o basis[j]
  std::vector<std::vector<std::vector<std::uint8_t>>> table;
  Matrix radical;  // columns: coordinates of a basis of rad End(M)
  std::vector<ModuleMap> radical_maps;
  std::size_t singular_count = 0;
};

// Exhaustive over End(M); needs p^dim End <= kEnumerationCap and End(M) local.
EndAlgebra end_algebra(const Module& m);

struct ARClass {
  ModuleMap phi;  // M -> Omega M
  std::size_t solution_dim = 0;
  std::size_t stable_hom_dim = 0;  // dim of stable Hom(M, Omega M)
  EndAlgebra end;
};

ARClass ar_class(const Module& m, StableContext& ctx = default_context());

struct LiftReport {
  std::string label;
  std::size_t maps_checked = 0;
  std::size_t maps_lifted = 0;
  bool skipped_isomorphic = false;
};

struct ARSequence {
  Module end_term;        // M
  ARClass cls;
  Module start;           // Omega^2 M
  Module middle;          // X
  ModuleMap alpha;        // Omega^2 M -> X
  ModuleMap beta;         // X -> M
  std::size_t rank_alpha = 0;
  std::size_t rank_beta = 0;
  bool exact = false;
  bool non_split = false;
  std::vector<LiftReport> lifting;
  bool lifting_ok = false;
  Module stripped;        // X without free summands
  std::size_t free_rank = 0;
};

// fixtures: modules T used to spot-check the lifting property (labels optional).
ARSequence ar_sequence(const Module& m, const std::vector<std::pair<std::string, Module>>& fixtures = {},
                       StableContext& ctx = default_context());

// Default lifting fixtures: all Jordan blocks for cyclic G, otherwise k, kG, M, Omega M, Omega^-1 M.
std::vector<std::pair<std::string, Module>> default_lift_fixtures(const Module& m, StableContext& ctx = default_context());

struct RelativeProjectivity {
  std::vector<int> subgroup;
  bool relatively_projective = false;
};

// Higman's criterion: M is relatively H-projective iff id_M is a relative trace from H.
bool relatively_projective(const Module& m, const Subgroup& h);

struct SyzygyCheck {
  int i = 0;
  std::size_t dim = 0;
  bool isomorphic = false;
  std::string method;  // "dimension" or "isomorphism test"
};

struct SplitReport {
  std::vector<int> subgroup;
  bool stably_zero = false;  // phi restricted to the subgroup
};

struct WitnessEvidence {
  std::string construction;
  std::size_t dim = 0;
  bool dim_coprime_to_p = false;
  bool indecomposable = false;
  std::vector<RelativeProjectivity> relative;  // proper nontrivial subgroups
  std::string condition1;                      // which criterion discharged it
  bool condition1_ok = false;
  std::vector<SyzygyCheck> syzygies;
  bool not_a_syzygy = false;
  std::size_t ar_solution_dim = 0;
  bool stably_zero = true;
  GhostCertificate strong;
  std::vector<SplitReport> splits;
  bool verified = false;
};

struct StrongGhostWitness {
  Module module;
  ModuleMap phi;
  WitnessEvidence evidence;
};

std::optional<StrongGhostWitness> strong_ghost_witness(const GroupPtr& g, PrimeField f, int cap = kDefaultDegreeCap,
                                                       const GhostOptions& opts = {});

}  // namespace stmod
