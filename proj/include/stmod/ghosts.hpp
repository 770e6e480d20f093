#pragma once

// Ghost, strong ghost and eventual ghost predicates with certificates.

#include <optional>
#include <string>
#include <vector>

#include "stmod/cohom.hpp"

namespace stmod {

enum class GhostMode { Auto, Periodic, Bounds, Window };
enum class Verdict { Ghost, NotGhost, GhostModuloAssumptions };

const char* to_string(GhostMode m);
const char* to_string(Verdict v);
GhostMode parse_ghost_mode(const std::string& s);

struct DegreeRank {
  int i = 0;
  std::size_t rank = 0;
  bool dual = false;  // rank of H^i(phi*) rather than H^i(phi)
};

struct GhostWitness {
  int degree = 0;
  bool dual = false;
  std::size_t basis_index = 0;
  std::size_t rank = 0;
  ModuleMap cls;  // Omega^degree k -> M (or -> N* when dual)
  std::vector<int> subgroup;  // parent elements, for strong-ghost failures
};

struct GhostAssumptions {
  int cap = kDefaultDegreeCap;
  std::optional<int> period;
  std::optional<int> d;
  std::optional<int> m;
  std::optional<int> n;
  bool d_trusted = false;
  bool m_verified = false;
  bool n_verified = false;
  std::vector<std::string> notes;
};

struct GhostCertificate;

struct SubgroupCertificate {
  std::vector<int> elements;
  std::vector<GhostCertificate> cert;  // exactly one entry
};

struct GhostCertificate {
  Verdict verdict = Verdict::Ghost;
  GhostMode mode = GhostMode::Window;
  bool exact = true;
  std::vector<DegreeRank> degrees;
  std::optional<GhostWitness> witness;
  GhostAssumptions assumptions;
  std::optional<PeriodicityWitness> periodicity;
  std::vector<SubgroupCertificate> subgroups;  // strong ghosts only

  bool ghost() const noexcept { return verdict != Verdict::NotGhost; }
};

struct GhostOptions {
  GhostMode mode = GhostMode::Auto;
  int cap = kDefaultDegreeCap;
  bool conjugacy_reduce = false;
  bool parallel = true;
};

struct WindowReport {
  bool ghost = true;
  std::vector<DegreeRank> degrees;
  std::optional<GhostWitness> witness;
};

// H^i(phi) = 0 for a <= i <= b. p-groups only (callers reduce to a Sylow subgroup first).
WindowReport is_ghost_window(const ModuleMap& f, int a, int b, int cap = kDefaultDegreeCap,
                             StableContext& ctx = default_context());

GhostCertificate is_ghost(const ModuleMap& f, const GhostOptions& opts = {}, StableContext& ctx = default_context());
GhostCertificate is_strong_ghost(const ModuleMap& f, const GhostOptions& opts = {});

struct EventualReport {
  bool ghost_on_window = true;
  std::vector<DegreeRank> degrees;
  std::optional<GhostWitness> witness;
  std::optional<int> period;
  bool certified_ghost = false;  // periodicity plus a long enough window force a ghost
};

EventualReport is_eventual_ghost_window(const ModuleMap& f, int n0, int b, int cap = kDefaultDegreeCap,
                                        StableContext& ctx = default_context());

struct GhostSubspaceChain {
  std::vector<std::size_t> hom_dims;     // dim S_i for i = 0..i_max
  std::vector<std::size_t> stable_dims;  // dim S_i / PHom
  std::size_t phom_dim = 0;
  int stabilized_at = 0;                 // observed, not certified
  bool containment_verified = false;
  std::vector<ModuleMap> final_basis;    // basis of S_{i_max}
};

GhostSubspaceChain ghost_subspace_chain(const Module& m, const Module& n, int i_max, int cap = kDefaultDegreeCap,
                                        StableContext& ctx = default_context());

}  // namespace stmod
