#include "stmod/cohom.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "stmod/errors.hpp"

namespace stmod {

namespace {

void check_cap(int i, int cap) {
  if (std::abs(i) > cap) throw CapExceeded("cohomology degree " + std::to_string(i) + " beyond cap", cap);
}

// Rank of a set of coordinate vectors (each of length n).
std::size_t span_rank(const std::vector<std::vector<std::uint8_t>>& vecs, std::size_t n, PrimeField f) {
  if (vecs.empty() || n == 0) return 0;
  Matrix m(f, n, vecs.size());
  for (std::size_t j = 0; j < vecs.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m.set_raw(i, j, vecs[j][i]);
  return rank(m);
}

// Greedy: coset basis indices not in the span of vecs.
std::vector<std::size_t> complement_of_span(const std::vector<std::vector<std::uint8_t>>& vecs, std::size_t n, PrimeField f) {
  Matrix m(f, n, vecs.size() + n);
  for (std::size_t j = 0; j < vecs.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m.set_raw(i, j, vecs[j][i]);
  for (std::size_t i = 0; i < n; ++i) m.set_raw(i, vecs.size() + i, 1);
  std::vector<std::size_t> out;
  for (auto c : independent_columns(m))
    if (c >= vecs.size()) out.push_back(c - vecs.size());
  return out;
}

std::vector<std::uint8_t> coords_or_throw(const CohomologyGroup& h, const Matrix& cls) {
  auto c = h.coordinates(cls);
  if (!c) throw InternalError("cohomology class is not an equivariant map");
  return *c;
}

// Omega^e(zeta) for e = 0, 1, 2, ... computed along one chain of covers.
class LiftChain {
 public:
  LiftChain(ModuleMap zeta, StableContext& ctx) : ctx_(ctx) { lifts_.push_back(std::move(zeta)); }
  const ModuleMap& at(int e) {
    while (static_cast<int>(lifts_.size()) <= e) lifts_.push_back(ctx_.omega_map(lifts_.back(), 1));
    return lifts_[static_cast<std::size_t>(e)];
  }

 private:
  StableContext& ctx_;
  std::vector<ModuleMap> lifts_;
};

}  // namespace

Module omega_k(const GroupPtr& g, PrimeField f, int i, StableContext& ctx) { return ctx.syzygy(trivial_module(g, f), i); }

CohomologyGroup tate_group(const Module& m, int i, int cap, StableContext& ctx) {
  check_cap(i, cap);
  require_p_group(m, "tate_group");
  CohomologyGroup out;
  out.degree = i;
  out.coeff = m;
  out.source = omega_k(m.group(), m.field(), i, ctx);
  out.space = ctx.stable_hom(out.source, m);
  return out;
}

OrdinaryH0 ordinary_h0(const Module& m, StableContext& ctx) {
  require_p_group(m, "ordinary_h0");
  OrdinaryH0 out;
  out.hom = fixed_points(m).hom;
  const Module k = trivial_module(m.group(), m.field());
  const Module src = ctx.syzygy(k, 0);
  if (!(src == k)) {
    out.to_tate = Matrix(m.field(), 0, out.hom.dim());
    return out;
  }
  const auto& sh = ctx.stable_hom(k, m);
  out.to_tate = Matrix(m.field(), sh.dim(), out.hom.dim());
  for (std::size_t j = 0; j < out.hom.dim(); ++j) {
    auto c = sh.coordinates(out.hom.basis[j]);
    if (!c) throw InternalError("ordinary_h0: fixed vector is not equivariant");
    for (std::size_t r = 0; r < c->size(); ++r) out.to_tate.set_raw(r, j, (*c)[r]);
  }
  return out;
}

std::vector<std::size_t> tate_dims(const Module& m, int lo, int hi, int cap, StableContext& ctx) {
  std::vector<std::size_t> out;
  for (int i = lo; i <= hi; ++i) out.push_back(tate_group(m, i, cap, ctx).dim());
  return out;
}

Matrix tate_induced(const ModuleMap& f, int i, int cap, StableContext& ctx) {
  auto hm = tate_group(f.domain, i, cap, ctx);
  auto hn = tate_group(f.codomain, i, cap, ctx);
  Matrix out(f.mat.field(), hn.dim(), hm.dim());
  for (std::size_t j = 0; j < hm.dim(); ++j) {
    auto c = coords_or_throw(hn, f.mat * hm.basis()[j].mat);
    for (std::size_t r = 0; r < c.size(); ++r) out.set_raw(r, j, c[r]);
  }
  return out;
}

ModuleMap cup_compose(const ModuleMap& zeta, int i, const ModuleMap& theta, int j, StableContext& ctx) {
  const auto& g = zeta.domain.group();
  const PrimeField f = zeta.mat.field();
  const Module k = trivial_module(g, f);
  if (!(zeta.domain == ctx.syzygy(k, i)) || !(zeta.codomain == k)) throw InvalidInput("cup_compose: zeta is not a map Omega^i k -> k");
  if (!(theta.domain == ctx.syzygy(k, j))) throw InvalidInput("cup_compose: theta is not defined on Omega^j k");
  ModuleMap lifted = ctx.omega_map(zeta, j);  // Omega^j Omega^i k -> Omega^j k
  ModuleMap prod{lifted.domain, theta.codomain, theta.mat * lifted.mat};
  const Module target = ctx.syzygy(k, i + j);
  if (prod.domain == target) return {target, theta.codomain, prod.mat};
  const auto& iso = ctx.stable_hom(target, prod.domain);
  if (iso.dim() != 1) throw InternalError("cup_compose: Omega^j Omega^i k is not stably Omega^{i+j} k");
  return {target, theta.codomain, prod.mat * iso.coset_basis()[0].mat};
}

std::optional<int> trusted_ring_bound(const Group& g, int p) {
  if (g.order() == 1 || !g.is_p_group(p)) return std::nullopt;
  if (g.is_cyclic()) return g.order() == 2 ? 1 : 2;
  if (g.is_elementary_abelian(p)) return p == 2 ? 1 : 2;
  if (p == 2 && g.is_quaternion8()) return 4;
  return std::nullopt;
}

RingGenerators ring_generator_bound(const GroupPtr& g, PrimeField f, int cap, StableContext& ctx) {
  if (!g->is_p_group(f.p())) throw InvalidInput("ring_generator_bound needs a p-group");
  RingGenerators out;
  out.cap = cap;
  out.table_d = trusted_ring_bound(*g, f.p());
  const Module k = trivial_module(g, f);
  std::vector<LiftChain> chains;
  std::vector<CohomologyGroup> groups;
  groups.push_back(tate_group(k, 0, cap, ctx));
  for (int j = 1; j <= cap; ++j) {
    groups.push_back(tate_group(k, j, cap, ctx));
    const auto& hj = groups.back();
    std::vector<std::vector<std::uint8_t>> prods;
    for (std::size_t gi = 0; gi < out.gens.size(); ++gi) {
      const int e = j - out.gens[gi].degree;
      if (e < 0) continue;
      const ModuleMap& lift = chains[gi].at(e);
      for (const auto& x : groups[static_cast<std::size_t>(e)].basis()) prods.push_back(coords_or_throw(hj, x.mat * lift.mat));
    }
    auto fresh = complement_of_span(prods, hj.dim(), f);
    out.added.push_back(fresh.size());
    for (auto idx : fresh) {
      out.gens.push_back({j, hj.basis()[idx]});
      chains.emplace_back(hj.basis()[idx], ctx);
    }
    if (!fresh.empty()) out.d = j;
  }
  out.verified = cap >= 2 * out.d;
  out.trusted = out.table_d && *out.table_d == out.d;
  return out;
}

ModuleGeneration module_generation_bound(const Module& m, const RingGenerators& ring, int cap, StableContext& ctx) {
  require_p_group(m, "module_generation_bound");
  const PrimeField f = m.field();
  ModuleGeneration out;
  std::vector<LiftChain> chains;
  for (const auto& gen : ring.gens) chains.emplace_back(gen.cls, ctx);
  auto h0 = ordinary_h0(m, ctx);
  out.deficits.push_back(h0.hom.dim());
  std::vector<CohomologyGroup> groups;
  groups.push_back(tate_group(m, 0, cap, ctx));
  for (int t = 1; t <= cap; ++t) {
    groups.push_back(tate_group(m, t, cap, ctx));
    const auto& ht = groups.back();
    std::vector<std::vector<std::uint8_t>> prods;
    for (std::size_t gi = 0; gi < ring.gens.size(); ++gi) {
      const int e = t - ring.gens[gi].degree;
      if (e < 0) continue;
      const ModuleMap& lift = chains[gi].at(e);
      if (e == 0) {
        for (const auto& th : h0.hom.basis) prods.push_back(coords_or_throw(ht, th * lift.mat));
      } else {
        for (const auto& th : groups[static_cast<std::size_t>(e)].basis()) prods.push_back(coords_or_throw(ht, th.mat * lift.mat));
      }
    }
    out.deficits.push_back(ht.dim() - span_rank(prods, ht.dim(), f));
  }
  for (int t = 0; t <= cap; ++t)
    if (out.deficits[static_cast<std::size_t>(t)] > 0) out.m = t;
  out.verified = out.m + ring.d <= cap;
  return out;
}

GeneratorBounds generator_bounds(const ModuleMap& f, int cap, StableContext& ctx) {
  const auto& g = f.domain.group();
  const PrimeField fld = f.mat.field();
  auto ring = ring_generator_bound(g, fld, cap, ctx);
  GeneratorBounds out;
  out.cap = cap;
  out.d = ring.table_d ? *ring.table_d : ring.d;
  out.d_trusted = ring.table_d.has_value();
  out.d_verified = ring.verified;
  auto gm = module_generation_bound(f.domain, ring, cap, ctx);
  auto gn = module_generation_bound(dual(f.codomain), ring, cap, ctx);
  out.m = gm.m;
  out.n = gn.m;
  out.m_verified = gm.m + out.d <= cap;
  out.n_verified = gn.m + out.d <= cap;
  return out;
}

std::optional<PeriodicityWitness> periodicity_witness(const GroupPtr& g, PrimeField f, int max_d, StableContext& ctx) {
  if (!g->is_p_group(f.p())) throw InvalidInput("periodicity_witness needs a p-group");
  if (g->order() == 1) return std::nullopt;
  const Module k = trivial_module(g, f);
  const auto& end_k = ctx.stable_hom(k, k);
  for (int d = 1; d <= max_d; ++d) {
    const Module od = ctx.syzygy(k, d);
    const auto& us = ctx.stable_hom(od, k);
    const auto& ws = ctx.stable_hom(k, od);
    for (const auto& u : us.coset_basis())
      for (const auto& w : ws.coset_basis()) {
        auto c = end_k.coordinates(u.mat * w.mat);
        if (!c || c->empty() || (*c)[0] == 0) continue;
        const auto s = f.inv((*c)[0]);
        ModuleMap wn{k, od, scaled(w.mat, s)};
        return PeriodicityWitness{d, u, dual_map(wn), wn};
      }
  }
  return std::nullopt;
}

Matrix multiplication_matrix(const ModuleMap& u, int d, const Module& m, int i, int cap, StableContext& ctx) {
  auto src = tate_group(m, i, cap, ctx);
  auto dst = tate_group(m, i + d, cap, ctx);
  Matrix out(m.field(), dst.dim(), src.dim());
  for (std::size_t j = 0; j < src.dim(); ++j) {
    auto prod = cup_compose(u, d, src.basis()[j], i, ctx);
    auto c = coords_or_throw(dst, prod.mat);
    for (std::size_t r = 0; r < c.size(); ++r) out.set_raw(r, j, c[r]);
  }
  return out;
}

bool verify_periodicity(const PeriodicityWitness& w, const GroupPtr& g, PrimeField f, int lo, int hi, StableContext& ctx) {
  const Module k = trivial_module(g, f);
  const auto& end_k = ctx.stable_hom(k, k);
  auto c = end_k.coordinates(w.u.mat * w.w.mat);
  if (!c || c->size() != 1 || (*c)[0] != 1) return false;
  const int cap = std::max({std::abs(lo), std::abs(hi), std::abs(hi + w.d), std::abs(lo + w.d)});
  for (int i = lo; i <= hi; ++i) {
    Matrix mm = multiplication_matrix(w.u, w.d, k, i, cap, ctx);
    if (mm.rows() != mm.cols() || rank(mm) != mm.rows()) return false;
  }
  return true;
}

ModuleMap tate_dual_of_identity(const GroupPtr& g, PrimeField f, StableContext& ctx) {
  auto h = tate_group(trivial_module(g, f), -1, kDefaultDegreeCap, ctx);
  if (h.dim() == 0) throw InvalidInput("H^-1(G, k) is zero");
  return h.basis()[0];
}

}  // namespace stmod
