#include "stmod/ar.hpp"

#include "stmod/errors.hpp"

namespace stmod {

namespace {

// Row-echelon accumulator for small coefficient vectors.
class Echelon {
 public:
  Echelon(PrimeField f, std::size_t n) : f_(f), n_(n) {}

  bool insert(std::vector<std::uint8_t> v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::uint8_t c = v[piv_[r]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) v[j] = f_.sub(v[j], f_.mul(c, rows_[r][j]));
    }
    std::size_t p = 0;
    while (p < n_ && v[p] == 0) ++p;
    if (p == n_) return false;
    std::uint8_t inv = f_.inv(v[p]);
    for (auto& x : v) x = f_.mul(x, inv);
    for (auto& row : rows_) {
      std::uint8_t c = row[p];
      if (c == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) row[j] = f_.sub(row[j], f_.mul(c, v[j]));
    }
    rows_.push_back(std::move(v));
    piv_.push_back(p);
    return true;
  }
  std::size_t size() const noexcept { return rows_.size(); }
  const std::vector<std::vector<std::uint8_t>>& rows() const noexcept { return rows_; }

 private:
  PrimeField f_;
  std::size_t n_;
  std::vector<std::vector<std::uint8_t>> rows_;
  std::vector<std::size_t> piv_;
};

Matrix combine(const HomSpace& h, const std::vector<std::uint8_t>& c, PrimeField f, std::size_t rows, std::size_t cols) {
  Matrix out(f, rows, cols);
  for (std::size_t l = 0; l < c.size(); ++l)
    if (c[l]) out = out + scaled(h.basis[l], c[l]);
  return out;
}

// Is target in the span of the maps in `maps` (all with target's shape)?
bool in_span(const std::vector<Matrix>& maps, const Matrix& target) {
  if (maps.empty()) return target.is_zero();
  std::vector<Matrix> cols;
  cols.reserve(maps.size());
  for (const auto& m : maps) cols.push_back(flatten_column(m));
  return solve(hstack(cols), flatten_column(target)).has_value();
}

std::vector<Subgroup> proper_nontrivial(const GroupPtr& g, int p) {
  std::vector<Subgroup> out;
  for (auto& s : p_subgroups(g, p))
    if (s.order() > 1 && s.order() < g->order()) out.push_back(std::move(s));
  return out;
}

}  // namespace

EndAlgebra end_algebra(const Module& m) {
  if (m.dim() == 0) throw InvalidInput("end_algebra: zero module");
  const PrimeField f = m.field();
  EndAlgebra e;
  e.module = m;
  e.basis = hom_basis(m, m);
  const std::size_t h = e.basis.dim();
  if (h > 40 || field_power(f.p(), h) > kEnumerationCap) throw CapExceeded("end_algebra: |End(M)| enumeration", kEnumerationCap);

  ColumnBasis cb(e.basis.as_columns());
  e.table.assign(h, std::vector<std::vector<std::uint8_t>>(h));
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) {
      auto c = cb.coordinates(flatten_column(e.basis.basis[i] * e.basis.basis[j]));
      if (!c) throw InternalError("end_algebra: product left End(M)");
      e.table[i][j] = c->column(0);
    }

  Echelon rad(f, h);
  std::vector<std::uint8_t> c(h, 0);
  const std::uint64_t total = field_power(f.p(), h);
  for (std::uint64_t n = 0; n < total; ++n) {
    Matrix x = combine(e.basis, c, f, m.dim(), m.dim());
    if (rank(x) < m.dim()) {
      ++e.singular_count;
      rad.insert(c);
    }
    for (std::size_t l = 0; l < h; ++l) {
      if (++c[l] < f.p()) break;
      c[l] = 0;
    }
  }
  if (e.singular_count != field_power(f.p(), rad.size()))
    throw InvalidInput("end_algebra: End(M) is not local, so M is not indecomposable");
  e.radical = Matrix(f, h, rad.size());
  for (std::size_t r = 0; r < rad.size(); ++r) {
    for (std::size_t l = 0; l < h; ++l) e.radical.set_raw(l, r, rad.rows()[r][l]);
    e.radical_maps.push_back(e.basis.element(rad.rows()[r]));
  }
  return e;
}

ARClass ar_class(const Module& m, StableContext& ctx) {
  require_p_group(m, "ar_class");
  ARClass out;
  if (ctx.stable_hom(m, m).dim() == 0) throw InvalidInput("ar_class: module is projective");
  out.end = end_algebra(m);
  const Module om = ctx.syzygy(m, 1);
  const auto& s = ctx.stable_hom(m, om);
  const std::size_t sd = s.dim();
  out.stable_hom_dim = sd;
  if (sd == 0) throw InternalError("ar_class: stable Hom(M, Omega M) is zero");

  const PrimeField f = m.field();
  std::vector<Matrix> blocks;
  for (const auto& r : out.end.radical_maps) {
    Matrix a(f, sd, sd);
    for (std::size_t l = 0; l < sd; ++l) {
      auto c = s.coordinates(s.coset_basis()[l].mat * r.mat);
      if (!c) throw InternalError("ar_class: composite is not equivariant");
      for (std::size_t q = 0; q < sd; ++q) a.set_raw(q, l, (*c)[q]);
    }
    blocks.push_back(std::move(a));
  }
  Matrix sol = blocks.empty() ? Matrix::identity(f, sd) : kernel_basis(vstack(blocks));
  out.solution_dim = sol.cols();
  if (sol.cols() == 0) throw InternalError("ar_class: annihilation system has no nonzero solution");
  out.phi = s.element(sol.column(0));

  if (s.is_stably_zero(out.phi.mat)) throw InternalError("ar_class: chosen class is stably zero");
  for (const auto& r : out.end.radical_maps)
    if (!s.is_stably_zero(out.phi.mat * r.mat)) throw InternalError("ar_class: class not annihilated by the radical");
  return out;
}

std::vector<std::pair<std::string, Module>> default_lift_fixtures(const Module& m, StableContext& ctx) {
  std::vector<std::pair<std::string, Module>> out;
  const auto& g = m.group();
  const PrimeField f = m.field();
  if (g->is_cyclic()) {
    for (std::size_t i = 1; i <= g->order(); ++i) out.emplace_back("J" + std::to_string(i), jordan_module(g, f, i));
    return out;
  }
  out.emplace_back("k", trivial_module(g, f));
  out.emplace_back("kG", regular_module(g, f));
  out.emplace_back("M", m);
  out.emplace_back("Omega M", ctx.syzygy(m, 1));
  out.emplace_back("Omega^-1 M", ctx.syzygy(m, -1));
  return out;
}

ARSequence ar_sequence(const Module& m, const std::vector<std::pair<std::string, Module>>& fixtures, StableContext& ctx) {
  ARSequence s;
  s.end_term = m;
  s.cls = ar_class(m, ctx);
  const PrimeField f = m.field();
  const auto& cov = ctx.projective_cover(m);
  ModuleMap psi = ctx.omega_map(s.cls.phi, 1);
  if (!(psi.domain == cov.kernel)) throw InternalError("ar_sequence: Omega(phi) has an unexpected domain");
  s.start = psi.codomain;

  auto w = direct_sum({s.start, cov.projective});
  const std::size_t d2 = s.start.dim();
  Matrix rel = vstack({psi.mat, scaled(cov.inclusion.mat, f.neg(1))});
  auto q = quotient_module(w.module, rel);
  s.middle = q.module;
  s.alpha = {s.start, s.middle, q.projection.mat * w.inclusions[0].mat};
  Matrix zero_pi = hstack({Matrix(f, m.dim(), d2), cov.cover.mat});
  s.beta = {s.middle, m, zero_pi * q.complement};
  if (!s.alpha.is_equivariant() || !s.beta.is_equivariant()) throw InternalError("ar_sequence: maps are not equivariant");

  s.rank_alpha = rank(s.alpha.mat);
  s.rank_beta = rank(s.beta.mat);
  s.exact = s.rank_alpha == d2 && s.rank_beta == m.dim() && s.middle.dim() == d2 + m.dim() &&
            (s.beta.mat * s.alpha.mat).is_zero();

  {
    HomSpace sec = hom_basis(m, s.middle);
    std::vector<Matrix> comp;
    for (const auto& h : sec.basis) comp.push_back(s.beta.mat * h);
    s.non_split = !in_span(comp, Matrix::identity(f, m.dim()));
  }

  auto fx = fixtures.empty() ? default_lift_fixtures(m, ctx) : fixtures;
  s.lifting_ok = true;
  for (const auto& [label, t] : fx) {
    LiftReport r;
    r.label = label;
    std::vector<Matrix> targets;
    if (t == m) {
      for (const auto& x : s.cls.end.radical_maps) targets.push_back(x.mat);
    } else if (t.dim() == m.dim() && is_isomorphic(t, m).isomorphic()) {
      r.skipped_isomorphic = true;
    } else {
      for (const auto& x : hom_basis(t, m).basis) targets.push_back(x);
    }
    if (!targets.empty()) {
      HomSpace tx = hom_basis(t, s.middle);
      std::vector<Matrix> comp;
      for (const auto& h : tx.basis) comp.push_back(s.beta.mat * h);
      for (const auto& y : targets) {
        ++r.maps_checked;
        if (in_span(comp, y)) ++r.maps_lifted;
      }
    }
    if (r.maps_lifted != r.maps_checked) s.lifting_ok = false;
    s.lifting.push_back(std::move(r));
  }

  const auto& st = ctx.strip_projective(s.middle);
  s.stripped = st.module;
  s.free_rank = st.free_rank;
  return s;
}

bool relatively_projective(const Module& m, const Subgroup& h) {
  if (!(*m.group() == *h.parent())) throw InvalidInput("relatively_projective: subgroup of a different group");
  const auto& g = *m.group();
  Module mh = restrict(m, h);
  HomSpace e = hom_basis(mh, mh);
  auto trans = left_transversal(h);
  std::vector<Matrix> traces;
  for (const auto& x : e.basis) {
    Matrix t(m.field(), m.dim(), m.dim());
    for (int r : trans) t = t + m.action(r) * x * m.action(g.inv(r));
    traces.push_back(std::move(t));
  }
  return in_span(traces, Matrix::identity(m.field(), m.dim()));
}

std::optional<StrongGhostWitness> strong_ghost_witness(const GroupPtr& g, PrimeField f, int cap, const GhostOptions& opts) {
  const int p = f.p();
  if (!g->is_p_group(p)) throw InvalidInput("strong_ghost_witness needs a p-group");
  if (g->order() > 64) throw InvalidInput("strong_ghost_witness: unsupported group (order > 64)");
  if (g->is_cyclic() && g->order() <= 4) return std::nullopt;

  StableContext& ctx = default_context();
  StrongGhostWitness w;
  auto& ev = w.evidence;
  if (g->is_cyclic()) {
    std::size_t n = p == 2 ? 3 : 2;
    w.module = jordan_module(g, f, n);
    ev.construction = "cyclic: Jordan block J_" + std::to_string(n);
  } else if (g->order() == 4) {
    w.module = v4_band_module(g, f, 3, 1);
    ev.construction = "Klein four: band module of dimension 6 (n = 3, lambda = 1)";
  } else {
    Module reg = regular_module(g, f);
    auto flag = composition_flag(reg);
    if (flag.size() <= static_cast<std::size_t>(p + 1)) throw InternalError("strong_ghost_witness: composition series too short");
    w.module = quotient_module(reg, flag[static_cast<std::size_t>(p)]).module;
    ev.construction = "non-cyclic: kG / A_" + std::to_string(p + 1);
  }
  const Module& m = w.module;

  ev.dim = m.dim();
  ev.dim_coprime_to_p = m.dim() % static_cast<std::size_t>(p) != 0;
  auto ind = is_indecomposable(m);
  ev.indecomposable = ind.indecomposable && ind.exact;

  bool none_relative = true;
  for (const auto& q : proper_nontrivial(g, p)) {
    RelativeProjectivity r;
    r.subgroup = q.elements();
    r.relatively_projective = relatively_projective(m, q);
    none_relative = none_relative && !r.relatively_projective;
    ev.relative.push_back(std::move(r));
  }
  ev.condition1 = ev.dim_coprime_to_p ? "dimension not divisible by p" : "relative trace criterion on every proper nontrivial subgroup";
  ev.condition1_ok = none_relative && (ev.dim_coprime_to_p || !ev.relative.empty());

  const Module k = trivial_module(g, f);
  ev.not_a_syzygy = true;
  for (int i = -cap; i <= cap; ++i) {
    SyzygyCheck sc;
    sc.i = i;
    Module oi = ctx.syzygy(k, i);
    sc.dim = oi.dim();
    if (oi.dim() != m.dim()) {
      sc.method = "dimension";
    } else {
      auto r = is_isomorphic(oi, m);
      sc.isomorphic = r.verdict != IsoVerdict::NotIsomorphic;
      sc.method = r.verdict == IsoVerdict::ProbablyNotIsomorphic ? "isomorphism test (inconclusive)" : "isomorphism test";
    }
    if (sc.isomorphic) ev.not_a_syzygy = false;
    ev.syzygies.push_back(std::move(sc));
  }

  auto cls = ar_class(m, ctx);
  w.phi = cls.phi;
  ev.ar_solution_dim = cls.solution_dim;
  ev.stably_zero = ctx.is_stably_zero(w.phi);
  GhostOptions o = opts;
  o.cap = cap;
  ev.strong = is_strong_ghost(w.phi, o);

  bool splits = true;
  for (const auto& q : proper_nontrivial(g, p)) {
    SplitReport r;
    r.subgroup = q.elements();
    r.stably_zero = is_stably_zero(restrict_map(w.phi, q));
    splits = splits && r.stably_zero;
    ev.splits.push_back(std::move(r));
  }
  ev.verified = ev.indecomposable && ev.condition1_ok && ev.not_a_syzygy && !ev.stably_zero &&
                ev.strong.verdict == Verdict::Ghost && ev.strong.exact && splits;
  return w;
}

}  // namespace stmod
