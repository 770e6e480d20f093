#include "stmod/stable.hpp"

#include <cstring>

#include "stmod/errors.hpp"
#include "stmod/kernels.hpp"

namespace stmod {

namespace {

std::string pair_key(const Module& a, const Module& b) {
  std::string k;
  k.reserve(a.key().size() + b.key().size() + 9);
  const auto n = static_cast<std::uint64_t>(a.key().size());
  char buf[sizeof(n)];
  std::memcpy(buf, &n, sizeof(n));
  k.append(buf, sizeof(n));
  k += a.key();
  k += b.key();
  return k;
}

std::string degree_key(const Module& m, int n) {
  std::string k = m.key();
  char buf[sizeof(int)];
  std::memcpy(buf, &n, sizeof(int));
  k.append(buf, sizeof(int));
  return k;
}

Matrix norm_matrix(const Module& m) {
  Matrix n(m.field(), m.dim(), m.dim());
  for (const auto& a : m.actions()) n = n + a;
  return n;
}

// Smallest-index-first column span membership.
bool in_column_span(const Matrix& span, const Matrix& v) {
  if (span.cols() == 0) return v.is_zero();
  return rank(hstack({span, v})) == rank(span);
}

}  // namespace

void require_p_group(const Module& m, const char* what) {
  if (!m.group()->is_p_group(m.field().p())) throw InvalidInput(std::string(what) + " needs a p-group");
}

std::size_t free_rank(const Module& m) {
  require_p_group(m, "free_rank");
  if (m.dim() == 0) return 0;
  return rank(norm_matrix(m));
}

StableHomSpace::StableHomSpace(HomSpace hom, Matrix phom_columns) : hom_(std::move(hom)), phom_(std::move(phom_columns)) {
  if (hom_.dim() == 0) return;
  const Matrix h = hom_.as_columns();
  quot_ = QuotientCoordinates(phom_, h);
  if (quot_.sub_basis().cols() != phom_.cols()) throw InternalError("StableHomSpace: dependent PHom basis");
  for (auto idx : quot_.complement_indices()) coset_.push_back({hom_.domain, hom_.codomain, hom_.basis[idx]});
}

std::optional<std::vector<std::uint8_t>> StableHomSpace::coordinates(const Matrix& map) const {
  if (map.rows() != hom_.codomain.dim() || map.cols() != hom_.domain.dim())
    throw InvalidInput("StableHomSpace::coordinates: map has the wrong shape");
  if (hom_.dim() == 0) {
    if (!map.is_zero()) return std::nullopt;
    return std::vector<std::uint8_t>{};
  }
  auto c = quot_.coordinates(flatten_column(map));
  if (!c) return std::nullopt;
  return c->column(0);
}

bool StableHomSpace::is_stably_zero(const Matrix& map) const {
  auto c = coordinates(map);
  if (!c) throw InvalidInput("is_stably_zero: map is not equivariant");
  for (auto x : *c)
    if (x) return false;
  return true;
}

ModuleMap StableHomSpace::element(const std::vector<std::uint8_t>& coeffs) const {
  if (coeffs.size() != coset_.size()) throw InvalidInput("StableHomSpace::element: wrong number of coefficients");
  Matrix acc(hom_.domain.field(), hom_.codomain.dim(), hom_.domain.dim());
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i]) acc = acc + scaled(coset_[i].mat, coeffs[i]);
  return {hom_.domain, hom_.codomain, std::move(acc)};
}

void StableContext::clear() {
  covers_.clear();
  syzygies_.clear();
  strips_.clear();
  sections_.clear();
  phoms_.clear();
  stable_homs_.clear();
}

void StableContext::check_degree(int n) const {
  if (n > degree_cap_ || n < -degree_cap_) throw CapExceeded("syzygy degree " + std::to_string(n) + " beyond cap", degree_cap_);
}

const ProjectiveCover& StableContext::projective_cover(const Module& m) {
  if (auto it = covers_.find(m.key()); it != covers_.end()) return *it->second;
  require_p_group(m, "projective_cover");
  const PrimeField f = m.field();
  const auto& g = m.group();
  const std::size_t order = g->order();
  const std::size_t d = m.dim();
  auto out = std::make_unique<ProjectiveCover>();
  if (d == 0) {
    Module z = zero_module(g, f);
    out->projective = z;
    out->cover = zero_map(z, m);
    out->tops = Matrix(f, 0, 0);
    out->kernel = z;
    out->inclusion = zero_map(z, z);
    out->kernel_coords = ColumnBasis(Matrix(f, 0, 0));
    return *covers_.emplace(m.key(), std::move(out)).first->second;
  }
  Matrix rad(f, d, 0);
  if (order > 1) {
    std::vector<Matrix> spans;
    for (std::size_t x = 1; x < order; ++x) spans.push_back(m.action(static_cast<int>(x)) - Matrix::identity(f, d));
    Matrix all = hstack(spans);
    rad = all.select_columns(independent_columns(all));
  }
  QuotientCoordinates qc(rad, Matrix::identity(f, d));
  out->tops = qc.complement();
  out->rank = out->tops.cols();
  const std::size_t r = out->rank;
  out->projective = direct_sum(std::vector<Module>(r, regular_module(g, f))).module;
  Matrix cov(f, d, r * order);
  for (std::size_t i = 0; i < r; ++i) {
    Matrix t = out->tops.select_columns(std::vector<std::size_t>{i});
    for (std::size_t x = 0; x < order; ++x) {
      Matrix img = m.action(static_cast<int>(x)) * t;
      for (std::size_t row = 0; row < d; ++row) cov.set_raw(row, i * order + x, img(row, 0));
    }
  }
  out->cover = {out->projective, m, cov};
  Matrix k = kernel_basis(cov);
  auto sub = submodule(out->projective, k);
  out->kernel = sub.module;
  out->inclusion = sub.inclusion;
  out->kernel_coords = ColumnBasis(sub.inclusion.mat);
  return *covers_.emplace(m.key(), std::move(out)).first->second;
}

Module StableContext::syzygy(const Module& m, int n) {
  check_degree(n);
  if (n == 0) return strip_projective(m).module;
  const std::string key = degree_key(m, n);
  if (auto it = syzygies_.find(key); it != syzygies_.end()) return it->second;
  require_p_group(m, "syzygy");
  Module result;
  if (n > 0) {
    Module prev = n == 1 ? m : syzygy(m, n - 1);
    result = projective_cover(prev).kernel;
  } else {
    result = dual(syzygy(dual(m), -n));
  }
  syzygies_.emplace(key, result);
  return result;
}

SyzygyResult StableContext::syzygy_result(const Module& m, int n) {
  SyzygyResult out;
  out.source = m;
  out.n = n;
  out.result = syzygy(m, n);
  if (n > 0) {
    Module prev = n == 1 ? m : syzygy(m, n - 1);
    const auto& c = projective_cover(prev);
    out.cover = c.cover;
    out.kernel = c.inclusion;
  } else if (n < 0) {
    Module d = dual(m);
    Module prev = n == -1 ? d : syzygy(d, -n - 1);
    const auto& c = projective_cover(prev);
    out.hull = dual_map(c.cover);
    out.cokernel = dual_map(c.inclusion);
  }
  return out;
}

const StrippedModule& StableContext::strip_projective(const Module& m) {
  if (auto it = strips_.find(m.key()); it != strips_.end()) return *it->second;
  require_p_group(m, "strip_projective");
  const PrimeField f = m.field();
  const std::size_t d = m.dim();
  auto out = std::make_unique<StrippedModule>();
  const std::size_t r = d == 0 ? 0 : free_rank(m);
  out->free_rank = r;
  if (r == 0) {
    out->module = m;
    out->projection = identity_map(m);
    out->free_part = Matrix(f, d, 0);
  } else {
    auto piv = independent_columns(norm_matrix(m));
    std::vector<Matrix> cols;
    for (auto j : piv) {
      Matrix e(f, d, 1);
      e.set_raw(j, 0, 1);
      for (const auto& a : m.actions()) cols.push_back(a * e);
    }
    Matrix fr = hstack(cols);
    if (rank(fr) != r * m.group()->order()) throw InternalError("strip_projective: free part has the wrong dimension");
    auto q = quotient_module(m, fr);
    out->module = q.module;
    out->projection = q.projection;
    out->free_part = std::move(fr);
  }
  return *strips_.emplace(m.key(), std::move(out)).first->second;
}

const Matrix& StableContext::strip_section(const Module& m) {
  if (auto it = sections_.find(m.key()); it != sections_.end()) return it->second;
  const auto& s = strip_projective(m);
  const PrimeField f = m.field();
  Matrix sec;
  if (s.free_rank == 0) {
    sec = Matrix::identity(f, m.dim());
  } else {
    const std::size_t q = s.module.dim();
    auto h = hom_basis(s.module, m);
    std::vector<Matrix> imgs;
    for (const auto& b : h.basis) imgs.push_back(s.projection.mat * b);
    Matrix a = flatten_columns(imgs, f, q, q);
    auto sol = solve(a, flatten_column(Matrix::identity(f, q)));
    if (!sol) throw InternalError("strip_projective: no equivariant section");
    sec = Matrix(f, m.dim(), q);
    for (std::size_t k = 0; k < h.dim(); ++k)
      if (auto c = sol->particular(k, 0)) sec = sec + scaled(h.basis[k], c);
  }
  return sections_.emplace(m.key(), std::move(sec)).first->second;
}

const Matrix& StableContext::phom_basis(const Module& m, const Module& n) {
  const std::string key = pair_key(m, n);
  if (auto it = phoms_.find(key); it != phoms_.end()) return it->second;
  if (!(m.field() == n.field()) || !(*m.group() == *n.group())) throw InvalidInput("phom_basis: modules over different groups");
  const PrimeField f = m.field();
  const std::size_t unknowns = m.dim() * n.dim();
  Matrix cols(f, unknowns, 0);
  if (unknowns > 0) {
    const auto& g = *m.group();
    std::vector<Matrix> right;
    right.reserve(g.order());
    for (std::size_t x = 0; x < g.order(); ++x) right.push_back(m.action(g.inv(static_cast<int>(x))));
    Matrix t = kernels::transfer_images(n.actions(), right);
    auto r = rref(t);
    cols = r.reduced.block(0, 0, r.rank, unknowns).transpose();
  }
  return phoms_.emplace(key, std::move(cols)).first->second;
}

const StableHomSpace& StableContext::stable_hom(const Module& m, const Module& n) {
  const std::string key = pair_key(m, n);
  if (auto it = stable_homs_.find(key); it != stable_homs_.end()) return *it->second;
  auto h = hom_basis(m, n);
  const Matrix& p = phom_basis(m, n);
  auto s = std::make_unique<StableHomSpace>(std::move(h), p);
  return *stable_homs_.emplace(key, std::move(s)).first->second;
}

bool StableContext::is_stably_zero(const ModuleMap& f) {
  if (f.mat.rows() != f.codomain.dim() || f.mat.cols() != f.domain.dim()) throw InvalidInput("is_stably_zero: map has the wrong shape");
  if (f.mat.is_zero()) return true;
  return in_column_span(phom_basis(f.domain, f.codomain), flatten_column(f.mat));
}

ModuleMap StableContext::omega_map_once(const ModuleMap& f) {
  const auto& cm = projective_cover(f.domain);
  const auto& cn = projective_cover(f.codomain);
  const PrimeField fld = f.mat.field();
  const std::size_t order = f.domain.group()->order();
  if (cm.rank == 0 || cn.kernel.dim() == 0 || cm.kernel.dim() == 0)
    return zero_map(cm.kernel, cn.kernel);
  Matrix targets = f.mat * cm.tops;
  Matrix y(fld, cn.projective.dim(), cm.rank);
  if (cn.rank > 0) {
    auto sol = solve(cn.cover.mat, targets);
    if (!sol) throw InternalError("omega_map: cover is not surjective");
    y = std::move(sol->particular);
  }
  Matrix lift(fld, cn.projective.dim(), cm.projective.dim());
  for (std::size_t i = 0; i < cm.rank; ++i) {
    Matrix yi = y.select_columns(std::vector<std::size_t>{i});
    for (std::size_t x = 0; x < order; ++x) {
      Matrix img = cn.projective.action(static_cast<int>(x)) * yi;
      for (std::size_t r = 0; r < img.rows(); ++r) lift.set_raw(r, i * order + x, img(r, 0));
    }
  }
  auto x = cn.kernel_coords.coordinates(lift * cm.inclusion.mat);
  if (!x) throw InternalError("omega_map: lifted map does not preserve kernels");
  return {cm.kernel, cn.kernel, std::move(*x)};
}

ModuleMap StableContext::omega_map(const ModuleMap& f, int n) {
  check_degree(n);
  require_p_group(f.domain, "omega_map");
  if (n == 0) {
    const auto& sm = strip_projective(f.domain);
    const auto& sn = strip_projective(f.codomain);
    if (sm.free_rank == 0 && sn.free_rank == 0) return f;
    const Matrix& sec = strip_section(f.domain);
    return {sm.module, sn.module, sn.projection.mat * (f.mat * sec)};
  }
  if (n > 0) {
    ModuleMap cur = omega_map_once(f);
    for (int k = 1; k < n; ++k) cur = omega_map_once(cur);
    return cur;
  }
  return dual_map(omega_map(dual_map(f), -n));
}

Cone StableContext::cone(const ModuleMap& f) {
  require_p_group(f.domain, "cone");
  const Module& a = f.domain;
  const Module& b = f.codomain;
  const PrimeField fld = a.field();
  const auto& c = projective_cover(dual(a));
  ModuleMap hull = dual_map(c.cover);
  const Module& inj = hull.codomain;
  auto sum = direct_sum({b, inj});
  Matrix u = vstack({f.mat, hull.mat});
  auto q = quotient_module(sum.module, u);
  Module shift = dual(c.kernel);
  Matrix to_inj = sum.projections[1].mat;
  Matrix kt = c.inclusion.mat.transpose();
  Matrix ts = q.module.dim() == 0 ? Matrix(fld, shift.dim(), 0) : kt * (to_inj * q.complement);
  Cone out{q.module, shift, {b, q.module, q.projection.mat * sum.inclusions[0].mat}, {q.module, shift, std::move(ts)}, hull};
  return out;
}

StableContext& default_context() {
  thread_local StableContext ctx;
  return ctx;
}

const ProjectiveCover& projective_cover(const Module& m) { return default_context().projective_cover(m); }
Module syzygy(const Module& m, int n) { return default_context().syzygy(m, n); }
const StrippedModule& strip_projective(const Module& m) { return default_context().strip_projective(m); }
const Matrix& phom_basis(const Module& m, const Module& n) { return default_context().phom_basis(m, n); }
const StableHomSpace& stable_hom(const Module& m, const Module& n) { return default_context().stable_hom(m, n); }
bool is_stably_zero(const ModuleMap& f) { return default_context().is_stably_zero(f); }
ModuleMap omega_map(const ModuleMap& f, int n) { return default_context().omega_map(f, n); }
Cone cone(const ModuleMap& f) { return default_context().cone(f); }

bool is_stably_zero_via_sylow(const ModuleMap& f) {
  const auto& g = f.domain.group();
  Subgroup p = sylow_subgroup(g, f.domain.field().p());
  return default_context().is_stably_zero(restrict_map(f, p));
}

}  // namespace stmod
