#include "stmod/reps.hpp"

#include <algorithm>
#include <cstring>
#include <random>
#include <sstream>

#include "stmod/errors.hpp"

namespace stmod {

namespace {

std::uint64_t table_hash(const Group& g) {
  std::uint64_t h = 1469598103934665603ull;
  const std::size_t n = g.order();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      h ^= static_cast<std::uint64_t>(g.mul(static_cast<int>(a), static_cast<int>(b)));
      h *= 1099511628211ull;
    }
  return h;
}

template <class T>
void append_bytes(std::string& s, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  s.append(buf, sizeof(T));
}

void require_compatible(const Module& a, const Module& b, const char* what) {
  if (!(a.field() == b.field())) throw InvalidInput(std::string(what) + ": modules over different fields");
  if (!(*a.group() == *b.group())) throw InvalidInput(std::string(what) + ": modules over different groups");
}

// All element actions from the actions of a generating set, by breadth-first closure.
std::vector<Matrix> close_actions(const GroupPtr& g, PrimeField f, std::size_t dim,
                                  const std::vector<std::pair<int, Matrix>>& gens) {
  const std::size_t n = g->order();
  std::vector<Matrix> act(n);
  std::vector<char> have(n, 0);
  act[0] = Matrix::identity(f, dim);
  have[0] = 1;
  std::vector<int> queue{0};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int x = queue[qi];
    for (const auto& [s, m] : gens) {
      const int y = g->mul(s, x);
      if (have[static_cast<std::size_t>(y)]) continue;
      act[static_cast<std::size_t>(y)] = m * act[static_cast<std::size_t>(x)];
      have[static_cast<std::size_t>(y)] = 1;
      queue.push_back(y);
    }
  }
  if (queue.size() != n) throw InvalidInput("given elements do not generate the group");
  return act;
}

Module checked(Module m, const std::string& spec) {
  if (auto v = validate_module(m)) throw InvalidInput("module '" + spec + "' is not a representation: " + v->what);
  return m;
}

bool is_v4(const Group& g) { return g.order() == 4 && g.is_elementary_abelian(2); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

long parse_long(const std::string& s) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw InvalidInput("not an integer: " + s);
    return v;
  } catch (const std::logic_error&) {
    throw InvalidInput("not an integer: " + s);
  }
}

Matrix random_combination(const std::vector<Matrix>& basis, std::mt19937_64& rng) {
  const PrimeField f = basis[0].field();
  Matrix acc(f, basis[0].rows(), basis[0].cols());
  for (const auto& b : basis) {
    const auto c = static_cast<std::uint8_t>(rng() % static_cast<std::uint64_t>(f.p()));
    if (c) acc = acc + scaled(b, c);
  }
  return acc;
}

// Calls visit on every nonzero combination of `basis`; stops when visit returns true.
template <class Visit>
bool sweep_span(const std::vector<Matrix>& basis, Visit visit) {
  const PrimeField f = basis[0].field();
  const int p = f.p();
  std::vector<int> digit(basis.size(), 0);
  Matrix cur(f, basis[0].rows(), basis[0].cols());
  for (;;) {
    std::size_t k = 0;
    for (; k < basis.size(); ++k) {
      cur = cur + basis[k];
      if (++digit[k] < p) break;
      digit[k] = 0;
    }
    if (k == basis.size()) return false;
    if (visit(cur)) return true;
  }
}

Matrix matrix_power_at_least(const Matrix& m, std::size_t n) {
  Matrix r = m;
  for (std::size_t e = 1; e < n; e *= 2) r = r * r;
  return r;
}

}  // namespace

std::uint64_t field_power(int p, std::size_t k) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (r > UINT64_MAX / static_cast<std::uint64_t>(p)) return UINT64_MAX;
    r *= static_cast<std::uint64_t>(p);
  }
  return r;
}

Module::Module(GroupPtr group, PrimeField field, std::size_t dim, std::vector<Matrix> action) {
  if (!group) throw InvalidInput("module without a group");
  if (action.size() != group->order()) throw InvalidInput("module needs one action matrix per group element");
  for (const auto& a : action) {
    if (a.rows() != dim || a.cols() != dim) throw InvalidInput("action matrix has the wrong shape");
    if (!(a.field() == field)) throw InvalidInput("action matrix over the wrong field");
  }
  if (dim > 0 && !action[0].is_identity()) throw InvalidInput("identity does not act trivially");
  auto impl = std::make_shared<Impl>();
  impl->key.reserve(32);
  append_bytes(impl->key, static_cast<std::uint32_t>(field.p()));
  append_bytes(impl->key, static_cast<std::uint32_t>(group->order()));
  append_bytes(impl->key, table_hash(*group));
  append_bytes(impl->key, static_cast<std::uint64_t>(dim));
  // Generator actions determine the module.
  for (int s : group->generators()) {
    auto bytes = action[static_cast<std::size_t>(s)].data();
    impl->key.append(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  }
  impl->group = std::move(group);
  impl->field = field;
  impl->dim = dim;
  impl->action = std::move(action);
  impl_ = std::move(impl);
}

bool ModuleMap::is_equivariant() const {
  if (mat.rows() != codomain.dim() || mat.cols() != domain.dim()) return false;
  for (int s : domain.group()->generators())
    if (!(mat * domain.action(s) == codomain.action(s) * mat)) return false;
  return true;
}

ModuleMap compose(const ModuleMap& second, const ModuleMap& first) {
  if (first.codomain.dim() != second.domain.dim()) throw InvalidInput("compose: dimension mismatch");
  return {first.domain, second.codomain, second.mat * first.mat};
}

ModuleMap identity_map(const Module& m) { return {m, m, Matrix::identity(m.field(), m.dim())}; }

ModuleMap zero_map(const Module& from, const Module& to) { return {from, to, Matrix(from.field(), to.dim(), from.dim())}; }

ModuleMap add_maps(const ModuleMap& a, const ModuleMap& b) { return {a.domain, a.codomain, a.mat + b.mat}; }

ModuleMap subtract_maps(const ModuleMap& a, const ModuleMap& b) { return {a.domain, a.codomain, a.mat - b.mat}; }

ModuleMap scale_map(const ModuleMap& a, std::uint8_t s) { return {a.domain, a.codomain, scaled(a.mat, s)}; }

Matrix flatten_column(const Matrix& m) {
  auto flat = m.flatten();
  return Matrix::column_vector(m.field(), flat);
}

Matrix flatten_columns(const std::vector<Matrix>& ms, PrimeField field, std::size_t rows, std::size_t cols) {
  Matrix out(field, rows * cols, ms.size());
  for (std::size_t j = 0; j < ms.size(); ++j) {
    auto d = ms[j].data();
    for (std::size_t i = 0; i < d.size(); ++i) out.set_raw(i, j, d[i]);
  }
  return out;
}

Matrix HomSpace::as_columns() const { return flatten_columns(basis, domain.field(), codomain.dim(), domain.dim()); }

ModuleMap HomSpace::element(const std::vector<std::uint8_t>& coeffs) const {
  if (coeffs.size() != basis.size()) throw InvalidInput("HomSpace::element: wrong number of coefficients");
  Matrix acc(domain.field(), codomain.dim(), domain.dim());
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (coeffs[i]) acc = acc + scaled(basis[i], coeffs[i]);
  return {domain, codomain, std::move(acc)};
}

Module zero_module(const GroupPtr& g, PrimeField field) {
  return Module(g, field, 0, std::vector<Matrix>(g->order(), Matrix(field, 0, 0)));
}

Module trivial_module(const GroupPtr& g, PrimeField field) {
  return Module(g, field, 1, std::vector<Matrix>(g->order(), Matrix::identity(field, 1)));
}

Module regular_module(const GroupPtr& g, PrimeField field) {
  const std::size_t n = g->order();
  std::vector<Matrix> act;
  act.reserve(n);
  for (std::size_t a = 0; a < n; ++a) {
    Matrix m(field, n, n);
    for (std::size_t x = 0; x < n; ++x) m.set_raw(static_cast<std::size_t>(g->mul(static_cast<int>(a), static_cast<int>(x))), x, 1);
    act.push_back(std::move(m));
  }
  return Module(g, field, n, std::move(act));
}

Module jordan_module(const GroupPtr& g, PrimeField field, std::size_t size) {
  if (!g->is_cyclic()) throw InvalidInput("jordan modules need a cyclic group");
  if (size < 1 || size > g->order()) throw InvalidInput("jordan size must be between 1 and |G|");
  if (size > p_part(g->order(), field.p())) throw InvalidInput("jordan block larger than the p-part of |G| is not a representation");
  Matrix j = Matrix::identity(field, size);
  for (std::size_t r = 0; r + 1 < size; ++r) j.set_raw(r, r + 1, 1);
  auto act = close_actions(g, field, size, {{g->cyclic_generator(), j}});
  return checked(Module(g, field, size, std::move(act)), "jordan");
}

Module v4_band_module(const GroupPtr& g, PrimeField field, std::size_t n, int lambda) {
  if (!is_v4(*g)) throw InvalidInput("v4_band needs the Klein four group");
  if (field.p() != 2) throw InvalidInput("v4_band needs p = 2");
  if (n < 1) throw InvalidInput("v4_band needs n >= 1");
  const auto lam = field.from_int(lambda);
  if (lam == 0) throw InvalidInput("v4_band needs lambda != 0");
  const std::size_t d = 2 * n;
  Matrix a = Matrix::identity(field, d);
  Matrix b = Matrix::identity(field, d);
  for (std::size_t i = 0; i < n; ++i) {
    a.set_raw(n + i, i, 1);
    b.set_raw(n + i, i, lam);
    if (i + 1 < n) b.set_raw(n + i + 1, i, 1);
  }
  auto act = close_actions(g, field, d, {{1, a}, {2, b}});
  return checked(Module(g, field, d, std::move(act)), "v4_band");
}

Module standard_module(const GroupPtr& g, PrimeField field, const std::string& spec) {
  auto parts = split(spec, ':');
  if (parts.empty()) throw InvalidInput("empty module spec");
  const auto& kind = parts[0];
  if (kind == "trivial" && parts.size() == 1) return trivial_module(g, field);
  if (kind == "regular" && parts.size() == 1) return regular_module(g, field);
  if (kind == "zero" && parts.size() == 1) return zero_module(g, field);
  if (kind == "jordan" && parts.size() == 2) {
    const long i = parse_long(parts[1]);
    if (i < 1) throw InvalidInput("jordan size must be positive");
    return jordan_module(g, field, static_cast<std::size_t>(i));
  }
  if ((kind == "v4band" || kind == "v4_band") && parts.size() == 3) {
    const long n = parse_long(parts[1]);
    if (n < 1) throw InvalidInput("v4_band n must be positive");
    return v4_band_module(g, field, static_cast<std::size_t>(n), static_cast<int>(parse_long(parts[2])));
  }
  throw InvalidInput("unsupported module spec: " + spec);
}

std::optional<ModuleViolation> validate_module(const Module& m) {
  const auto& g = *m.group();
  const std::size_t n = g.order();
  if (m.actions().size() != n) return ModuleViolation{-1, -1, "wrong number of action matrices"};
  for (std::size_t x = 0; x < n; ++x) {
    const auto& a = m.action(static_cast<int>(x));
    if (a.rows() != m.dim() || a.cols() != m.dim()) return ModuleViolation{static_cast<int>(x), -1, "action matrix has the wrong shape"};
  }
  if (m.dim() > 0 && !m.action(0).is_identity()) return ModuleViolation{0, -1, "identity does not act as I"};
  // rho(s) rho(h) = rho(sh) for generators s and all h implies the full homomorphism property.
  for (int s : g.generators())
    for (std::size_t h = 0; h < n; ++h) {
      const int hh = static_cast<int>(h);
      if (!(m.action(s) * m.action(hh) == m.action(g.mul(s, hh)))) {
        std::ostringstream os;
        os << "action(" << s << ") * action(" << hh << ") != action(" << g.mul(s, hh) << ")";
        return ModuleViolation{s, hh, os.str()};
      }
    }
  return std::nullopt;
}

Module dual(const Module& m) {
  const auto& g = *m.group();
  std::vector<Matrix> act;
  act.reserve(g.order());
  for (std::size_t x = 0; x < g.order(); ++x) act.push_back(m.action(g.inv(static_cast<int>(x))).transpose());
  return Module(m.group(), m.field(), m.dim(), std::move(act));
}

ModuleMap dual_map(const ModuleMap& f) { return {dual(f.codomain), dual(f.domain), f.mat.transpose()}; }

DirectSum direct_sum(const std::vector<Module>& parts) {
  if (parts.empty()) throw InvalidInput("direct_sum of nothing");
  for (const auto& p : parts) require_compatible(parts[0], p, "direct_sum");
  const auto& g = parts[0].group();
  const PrimeField f = parts[0].field();
  std::size_t total = 0;
  for (const auto& p : parts) total += p.dim();
  std::vector<Matrix> act;
  act.reserve(g->order());
  for (std::size_t x = 0; x < g->order(); ++x) {
    std::vector<Matrix> blocks;
    for (const auto& p : parts) blocks.push_back(p.action(static_cast<int>(x)));
    act.push_back(block_diagonal(blocks));
  }
  DirectSum out{Module(g, f, total, std::move(act)), {}, {}};
  std::size_t off = 0;
  for (const auto& p : parts) {
    Matrix inc(f, total, p.dim());
    Matrix proj(f, p.dim(), total);
    for (std::size_t i = 0; i < p.dim(); ++i) {
      inc.set_raw(off + i, i, 1);
      proj.set_raw(i, off + i, 1);
    }
    out.inclusions.push_back({p, out.module, std::move(inc)});
    out.projections.push_back({out.module, p, std::move(proj)});
    off += p.dim();
  }
  return out;
}

ModuleMap direct_sum_map(const std::vector<ModuleMap>& parts) {
  std::vector<Module> doms, cods;
  std::vector<Matrix> blocks;
  for (const auto& p : parts) {
    doms.push_back(p.domain);
    cods.push_back(p.codomain);
    blocks.push_back(p.mat);
  }
  return {direct_sum(doms).module, direct_sum(cods).module, block_diagonal(blocks)};
}

HomSpace hom_basis(const Module& m, const Module& n) {
  require_compatible(m, n, "hom_basis");
  const PrimeField f = m.field();
  const std::size_t dm = m.dim();
  const std::size_t dn = n.dim();
  const std::size_t unknowns = dm * dn;
  HomSpace out{m, n, {}};
  if (unknowns == 0) return out;
  const auto& gens = m.group()->generators();
  // X is dn x dm, vectorized row-major: index a * dm + b.
  Matrix current;  // columns: current solution space
  bool first = true;
  for (int s : gens) {
    const Matrix& rn = n.action(s);
    const Matrix& rm = m.action(s);
    if (first) {
      Matrix eq(f, unknowns, unknowns);
      for (std::size_t a = 0; a < dn; ++a)
        for (std::size_t b = 0; b < dm; ++b) {
          const std::size_t row = a * dm + b;
          for (std::size_t c = 0; c < dn; ++c)
            if (auto v = rn(a, c)) eq.set_raw(row, c * dm + b, v);
          for (std::size_t c = 0; c < dm; ++c)
            if (auto v = rm(c, b)) eq.set_raw(row, a * dm + c, f.sub(eq(row, a * dm + c), v));
        }
      current = kernel_basis(eq);
      first = false;
    } else {
      if (current.cols() == 0) break;
      std::vector<Matrix> residuals;
      residuals.reserve(current.cols());
      for (std::size_t k = 0; k < current.cols(); ++k) {
        auto col = current.column(k);
        Matrix x = Matrix::unflatten(f, dn, dm, col);
        residuals.push_back(rn * x - x * rm);
      }
      Matrix sys = flatten_columns(residuals, f, dn, dm);
      current = current * kernel_basis(sys);
    }
  }
  if (first) current = Matrix::identity(f, unknowns);
  out.basis.reserve(current.cols());
  for (std::size_t k = 0; k < current.cols(); ++k) {
    auto col = current.column(k);
    out.basis.push_back(Matrix::unflatten(f, dn, dm, col));
  }
  return out;
}

FixedPoints fixed_points(const Module& m) {
  const PrimeField f = m.field();
  const std::size_t d = m.dim();
  std::vector<Matrix> eqs;
  for (int s : m.group()->generators()) eqs.push_back(m.action(s) - Matrix::identity(f, d));
  Matrix basis = eqs.empty() || d == 0 ? Matrix::identity(f, d) : kernel_basis(vstack(eqs));
  FixedPoints out{basis, {trivial_module(m.group(), f), m, {}}};
  for (std::size_t k = 0; k < basis.cols(); ++k) out.hom.basis.push_back(basis.select_columns(std::vector<std::size_t>{k}));
  return out;
}

RadicalSocle radical_and_socle(const Module& m) {
  const auto& g = *m.group();
  if (!g.is_p_group(m.field().p())) throw InvalidInput("radical_and_socle needs a p-group");
  const PrimeField f = m.field();
  const std::size_t d = m.dim();
  if (d == 0) return {Matrix(f, 0, 0), Matrix(f, 0, 0)};
  std::vector<Matrix> spans;
  for (std::size_t x = 1; x < g.order(); ++x) spans.push_back(m.action(static_cast<int>(x)) - Matrix::identity(f, d));
  Matrix rad(f, d, 0);
  if (!spans.empty()) {
    Matrix all = hstack(spans);
    rad = all.select_columns(independent_columns(all));
  }
  return {std::move(rad), fixed_points(m).basis};
}

Quotient quotient_module(const Module& m, const Matrix& sub_columns) {
  const PrimeField f = m.field();
  const std::size_t d = m.dim();
  if (sub_columns.rows() != d) throw InvalidInput("quotient_module: subspace has the wrong ambient dimension");
  QuotientCoordinates qc(sub_columns, Matrix::identity(f, d));
  const Matrix& comp = qc.complement();
  const std::size_t q = comp.cols();
  auto pi_opt = qc.coordinates(Matrix::identity(f, d));
  if (!pi_opt) throw InternalError("quotient_module: identity outside ambient space");
  Matrix pi = std::move(*pi_opt);
  const Matrix& sub = qc.sub_basis();
  for (int s : m.group()->generators())
    if (sub.cols() > 0 && !(pi * (m.action(s) * sub)).is_zero())
      throw InvalidInput("quotient_module: subspace is not closed under the action");
  std::vector<Matrix> act;
  act.reserve(m.group()->order());
  for (const auto& a : m.actions()) act.push_back(q == 0 ? Matrix(f, 0, 0) : pi * (a * comp));
  Module qm(m.group(), f, q, std::move(act));
  return {qm, {m, qm, pi}, comp};
}

Submodule submodule(const Module& m, const Matrix& sub_columns) {
  const PrimeField f = m.field();
  if (sub_columns.rows() != m.dim()) throw InvalidInput("submodule: subspace has the wrong ambient dimension");
  Matrix basis = sub_columns.select_columns(independent_columns(sub_columns));
  const std::size_t k = basis.cols();
  ColumnBasis cb(basis);
  std::vector<Matrix> act;
  act.reserve(m.group()->order());
  for (std::size_t x = 0; x < m.group()->order(); ++x) {
    if (k == 0) {
      act.emplace_back(f, 0, 0);
      continue;
    }
    auto c = cb.coordinates(m.action(static_cast<int>(x)) * basis);
    if (!c) throw InvalidInput("submodule: subspace is not closed under the action");
    act.push_back(std::move(*c));
  }
  Module sm(m.group(), f, k, std::move(act));
  return {sm, {sm, m, basis}};
}

std::vector<Matrix> composition_flag(const Module& m) {
  if (!m.group()->is_p_group(m.field().p())) throw InvalidInput("composition_flag needs a p-group");
  const PrimeField f = m.field();
  std::vector<Matrix> flag;
  Matrix sub(f, m.dim(), 0);
  while (sub.cols() < m.dim()) {
    auto q = quotient_module(m, sub);
    auto fp = fixed_points(q.module).basis;
    if (fp.cols() == 0) throw InternalError("composition_flag: quotient has no fixed vector");
    Matrix lift = q.complement * fp.select_columns(std::vector<std::size_t>{0});
    sub = sub.cols() ? hstack({sub, lift}) : lift;
    flag.push_back(sub);
  }
  return flag;
}

Module restrict(const Module& m, const Subgroup& h) {
  if (!(*m.group() == *h.parent())) throw InvalidInput("restrict: subgroup of a different group");
  std::vector<Matrix> act;
  act.reserve(h.order());
  for (int x : h.elements()) act.push_back(m.action(x));
  return Module(h.as_group(), m.field(), m.dim(), std::move(act));
}

ModuleMap restrict_map(const ModuleMap& f, const Subgroup& h) { return {restrict(f.domain, h), restrict(f.codomain, h), f.mat}; }

Induced induce(const Module& m, const Subgroup& h) {
  if (!(*m.group() == *h.as_group())) throw InvalidInput("induce: module is not over the given subgroup");
  const auto& g = *h.parent();
  const PrimeField f = m.field();
  auto trans = left_transversal(h);
  const std::size_t t = trans.size();
  const std::size_t d = m.dim();
  std::vector<std::size_t> coset(g.order());
  for (std::size_t i = 0; i < t; ++i)
    for (int y : h.elements()) coset[static_cast<std::size_t>(g.mul(trans[i], y))] = i;
  std::vector<Matrix> act;
  act.reserve(g.order());
  for (std::size_t x = 0; x < g.order(); ++x) {
    Matrix a(f, t * d, t * d);
    for (std::size_t i = 0; i < t; ++i) {
      const int xt = g.mul(static_cast<int>(x), trans[i]);
      const std::size_t j = coset[static_cast<std::size_t>(xt)];
      const int hh = g.mul(g.inv(trans[j]), xt);
      const Matrix& blk = m.action(h.to_local(hh));
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) a.set_raw(j * d + r, i * d + c, blk(r, c));
    }
    act.push_back(std::move(a));
  }
  return {Module(h.parent(), f, t * d, std::move(act)), std::move(trans)};
}

ModuleMap induce_map(const ModuleMap& f, const Subgroup& h) {
  auto dom = induce(f.domain, h);
  auto cod = induce(f.codomain, h);
  std::vector<Matrix> blocks(dom.transversal.size(), f.mat);
  return {dom.module, cod.module, block_diagonal(blocks)};
}

Conjugated conjugate_module(const Module& m, const Subgroup& h, int x) {
  if (!(*m.group() == *h.as_group())) throw InvalidInput("conjugate_module: module is not over the given subgroup");
  const auto& g = *h.parent();
  Subgroup c = conjugate_subgroup(h, x);
  std::vector<Matrix> act;
  act.reserve(c.order());
  for (int y : c.elements()) act.push_back(m.action(h.to_local(g.conjugate(g.inv(x), y))));
  return {Module(c.as_group(), m.field(), m.dim(), std::move(act)), c};
}

ModuleMap adjoint_hom(Adjunction direction, const ModuleMap& f, const Module& b, const Module& m, const Subgroup& h) {
  if (!(*b.group() == *h.parent())) throw InvalidInput("adjoint_hom: B is not over the parent group");
  if (!(*m.group() == *h.as_group())) throw InvalidInput("adjoint_hom: M is not over the subgroup");
  const auto& g = *h.parent();
  auto ind = induce(m, h);
  const auto& trans = ind.transversal;
  const std::size_t t = trans.size();
  const std::size_t dm = m.dim();
  const std::size_t db = b.dim();
  auto need = [&](std::size_t rows, std::size_t cols) {
    if (f.mat.rows() != rows || f.mat.cols() != cols) throw InvalidInput("adjoint_hom: map has the wrong shape for this direction");
  };
  switch (direction) {
    case Adjunction::ToInduced: {
      need(dm, db);
      std::vector<Matrix> rows;
      for (int x : trans) rows.push_back(f.mat * b.action(g.inv(x)));
      return {b, ind.module, vstack(rows)};
    }
    case Adjunction::FromInduced: {
      need(t * dm, db);
      return {restrict(b, h), m, f.mat.block(0, 0, dm, db)};
    }
    case Adjunction::FromRestricted: {
      need(db, dm);
      std::vector<Matrix> cols;
      for (int x : trans) cols.push_back(b.action(x) * f.mat);
      return {ind.module, b, hstack(cols)};
    }
    case Adjunction::ToRestricted: {
      need(db, t * dm);
      return {m, restrict(b, h), f.mat.block(0, 0, db, dm)};
    }
  }
  throw InvalidInput("adjoint_hom: unknown direction");
}

IsoResult is_isomorphic(const Module& m, const Module& n, std::uint64_t seed) {
  require_compatible(m, n, "is_isomorphic");
  IsoResult out;
  if (m.dim() != n.dim()) return out;
  if (m.dim() == 0) {
    out.verdict = IsoVerdict::Isomorphic;
    out.witness = ModuleMap{m, n, Matrix(m.field(), 0, 0)};
    return out;
  }
  if (m == n) {
    out.verdict = IsoVerdict::Isomorphic;
    out.witness = identity_map(m);
    return out;
  }
  if (fixed_points(m).basis.cols() != fixed_points(n).basis.cols()) return out;
  auto hmn = hom_basis(m, n);
  if (hmn.dim() == 0) return out;
  if (hom_basis(m, m).dim() != hmn.dim() || hom_basis(n, n).dim() != hmn.dim()) return out;
  const std::size_t d = m.dim();
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 64; ++trial) {
    Matrix x = random_combination(hmn.basis, rng);
    if (rank(x) == d) {
      out.verdict = IsoVerdict::Isomorphic;
      out.witness = ModuleMap{m, n, std::move(x)};
      return out;
    }
  }
  if (field_power(m.field().p(), hmn.dim()) > kEnumerationCap) {
    out.verdict = IsoVerdict::ProbablyNotIsomorphic;
    return out;
  }
  std::optional<Matrix> found;
  sweep_span(hmn.basis, [&](const Matrix& x) {
    if (rank(x) != d) return false;
    found = x;
    return true;
  });
  if (found) {
    out.verdict = IsoVerdict::Isomorphic;
    out.witness = ModuleMap{m, n, std::move(*found)};
  }
  return out;
}

IndecomposableResult is_indecomposable(const Module& m, std::uint64_t seed) {
  IndecomposableResult out;
  const std::size_t d = m.dim();
  if (d == 0) return out;
  auto end = hom_basis(m, m);
  if (end.dim() == 1) {
    out.indecomposable = true;
    return out;
  }
  // f with f^N neither zero nor invertible splits M by Fitting's lemma.
  auto splits = [&](const Matrix& x) {
    const std::size_t r = rank(x);
    if (r == d || r == 0) return false;
    return !matrix_power_at_least(x, d).is_zero();
  };
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 64; ++trial) {
    Matrix x = random_combination(end.basis, rng);
    if (splits(x)) {
      out.splitting = std::move(x);
      return out;
    }
  }
  out.indecomposable = true;
  if (field_power(m.field().p(), end.dim()) > kEnumerationCap) {
    out.exact = false;
    return out;
  }
  sweep_span(end.basis, [&](const Matrix& x) {
    if (!splits(x)) return false;
    out.splitting = x;
    return true;
  });
  if (out.splitting) out.indecomposable = false;
  return out;
}

MackeyDecomposition mackey(const Module& m, const Subgroup& h, const Subgroup& q) {
  if (!(*m.group() == *h.as_group())) throw InvalidInput("mackey: module is not over H");
  const auto& g = *h.parent();
  MackeyDecomposition out;
  std::vector<Module> parts;
  for (int r : double_cosets(q, h).representatives) {
    Subgroup in = intersect(q, conjugate_subgroup(h, r));
    Subgroup rel = relative_subgroup(q, in);
    std::vector<Matrix> act;
    for (int l : rel.elements()) act.push_back(m.action(h.to_local(g.conjugate(g.inv(r), q.to_parent(l)))));
    Module c(rel.as_group(), m.field(), m.dim(), std::move(act));
    MackeyTerm t{r, in, induce(c, rel).module};
    parts.push_back(t.module);
    out.terms.push_back(std::move(t));
  }
  out.sum = direct_sum(parts);
  out.restricted = restrict(induce(m, h).module, q);
  return out;
}

}  // namespace stmod
