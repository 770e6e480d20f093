#include "stmod/ghosts.hpp"

#include <exception>

#include "stmod/errors.hpp"

namespace stmod {

namespace {

struct DegreeCheck {
  DegreeRank dr;
  std::optional<GhostWitness> witness;
};

DegreeCheck check_degree(const ModuleMap& f, int i, bool dual_side, int cap, StableContext& ctx) {
  DegreeCheck out;
  out.dr.i = i;
  out.dr.dual = dual_side;
  Matrix t = tate_induced(f, i, cap, ctx);
  out.dr.rank = rank(t);
  if (out.dr.rank == 0) return out;
  for (std::size_t c = 0; c < t.cols(); ++c) {
    bool nz = false;
    for (std::size_t r = 0; r < t.rows() && !nz; ++r) nz = t(r, c) != 0;
    if (!nz) continue;
    GhostWitness w;
    w.degree = i;
    w.dual = dual_side;
    w.basis_index = c;
    w.rank = out.dr.rank;
    w.cls = tate_group(f.domain, i, cap, ctx).basis()[c];
    out.witness = std::move(w);
    break;
  }
  return out;
}

// Runs degrees lo..hi and stops at the first nonzero one.
bool sweep(const ModuleMap& f, int lo, int hi, bool dual_side, int cap, StableContext& ctx,
           std::vector<DegreeRank>& degrees, std::optional<GhostWitness>& witness) {
  for (int i = lo; i <= hi; ++i) {
    auto c = check_degree(f, i, dual_side, cap, ctx);
    degrees.push_back(c.dr);
    if (c.dr.rank != 0) {
      witness = std::move(c.witness);
      return false;
    }
  }
  return true;
}

void check_map(const ModuleMap& f) {
  if (!f.domain.valid() || !f.codomain.valid()) throw InvalidInput("map without domain or codomain");
  if (!(*f.domain.group() == *f.codomain.group())) throw InvalidInput("map between modules over different groups");
  if (f.mat.rows() != f.codomain.dim() || f.mat.cols() != f.domain.dim()) throw InvalidInput("map has the wrong shape");
  if (!f.is_equivariant()) throw InvalidInput("map is not G-equivariant");
}

GhostCertificate trivially_ghost(GhostMode mode, int cap, const char* note) {
  GhostCertificate c;
  c.verdict = Verdict::Ghost;
  c.mode = mode;
  c.exact = true;
  c.assumptions.cap = cap;
  c.assumptions.notes.emplace_back(note);
  return c;
}

GhostCertificate ghost_p_group(const ModuleMap& f, const GhostOptions& opts, StableContext& ctx) {
  const auto& g = f.domain.group();
  const PrimeField fld = f.mat.field();
  const int cap = opts.cap;
  GhostCertificate c;
  c.assumptions.cap = cap;
  if (g->order() == 1) return trivially_ghost(opts.mode, cap, "trivial group: every module is projective");

  GhostMode mode = opts.mode;
  std::optional<PeriodicityWitness> pw;
  if (mode == GhostMode::Auto || mode == GhostMode::Periodic) {
    pw = periodicity_witness(g, fld, cap, ctx);
    if (pw && !verify_periodicity(*pw, g, fld, 0, 0, ctx)) throw InternalError("periodicity witness failed to replay");
    if (mode == GhostMode::Periodic && !pw) throw InvalidInput("periodic mode: no periodicity witness up to the degree cap");
    mode = pw ? GhostMode::Periodic : GhostMode::Bounds;
  }
  c.mode = mode;

  if (mode == GhostMode::Periodic) {
    c.periodicity = pw;
    c.assumptions.period = pw->d;
    bool ok = sweep(f, 0, pw->d - 1, false, cap, ctx, c.degrees, c.witness);
    c.verdict = ok ? Verdict::Ghost : Verdict::NotGhost;
    c.exact = true;
    return c;
  }

  if (mode == GhostMode::Window) {
    bool ok = sweep(f, -cap, cap, false, cap, ctx, c.degrees, c.witness);
    c.verdict = ok ? Verdict::GhostModuloAssumptions : Verdict::NotGhost;
    c.exact = !ok;
    if (ok) c.assumptions.notes.emplace_back("window only: degrees outside [-cap, cap] unchecked");
    return c;
  }

  auto b = generator_bounds(f, cap, ctx);
  c.assumptions.d = b.d;
  c.assumptions.m = b.m;
  c.assumptions.n = b.n;
  c.assumptions.d_trusted = b.d_trusted;
  c.assumptions.m_verified = b.m_verified;
  c.assumptions.n_verified = b.n_verified;
  if (!sweep(f, 0, b.m, false, cap, ctx, c.degrees, c.witness)) {
    c.verdict = Verdict::NotGhost;
    c.exact = true;
    return c;
  }
  ModuleMap fd = dual_map(f);
  if (!sweep(fd, 0, b.n, true, cap, ctx, c.degrees, c.witness)) {
    c.verdict = Verdict::NotGhost;
    c.exact = true;
    return c;
  }
  c.exact = b.d_trusted && b.m_verified && b.n_verified;
  c.verdict = c.exact ? Verdict::Ghost : Verdict::GhostModuloAssumptions;
  if (!b.d_trusted) c.assumptions.notes.emplace_back("ring generation degree d taken from the sweep up to the cap");
  if (!b.m_verified || !b.n_verified)
    c.assumptions.notes.emplace_back("module generation bound not confirmed over a full trailing window of width d");
  else
    c.assumptions.notes.emplace_back("module generation bounds m, n read off the sweep up to the cap");
  return c;
}

}  // namespace

const char* to_string(GhostMode m) {
  switch (m) {
    case GhostMode::Auto: return "auto";
    case GhostMode::Periodic: return "periodic";
    case GhostMode::Bounds: return "bounds";
    case GhostMode::Window: return "window-only";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Ghost: return "ghost";
    case Verdict::NotGhost: return "not-ghost";
    case Verdict::GhostModuloAssumptions: return "ghost-modulo-assumptions";
  }
  return "?";
}

GhostMode parse_ghost_mode(const std::string& s) {
  if (s == "auto") return GhostMode::Auto;
  if (s == "periodic") return GhostMode::Periodic;
  if (s == "bounds") return GhostMode::Bounds;
  if (s == "window" || s == "window-only") return GhostMode::Window;
  throw InvalidInput("unknown mode '" + s + "' (auto, periodic, bounds, window-only)");
}

// Non-p-groups go through the Sylow subgroup; an order-1 Sylow means everything is projective.
static std::optional<ModuleMap> sylow_form(const ModuleMap& f, std::vector<int>* elements) {
  const auto& g = f.domain.group();
  const int p = f.mat.field().p();
  if (g->is_p_group(p)) return g->order() == 1 ? std::nullopt : std::optional<ModuleMap>(f);
  Subgroup s = sylow_subgroup(g, p);
  if (s.order() == 1) return std::nullopt;
  if (elements) *elements = s.elements();
  return restrict_map(f, s);
}

WindowReport is_ghost_window(const ModuleMap& f0, int a, int b, int cap, StableContext& ctx) {
  check_map(f0);
  if (a > b) throw InvalidInput("empty degree window");
  WindowReport r;
  std::vector<int> sub;
  auto fp = sylow_form(f0, &sub);
  if (!fp) return r;
  const ModuleMap& f = *fp;
  for (int i = a; i <= b; ++i) {
    auto c = check_degree(f, i, false, cap, ctx);
    if (c.witness) c.witness->subgroup = sub;
    r.degrees.push_back(c.dr);
    if (c.dr.rank != 0 && r.ghost) {
      r.ghost = false;
      r.witness = std::move(c.witness);
    }
  }
  return r;
}

GhostCertificate is_ghost(const ModuleMap& f, const GhostOptions& opts, StableContext& ctx) {
  check_map(f);
  const auto& g = f.domain.group();
  const int p = f.mat.field().p();
  if (g->is_p_group(p)) return ghost_p_group(f, opts, ctx);

  Subgroup s = sylow_subgroup(g, p);
  if (s.order() == 1) return trivially_ghost(opts.mode, opts.cap, "p does not divide |G|: every module is projective");
  GhostCertificate c = ghost_p_group(restrict_map(f, s), opts, ctx);
  if (c.witness) c.witness->subgroup = s.elements();
  if (c.verdict == Verdict::NotGhost) {
    c.exact = false;
    c.assumptions.notes.emplace_back(
        "sylow reduction: not-ghost on the Sylow subgroup; the verdict for G assumes the converse of the Sylow criterion");
  } else {
    c.assumptions.notes.emplace_back("sylow reduction: ghost on the Sylow subgroup implies ghost on G");
  }
  return c;
}

GhostCertificate is_strong_ghost(const ModuleMap& f, const GhostOptions& opts) {
  check_map(f);
  const auto& g = f.domain.group();
  const int p = f.mat.field().p();
  auto subs = p_subgroups(g, p, opts.conjugacy_reduce);
  const long n = static_cast<long>(subs.size());
  std::vector<GhostCertificate> certs(subs.size());
  std::vector<std::exception_ptr> errs(subs.size());

  auto one = [&](long k, StableContext& ctx) {
    const Subgroup& q = subs[static_cast<std::size_t>(k)];
    try {
      if (q.order() == 1) {
        certs[static_cast<std::size_t>(k)] = trivially_ghost(opts.mode, opts.cap, "trivial subgroup");
      } else {
        GhostOptions o = opts;
        certs[static_cast<std::size_t>(k)] = ghost_p_group(restrict_map(f, q), o, ctx);
      }
    } catch (...) {
      errs[static_cast<std::size_t>(k)] = std::current_exception();
    }
  };

  if (opts.parallel && n > 1) {
#pragma omp parallel
    {
      StableContext local;
#pragma omp for schedule(dynamic)
      for (long k = 0; k < n; ++k) one(k, local);
    }
  } else {
    StableContext local;
    for (long k = 0; k < n; ++k) one(k, local);
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);

  GhostCertificate out;
  out.mode = opts.mode;
  out.assumptions.cap = opts.cap;
  out.verdict = Verdict::Ghost;
  out.exact = true;
  for (std::size_t k = 0; k < subs.size(); ++k) {
    auto& c = certs[k];
    if (c.verdict == Verdict::NotGhost && out.verdict != Verdict::NotGhost) {
      out.verdict = Verdict::NotGhost;
      out.exact = true;
      if (c.witness) {
        out.witness = c.witness;
        out.witness->subgroup = subs[k].elements();
      }
    } else if (c.verdict == Verdict::GhostModuloAssumptions && out.verdict == Verdict::Ghost) {
      out.verdict = Verdict::GhostModuloAssumptions;
      out.exact = false;
    }
    SubgroupCertificate sc;
    sc.elements = subs[k].elements();
    sc.cert.push_back(std::move(c));
    out.subgroups.push_back(std::move(sc));
  }
  if (opts.conjugacy_reduce) out.assumptions.notes.emplace_back("one p-subgroup per conjugacy class");
  return out;
}

EventualReport is_eventual_ghost_window(const ModuleMap& f, int n0, int b, int cap, StableContext& ctx) {
  check_map(f);
  if (n0 > b) throw InvalidInput("empty degree window");
  EventualReport r;
  auto fp = sylow_form(f, nullptr);
  if (!fp) {
    r.certified_ghost = true;
    return r;
  }
  const auto& g = fp->domain.group();
  auto w = is_ghost_window(f, n0, b, cap, ctx);
  r.ghost_on_window = w.ghost;
  r.degrees = std::move(w.degrees);
  r.witness = std::move(w.witness);
  auto pw = periodicity_witness(g, f.mat.field(), cap, ctx);
  if (pw) {
    r.period = pw->d;
    r.certified_ghost = r.ghost_on_window && b - n0 >= pw->d;
  }
  return r;
}

GhostSubspaceChain ghost_subspace_chain(const Module& m, const Module& n, int i_max, int cap, StableContext& ctx) {
  require_p_group(m, "ghost_subspace_chain");
  if (!(*m.group() == *n.group())) throw InvalidInput("modules over different groups");
  if (i_max < 0) throw InvalidInput("i_max must be non-negative");
  if (i_max > cap) throw CapExceeded("ghost_subspace_chain degree", cap);
  const PrimeField fld = m.field();
  HomSpace h = hom_basis(m, n);
  const std::size_t hd = h.dim();
  GhostSubspaceChain out;
  out.phom_dim = ctx.stable_hom(m, n).phom_dim();

  std::vector<Matrix> rows;
  Matrix prev;
  bool contained = true;
  for (int i = 0; i <= i_max; ++i) {
    std::vector<int> degs = i == 0 ? std::vector<int>{0} : std::vector<int>{-i, i};
    for (int j : degs) {
      if (hd == 0) break;
      std::vector<Matrix> cols;
      for (const auto& phi : h.basis) cols.push_back(flatten_column(tate_induced({m, n, phi}, j, cap, ctx)));
      Matrix a = hstack(cols);
      if (a.rows() > 0) rows.push_back(std::move(a));
    }
    Matrix s = rows.empty() ? Matrix::identity(fld, hd) : kernel_basis(vstack(rows));
    if (i > 0 && prev.cols() > 0 && s.cols() > 0) contained = contained && rank(hstack({prev, s})) == prev.cols();
    else if (i > 0 && prev.cols() == 0 && s.cols() > 0) contained = false;
    out.hom_dims.push_back(s.cols());
    out.stable_dims.push_back(s.cols() >= out.phom_dim ? s.cols() - out.phom_dim : 0);
    if (s.cols() < out.phom_dim) throw InternalError("ghost subspace smaller than PHom");
    prev = std::move(s);
  }
  out.containment_verified = contained;
  int st = i_max;
  while (st > 0 && out.hom_dims[static_cast<std::size_t>(st - 1)] == out.hom_dims.back()) --st;
  out.stabilized_at = st;
  for (std::size_t c = 0; c < prev.cols(); ++c) out.final_basis.push_back(h.element(prev.column(c)));
  return out;
}

}  // namespace stmod
