#include "stmod/report.hpp"

#include <functional>
#include <random>
#include <sstream>

#include "stmod/errors.hpp"

namespace stmod {

namespace {

std::string join(const std::vector<std::size_t>& v) {
  std::ostringstream o;
  for (std::size_t i = 0; i < v.size(); ++i) o << (i ? " " : "") << v[i];
  return o.str();
}

std::string join_ints(const std::vector<int>& v) {
  std::ostringstream o;
  for (std::size_t i = 0; i < v.size(); ++i) o << (i ? "," : "") << v[i];
  return o.str();
}

void add(Report& r, std::string check, std::string replay, std::string result, bool pass) {
  r.rows.push_back({std::move(check), std::move(replay), std::move(result), pass});
}

// Every nonzero element of a stable hom space.
void for_each_class(const StableHomSpace& s, PrimeField f, const std::function<void(const ModuleMap&)>& fn) {
  const std::size_t d = s.dim();
  if (field_power(f.p(), d) > kEnumerationCap) throw CapExceeded("stable hom enumeration", kEnumerationCap);
  std::vector<std::uint8_t> c(d, 0);
  const std::uint64_t total = field_power(f.p(), d);
  for (std::uint64_t n = 1; n < total; ++n) {
    for (std::size_t l = 0; l < d; ++l) {
      if (++c[l] < f.p()) break;
      c[l] = 0;
    }
    fn(s.element(c));
  }
}

int first_of_order(const Group& g, int k) {
  for (std::size_t x = 0; x < g.order(); ++x)
    if (g.element_order(static_cast<int>(x)) == k) return static_cast<int>(x);
  throw InternalError("no element of the requested order");
}

Report prop31(const ReportConfig& cfg) {
  Report r;
  const PrimeField f(2);
  auto g = cyclic_group(4);
  GhostOptions o;
  o.cap = cfg.cap;
  o.conjugacy_reduce = cfg.conjugacy_reduce;
  std::size_t strong_total = 0, classes_total = 0;
  for (std::size_t i = 1; i <= 3; ++i)
    for (std::size_t j = 1; j <= 3; ++j) {
      Module a = jordan_module(g, f, i), b = jordan_module(g, f, j);
      const auto& s = stable_hom(a, b);
      std::size_t classes = 0, ghosts = 0, strong = 0;
      for_each_class(s, f, [&](const ModuleMap& phi) {
        ++classes;
        if (is_ghost(phi, o).ghost()) ++ghosts;
        if (is_strong_ghost(phi, o).ghost()) ++strong;
      });
      strong_total += strong;
      classes_total += classes;
      std::ostringstream res;
      res << "stable dim " << s.dim() << ", nonzero classes " << classes << ", ghosts " << ghosts << ", strong ghosts "
          << strong;
      add(r, "M" + std::to_string(i) + " -> M" + std::to_string(j),
          "hom stable --group cyclic:4 --p 2 --module jordan:" + std::to_string(i) + " --codomain jordan:" + std::to_string(j),
          res.str(), strong == 0);
    }
  add(r, "no nontrivial strong ghosts over C_4", "report prop31",
      std::to_string(classes_total) + " nonzero stable classes over 9 pairs, " + std::to_string(strong_total) + " strong ghosts",
      strong_total == 0);
  return r;
}

struct NamedGroup {
  std::string spec;
  int p;
};

Report thm33(const ReportConfig& cfg) {
  Report r;
  std::vector<NamedGroup> gs;
  if (cfg.group) {
    gs.push_back({"", cfg.p});
  } else {
    gs = {{"cyclic:2", 2}, {"cyclic:3", 3}, {"cyclic:4", 2}, {"cyclic:5", 5}, {"cyclic:8", 2},
          {"cyclic:9", 3}, {"elemab:2:2", 2}, {"elemab:3:2", 3}};
  }
  GhostOptions o;
  o.conjugacy_reduce = cfg.conjugacy_reduce;
  for (const auto& ng : gs) {
    GroupPtr g = cfg.group ? cfg.group : named_group(ng.spec);
    const std::string label = cfg.group ? g->name() : ng.spec;
    const bool small_cyclic = g->is_cyclic() && g->order() <= 4;
    auto w = strong_ghost_witness(g, PrimeField(ng.p), cfg.cap, o);
    const std::string replay = "ar witness --group " + label + " --p " + std::to_string(ng.p);
    if (!w) {
      add(r, "witness over " + label, replay, "none", small_cyclic);
      continue;
    }
    const auto& e = w->evidence;
    std::ostringstream res;
    res << e.construction << "; dim " << e.dim << (e.dim_coprime_to_p ? " (prime to p)" : " (divisible by p)")
        << "; condition (1): " << e.condition1 << (e.condition1_ok ? " ok" : " FAILED") << "; not Omega^i k for |i| <= "
        << cfg.cap << ": " << (e.not_a_syzygy ? "yes" : "no") << "; strong ghost: " << to_string(e.strong.verdict)
        << "; stably zero: " << (e.stably_zero ? "yes" : "no") << "; splits on " << e.splits.size()
        << " proper nontrivial subgroups";
    add(r, "witness over " + label, replay, res.str(), !small_cyclic && e.verified);
  }
  return r;
}

Report duality(const ReportConfig& cfg) {
  Report r;
  const PrimeField f2(2);
  auto c4 = cyclic_group(4), v4 = elementary_abelian_group(2, 2), q8 = quaternion_group();
  struct Fx {
    std::string label, replay;
    Module m;
  };
  std::vector<Fx> fx = {{"(C4, M2)", "--group cyclic:4 --p 2 --module jordan:2", jordan_module(c4, f2, 2)},
                        {"(V4, k)", "--group elemab:2:2 --p 2 --module trivial", trivial_module(v4, f2)},
                        {"(V4, Omega k)", "--group elemab:2:2 --p 2 --module omega-k:1", syzygy(trivial_module(v4, f2), 1)},
                        {"(Q8, k)", "--group quaternion:8 --p 2 --module trivial", trivial_module(q8, f2)}};
  for (const auto& x : fx) {
    std::vector<std::size_t> lhs, rhs;
    Module md = dual(x.m);
    for (int i = -4; i <= 4; ++i) {
      lhs.push_back(tate_group(x.m, -i - 1, cfg.cap).dim());
      rhs.push_back(tate_group(md, i, cfg.cap).dim());
    }
    add(r, "dim H^{-i-1}(M) = dim H^i(M*) for -4 <= i <= 4 on " + x.label, "cohomology dims " + x.replay,
        "[" + join(lhs) + "] vs [" + join(rhs) + "]", lhs == rhs);
  }
  return r;
}

Report eckmann_shapiro(const ReportConfig& cfg) {
  Report r;
  const PrimeField f2(2);
  std::vector<std::pair<std::string, GroupPtr>> gs = {{"cyclic:4", cyclic_group(4)}, {"elemab:2:2", elementary_abelian_group(2, 2)}};
  for (const auto& [spec, g] : gs) {
    for (const auto& h : p_subgroups(g, 2)) {
      if (h.order() != 2) continue;
      Module k = trivial_module(h.as_group(), f2);
      Module ind = induce(k, h).module;
      std::vector<std::size_t> lhs, rhs;
      for (int i = -4; i <= 4; ++i) {
        lhs.push_back(tate_group(k, i, cfg.cap).dim());
        rhs.push_back(tate_group(ind, i, cfg.cap).dim());
      }
      add(r, "dim H^i(H, k) = dim H^i(G, k induced) for -4 <= i <= 4, G = " + spec + ", H = <" + join_ints(h.elements()) + ">",
          "module induce --group " + spec + " --p 2 --subgroup " + join_ints(h.elements()) + " --module trivial",
          "[" + join(lhs) + "] vs [" + join(rhs) + "]", lhs == rhs);
    }
  }
  return r;
}

Report mackey_report(const ReportConfig&) {
  Report r;
  struct Case {
    std::string spec;
    GroupPtr g;
    int p;
    Subgroup h;
    std::vector<std::pair<std::string, Module>> ms;
  };
  auto s3 = symmetric3_group();
  Subgroup t = generated_subgroup(s3, {first_of_order(*s3, 2)});
  auto c10 = cyclic_group(10);
  Subgroup c5 = sylow_subgroup(c10, 5);
  std::vector<Case> cases;
  cases.push_back({"symmetric:3", s3, 2, t, {{"trivial", trivial_module(t.as_group(), PrimeField(2))}}});
  cases.push_back({"cyclic:10", c10, 5, c5,
                   {{"trivial", trivial_module(c5.as_group(), PrimeField(5))}, {"jordan:2", jordan_module(c5.as_group(), PrimeField(5), 2)}}});
  for (const auto& c : cases)
    for (const auto& [label, m] : c.ms) {
      auto md = mackey(m, c.h, c.h);
      std::size_t expect = 0;
      for (const auto& term : md.terms) expect += c.h.order() / term.intersection.order() * m.dim();
      const bool dims = md.restricted.dim() == expect && md.sum.module.dim() == expect;
      auto iso = is_isomorphic(md.restricted, md.sum.module);
      std::ostringstream res;
      res << md.terms.size() << " double cosets; dim " << md.restricted.dim() << " = " << expect
          << "; isomorphic: " << (iso.isomorphic() ? "yes" : "no");
      add(r, "Mackey for " + c.spec + ", Q = H = <" + join_ints(c.h.elements()) + ">, M = " + label,
          "module induce/restrict --group " + c.spec + " --p " + std::to_string(c.p) + " --subgroup " + join_ints(c.h.elements()),
          res.str(), dims && iso.isomorphic());
    }
  return r;
}

Report example53(const ReportConfig& cfg) {
  Report r;
  const PrimeField f2(2);
  auto v4 = elementary_abelian_group(2, 2);
  ModuleMap eta = tate_dual_of_identity(v4, f2);
  std::vector<std::size_t> ranks;
  std::vector<int> nonzero;
  for (int i = -6; i <= 6; ++i) {
    ranks.push_back(rank(tate_induced(eta, i, cfg.cap)));
    if (ranks.back()) nonzero.push_back(i);
  }
  const bool profile = nonzero == std::vector<int>{-1} && ranks[5] == 1;
  add(r, "H^i(eta) ranks for -6 <= i <= 6 (eta in H^-1(V4, k))", "cohomology induced --group elemab:2:2 --p 2 --eta",
      "[" + join(ranks) + "]; nonzero only at i = -1, where H^-1(Omega^-1 k) = H^0(k) and eta multiplies the degree-0 class 1",
      profile);
  auto ev = is_eventual_ghost_window(eta, 1, 10, cfg.cap);
  add(r, "eventual ghost on window [1, 10]", "ghost eventual --group elemab:2:2 --p 2 --eta --n0 1 --b 10",
      ev.ghost_on_window ? "true" : "false", ev.ghost_on_window);
  GhostOptions o;
  o.cap = cfg.cap;
  auto c = is_ghost(eta, o);
  std::ostringstream res;
  res << to_string(c.verdict) << " (" << to_string(c.mode) << ")";
  if (c.witness) res << ", witness degree " << c.witness->degree << (c.witness->dual ? " on the dual map" : "");
  add(r, "eta is not a ghost", "ghost check --group elemab:2:2 --p 2 --eta", res.str(),
      c.verdict == Verdict::NotGhost && c.exact && c.witness.has_value());
  return r;
}

Report periodicity(const ReportConfig& cfg) {
  Report r;
  struct P {
    std::string spec;
    int p;
    int expect;  // 0: none
  };
  std::vector<P> ps = {{"cyclic:2", 2, 1}, {"cyclic:3", 3, 2}, {"cyclic:4", 2, 2}, {"cyclic:5", 5, 2}, {"quaternion:8", 2, 4}, {"elemab:2:2", 2, 0}};
  for (const auto& x : ps) {
    auto g = named_group(x.spec);
    const PrimeField f(x.p);
    auto w = periodicity_witness(g, f, 8);
    bool ok = x.expect == 0 ? !w.has_value() : (w && w->d == x.expect && verify_periodicity(*w, g, f, -4, 4));
    add(r, "periodicity witness over " + x.spec + " (search d <= 8)", "cohomology period --group " + x.spec + " --p " + std::to_string(x.p),
        w ? "d = " + std::to_string(w->d) : "none", ok);
  }
  const PrimeField f2(2);
  auto c4 = cyclic_group(4);
  std::size_t checked = 0, agree = 0, ghosts = 0;
  GhostOptions o;
  o.mode = GhostMode::Periodic;
  o.cap = cfg.cap;
  for (std::size_t i = 1; i <= 3; ++i)
    for (std::size_t j = 1; j <= 3; ++j) {
      Module a = jordan_module(c4, f2, i), b = jordan_module(c4, f2, j);
      for_each_class(stable_hom(a, b), f2, [&](const ModuleMap& phi) {
        ++checked;
        bool cert = is_ghost(phi, o).verdict == Verdict::Ghost;
        bool direct = is_ghost_window(phi, -6, 6, cfg.cap).ghost;
        if (cert == direct) ++agree;
        if (cert) ++ghosts;
      });
    }
  add(r, "C4: width-2 window certificate agrees with direct [-6, 6] check", "ghost check --mode periodic; ghost eventual --n0 -6 --b 6",
      std::to_string(agree) + "/" + std::to_string(checked) + " classes agree, " + std::to_string(ghosts) + " certified ghosts",
      agree == checked);
  return r;
}

Module sign_module(const GroupPtr& g, PrimeField f) {
  std::vector<Matrix> act;
  for (std::size_t x = 0; x < g->order(); ++x) {
    Matrix m(f, 1, 1);
    m.set(0, 0, g->element_order(static_cast<int>(x)) == 2 ? -1 : 1);
    act.push_back(std::move(m));
  }
  return Module(g, f, 1, std::move(act));
}

Module random_basis_change(const Module& m, std::mt19937_64& rng) {
  const PrimeField f = m.field();
  const std::size_t d = m.dim();
  for (;;) {
    Matrix p(f, d, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) p.set(r, c, static_cast<long>(rng() % static_cast<std::uint64_t>(f.p())));
    auto pi = inverse(p);
    if (!pi) continue;
    std::vector<Matrix> act;
    for (const auto& a : m.actions()) act.push_back(p * a * *pi);
    return Module(m.group(), f, d, std::move(act));
  }
}

Report faithfulness(const ReportConfig& cfg) {
  Report r;
  const PrimeField f3(3);
  auto g = symmetric3_group();
  Subgroup syl = sylow_subgroup(g, 3);
  Subgroup t = generated_subgroup(g, {first_of_order(*g, 2)});
  Module k = trivial_module(g, f3), sgn = sign_module(g, f3);
  Module pk = induce(trivial_module(t.as_group(), f3), t).module;
  Module psgn = induce(restrict(sgn, t), t).module;
  std::vector<Module> pool = {k, sgn, quotient_module(pk, fixed_points(pk).basis).module,
                              quotient_module(psgn, fixed_points(psgn).basis).module, pk, psgn,
                              induce(jordan_module(syl.as_group(), f3, 2), syl).module, regular_module(g, f3)};
  std::mt19937_64 rng(cfg.seed);
  auto random_module = [&]() {
    std::vector<Module> parts;
    std::size_t left = 6;
    while (left > 0) {
      const Module& m = pool[rng() % pool.size()];
      if (m.dim() > left) continue;
      parts.push_back(m);
      left -= m.dim();
    }
    return random_basis_change(direct_sum(parts).module, rng);
  };
  std::size_t agree = 0, zero = 0;
  const std::size_t samples = 50;
  for (std::size_t s = 0; s < samples; ++s) {
    Module a = random_module(), b = random_module();
    Matrix x(f3, b.dim(), a.dim());
    if (s % 3 == 0) {
      const Matrix& ph = phom_basis(a, b);
      for (std::size_t c = 0; c < ph.cols(); ++c)
        x = x + scaled(Matrix::unflatten(f3, b.dim(), a.dim(), ph.column(c)), static_cast<std::uint8_t>(rng() % 3));
    } else {
      HomSpace h = hom_basis(a, b);
      for (const auto& bm : h.basis) x = x + scaled(bm, static_cast<std::uint8_t>(rng() % 3));
    }
    ModuleMap phi{a, b, x};
    bool whole = is_stably_zero(phi);
    bool sylow = is_stably_zero(restrict_map(phi, syl));
    if (whole == sylow) ++agree;
    if (whole) ++zero;
  }
  add(r, "S3, p = 3: stably zero iff stably zero on the Sylow 3-subgroup", "report faithfulness --seed " + std::to_string(cfg.seed),
      std::to_string(agree) + "/" + std::to_string(samples) + " samples agree (" + std::to_string(zero) + " stably zero)",
      agree == samples);
  return r;
}

}  // namespace

bool Report::pass() const {
  for (const auto& row : rows)
    if (!row.pass) return false;
  return !rows.empty();
}

const std::vector<std::string>& report_names() {
  static const std::vector<std::string> names = {"prop31", "thm33", "duality", "eckmann_shapiro",
                                                 "mackey", "example53", "periodicity", "faithfulness"};
  return names;
}

Report run_report(const std::string& name, const ReportConfig& cfg) {
  Report r;
  if (name == "prop31") r = prop31(cfg);
  else if (name == "thm33") r = thm33(cfg);
  else if (name == "duality") r = duality(cfg);
  else if (name == "eckmann_shapiro") r = eckmann_shapiro(cfg);
  else if (name == "mackey") r = mackey_report(cfg);
  else if (name == "example53") r = example53(cfg);
  else if (name == "periodicity") r = periodicity(cfg);
  else if (name == "faithfulness") r = faithfulness(cfg);
  else throw InvalidInput("unknown report '" + name + "'");
  r.name = name;
  r.seed = cfg.seed;
  return r;
}

std::string format_report(const Report& r) {
  std::ostringstream o;
  o << "== " << r.name << " (seed " << r.seed << ") ==\n";
  std::size_t ok = 0;
  for (const auto& row : r.rows) {
    o << (row.pass ? "[PASS] " : "[FAIL] ") << row.check << "\n       " << row.result << "\n       replay: " << row.replay << "\n";
    ok += row.pass;
  }
  o << r.name << ": " << (r.pass() ? "PASS" : "FAIL") << " (" << ok << "/" << r.rows.size() << ")\n";
  return o.str();
}

io::json report_to_json(const Report& r) {
  io::json j;
  j["report"] = r.name;
  j["seed"] = r.seed;
  j["pass"] = r.pass();
  io::json rows = io::json::array();
  for (const auto& row : r.rows) {
    io::json e;
    e["check"] = row.check;
    e["pass"] = row.pass;
    e["result"] = row.result;
    e["replay"] = row.replay;
    rows.push_back(std::move(e));
  }
  j["rows"] = std::move(rows);
  return j;
}

}  // namespace stmod
