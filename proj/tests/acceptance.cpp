// One line per acceptance criterion. Exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "stmod/stmod.hpp"

using namespace stmod;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <class T>
std::string list(const std::vector<T>& v) {
  std::ostringstream o;
  o << "[";
  for (std::size_t i = 0; i < v.size(); ++i) o << (i ? " " : "") << v[i];
  o << "]";
  return o.str();
}

ModuleMap g_minus_1(const Module& m) {
  return {m, m, m.action(1) - Matrix::identity(m.field(), m.dim())};
}

// All nonzero elements of a stable hom space.
std::vector<ModuleMap> all_classes(const StableHomSpace& s, int p) {
  std::vector<ModuleMap> out;
  std::vector<std::uint8_t> c(s.dim(), 0);
  const std::uint64_t total = field_power(p, s.dim());
  for (std::uint64_t n = 1; n < total; ++n) {
    for (auto& x : c) {
      if (++x < p) break;
      x = 0;
    }
    out.push_back(s.element(c));
  }
  return out;
}

Outcome c1() {
  auto t0 = Clock::now();
  PrimeField f(2);
  auto g = cyclic_group(4);
  std::size_t basis = 0, strong = 0, strong_nonzero = 0;
  for (std::size_t i = 1; i <= 3; ++i)
    for (std::size_t j = 1; j <= 3; ++j) {
      const auto& s = stable_hom(jordan_module(g, f, i), jordan_module(g, f, j));
      for (const auto& phi : s.coset_basis()) {
        ++basis;
        if (!is_strong_ghost(phi).ghost()) continue;
        ++strong;
        if (!is_stably_zero(phi)) ++strong_nonzero;
      }
    }
  double t = seconds_since(t0);
  std::ostringstream o;
  o << basis << " basis classes over 9 pairs, " << strong << " strong ghosts, " << strong_nonzero
    << " of them stably nonzero; " << t << " s";
  return {strong_nonzero == 0 && t < 1.0, o.str()};
}

Outcome c2() {
  PrimeField f(2);
  Module m2 = jordan_module(cyclic_group(4), f, 2);
  auto phi = g_minus_1(m2);
  GhostOptions o;
  o.mode = GhostMode::Periodic;
  auto c = is_ghost(phi, o);
  auto s = is_strong_ghost(phi, o);
  bool ghost = c.verdict == Verdict::Ghost && c.exact && c.periodicity && c.periodicity->d == 2 && !is_stably_zero(phi);
  bool not_strong = s.verdict == Verdict::NotGhost && s.exact && s.witness && s.witness->subgroup.size() == 2 &&
                    s.witness->degree == 0 && s.witness->rank == 1;
  std::ostringstream out;
  out << "ghost: " << to_string(c.verdict) << " d = " << (c.periodicity ? c.periodicity->d : 0) << "; strong: "
      << to_string(s.verdict);
  if (s.witness)
    out << " on subgroup of order " << s.witness->subgroup.size() << ", degree " << s.witness->degree << ", rank "
        << s.witness->rank;
  return {ghost && not_strong, out.str()};
}

Outcome c3() {
  std::size_t classes = 0, ghosts = 0;
  for (int p : {2, 3}) {
    PrimeField f(p);
    auto g = cyclic_group(p);
    for (std::size_t i = 1; i < static_cast<std::size_t>(p); ++i)
      for (std::size_t j = 1; j < static_cast<std::size_t>(p); ++j)
        for (const auto& phi : all_classes(stable_hom(jordan_module(g, f, i), jordan_module(g, f, j)), p)) {
          ++classes;
          auto c = is_ghost(phi);
          if (c.ghost()) ++ghosts;
        }
  }
  return {classes > 0 && ghosts == 0,
          std::to_string(classes) + " nonzero stable classes, " + std::to_string(ghosts) + " ghosts"};
}

struct WitnessCase {
  std::string label;
  GroupPtr g;
  int p;
  std::size_t dim;  // 0: none expected
};

std::vector<WitnessCase> witness_cases() {
  return {{"C2", cyclic_group(2), 2, 0},
          {"C3", cyclic_group(3), 3, 0},
          {"C4", cyclic_group(4), 2, 0},
          {"C5", cyclic_group(5), 5, 2},
          {"C8", cyclic_group(8), 2, 3},
          {"C9", cyclic_group(9), 3, 2},
          {"V4", elementary_abelian_group(2, 2), 2, 6},
          {"C3xC3", elementary_abelian_group(3, 2), 3, 5}};
}

std::vector<StrongGhostWitness> witnesses;

Outcome c4() {
  auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream o;
  for (const auto& w : witness_cases()) {
    auto r = strong_ghost_witness(w.g, PrimeField(w.p), 12);
    o << w.label << ": ";
    if (w.dim == 0) {
      ok = ok && !r;
      o << (r ? "unexpected witness" : "none") << "; ";
      continue;
    }
    if (!r) {
      ok = false;
      o << "missing; ";
      continue;
    }
    const auto& e = r->evidence;
    const bool coprime = e.dim % static_cast<std::size_t>(w.p) != 0;
    const bool strong = is_strong_ghost(r->phi).verdict == Verdict::Ghost;
    const bool nonzero = !is_stably_zero(r->phi);
    const bool good = r->module.dim() == w.dim && coprime && e.not_a_syzygy && strong && nonzero && e.verified;
    ok = ok && good;
    o << "dim " << e.dim << (coprime ? "" : " (not prime to p)") << (e.not_a_syzygy ? "" : " (syzygy)")
      << (strong ? "" : " (not strong)") << (nonzero ? "" : " (stably zero)") << "; ";
    witnesses.push_back(*r);
  }
  double t = seconds_since(t0);
  o << t << " s";
  return {ok && t < 30.0, o.str()};
}

Outcome c5() {
  PrimeField f(2);
  auto c4g = cyclic_group(4), v4 = elementary_abelian_group(2, 2);
  std::vector<std::pair<std::string, Module>> fx = {{"(C4, M2)", jordan_module(c4g, f, 2)},
                                                    {"(V4, k)", trivial_module(v4, f)},
                                                    {"(V4, Omega k)", syzygy(trivial_module(v4, f), 1)},
                                                    {"(Q8, k)", trivial_module(quaternion_group(), f)}};
  bool ok = true;
  std::ostringstream o;
  for (const auto& [label, m] : fx) {
    std::vector<std::size_t> a, b;
    for (int i = -4; i <= 4; ++i) {
      a.push_back(tate_group(m, -i - 1).dim());
      b.push_back(tate_group(dual(m), i).dim());
    }
    ok = ok && a == b;
    o << label << " " << list(a) << (a == b ? " = " : " != ") << list(b) << "; ";
  }
  return {ok, o.str()};
}

Outcome c6() {
  PrimeField f(2);
  Module m2 = jordan_module(cyclic_group(4), f, 2);
  auto phi = g_minus_1(m2);
  GhostOptions per;
  per.mode = GhostMode::Periodic;
  bool ok = is_ghost(dual_map(phi), per).verdict == Verdict::Ghost;
  ok = ok && is_strong_ghost(dual_map(phi), per).verdict == Verdict::NotGhost;
  std::size_t checked = 1;
  for (const auto& w : witnesses) {
    auto d = dual_map(w.phi);
    ok = ok && is_ghost(d).ghost() && is_strong_ghost(d).verdict == Verdict::Ghost;
    ++checked;
  }
  return {ok && witnesses.size() == 5, std::to_string(checked) + " ghosts dualized (g-1 on M2 and " +
                                           std::to_string(witnesses.size()) + " strong ghosts)"};
}

Outcome c7() {
  PrimeField f(2);
  bool ok = true;
  std::size_t cases = 0;
  std::ostringstream o;
  for (const auto& g : {cyclic_group(4), elementary_abelian_group(2, 2)})
    for (const auto& h : p_subgroups(g, 2)) {
      if (h.order() != 2) continue;
      Module k = trivial_module(h.as_group(), f);
      Module up = induce(k, h).module;
      std::vector<std::size_t> a, b;
      for (int i = -4; i <= 4; ++i) {
        a.push_back(tate_group(k, i).dim());
        b.push_back(tate_group(up, i).dim());
      }
      ok = ok && a == b;
      ++cases;
      o << g->name() << " " << list(b) << "; ";
    }
  return {ok && cases == 4, o.str()};
}

Outcome c8() {
  bool ok = true;
  std::ostringstream o;
  auto check = [&](const std::string& label, const Module& m, const Subgroup& h) {
    auto md = mackey(m, h, h);
    std::size_t expect = 0;
    for (const auto& t : md.terms) expect += h.order() / t.intersection.order() * m.dim();
    bool dims = md.restricted.dim() == expect && md.sum.module.dim() == expect;
    bool iso = is_isomorphic(md.restricted, md.sum.module).isomorphic();
    ok = ok && dims && iso;
    o << label << ": " << md.terms.size() << " double cosets, dim " << md.restricted.dim() << ", "
      << (iso ? "isomorphic" : "NOT isomorphic") << "; ";
  };
  auto s3 = symmetric3_group();
  Subgroup t = generated_subgroup(s3, {2});  // (12)
  PrimeField f2(2), f5(5);
  check("S3 k", trivial_module(t.as_group(), f2), t);
  check("S3 kH", regular_module(t.as_group(), f2), t);
  auto c10 = cyclic_group(10);
  Subgroup c5 = sylow_subgroup(c10, 5);
  check("C10 k", trivial_module(c5.as_group(), f5), c5);
  check("C10 J2", jordan_module(c5.as_group(), f5, 2), c5);
  return {ok, o.str()};
}

Outcome c9() {
  bool ok = true;
  std::ostringstream o;
  auto compare = [&](const std::string& label, const GroupPtr& g, const oracle::Table& t, int p, int span,
                     const std::function<std::size_t(int)>& formula) {
    auto dims = tate_dims(trivial_module(g, PrimeField(p)), -span, span);
    auto ref = oracle::tate_dims(t, p, -span, span);
    bool good = true;
    for (int i = -span; i <= span; ++i) {
      std::size_t d = dims[static_cast<std::size_t>(i + span)];
      good = good && d == static_cast<std::size_t>(ref[static_cast<std::size_t>(i + span)]) && d == formula(i);
    }
    ok = ok && good;
    o << label << (good ? " ok" : " MISMATCH " + list(dims)) << "; ";
  };
  for (int n : {2, 3, 4, 5, 8, 9}) {
    int p = n == 2 || n == 4 || n == 8 ? 2 : n == 9 ? 3 : n;
    compare("C" + std::to_string(n), cyclic_group(n), oracle::cyclic(n), p, 6, [](int) { return std::size_t{1}; });
  }
  compare("V4", elementary_abelian_group(2, 2), oracle::klein(), 2, 6,
          [](int i) { return static_cast<std::size_t>(i >= 0 ? i + 1 : -i); });
  compare("Q8", quaternion_group(), oracle::quaternion(), 2, 8, [](int i) {
    const std::size_t pattern[4] = {1, 2, 2, 1};
    return pattern[((i % 4) + 4) % 4];
  });
  return {ok, o.str()};
}

Outcome c10() {
  PrimeField f(2);
  auto v4 = elementary_abelian_group(2, 2);
  auto eta = tate_dual_of_identity(v4, f);
  std::vector<std::size_t> ranks;
  for (int i = -6; i <= 6; ++i) ranks.push_back(rank(tate_induced(eta, i)));
  bool at_zero = true;
  for (int i = -6; i <= 6; ++i) at_zero = at_zero && ranks[static_cast<std::size_t>(i + 6)] == (i == 0 ? 1u : 0u);
  bool eventual = is_eventual_ghost_window(eta, 1, 10).ghost_on_window;
  auto c = is_ghost(eta);
  bool not_ghost = c.verdict == Verdict::NotGhost && c.exact;
  std::ostringstream o;
  o << "ranks for i = -6..6 " << list(ranks) << (at_zero ? "" : " (rank 1 expected at i = 0)")
    << "; eventual ghost on [1, 10]: " << (eventual ? "true" : "false") << "; is_ghost: " << to_string(c.verdict);
  return {at_zero && eventual && not_ghost, o.str()};
}

Outcome c11() {
  struct P {
    std::string label;
    GroupPtr g;
    int p;
    int d;
  };
  std::vector<P> ps = {{"C2", cyclic_group(2), 2, 1}, {"C3", cyclic_group(3), 3, 2}, {"C4", cyclic_group(4), 2, 2},
                       {"C5", cyclic_group(5), 5, 2}, {"Q8", quaternion_group(), 2, 4}};
  bool ok = true;
  std::ostringstream o;
  for (const auto& x : ps) {
    auto w = periodicity_witness(x.g, PrimeField(x.p), 8);
    bool good = w && w->d == x.d && verify_periodicity(*w, x.g, PrimeField(x.p), -4, 4);
    ok = ok && good;
    o << x.label << " d = " << (w ? w->d : 0) << "; ";
  }
  bool v4_none = !periodicity_witness(elementary_abelian_group(2, 2), PrimeField(2), 8).has_value();
  ok = ok && v4_none;
  o << "V4 " << (v4_none ? "none" : "found") << "; ";

  PrimeField f(2);
  auto g = cyclic_group(4);
  GhostOptions per;
  per.mode = GhostMode::Periodic;
  std::size_t classes = 0, agree = 0, ghosts = 0;
  for (std::size_t i = 1; i <= 3; ++i)
    for (std::size_t j = 1; j <= 3; ++j)
      for (const auto& phi : all_classes(stable_hom(jordan_module(g, f, i), jordan_module(g, f, j)), 2)) {
        ++classes;
        bool window2 = is_ghost_window(phi, 0, 1).ghost;
        bool cert = is_ghost(phi, per).verdict == Verdict::Ghost;
        bool wide = is_ghost_window(phi, -6, 6).ghost;
        if (window2 == cert && cert == wide) ++agree;
        if (cert) ++ghosts;
      }
  ok = ok && agree == classes;
  o << "C4: " << agree << "/" << classes << " classes agree (" << ghosts << " ghosts)";
  return {ok, o.str()};
}

Module random_basis(const Module& m, std::mt19937_64& rng) {
  const PrimeField f = m.field();
  for (;;) {
    Matrix p(f, m.dim(), m.dim());
    for (std::size_t r = 0; r < m.dim(); ++r)
      for (std::size_t c = 0; c < m.dim(); ++c) p.set(r, c, static_cast<long>(rng() % 3));
    auto pi = inverse(p);
    if (!pi) continue;
    std::vector<Matrix> act;
    for (const auto& a : m.actions()) act.push_back(p * a * *pi);
    return Module(m.group(), f, m.dim(), std::move(act));
  }
}

Outcome c12() {
  PrimeField f(3);
  auto g = symmetric3_group();
  Subgroup syl = sylow_subgroup(g, 3);
  Subgroup t = generated_subgroup(g, {2});
  std::vector<Module> pool = {trivial_module(g, f), induce(trivial_module(t.as_group(), f), t).module,
                              induce(jordan_module(syl.as_group(), f, 2), syl).module, induce(trivial_module(syl.as_group(), f), syl).module,
                              regular_module(g, f)};
  std::mt19937_64 rng(20240601);
  auto random_module = [&]() {
    std::vector<Module> parts;
    std::size_t left = 6;
    while (left > 0) {
      const Module& m = pool[rng() % pool.size()];
      if (m.dim() > left) continue;
      parts.push_back(m);
      left -= m.dim();
    }
    return random_basis(direct_sum(parts).module, rng);
  };
  std::size_t agree = 0, zero = 0;
  for (int s = 0; s < 50; ++s) {
    Module a = random_module(), b = random_module();
    auto h = hom_basis(a, b);
    Matrix x(f, b.dim(), a.dim());
    for (const auto& bm : h.basis) x = x + scaled(bm, static_cast<std::uint8_t>(rng() % 3));
    ModuleMap phi{a, b, x};
    bool whole = is_stably_zero(phi);
    bool down = is_stably_zero(restrict_map(phi, syl));
    if (whole == down) ++agree;
    if (whole) ++zero;
  }
  return {agree == 50, std::to_string(agree) + "/50 agree, " + std::to_string(zero) + " stably zero"};
}

Outcome c13() {
  PrimeField f(5);
  auto g = cyclic_group(5);
  Module j2 = jordan_module(g, f, 2);
  std::vector<std::pair<std::string, Module>> fixtures;
  for (std::size_t i = 1; i <= 5; ++i) fixtures.push_back({"J" + std::to_string(i), jordan_module(g, f, i)});
  auto s = ar_sequence(j2, fixtures);
  Module target = direct_sum({jordan_module(g, f, 1), jordan_module(g, f, 3)}).module;
  bool middle = s.free_rank == 0 && is_isomorphic(s.middle, target).isomorphic();
  std::size_t lifted = 0, checked = 0;
  for (const auto& l : s.lifting) {
    lifted += l.maps_lifted;
    checked += l.maps_checked;
  }
  std::ostringstream o;
  o << "middle dim " << s.middle.dim() << (middle ? " = J1 + J3" : " (not J1 + J3)") << "; ranks alpha " << s.rank_alpha
    << ", beta " << s.rank_beta << "; exact " << s.exact << ", non-split " << s.non_split << "; lifted " << lifted << "/"
    << checked;
  return {middle && s.exact && s.non_split && s.lifting_ok && checked > 0, o.str()};
}

Outcome c14() {
  PrimeField f(5);
  auto g = cyclic_group(10);
  Subgroup h = sylow_subgroup(g, 5);
  auto phi = ar_class(jordan_module(h.as_group(), f, 2)).phi;
  auto up = induce_map(phi, h);
  auto c = is_strong_ghost(up);
  std::size_t failures = 0;
  for (const auto& s : c.subgroups)
    if (!s.cert.front().ghost()) ++failures;
  bool nonzero = !is_stably_zero(up);
  return {c.verdict == Verdict::Ghost && failures == 0 && nonzero && !c.subgroups.empty(),
          std::string("induced map ") + to_string(c.verdict) + " over " + std::to_string(c.subgroups.size()) +
              " p-subgroups, failure set size " + std::to_string(failures)};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12, c13, c14};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome r;
    try {
      r = criteria[i]();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    if (!r.pass) ++failures;
    std::printf("criterion %zu: %s  %s\n", i + 1, r.pass ? "PASS" : "FAIL", r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
