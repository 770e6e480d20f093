// stmod: command-line driver for the stable module category engine.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "stmod/errors.hpp"
#include "stmod/report.hpp"

using namespace stmod;
using io::json;

namespace {

struct Args {
  int cap = kDefaultDegreeCap;
  std::string mode = "auto";
  std::uint64_t seed = 0x5eed;
  std::string json_path;
  bool conjugacy_reduce = false;

  std::string group;
  int p = 0;
  std::string module;
  std::string codomain;
  std::string map;
  std::string subgroup;
  std::string report;
  int degree = 1;
  std::optional<int> lo, hi;
  int n0 = 1, b = 10;
  int imax = 4;
  bool eta = false;
};

std::vector<int> parse_elements(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw InvalidInput("bad subgroup element '" + tok + "'");
    }
  }
  if (out.empty()) throw InvalidInput("--subgroup needs a comma-separated element list");
  return out;
}

class Runner {
 public:
  explicit Runner(const Args& a) : a_(a) {}

  GroupPtr group() {
    if (!g_) {
      if (a_.group.empty()) {
        if (!a_.module.empty() && std::filesystem::exists(a_.module)) g_ = io::load_module(a_.module, nullptr, {}).group();
        else if (!a_.map.empty()) g_ = io::load_map(a_.map).domain.group();
        else throw InvalidInput("--group is required");
      } else {
        g_ = io::load_group(a_.group);
      }
    }
    return g_;
  }

  std::optional<int> prime() const { return a_.p ? std::optional<int>(a_.p) : std::nullopt; }

  PrimeField field() {
    if (a_.p) {
      if (!is_prime(a_.p) || a_.p > 251) throw InvalidInput("--p must be a prime below 256");
      return PrimeField(a_.p);
    }
    if (!a_.module.empty() && std::filesystem::exists(a_.module)) return io::load_module(a_.module, nullptr, {}).field();
    throw InvalidInput("--p is required");
  }

  // Standard specs plus "omega-k:n" (the n-th syzygy of k).
  Module module_from(const std::string& spec, const GroupPtr& g) {
    if (spec.rfind("omega-k:", 0) == 0) {
      int n = 0;
      try {
        n = std::stoi(spec.substr(8));
      } catch (const std::exception&) {
        throw InvalidInput("bad spec " + spec);
      }
      return syzygy(trivial_module(g, field()), n);
    }
    return io::load_module(spec, g, prime());
  }

  Module module() {
    if (a_.module.empty()) throw InvalidInput("--module is required");
    return module_from(a_.module, group());
  }

  Module codomain() {
    if (a_.codomain.empty()) throw InvalidInput("--codomain is required");
    return module_from(a_.codomain, group());
  }

  ModuleMap map() {
    if (a_.eta) return tate_dual_of_identity(group(), field());
    if (a_.map.empty()) throw InvalidInput("--map or --eta is required");
    io::json j = io::read_json_file(a_.map);
    std::optional<Module> d, c;
    if (!a_.module.empty()) d = module();
    if (!a_.codomain.empty()) c = codomain();
    else if (!j.contains("codomain")) c = d;
    return io::map_from_json(j, d, c);
  }

  Subgroup subgroup() {
    if (a_.subgroup.empty()) throw InvalidInput("--subgroup is required");
    return Subgroup(group(), parse_elements(a_.subgroup));
  }

  GhostOptions ghost_options() const {
    GhostOptions o;
    o.mode = parse_ghost_mode(a_.mode);
    o.cap = a_.cap;
    o.conjugacy_reduce = a_.conjugacy_reduce;
    return o;
  }

  int emit(json j) {
    json out;
    out["seed"] = a_.seed;
    out["cap"] = a_.cap;
    for (auto& [k, v] : j.items()) out[k] = v;
    std::cout << out.dump(2) << "\n";
    if (!a_.json_path.empty()) io::write_json_file(a_.json_path, out);
    return 0;
  }

  int group_make() { return emit({{"group", io::group_to_json(*group())}}); }

  int group_show() {
    auto g = group();
    json j;
    j["name"] = g->name();
    j["order"] = g->order();
    j["abelian"] = g->is_abelian();
    j["cyclic"] = g->is_cyclic();
    j["generators"] = g->generators();
    std::vector<int> orders;
    for (std::size_t x = 0; x < g->order(); ++x) orders.push_back(g->element_order(static_cast<int>(x)));
    j["element_orders"] = orders;
    if (a_.p) {
      json subs = json::array();
      for (const auto& s : p_subgroups(g, a_.p, a_.conjugacy_reduce)) subs.push_back(s.elements());
      j["p_subgroups"] = std::move(subs);
      j["sylow"] = sylow_subgroup(g, a_.p).elements();
    }
    return emit(j);
  }

  int module_make() { return emit({{"module", io::module_to_json(module())}}); }

  int module_validate() {
    Module m = module();  // loading validates
    return emit({{"valid", true}, {"dim", m.dim()}, {"p", m.field().p()}});
  }

  int module_dual() { return emit({{"module", io::module_to_json(dual(module()))}}); }

  int module_restrict() {
    Subgroup h = subgroup();
    return emit({{"subgroup", h.elements()}, {"module", io::module_to_json(restrict(module(), h))}});
  }

  int module_induce() {
    Subgroup h = subgroup();
    Module m = module_from(a_.module, h.as_group());
    auto ind = induce(m, h);
    return emit({{"subgroup", h.elements()}, {"transversal", ind.transversal}, {"module", io::module_to_json(ind.module)}});
  }

  int module_syzygy() {
    Module m = module();
    Module s = syzygy(m, a_.degree);
    return emit({{"n", a_.degree}, {"dim", s.dim()}, {"module", io::module_to_json(s)}});
  }

  int hom_basis_cmd() {
    HomSpace h = hom_basis(module(), codomain());
    json b = json::array();
    for (const auto& x : h.basis) b.push_back(io::matrix_to_json(x));
    return emit({{"dim", h.dim()}, {"basis", b}});
  }

  int hom_stable() {
    const auto& s = stable_hom(module(), codomain());
    json b = json::array();
    for (const auto& x : s.coset_basis()) b.push_back(io::matrix_to_json(x.mat));
    return emit({{"hom_dim", s.hom().dim()}, {"phom_dim", s.phom_dim()}, {"stable_dim", s.dim()}, {"coset_basis", b}});
  }

  std::pair<int, int> window() const {
    int lo = a_.lo.value_or(-6), hi = a_.hi.value_or(6);
    if (lo > hi) throw InvalidInput("--lo must not exceed --hi");
    return {lo, hi};
  }

  int cohomology_dims() {
    Module m = module();
    auto [lo, hi] = window();
    json rows = json::array();
    for (int i = lo; i <= hi; ++i) {
      auto h = tate_group(m, i, a_.cap);
      rows.push_back({{"i", i}, {"dim", h.dim()}});
    }
    return emit({{"dims", rows}});
  }

  int cohomology_induced() {
    ModuleMap f = map();
    auto [lo, hi] = window();
    json rows = json::array();
    for (int i = lo; i <= hi; ++i) rows.push_back({{"i", i}, {"rank", rank(tate_induced(f, i, a_.cap))}});
    return emit({{"ranks", rows}});
  }

  int cohomology_bounds() {
    ModuleMap f = a_.map.empty() && !a_.eta ? identity_map(module()) : map();
    auto b = generator_bounds(f, a_.cap);
    return emit({{"d", b.d},
                 {"m", b.m},
                 {"n", b.n},
                 {"d_trusted", b.d_trusted},
                 {"d_verified", b.d_verified},
                 {"m_verified", b.m_verified},
                 {"n_verified", b.n_verified}});
  }

  int cohomology_period() {
    auto w = periodicity_witness(group(), field(), a_.cap);
    if (!w) return emit({{"period", nullptr}});
    bool ok = verify_periodicity(*w, group(), field(), -4, 4);
    return emit({{"period", w->d}, {"verified", ok}, {"witness", io::periodicity_to_json(*w)}});
  }

  int ghost_check() { return emit({{"certificate", io::certificate_to_json(is_ghost(map(), ghost_options()))}}); }
  int ghost_strong() { return emit({{"certificate", io::certificate_to_json(is_strong_ghost(map(), ghost_options()))}}); }
  int ghost_eventual() { return emit({{"report", io::eventual_to_json(is_eventual_ghost_window(map(), a_.n0, a_.b, a_.cap))}}); }
  int ghost_chain() { return emit({{"chain", io::chain_to_json(ghost_subspace_chain(module(), codomain(), a_.imax, a_.cap))}}); }

  int ar_class_cmd() {
    auto c = ar_class(module());
    return emit({{"map", io::map_to_json(c.phi)},
                 {"solution_dim", c.solution_dim},
                 {"stable_hom_dim", c.stable_hom_dim},
                 {"end_dim", c.end.basis.dim()},
                 {"radical_dim", c.end.radical.cols()}});
  }

  int ar_sequence_cmd() {
    auto s = ar_sequence(module());
    json lifts = json::array();
    for (const auto& l : s.lifting)
      lifts.push_back({{"module", l.label}, {"checked", l.maps_checked}, {"lifted", l.maps_lifted}, {"skipped_isomorphic", l.skipped_isomorphic}});
    return emit({{"ranks", {s.start.dim(), s.middle.dim(), m_dim(s)}},
                 {"rank_alpha", s.rank_alpha},
                 {"rank_beta", s.rank_beta},
                 {"exact", s.exact},
                 {"non_split", s.non_split},
                 {"lifting", lifts},
                 {"lifting_ok", s.lifting_ok},
                 {"free_rank", s.free_rank},
                 {"middle", io::module_to_json(s.middle)},
                 {"middle_stripped", io::module_to_json(s.stripped)},
                 {"class", io::map_to_json(s.cls.phi)}});
  }

  int ar_witness() {
    GhostOptions o = ghost_options();
    auto w = strong_ghost_witness(group(), field(), a_.cap, o);
    if (!w) return emit({{"witness", nullptr}, {"reason", "no strong-ghost witness exists over C_2, C_3 or C_4"}});
    return emit({{"witness", io::witness_to_json(*w)}});
  }

  int report() {
    ReportConfig cfg;
    cfg.cap = a_.cap;
    cfg.seed = a_.seed;
    cfg.conjugacy_reduce = a_.conjugacy_reduce;
    if (!a_.group.empty()) {
      cfg.group = group();
      cfg.p = field().p();
    }
    std::vector<std::string> names;
    if (a_.report == "all") names = report_names();
    else names.push_back(a_.report);
    bool pass = true;
    json all = json::array();
    std::size_t passed = 0;
    for (const auto& n : names) {
      Report r = run_report(n, cfg);
      std::cout << format_report(r);
      pass = pass && r.pass();
      passed += r.pass();
      all.push_back(report_to_json(r));
    }
    if (names.size() > 1) std::cout << "all: " << (pass ? "PASS" : "FAIL") << " (" << passed << "/" << names.size() << ")\n";
    if (!a_.json_path.empty()) io::write_json_file(a_.json_path, {{"seed", a_.seed}, {"cap", a_.cap}, {"reports", all}});
    return pass ? 0 : 3;
  }

 private:
  static std::size_t m_dim(const ARSequence& s) { return s.end_term.dim(); }

  const Args& a_;
  GroupPtr g_;
};

}  // namespace

int main(int argc, char** argv) {
  Args a;
  CLI::App app{"stmod: exact computations in the stable module category of kG over F_p"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  app.add_option("--cap", a.cap, "degree cap")->check(CLI::PositiveNumber);
  app.add_option("--mode", a.mode, "ghost mode: auto, periodic, bounds, window-only");
  app.add_option("--seed", a.seed, "seed for randomized fallbacks");
  app.add_option("--json", a.json_path, "also write the JSON output here");
  app.add_flag("--conjugacy-reduce", a.conjugacy_reduce, "one p-subgroup per conjugacy class");
  app.add_option("--group", a.group, "named group spec or group file");
  app.add_option("--p", a.p, "prime");
  app.add_option("--module", a.module, "module file or spec (trivial, regular, jordan:i, v4band:n:l, omega-k:n)");
  app.add_option("--codomain", a.codomain, "second module file or spec");
  app.add_option("--map", a.map, "map file");
  app.add_option("--subgroup", a.subgroup, "comma-separated element indices");
  app.add_option("--degree", a.degree, "syzygy degree");
  app.add_option("--lo", a.lo, "lowest degree");
  app.add_option("--hi", a.hi, "highest degree");
  app.add_option("--n0", a.n0, "eventual window start");
  app.add_option("--b", a.b, "eventual window end");
  app.add_option("--imax", a.imax, "subspace chain length");
  app.add_flag("--eta", a.eta, "use the generator of H^-1(G, k) as the map");

  Runner run(a);
  std::function<int()> action;
  auto group_cmd = app.add_subcommand("group", "groups")->require_subcommand(1);
  group_cmd->add_subcommand("make", "write a group file")->callback([&] { action = [&] { return run.group_make(); }; });
  group_cmd->add_subcommand("show", "group summary")->callback([&] { action = [&] { return run.group_show(); }; });

  auto mod = app.add_subcommand("module", "modules")->require_subcommand(1);
  mod->add_subcommand("make", "write a module file")->callback([&] { action = [&] { return run.module_make(); }; });
  mod->add_subcommand("validate", "check the module law")->callback([&] { action = [&] { return run.module_validate(); }; });
  mod->add_subcommand("dual", "dual module")->callback([&] { action = [&] { return run.module_dual(); }; });
  mod->add_subcommand("restrict", "restrict to --subgroup")->callback([&] { action = [&] { return run.module_restrict(); }; });
  mod->add_subcommand("induce", "induce from --subgroup")->callback([&] { action = [&] { return run.module_induce(); }; });
  mod->add_subcommand("syzygy", "Omega^n of a module")->callback([&] { action = [&] { return run.module_syzygy(); }; });

  auto hom = app.add_subcommand("hom", "hom spaces")->require_subcommand(1);
  hom->add_subcommand("basis", "basis of Hom(M, N)")->callback([&] { action = [&] { return run.hom_basis_cmd(); }; });
  hom->add_subcommand("stable", "stable Hom(M, N)")->callback([&] { action = [&] { return run.hom_stable(); }; });

  auto coh = app.add_subcommand("cohomology", "Tate cohomology")->require_subcommand(1);
  coh->add_subcommand("dims", "dimensions of H^i(G, M)")->callback([&] { action = [&] { return run.cohomology_dims(); }; });
  coh->add_subcommand("induced", "ranks of H^i(f)")->callback([&] { action = [&] { return run.cohomology_induced(); }; });
  coh->add_subcommand("bounds", "generator bounds d, m, n")->callback([&] { action = [&] { return run.cohomology_bounds(); }; });
  coh->add_subcommand("period", "periodicity witness")->callback([&] { action = [&] { return run.cohomology_period(); }; });

  auto gh = app.add_subcommand("ghost", "ghost predicates")->require_subcommand(1);
  gh->add_subcommand("check", "is the map a ghost")->callback([&] { action = [&] { return run.ghost_check(); }; });
  gh->add_subcommand("strong", "is the map a strong ghost")->callback([&] { action = [&] { return run.ghost_strong(); }; });
  gh->add_subcommand("eventual", "ghost on the window [n0, b]")->callback([&] { action = [&] { return run.ghost_eventual(); }; });
  gh->add_subcommand("chain", "ghost subspace chain")->callback([&] { action = [&] { return run.ghost_chain(); }; });

  auto ar = app.add_subcommand("ar", "almost split sequences")->require_subcommand(1);
  ar->add_subcommand("class", "AR class M -> Omega M")->callback([&] { action = [&] { return run.ar_class_cmd(); }; });
  ar->add_subcommand("sequence", "almost split sequence ending in M")->callback([&] { action = [&] { return run.ar_sequence_cmd(); }; });
  ar->add_subcommand("witness", "strong-ghost witness for the group")->callback([&] { action = [&] { return run.ar_witness(); }; });

  auto rep = app.add_subcommand("report", "theorem reports");
  rep->add_option("name", a.report, "prop31, thm33, duality, eckmann_shapiro, mackey, example53, periodicity, faithfulness, all")->required();
  rep->callback([&] { action = [&] { return run.report(); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  try {
    return action ? action() : 1;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const CapExceeded& e) {
    std::cerr << "blocked: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
