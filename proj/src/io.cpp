#include "stmod/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "stmod/errors.hpp"

namespace stmod::io {

namespace {

long as_int(const json& v, const char* what) {
  if (!v.is_number_integer()) throw InvalidInput(std::string(what) + ": expected an integer");
  return v.get<long>();
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  return j.at(key);
}

json ints(const std::vector<int>& v) {
  json a = json::array();
  for (int x : v) a.push_back(x);
  return a;
}

json degrees_json(const std::vector<DegreeRank>& ds) {
  json a = json::array();
  for (const auto& d : ds) {
    json e;
    e["i"] = d.i;
    e["rank"] = d.rank;
    if (d.dual) e["dual"] = true;
    a.push_back(std::move(e));
  }
  return a;
}

json ghost_witness_json(const GhostWitness& w, bool with_class) {
  json j;
  j["degree"] = w.degree;
  j["dual"] = w.dual;
  j["basis_index"] = w.basis_index;
  j["rank"] = w.rank;
  j["subgroup"] = w.subgroup.empty() ? json(nullptr) : ints(w.subgroup);
  if (with_class) j["class"] = map_to_json(w.cls);
  return j;
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(int{m(r, c)});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, PrimeField f, std::optional<std::size_t> rows, std::optional<std::size_t> cols) {
  if (!j.is_array()) throw InvalidInput("matrix: expected an array of rows");
  const std::size_t nr = j.size();
  std::size_t nc = nr ? (j[0].is_array() ? j[0].size() : 0) : (cols ? *cols : 0);
  if (rows && *rows != nr) throw InvalidInput("matrix: expected " + std::to_string(*rows) + " rows, got " + std::to_string(nr));
  if (cols && nr && *cols != nc) throw InvalidInput("matrix: expected " + std::to_string(*cols) + " columns, got " + std::to_string(nc));
  Matrix m(f, nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    if (!j[r].is_array() || j[r].size() != nc) throw InvalidInput("matrix: ragged rows");
    for (std::size_t c = 0; c < nc; ++c) {
      long v = as_int(j[r][c], "matrix entry");
      if (v < 0 || v >= f.p()) throw InvalidInput("matrix entry " + std::to_string(v) + " outside [0, p)");
      m.set(r, c, v);
    }
  }
  return m;
}

json group_to_json(const Group& g) {
  json j;
  j["name"] = g.name();
  j["order"] = g.order();
  j["cayley"] = g.table();
  return j;
}

GroupPtr group_from_json(const json& j) {
  if (j.is_string()) return named_group(j.get<std::string>());
  long n = as_int(field(j, "order"), "order");
  const json& t = field(j, "cayley");
  if (!t.is_array() || static_cast<long>(t.size()) != n) throw InvalidInput("cayley table must have 'order' rows");
  std::vector<std::vector<int>> table;
  for (const auto& row : t) {
    if (!row.is_array() || static_cast<long>(row.size()) != n) throw InvalidInput("cayley table must be square");
    std::vector<int> r;
    for (const auto& x : row) r.push_back(static_cast<int>(as_int(x, "cayley entry")));
    table.push_back(std::move(r));
  }
  std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "G";
  return Group::from_table(std::move(table), std::move(name));
}

GroupPtr load_group(const std::string& spec_or_path) {
  if (std::filesystem::is_regular_file(spec_or_path)) return group_from_json(read_json_file(spec_or_path));
  return named_group(spec_or_path);
}

json module_to_json(const Module& m) {
  json j;
  j["group"] = group_to_json(*m.group());
  j["p"] = m.field().p();
  j["dim"] = m.dim();
  json act = json::array();
  for (const auto& a : m.actions()) act.push_back(matrix_to_json(a));
  j["action"] = std::move(act);
  return j;
}

Module module_from_json(const json& j, const GroupPtr& group) {
  GroupPtr g;
  if (j.is_object() && j.contains("group")) {
    g = group_from_json(j["group"]);
    if (group && !(*g == *group)) throw InvalidInput("module file is over a different group");
  } else {
    g = group;
  }
  if (!g) throw InvalidInput("module: no group given");
  long p = as_int(field(j, "p"), "p");
  if (p < 2 || p > 251 || !is_prime(static_cast<int>(p))) throw InvalidInput("p must be a prime below 256");
  const PrimeField f(static_cast<int>(p));
  long d = as_int(field(j, "dim"), "dim");
  if (d < 0) throw InvalidInput("dim must be non-negative");
  const json& a = field(j, "action");
  if (!a.is_array() || a.size() != g->order()) throw InvalidInput("action must list one matrix per group element");
  std::vector<Matrix> act;
  for (const auto& x : a) act.push_back(matrix_from_json(x, f, static_cast<std::size_t>(d), static_cast<std::size_t>(d)));
  Module m(g, f, static_cast<std::size_t>(d), std::move(act));
  if (auto v = validate_module(m))
    throw InvalidInput("not a module: " + v->what + " at (" + std::to_string(v->g) + ", " + std::to_string(v->h) + ")");
  return m;
}

Module load_module(const std::string& spec_or_path, const GroupPtr& group, std::optional<int> p) {
  if (std::filesystem::is_regular_file(spec_or_path)) return module_from_json(read_json_file(spec_or_path), group);
  if (!group) throw InvalidInput("module spec '" + spec_or_path + "' needs --group");
  if (!p) throw InvalidInput("module spec '" + spec_or_path + "' needs --p");
  if (!is_prime(*p)) throw InvalidInput("--p must be prime");
  return standard_module(group, PrimeField(*p), spec_or_path);
}

json map_to_json(const ModuleMap& f) {
  json j;
  j["domain"] = module_to_json(f.domain);
  j["codomain"] = module_to_json(f.codomain);
  j["mat"] = matrix_to_json(f.mat);
  return j;
}

ModuleMap map_from_json(const json& j, const std::optional<Module>& domain, const std::optional<Module>& codomain) {
  auto side = [&](const char* key, const std::optional<Module>& given) {
    if (j.is_object() && j.contains(key)) {
      Module m = module_from_json(j[key], given ? given->group() : nullptr);
      if (given && !(m == *given)) throw InvalidInput(std::string("map ") + key + " differs from the given module");
      return m;
    }
    if (!given) throw InvalidInput(std::string("map: no ") + key + " given");
    return *given;
  };
  Module dm = side("domain", domain);
  Module cm = side("codomain", codomain);
  if (!(dm.field() == cm.field())) throw InvalidInput("map: domain and codomain over different fields");
  Matrix mat = matrix_from_json(field(j, "mat"), dm.field(), cm.dim(), dm.dim());
  if (dm.dim() == 0 || cm.dim() == 0) mat = Matrix(dm.field(), cm.dim(), dm.dim());
  ModuleMap f{dm, cm, std::move(mat)};
  if (!(*dm.group() == *cm.group())) throw InvalidInput("map: domain and codomain over different groups");
  if (!f.is_equivariant()) throw InvalidInput("map is not G-equivariant");
  return f;
}

ModuleMap load_map(const std::string& path, const std::optional<Module>& domain, const std::optional<Module>& codomain) {
  return map_from_json(read_json_file(path), domain, codomain);
}

json periodicity_to_json(const PeriodicityWitness& w) {
  json j;
  j["d"] = w.d;
  j["u"] = matrix_to_json(w.u.mat);
  j["w"] = matrix_to_json(w.w.mat);
  j["omega_d_dim"] = w.u.domain.dim();
  return j;
}

json certificate_to_json(const GhostCertificate& c, bool with_classes) {
  json j;
  j["verdict"] = to_string(c.verdict);
  j["mode"] = to_string(c.mode);
  j["exact"] = c.exact;
  j["degrees"] = degrees_json(c.degrees);
  j["witness"] = c.witness ? ghost_witness_json(*c.witness, with_classes) : json(nullptr);
  json a;
  a["cap"] = c.assumptions.cap;
  a["period"] = c.assumptions.period ? json(*c.assumptions.period) : json(nullptr);
  a["d"] = c.assumptions.d ? json(*c.assumptions.d) : json(nullptr);
  a["m"] = c.assumptions.m ? json(*c.assumptions.m) : json(nullptr);
  a["n"] = c.assumptions.n ? json(*c.assumptions.n) : json(nullptr);
  a["d_trusted"] = c.assumptions.d_trusted;
  a["m_verified"] = c.assumptions.m_verified;
  a["n_verified"] = c.assumptions.n_verified;
  a["notes"] = c.assumptions.notes;
  j["assumptions"] = std::move(a);
  if (c.periodicity && with_classes) j["periodicity"] = periodicity_to_json(*c.periodicity);
  if (!c.subgroups.empty()) {
    json s = json::array();
    for (const auto& sc : c.subgroups) {
      json e;
      e["elements"] = ints(sc.elements);
      e["certificate"] = certificate_to_json(sc.cert.at(0), with_classes);
      s.push_back(std::move(e));
    }
    j["subgroups"] = std::move(s);
  }
  return j;
}

json window_to_json(const WindowReport& r) {
  json j;
  j["ghost_on_window"] = r.ghost;
  j["degrees"] = degrees_json(r.degrees);
  j["witness"] = r.witness ? ghost_witness_json(*r.witness, true) : json(nullptr);
  return j;
}

json eventual_to_json(const EventualReport& r) {
  json j;
  j["ghost_on_window"] = r.ghost_on_window;
  j["degrees"] = degrees_json(r.degrees);
  j["witness"] = r.witness ? ghost_witness_json(*r.witness, true) : json(nullptr);
  j["period"] = r.period ? json(*r.period) : json(nullptr);
  j["certified_ghost"] = r.certified_ghost;
  return j;
}

json chain_to_json(const GhostSubspaceChain& c) {
  json j;
  json pairs = json::array();
  for (std::size_t i = 0; i < c.hom_dims.size(); ++i) {
    json e;
    e["i"] = i;
    e["dim"] = c.hom_dims[i];
    e["stable_dim"] = c.stable_dims[i];
    pairs.push_back(std::move(e));
  }
  j["chain"] = std::move(pairs);
  j["phom_dim"] = c.phom_dim;
  j["stabilized_at"] = c.stabilized_at;
  j["stabilization_certified"] = false;
  j["containment_verified"] = c.containment_verified;
  json b = json::array();
  for (const auto& m : c.final_basis) b.push_back(matrix_to_json(m.mat));
  j["final_basis"] = std::move(b);
  return j;
}

json witness_to_json(const StrongGhostWitness& w) {
  const auto& e = w.evidence;
  json j;
  j["module"] = module_to_json(w.module);
  j["map"] = map_to_json(w.phi);
  json ev;
  ev["construction"] = e.construction;
  ev["dim"] = e.dim;
  ev["dim_coprime_to_p"] = e.dim_coprime_to_p;
  ev["indecomposable"] = e.indecomposable;
  ev["condition1"] = e.condition1;
  ev["condition1_ok"] = e.condition1_ok;
  json rel = json::array();
  for (const auto& r : e.relative) {
    json x;
    x["subgroup"] = ints(r.subgroup);
    x["relatively_projective"] = r.relatively_projective;
    rel.push_back(std::move(x));
  }
  ev["relative_projectivity"] = std::move(rel);
  json syz = json::array();
  for (const auto& s : e.syzygies) {
    json x;
    x["i"] = s.i;
    x["dim"] = s.dim;
    x["isomorphic"] = s.isomorphic;
    x["method"] = s.method;
    syz.push_back(std::move(x));
  }
  ev["syzygy_checks"] = std::move(syz);
  ev["not_a_syzygy_of_k"] = e.not_a_syzygy;
  ev["ar_solution_dim"] = e.ar_solution_dim;
  ev["stably_zero"] = e.stably_zero;
  json sp = json::array();
  for (const auto& s : e.splits) {
    json x;
    x["subgroup"] = ints(s.subgroup);
    x["restriction_stably_zero"] = s.stably_zero;
    sp.push_back(std::move(x));
  }
  ev["subgroup_splits"] = std::move(sp);
  ev["strong_ghost"] = certificate_to_json(e.strong, false);
  ev["verified"] = e.verified;
  j["evidence"] = std::move(ev);
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace stmod::io
