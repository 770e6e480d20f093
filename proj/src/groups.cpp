#include "stmod/groups.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <set>
#include <sstream>

#include "stmod/errors.hpp"
#include "stmod/linalg.hpp"

namespace stmod {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

int parse_int(const std::string& s) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw InvalidInput("not an integer: " + s);
    return v;
  } catch (const std::logic_error&) {
    throw InvalidInput("not an integer: " + s);
  }
}

std::uint64_t closure(const Group& g, std::uint64_t mask) {
  mask |= 1u;
  for (;;) {
    std::uint64_t next = mask;
    for (std::uint64_t a = mask; a; a &= a - 1) {
      const int x = std::countr_zero(a);
      for (std::uint64_t b = mask; b; b &= b - 1) next |= std::uint64_t{1} << g.mul(x, std::countr_zero(b));
    }
    if (next == mask) return mask;
    mask = next;
  }
}

std::vector<int> mask_elements(std::uint64_t mask) {
  std::vector<int> out;
  for (; mask; mask &= mask - 1) out.push_back(std::countr_zero(mask));
  return out;
}

bool lex_less(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.elements() < b.elements();
}

}  // namespace

GroupPtr Group::from_table(std::vector<std::vector<int>> table, std::string name) {
  const std::size_t n = table.size();
  if (n == 0) throw InvalidInput("empty Cayley table");
  if (n > 64) throw InvalidInput("groups of order > 64 are not supported");
  for (const auto& row : table) {
    if (row.size() != n) throw InvalidInput("Cayley table is not square");
    std::vector<char> seen(n, 0);
    for (int x : row) {
      if (x < 0 || static_cast<std::size_t>(x) >= n) throw InvalidInput("Cayley table entry out of range");
      if (seen[static_cast<std::size_t>(x)]) throw InvalidInput("Cayley table row is not a permutation");
      seen[static_cast<std::size_t>(x)] = 1;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<char> seen(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
      const auto x = static_cast<std::size_t>(table[r][c]);
      if (seen[x]) throw InvalidInput("Cayley table column is not a permutation");
      seen[x] = 1;
    }
  }
  // Find the identity.
  int e = -1;
  for (std::size_t a = 0; a < n && e < 0; ++a) {
    bool ok = true;
    for (std::size_t b = 0; b < n && ok; ++b)
      ok = table[a][b] == static_cast<int>(b) && table[b][a] == static_cast<int>(b);
    if (ok) e = static_cast<int>(a);
  }
  if (e < 0) throw InvalidInput("Cayley table has no identity element");
  if (e != 0) {
    // Swap labels 0 and e.
    auto relabel = [e](int x) { return x == 0 ? e : (x == e ? 0 : x); };
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        t[static_cast<std::size_t>(relabel(static_cast<int>(a)))][static_cast<std::size_t>(relabel(static_cast<int>(b)))] =
            relabel(table[a][b]);
    table = std::move(t);
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto ab = static_cast<std::size_t>(table[a][b]);
      for (std::size_t c = 0; c < n; ++c)
        if (table[ab][c] != table[a][static_cast<std::size_t>(table[b][c])])
          throw InvalidInput("Cayley table is not associative at (" + std::to_string(a) + "," + std::to_string(b) +
                             "," + std::to_string(c) + ")");
    }

  auto g = std::shared_ptr<Group>(new Group());
  g->order_ = n;
  g->name_ = std::move(name);
  g->table_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) g->table_[a * n + b] = table[a][b];
  g->inverse_.resize(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (table[a][b] == 0) g->inverse_[a] = static_cast<int>(b);
  std::uint64_t span = 1;
  for (std::size_t a = 1; a < n; ++a)
    if (!((span >> a) & 1u)) {
      g->generators_.push_back(static_cast<int>(a));
      span = closure(*g, span | (std::uint64_t{1} << a));
    }
  return g;
}

int Group::element_order(int a) const {
  int k = 1;
  for (int x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

int Group::power(int a, long e) const {
  const long n = element_order(a);
  e %= n;
  if (e < 0) e += n;
  int x = 0;
  for (long i = 0; i < e; ++i) x = mul(x, a);
  return x;
}

bool Group::is_abelian() const {
  for (std::size_t a = 0; a < order_; ++a)
    for (std::size_t b = a + 1; b < order_; ++b)
      if (table_[a * order_ + b] != table_[b * order_ + a]) return false;
  return true;
}

int Group::cyclic_generator() const {
  int best = 0, best_order = 1;
  for (std::size_t a = 0; a < order_; ++a) {
    const int o = element_order(static_cast<int>(a));
    if (o > best_order) {
      best = static_cast<int>(a);
      best_order = o;
    }
  }
  return best;
}

bool Group::is_cyclic() const { return static_cast<std::size_t>(element_order(cyclic_generator())) == order_; }

bool Group::is_p_group(int p) const {
  std::size_t n = order_;
  while (n % static_cast<std::size_t>(p) == 0) n /= static_cast<std::size_t>(p);
  return n == 1;
}

bool Group::is_quaternion8() const {
  if (order_ != 8 || is_cyclic()) return false;
  int involutions = 0;
  for (std::size_t a = 1; a < order_; ++a)
    if (element_order(static_cast<int>(a)) == 2) ++involutions;
  return involutions == 1;
}

bool Group::is_elementary_abelian(int p) const {
  if (!is_abelian() || !is_p_group(p)) return false;
  for (std::size_t a = 1; a < order_; ++a)
    if (element_order(static_cast<int>(a)) != p) return false;
  return true;
}

std::vector<std::vector<int>> Group::table() const {
  std::vector<std::vector<int>> t(order_, std::vector<int>(order_));
  for (std::size_t a = 0; a < order_; ++a)
    for (std::size_t b = 0; b < order_; ++b) t[a][b] = table_[a * order_ + b];
  return t;
}

GroupPtr cyclic_group(int n) {
  if (n < 1 || n > 64) throw InvalidInput("cyclic group order must be in [1, 64]");
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
  return Group::from_table(std::move(t), "C" + std::to_string(n));
}

GroupPtr elementary_abelian_group(int p, int k) {
  if (!is_prime(p) || k < 1) throw InvalidInput("elementary abelian group needs prime p and rank >= 1");
  long n = 1;
  for (int i = 0; i < k; ++i) n *= p;
  if (n > 64) throw InvalidInput("elementary abelian group of order > 64");
  const auto sz = static_cast<std::size_t>(n);
  std::vector<std::vector<int>> t(sz, std::vector<int>(sz));
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b) {
      long x = a, y = b, r = 0, place = 1;
      for (int i = 0; i < k; ++i) {
        r += ((x % p + y % p) % p) * place;
        x /= p;
        y /= p;
        place *= p;
      }
      t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = static_cast<int>(r);
    }
  std::string name = (p == 2 && k == 2) ? "V4" : "C" + std::to_string(p) + "^" + std::to_string(k);
  return Group::from_table(std::move(t), name);
}

GroupPtr dihedral_group(int two_n) {
  if (two_n < 2 || two_n % 2 || two_n > 64) throw InvalidInput("dihedral group order must be even in [2, 64]");
  const int n = two_n / 2;
  std::vector<std::vector<int>> t(static_cast<std::size_t>(two_n), std::vector<int>(static_cast<std::size_t>(two_n)));
  for (int x = 0; x < two_n; ++x)
    for (int y = 0; y < two_n; ++y) {
      const int a = x % n, b = x / n, c = y % n, d = y / n;
      const int i = ((a + (b ? -c : c)) % n + n) % n;
      t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = i + n * ((b + d) % 2);
    }
  return Group::from_table(std::move(t), "D" + std::to_string(two_n));
}

GroupPtr quaternion_group() {
  // Units ±1, ±i, ±j, ±k encoded as (sign, unit) with index 2*unit + sign.
  // unit products: table[u][v] = (sign, unit)
  const std::array<std::array<std::pair<int, int>, 4>, 4> prod{{
      {{{0, 0}, {0, 1}, {0, 2}, {0, 3}}},
      {{{0, 1}, {1, 0}, {0, 3}, {1, 2}}},
      {{{0, 2}, {1, 3}, {1, 0}, {0, 1}}},
      {{{0, 3}, {0, 2}, {1, 1}, {1, 0}}},
  }};
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      const auto [s, u] = prod[static_cast<std::size_t>(x / 2)][static_cast<std::size_t>(y / 2)];
      const int sign = (x % 2 + y % 2 + s) % 2;
      t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = 2 * u + sign;
    }
  return Group::from_table(std::move(t), "Q8");
}

GroupPtr symmetric3_group() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (std::size_t i = 0; i < 3; ++i) c[i] = perms[a][static_cast<std::size_t>(perms[b][i])];
      t[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return Group::from_table(std::move(t), "S3");
}

GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b) {
  const std::size_t na = a->order(), nb = b->order();
  if (na * nb > 64) throw InvalidInput("direct product of order > 64");
  std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
  for (std::size_t x = 0; x < na * nb; ++x)
    for (std::size_t y = 0; y < na * nb; ++y) {
      const int u = a->mul(static_cast<int>(x % na), static_cast<int>(y % na));
      const int v = b->mul(static_cast<int>(x / na), static_cast<int>(y / na));
      t[x][y] = u + static_cast<int>(na) * v;
    }
  return Group::from_table(std::move(t), a->name() + "x" + b->name());
}

GroupPtr named_group(const std::string& spec) {
  if (spec.rfind("product:", 0) == 0) {
    const auto parts = split(spec.substr(8), ',');
    if (parts.size() < 2) throw InvalidInput("product spec needs at least two factors: " + spec);
    GroupPtr g = named_group(parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i) g = direct_product(g, named_group(parts[i]));
    return g;
  }
  const auto parts = split(spec, ':');
  if (parts.empty()) throw InvalidInput("empty group spec");
  const std::string& kind = parts[0];
  if (kind == "trivial" && parts.size() == 1) return cyclic_group(1);
  if (kind == "cyclic" && parts.size() == 2) return cyclic_group(parse_int(parts[1]));
  if ((kind == "elemab" || kind == "elementary_abelian") && parts.size() == 3)
    return elementary_abelian_group(parse_int(parts[1]), parse_int(parts[2]));
  if (kind == "dihedral" && parts.size() == 2) return dihedral_group(parse_int(parts[1]));
  if (kind == "quaternion" && parts.size() == 2 && parse_int(parts[1]) == 8) return quaternion_group();
  if (kind == "symmetric" && parts.size() == 2 && parse_int(parts[1]) == 3) return symmetric3_group();
  throw InvalidInput("unsupported group spec: " + spec);
}

Subgroup::Subgroup(GroupPtr parent, std::vector<int> elements) : parent_(std::move(parent)), elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  if (elements_.empty() || elements_[0] != 0) throw InvalidInput("subgroup must contain the identity");
  for (int x : elements_) {
    if (x < 0 || static_cast<std::size_t>(x) >= parent_->order()) throw InvalidInput("subgroup element out of range");
    mask_ |= std::uint64_t{1} << x;
  }
  for (int x : elements_) {
    if (!contains(parent_->inv(x))) throw InvalidInput("subgroup not closed under inverses");
    for (int y : elements_)
      if (!contains(parent_->mul(x, y))) throw InvalidInput("subgroup not closed under multiplication");
  }
  if (is_whole()) {
    local_ = parent_;
    return;
  }
  const std::size_t n = elements_.size();
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = to_local(parent_->mul(elements_[a], elements_[b]));
  std::ostringstream name;
  name << parent_->name() << "<";
  for (std::size_t i = 0; i < n; ++i) name << (i ? "," : "") << elements_[i];
  name << ">";
  local_ = Group::from_table(std::move(t), name.str());
}

int Subgroup::to_local(int parent_element) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), parent_element);
  if (it == elements_.end() || *it != parent_element) throw InvalidInput("element not in subgroup");
  return static_cast<int>(it - elements_.begin());
}

Subgroup trivial_subgroup(const GroupPtr& g) { return Subgroup(g, {0}); }

Subgroup whole_group(const GroupPtr& g) {
  std::vector<int> all(g->order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return Subgroup(g, std::move(all));
}

Subgroup generated_subgroup(const GroupPtr& g, const std::vector<int>& gens) {
  std::uint64_t m = 1;
  for (int x : gens) m |= std::uint64_t{1} << x;
  return Subgroup(g, mask_elements(closure(*g, m)));
}

std::vector<Subgroup> all_subgroups(const GroupPtr& g, std::size_t cap) {
  if (g->order() > cap) throw CapExceeded("subgroup enumeration for a group of order " + std::to_string(g->order()), static_cast<long>(cap));
  const std::size_t n = g->order();
  std::set<std::uint64_t> found{1};
  std::vector<std::uint64_t> frontier{1};
  while (!frontier.empty()) {
    std::vector<std::uint64_t> next;
    for (auto h : frontier)
      for (std::size_t x = 1; x < n; ++x) {
        if ((h >> x) & 1u) continue;
        const auto k = closure(*g, h | (std::uint64_t{1} << x));
        if (found.insert(k).second) next.push_back(k);
      }
    frontier = std::move(next);
  }
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (auto m : found) out.emplace_back(g, mask_elements(m));
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

std::size_t p_part(std::size_t n, int p) {
  std::size_t r = 1;
  while (n % static_cast<std::size_t>(p) == 0) {
    n /= static_cast<std::size_t>(p);
    r *= static_cast<std::size_t>(p);
  }
  return r;
}

std::vector<Subgroup> p_subgroups(const GroupPtr& g, int p, bool up_to_conjugacy, std::size_t cap) {
  if (!is_prime(p)) throw InvalidInput("p must be prime");
  std::vector<Subgroup> out;
  for (auto& h : all_subgroups(g, cap)) {
    if (p_part(h.order(), p) != h.order()) continue;
    if (up_to_conjugacy) {
      bool seen = false;
      for (const auto& k : out) {
        if (k.order() != h.order()) continue;
        for (std::size_t x = 0; x < g->order() && !seen; ++x)
          seen = conjugate_subgroup(k, static_cast<int>(x)).mask() == h.mask();
        if (seen) break;
      }
      if (seen) continue;
    }
    out.push_back(std::move(h));
  }
  return out;
}

Subgroup sylow_subgroup(const GroupPtr& g, int p) {
  const std::size_t target = p_part(g->order(), p);
  if (target == 1) return trivial_subgroup(g);
  for (auto& h : all_subgroups(g))
    if (h.order() == target) return h;  // sorted, so lexicographically least
  throw InternalError("no Sylow subgroup found");
}

DoubleCosetDecomposition double_cosets(const Subgroup& q, const Subgroup& h) {
  if (!(*q.parent() == *h.parent())) throw InvalidInput("double cosets of subgroups of different groups");
  const auto& g = *q.parent();
  DoubleCosetDecomposition d;
  std::uint64_t seen = 0;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if ((seen >> x) & 1u) continue;
    std::uint64_t coset = 0;
    for (int a : q.elements())
      for (int b : h.elements()) coset |= std::uint64_t{1} << g.mul(g.mul(a, static_cast<int>(x)), b);
    seen |= coset;
    d.representatives.push_back(static_cast<int>(x));
    d.cosets.push_back(mask_elements(coset));
  }
  return d;
}

std::vector<int> left_transversal(const Subgroup& h) {
  const auto& g = *h.parent();
  std::vector<int> reps;
  std::uint64_t seen = 0;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if ((seen >> x) & 1u) continue;
    reps.push_back(static_cast<int>(x));
    for (int b : h.elements()) seen |= std::uint64_t{1} << g.mul(static_cast<int>(x), b);
  }
  return reps;
}

Subgroup conjugate_subgroup(const Subgroup& h, int x) {
  std::vector<int> els;
  for (int e : h.elements()) els.push_back(h.parent()->conjugate(x, e));
  return Subgroup(h.parent(), std::move(els));
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  if (!(*a.parent() == *b.parent())) throw InvalidInput("intersection of subgroups of different groups");
  return Subgroup(a.parent(), mask_elements(a.mask() & b.mask()));
}

Subgroup relative_subgroup(const Subgroup& outer, const Subgroup& inner) {
  if ((inner.mask() & ~outer.mask()) != 0) throw InvalidInput("relative_subgroup: inner is not contained in outer");
  std::vector<int> local;
  for (int x : inner.elements()) local.push_back(outer.to_local(x));
  return Subgroup(outer.as_group(), std::move(local));
}

}  // namespace stmod
