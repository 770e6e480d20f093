#pragma once

// Finite groups of order at most 64 as validated Cayley tables.
//
// Element 0 is always the identity. Named families use fixed numberings:
//   cyclic n            : index i is g^i
//   elementary_abelian  : index = sum_t digit_t * p^t, digit t is the exponent of generator t
//   dihedral 2n         : index i + n*j is r^i s^j
//   quaternion 8        : 1, -1, i, -i, j, -j, k, -k
//   symmetric 3         : permutations of (1 2 3) in lexicographic image order:
//                         id, (23), (12), (123), (132), (13); composition (xy)(t) = x(y(t))
//   direct product A x B: index a + |A| * b

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace stmod {

class Group {
 public:
  // Validates the table; relabels so that the identity is index 0.
  static std::shared_ptr<const Group> from_table(std::vector<std::vector<int>> table, std::string name);

  std::size_t order() const noexcept { return order_; }
  const std::string& name() const noexcept { return name_; }
  int mul(int a, int b) const noexcept { return table_[static_cast<std::size_t>(a) * order_ + static_cast<std::size_t>(b)]; }
  int inv(int a) const noexcept { return inverse_[static_cast<std::size_t>(a)]; }
  int conjugate(int x, int h) const noexcept { return mul(mul(x, h), inv(x)); }  // x h x^-1
  int element_order(int a) const;
  int power(int a, long e) const;

  // Deterministic generating set: repeatedly add the least element outside the current span.
  const std::vector<int>& generators() const noexcept { return generators_; }

  bool is_abelian() const;
  bool is_cyclic() const;
  bool is_p_group(int p) const;
  // Order-8 group with a unique involution that is not cyclic.
  bool is_quaternion8() const;
  bool is_elementary_abelian(int p) const;
  // Least-index element of maximal order (a generator when cyclic).
  int cyclic_generator() const;

  std::vector<std::vector<int>> table() const;
  bool operator==(const Group& o) const noexcept { return order_ == o.order_ && table_ == o.table_; }

 private:
  Group() = default;
  std::size_t order_ = 0;
  std::string name_;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<int> generators_;
};

using GroupPtr = std::shared_ptr<const Group>;

// Parses "cyclic:4", "elemab:2:2", "dihedral:6", "quaternion:8", "symmetric:3",
// "trivial", "product:cyclic:2,cyclic:4".
GroupPtr named_group(const std::string& spec);
GroupPtr cyclic_group(int n);
GroupPtr elementary_abelian_group(int p, int k);
GroupPtr dihedral_group(int two_n);
GroupPtr quaternion_group();
GroupPtr symmetric3_group();
GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b);

class Subgroup {
 public:
  // `elements` must be closed under the parent's multiplication; validated.
  Subgroup(GroupPtr parent, std::vector<int> elements);

  const GroupPtr& parent() const noexcept { return parent_; }
  const std::vector<int>& elements() const noexcept { return elements_; }
  std::size_t order() const noexcept { return elements_.size(); }
  std::uint64_t mask() const noexcept { return mask_; }
  bool contains(int g) const noexcept { return (mask_ >> g) & 1u; }
  bool is_whole() const noexcept { return elements_.size() == parent_->order(); }

  // The subgroup as a group in its own right; local index i is elements()[i].
  const GroupPtr& as_group() const noexcept { return local_; }
  int to_local(int parent_element) const;
  int to_parent(int local_element) const { return elements_[static_cast<std::size_t>(local_element)]; }

  bool operator==(const Subgroup& o) const noexcept { return *parent_ == *o.parent_ && mask_ == o.mask_; }

 private:
  GroupPtr parent_;
  std::vector<int> elements_;
  std::uint64_t mask_ = 0;
  GroupPtr local_;
};

struct DoubleCosetDecomposition {
  std::vector<int> representatives;            // minimal index in each coset
  std::vector<std::vector<int>> cosets;        // sorted element sets
};

inline constexpr std::size_t kDefaultSubgroupCap = 64;

Subgroup trivial_subgroup(const GroupPtr& g);
Subgroup whole_group(const GroupPtr& g);
Subgroup generated_subgroup(const GroupPtr& g, const std::vector<int>& gens);

// Sorted by order, then by element list.
std::vector<Subgroup> all_subgroups(const GroupPtr& g, std::size_t cap = kDefaultSubgroupCap);
std::vector<Subgroup> p_subgroups(const GroupPtr& g, int p, bool up_to_conjugacy = false,
                                  std::size_t cap = kDefaultSubgroupCap);
Subgroup sylow_subgroup(const GroupPtr& g, int p);
DoubleCosetDecomposition double_cosets(const Subgroup& q, const Subgroup& h);
// Minimal representatives of the left cosets xH, in increasing order (first is the identity).
std::vector<int> left_transversal(const Subgroup& h);
Subgroup conjugate_subgroup(const Subgroup& h, int x);
Subgroup intersect(const Subgroup& a, const Subgroup& b);
// `inner` (a subgroup of the same parent, contained in `outer`) as a subgroup of outer.as_group().
Subgroup relative_subgroup(const Subgroup& outer, const Subgroup& inner);

// Largest power of p dividing n.
std::size_t p_part(std::size_t n, int p);

}  // namespace stmod
