#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace crossprod {

// A finite group given by its Cayley table: table[g][h] is the index of g*h.
class FiniteGroup {
 public:
  FiniteGroup() = default;
  FiniteGroup(std::vector<std::vector<int>> table, std::vector<std::string> labels = {});

  int order() const { return static_cast<int>(table_.size()); }
  int identity() const { return identity_; }
  int mul(int g, int h) const { return table_[g][h]; }
  int inv(int g) const { return inverse_[g]; }
  int power(int g, long long e) const;
  int element_order(int g) const;
  const std::vector<std::vector<int>>& table() const { return table_; }
  const std::vector<int>& inverses() const { return inverse_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(int g) const;
  // Index of the element with this label, or -1.
  int find(const std::string& label) const;
  bool is_abelian() const;
  // Smallest-index element generating the whole group, or -1 when not cyclic.
  int cyclic_generator() const;
  // Classes ordered by smallest member, identity class first; members ascending.
  std::vector<std::vector<int>> conjugacy_classes() const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  std::vector<std::string> labels_;
  int identity_ = 0;
};

struct Subgroup {
  FiniteGroup parent;
  std::vector<int> members;  // ascending parent indices

  bool contains(int g) const;
  int size() const { return static_cast<int>(members.size()); }
  bool is_normal() const;
  // The subgroup as a group in its own right; element i is parent element members[i].
  FiniteGroup as_group() const;
  int local_index(int parent_element) const;
};

FiniteGroup make_cyclic_group(int n);
// Elements in the order e, eta, eta^2, tau, eta tau, eta^2 tau, where eta = (1 2 3), tau = (1 2)
// act on points and products compose right to left.
FiniteGroup make_symmetric_group_3();
// Point permutation (0-based images of 0,1,2) for each element of make_symmetric_group_3().
std::vector<std::vector<int>> symmetric_group_3_points();
// Element (a, b) has index a * |H| + b.
FiniteGroup make_direct_product(const FiniteGroup& g, const FiniteGroup& h);

Subgroup subgroup_closure(const FiniteGroup& g, const std::vector<int>& gens);
Subgroup trivial_subgroup(const FiniteGroup& g);
Subgroup whole_group(const FiniteGroup& g);
// Smallest element of each right coset H*g, identity first, the rest ascending.
std::vector<int> right_coset_reps(const Subgroup& h);

}  // namespace crossprod
