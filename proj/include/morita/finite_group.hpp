#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace morita {

/// A finite group given by its full multiplication table. Elements are the
/// indices 0..order()-1; labels are kept for reporting and file round trips.
/// The constructor checks the group axioms exactly and throws
/// Error(invalid_group) on the first violation.
class FiniteGroup {
 public:
  FiniteGroup(std::vector<std::string> labels, std::vector<std::vector<int>> table);

  int order() const { return static_cast<int>(labels_.size()); }
  int identity() const { return identity_; }
  int multiply(int a, int b) const { return table_[static_cast<std::size_t>(a * order() + b)]; }
  int inverse(int a) const { return inverse_[static_cast<std::size_t>(a)]; }

  const std::string& label(int a) const { return labels_[static_cast<std::size_t>(a)]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<int> find(std::string_view label) const;

  int element_order(int a) const;
  bool is_abelian() const;
  std::vector<int> center() const;
  /// Greedy generating set: repeatedly adds the smallest element outside the
  /// subgroup generated so far.
  std::vector<int> generators() const;
  /// Closure of `gens` under multiplication, sorted.
  std::vector<int> generated_subgroup(const std::vector<int>& gens) const;

  std::vector<std::vector<int>> table() const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.labels_ == b.labels_ && a.table_ == b.table_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<int> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
};

/// Returns a bijection phi (phi[a] = image of a) with phi(ab) = phi(a)phi(b),
/// or nullopt. Brute force over images of a generating set, pruned by
/// element orders.
std::optional<std::vector<int>> find_group_isomorphism(const FiniteGroup& g, const FiniteGroup& h);

inline bool groups_isomorphic(const FiniteGroup& g, const FiniteGroup& h) {
  return find_group_isomorphism(g, h).has_value();
}

/// True when `subset` (sorted or not) is a subgroup of g.
bool is_subgroup(const FiniteGroup& g, const std::vector<int>& subset);
bool is_normal_subgroup(const FiniteGroup& g, const std::vector<int>& subset);

/// Quotient of g by a normal subgroup. Cosets are represented by their
/// smallest element, listed in increasing order.
struct Quotient {
  FiniteGroup group;
  std::vector<int> representatives;  // coset index -> representative in g
  std::vector<int> coset_of;         // element of g -> coset index
};

Quotient quotient_group(const FiniteGroup& g, const std::vector<int>& normal_subgroup);

/// Restriction of g to one of its subgroups; labels are carried over.
FiniteGroup subgroup(const FiniteGroup& g, const std::vector<int>& elements);

namespace groups {

FiniteGroup trivial();
FiniteGroup cyclic(int n);
/// Symmetry group of the regular n-gon, order 2n.
FiniteGroup dihedral(int n);
FiniteGroup symmetric(int n);
FiniteGroup quaternion();
FiniteGroup klein_four();
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

}  // namespace groups

}  // namespace morita
