#pragma once

#include <string>
#include <vector>

#include "morita/finite_group.hpp"
#include "morita/groupoid.hpp"

namespace morita {

/// Objects "1".."n", one arrow "(x,y)" from y to x per ordered pair, so that
/// (x,y)(y,z) = (x,z).
FiniteGroupoid pair_groupoid(int n);

/// The group as a groupoid over the single object `object`; arrow ids are the
/// element labels.
FiniteGroupoid group_groupoid(const FiniteGroup& group, const std::string& object = "pt");

/// Action groupoid of a left action. `act[g][x]` is the index of g.x in
/// `points`. Arrows "(g,x)" go from x to g.x. Throws Error(invalid_action)
/// when the table is not a group action.
FiniteGroupoid action_groupoid(const FiniteGroup& group, const std::vector<std::string>& points,
                               const std::vector<std::vector<int>>& act);

/// A right principal G-bundle E -> B over finite sets.
struct PrincipalBundleData {
  std::vector<std::string> total;
  std::vector<std::string> base;
  std::vector<int> projection;        // total -> base
  FiniteGroup group = groups::trivial();
  std::vector<std::vector<int>> act;  // act[e][g] = e.g (right action)
};

/// Empty when the data is a principal bundle; otherwise one message per
/// failed condition (surjectivity, action axioms, fibre preservation,
/// freeness, fibrewise transitivity).
std::vector<std::string> principal_bundle_defects(const PrincipalBundleData& data);

/// Gauge groupoid (E x E)/G over B. The class of (x,y) is named "[x,y]" after
/// its lexicographically smallest member, goes from p(y) to p(x), and
/// [x1,y1][x2,y2] = [x1, y2 g] where x2 g = y1. Throws Error(not_principal).
FiniteGroupoid gauge_groupoid(const PrincipalBundleData& data);

/// Disjoint union; ids of the k-th part are prefixed with "k:".
FiniteGroupoid disjoint_union(const std::vector<FiniteGroupoid>& parts);

/// Bundle of groups: one object per group, no arrows between objects.
FiniteGroupoid bundle_of_groups(const std::vector<FiniteGroup>& fibres);

/// The bundle {1..n} x H -> {1..n} with H acting by right multiplication.
PrincipalBundleData trivial_bundle(const FiniteGroup& h, int n);

/// Transitive groupoid over n objects with isotropy H (gauge groupoid of
/// trivial_bundle(H, n)).
FiniteGroupoid transitive_groupoid(const FiniteGroup& h, int n);

/// The s-fibre E_x = s^{-1}(x) as a right principal bundle over the orbit of
/// x, with projection t and structure group the isotropy group at x acting
/// by composition.
PrincipalBundleData source_fibre_bundle(const FiniteGroupoid& g, int x);

/// Disjoint union of the gauge groupoids of source_fibre_bundle at the
/// smallest object of each orbit. Isomorphic to g for every valid g.
FiniteGroupoid orbitwise_gauge_model(const FiniteGroupoid& g);

}  // namespace morita
