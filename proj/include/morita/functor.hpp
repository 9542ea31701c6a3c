#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <vector>

#include "morita/groupoid.hpp"

namespace morita {

/// A groupoid homomorphism (functor) given by where it sends objects and
/// arrows. Source and target groupoids are supplied by the caller.
struct GroupoidMorphism {
  std::vector<int> object_map;
  std::vector<int> arrow_map;

  friend auto operator<=>(const GroupoidMorphism&, const GroupoidMorphism&) = default;
};

GroupoidMorphism identity_morphism(const FiniteGroupoid& g);
/// phi after psi.
GroupoidMorphism compose(const GroupoidMorphism& phi, const GroupoidMorphism& psi);
/// Inverse of a bijective morphism.
GroupoidMorphism invert(const GroupoidMorphism& phi);

/// Checks that phi preserves source, target, units and composition.
bool is_functor(const FiniteGroupoid& from, const FiniteGroupoid& to, const GroupoidMorphism& phi);
/// Fully faithful and essentially surjective.
bool is_equivalence(const FiniteGroupoid& from, const FiniteGroupoid& to, const GroupoidMorphism& phi);

enum class FunctorKind { any, equivalence, isomorphism };

/// Exhaustive enumeration of functors from -> to of the requested kind.
/// Objects are branched first, then the smallest unassigned arrow; every
/// assignment is closed under composition and inversion before branching
/// again, so only a generating set is ever guessed. Visiting order is
/// deterministic. `visit` returns false to stop the search.
void for_each_functor(const FiniteGroupoid& from, const FiniteGroupoid& to, FunctorKind kind,
                      const std::function<bool(const GroupoidMorphism&)>& visit);

std::vector<GroupoidMorphism> all_functors(const FiniteGroupoid& from, const FiniteGroupoid& to,
                                           FunctorKind kind);

/// First isomorphism g1 -> g2 in search order, or nullopt. When g1 == g2 the
/// identity is returned.
std::optional<GroupoidMorphism> groupoid_isomorphic(const FiniteGroupoid& g1, const FiniteGroupoid& g2);

}  // namespace morita
