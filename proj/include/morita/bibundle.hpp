#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "morita/functor.hpp"
#include "morita/groupoid.hpp"
#include "morita/validation.hpp"

namespace morita {

/// Id-keyed bibundle tables as they appear in files.
struct BibundleTables {
  FiniteGroupoid left;
  FiniteGroupoid right;
  std::vector<std::string> carrier;
  std::map<std::string, std::string> j1;  // carrier -> left object
  std::map<std::string, std::string> j2;  // carrier -> right object
  std::vector<std::array<std::string, 3>> left_act;   // (g, x, g.x)
  std::vector<std::array<std::string, 3>> right_act;  // (x, g, x.g)
};

/// A (left, right)-bibundle: a finite carrier with a left action of `left`
/// along J1 and a right action of `right` along J2. The left action g.x is
/// meant to be defined iff src(g) = J1(x); the right action x.g iff
/// J2(x) = tgt(g). Carrier points are stored in lexicographic id order.
class Bibundle {
 public:
  Bibundle() = default;

  /// Throws Error(parse) on unknown or duplicate ids.
  static Bibundle from_tables(const BibundleTables& tables);

  /// Index-based construction; `left_act` is arrows(left) x carrier and
  /// `right_act` is carrier x arrows(right), row-major, -1 where undefined.
  /// Carrier points are re-sorted by id.
  static Bibundle from_indexed(FiniteGroupoid left, FiniteGroupoid right, std::vector<std::string> carrier,
                               const std::vector<int>& j1, const std::vector<int>& j2,
                               const std::vector<int>& left_act, const std::vector<int>& right_act);

  BibundleTables to_tables() const;

  const FiniteGroupoid& left() const { return left_; }
  const FiniteGroupoid& right() const { return right_; }
  int size() const { return static_cast<int>(carrier_.size()); }
  const std::string& point_id(int x) const { return carrier_[static_cast<std::size_t>(x)]; }
  const std::vector<std::string>& carrier() const { return carrier_; }
  int j1(int x) const { return j1_[static_cast<std::size_t>(x)]; }
  int j2(int x) const { return j2_[static_cast<std::size_t>(x)]; }
  /// g.x, or -1 when undefined.
  int act_left(int g, int x) const {
    return left_act_[static_cast<std::size_t>(g) * carrier_.size() + static_cast<std::size_t>(x)];
  }
  /// x.g, or -1 when undefined.
  int act_right(int x, int g) const {
    return right_act_[static_cast<std::size_t>(x) * static_cast<std::size_t>(right_.arrow_count()) +
                      static_cast<std::size_t>(g)];
  }

 private:
  FiniteGroupoid left_, right_;
  std::vector<std::string> carrier_;
  std::vector<int> j1_, j2_;
  std::vector<int> left_act_, right_act_;
};

/// Violation kinds: "moment-range", "action-domain", "moment-equivariance",
/// "unit-action", "action-associativity", "commutation".
ValidationReport validate_bibundle(const Bibundle& s);

struct PrincipalityReport {
  bool left_principal = false;
  bool right_principal = false;
  std::vector<Violation> witnesses;

  bool biprincipal() const { return left_principal && right_principal; }
};

/// Left principal: J2 surjective, left action free and transitive on each
/// J2-fibre. Right principal mirrors this with J1 and the right action.
/// Witness kinds are prefixed "left-" or "right-" and end in
/// "surjectivity", "freeness" or "transitivity".
PrincipalityReport principality(const Bibundle& s);
bool is_left_principal(const Bibundle& s);

/// Carrier = arrows of g, J1 = t, J2 = s, both actions by composition.
Bibundle identity_bibundle(const FiniteGroupoid& g);

/// The same carrier with the sides swapped: g.x = x g^-1 and x.h = h^-1 x.
/// For biprincipal s, s * opposite(s) is isomorphic to the identity.
Bibundle opposite(const Bibundle& s);

/// (Gamma1)_Phi for a functor phi: gamma2 -> gamma1. Points are pairs (g,y)
/// with s(g) = phi(y), named "(g,y)"; h.(g,y) = (hg,y) and
/// (g,y).k = (g phi(k), s(k)). Throws Error(not_functor).
Bibundle from_homomorphism(const FiniteGroupoid& gamma1, const FiniteGroupoid& gamma2,
                           const GroupoidMorphism& phi);

/// S * S' = (S x_{P2} S') / Gamma2 with (x.g, y) ~ (x, g.y). Each class is
/// named "(x,y)" after its lexicographically smallest member. Throws
/// Error(middle_mismatch) when S.right() != S'.left() and
/// Error(not_left_principal) when either factor is not left principal.
Bibundle tensor(const Bibundle& s, const Bibundle& t);

/// Equivariant bijection s1 -> s2 (point map) commuting with both moments and
/// both actions, or nullopt. Bibundles over different groupoids are never
/// isomorphic.
std::optional<std::vector<int>> bibundle_isomorphic(const Bibundle& s1, const Bibundle& s2);

/// For left principal s: orbit index of right() -> orbit index of left().
/// Throws Error(not_left_principal).
std::vector<int> induced_orbit_map(const Bibundle& s);

/// Biprincipal (g1, g2)-bibundle, or nullopt when the groupoids are not
/// Morita equivalent. Orbits are matched so that isotropy groups are
/// isomorphic; the witness is (g1)_Phi for the equivalence Phi: g2 -> g1
/// collapsing each orbit of g2 onto the base object of its partner orbit.
std::optional<Bibundle> morita_equivalent(const FiniteGroupoid& g1, const FiniteGroupoid& g2);

/// Sufficient-and-necessary invariant: orbit counts equal and isotropy
/// isomorphism classes matched with multiplicity.
std::optional<std::vector<int>> match_orbits(const FiniteGroupoid& g1, const FiniteGroupoid& g2);

}  // namespace morita
