#pragma once

#include <optional>
#include <string>
#include <vector>

#include "morita/bibundle.hpp"
#include "morita/finite_group.hpp"
#include "morita/functor.hpp"
#include "morita/groupoid.hpp"

namespace morita {

/// Automorphisms of a groupoid together with their multiplication table.
/// maps[i] is element i of `group`; composition is phi * psi = phi after psi.
/// Element 0 is the identity.
struct AutomorphismGroup {
  FiniteGroup group = groups::trivial();
  std::vector<GroupoidMorphism> maps;

  /// Index of phi in `maps`, or -1.
  int index_of(const GroupoidMorphism& phi) const;
};

AutomorphismGroup automorphisms(const FiniteGroupoid& g);

/// A bisection, stored as the arrow it picks out of each s-fibre:
/// arrow_at_source[x] has source x, and x -> t(arrow_at_source[x]) is a
/// bijection of objects.
struct Bisection {
  std::vector<int> arrow_at_source;

  friend auto operator<=>(const Bisection&, const Bisection&) = default;
};

/// All bisections, ordered lexicographically by arrow index.
std::vector<Bisection> bisections(const FiniteGroupoid& g);
Bisection multiply(const FiniteGroupoid& g, const Bisection& n, const Bisection& m);
Bisection inverse(const FiniteGroupoid& g, const Bisection& n);
Bisection unit_bisection(const FiniteGroupoid& g);

/// Phi_N = l_N after r_{N^-1}: g -> N(t g) g N(s g)^-1 on arrows and
/// x -> t(N(x)) on objects.
GroupoidMorphism inner_automorphism(const FiniteGroupoid& g, const Bisection& n);

struct InnerAutomorphisms {
  AutomorphismGroup aut;
  std::vector<int> elements;  // indices into aut.maps, sorted
  FiniteGroup group = groups::trivial();
};

/// Throws std::logic_error if the inner automorphisms fail to form a normal
/// subgroup.
InnerAutomorphisms inaut(const FiniteGroupoid& g);

struct OuterAutomorphisms {
  AutomorphismGroup aut;
  std::vector<int> inner;
  Quotient quotient;  // Aut / Inaut, cosets represented by their smallest index
};

OuterAutomorphisms outaut(const FiniteGroupoid& g);

/// Bisections with values in the centres of the isotropy groups that are
/// invariant under conjugation: N(t g) = g N(s g) g^-1.
std::vector<Bisection> ciso_bisections(const FiniteGroupoid& g);

enum class PicardMethod { automatic, enumerate, formula };
enum class PicardSource { enumeration, transitive_formula, bundle_of_groups_formula };

std::string to_string(PicardSource source);

/// Isomorphism classes of biprincipal self-bibundles under tensor product.
/// For the enumeration source, representatives[i] is a bibundle in class i
/// and class 0 is the class of the identity bibundle. Formula results carry
/// no representatives.
struct PicardGroup {
  FiniteGroup group = groups::trivial();
  PicardSource source = PicardSource::enumeration;
  std::vector<Bibundle> representatives;
  /// Set by the automatic method when both routes ran.
  std::optional<bool> formula_agrees;

  /// Class index of a biprincipal self-bibundle, or -1 if none matches.
  int class_of(const Bibundle& s) const;
};

/// enumerate: one bibundle (Gamma)_Phi per self-equivalence Phi, deduplicated
/// by bibundle isomorphism, table by tensor product.
/// formula: Out(Gamma_x) for transitive Gamma, Out(Gamma) for bundles of
/// groups; throws Error(formula_inapplicable) otherwise.
/// automatic: enumeration, cross-checked against the formula when it applies.
PicardGroup picard_group(const FiniteGroupoid& g, PicardMethod method = PicardMethod::automatic);

/// Class of (Gamma)_Phi in an enumerated Picard group.
int j_homomorphism(const FiniteGroupoid& g, const PicardGroup& pic, const GroupoidMorphism& phi);

/// Permutation of the orbits of s.left() induced by a biprincipal
/// self-bibundle.
std::vector<int> center_map(const Bibundle& s);

/// Classes in the kernel of center_map, sorted.
std::vector<int> static_picard(const PicardGroup& pic);

struct SectionLemmaResult {
  std::vector<int> section;  // object -> carrier point with J2(section[x]) = x
  GroupoidMorphism automorphism;
};

/// Looks for sigma with J2 o sigma = id and J1 o sigma bijective. When one
/// exists, returns it together with the automorphism Phi defined by
/// Phi(k) sigma(s k) = sigma(t k) k, for which s is isomorphic to
/// (Gamma)_Phi. Exhaustive.
std::optional<SectionLemmaResult> lemma_section_check(const Bibundle& s);

struct ExactnessReport {
  int aut_order = 0;
  int inaut_order = 0;
  int ker_j_order = 0;
  int bisection_count = 0;
  int ciso_count = 0;
  int picard_order = 0;
  int static_picard_order = 0;
  bool j_is_homomorphism = false;
  bool ker_j_equals_inaut = false;
  bool bisection_map_is_homomorphism = false;
  bool ciso_is_kernel = false;
  bool bisections_onto_inaut = false;
  bool center_map_is_homomorphism = false;
  bool static_is_kernel = false;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Checks 1 -> Inaut -> Aut -> Pic, 1 -> CIsoBis -> Bis -> Inaut -> 1 and
/// 1 -> PicZ -> Pic -> Aut(Z) with witnesses for every failure.
ExactnessReport verify_exact_sequences(const FiniteGroupoid& g);

}  // namespace morita
