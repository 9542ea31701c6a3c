#include <doctest.h>

#include <algorithm>
#include <set>

#include "corpus.hpp"
#include "morita/bibundle.hpp"
#include "morita/constructions.hpp"
#include "morita/error.hpp"
#include "morita/picard.hpp"
#include "oracles.hpp"

using namespace morita;

namespace {

FiniteGroupoid g_of(const FiniteGroup& g) { return group_groupoid(g); }

FiniteGroupoid orbit_swap() {
  return disjoint_union({g_of(groups::cyclic(2)), transitive_groupoid(groups::cyclic(2), 2)});
}

}  // namespace

TEST_CASE("Pic of cyclic groups counted from raw actions") {
  for (int n = 2; n <= 5; ++n) {
    CAPTURE(n);
    const auto pic = picard_group(g_of(groups::cyclic(n)), PicardMethod::enumerate);
    CHECK(pic.group.order() == oracle::cyclic_self_bibundle_classes(n));
  }
}

TEST_CASE("Pic of groups is their outer automorphism group") {
  for (const auto& g : {groups::cyclic(4), groups::cyclic(5), groups::cyclic(6), groups::symmetric(3),
                        groups::klein_four(), groups::dihedral(4), groups::quaternion()}) {
    const auto expected = oracle::outer_automorphism_group(g);
    const auto pic = picard_group(g_of(g), PicardMethod::enumerate);
    CHECK(pic.source == PicardSource::enumeration);
    CHECK(oracle::groups_isomorphic(pic.group, expected));
    const auto formula = picard_group(g_of(g), PicardMethod::formula);
    CHECK(formula.source == PicardSource::transitive_formula);
    CHECK(oracle::groups_isomorphic(formula.group, expected));
  }
}

TEST_CASE("named Picard groups") {
  CHECK(oracle::groups_isomorphic(picard_group(g_of(groups::cyclic(4))).group, groups::cyclic(2)));
  CHECK(picard_group(g_of(groups::symmetric(3))).group.order() == 1);
  CHECK(oracle::groups_isomorphic(picard_group(g_of(groups::klein_four())).group, groups::symmetric(3)));
  for (int n = 1; n <= 4; ++n) CHECK(picard_group(pair_groupoid(n)).group.order() == 1);
  CHECK(oracle::groups_isomorphic(picard_group(transitive_groupoid(groups::cyclic(3), 2)).group, groups::cyclic(2)));
}

TEST_CASE("Picard class counts agree with an independent count") {
  for (const auto& g : {pair_groupoid(2), pair_groupoid(3), transitive_groupoid(groups::cyclic(2), 2),
                        transitive_groupoid(groups::cyclic(3), 2), bundle_of_groups({groups::cyclic(2), groups::cyclic(2)}),
                        bundle_of_groups({groups::cyclic(2), groups::cyclic(3)}), orbit_swap(),
                        g_of(groups::klein_four())}) {
    CHECK(picard_group(g, PicardMethod::enumerate).group.order() == oracle::picard_class_count(g));
  }
}

TEST_CASE("representatives and class lookup") {
  const auto g = g_of(groups::klein_four());
  const auto pic = picard_group(g);
  REQUIRE(pic.representatives.size() == 6);
  CHECK(oracle::bibundles_isomorphic(pic.representatives[0], identity_bibundle(g)));
  CHECK(pic.class_of(identity_bibundle(g)) == 0);
  for (int i = 0; i < 6; ++i) {
    const auto& s = pic.representatives[static_cast<std::size_t>(i)];
    CHECK(principality(s).biprincipal());
    CHECK(pic.class_of(s) == i);
    for (int k = 0; k < 6; ++k)
      CHECK(pic.class_of(tensor(s, pic.representatives[static_cast<std::size_t>(k)])) == pic.group.multiply(i, k));
    for (int k = 0; k < i; ++k)
      CHECK_FALSE(oracle::bibundles_isomorphic_by_propagation(s, pic.representatives[static_cast<std::size_t>(k)]));
  }
  CHECK(pic.class_of(identity_bibundle(g_of(groups::cyclic(4)))) == -1);
}

TEST_CASE("automorphisms and inner automorphisms") {
  for (const auto& g : {g_of(groups::symmetric(3)), g_of(groups::quaternion()), pair_groupoid(3),
                        transitive_groupoid(groups::cyclic(2), 2), orbit_swap()}) {
    int isos = 0;
    for (const auto& phi : oracle::functors(g, g)) isos += oracle::is_equivalence(g, g, phi) && oracle::is_isomorphism(g, g, phi);
    const auto aut = automorphisms(g);
    CHECK(static_cast<int>(aut.maps.size()) == isos);
    CHECK(aut.maps[0] == identity_morphism(g));

    std::set<GroupoidMorphism> inner;
    for (const auto& b : oracle::bisections(g)) inner.insert(inner_automorphism(g, Bisection{b}));
    const auto in = inaut(g);
    CHECK(static_cast<int>(in.elements.size()) == static_cast<int>(inner.size()));
    for (int e : in.elements) CHECK(inner.count(aut.maps[static_cast<std::size_t>(e)]) == 1);
  }
  CHECK(inaut(g_of(groups::symmetric(3))).elements.size() == 6);
  CHECK(inaut(g_of(groups::cyclic(4))).elements.size() == 1);
  CHECK(inaut(g_of(groups::dihedral(4))).elements.size() == 4);
}

TEST_CASE("bisections and the kernel of N -> Phi_N") {
  for (const auto& [name, g] : corpus::exact_sequence_corpus()) {
    if (g.arrow_count() > 32) continue;
    CAPTURE(name);
    const auto brute = oracle::bisections(g);
    const auto lib = bisections(g);
    REQUIRE(lib.size() == brute.size());
    for (std::size_t i = 0; i < lib.size(); ++i) CHECK(lib[i].arrow_at_source == brute[i]);
    CHECK(std::find(lib.begin(), lib.end(), unit_bisection(g)) != lib.end());

    std::vector<Bisection> kernel;
    for (const auto& b : brute)
      if (inner_automorphism(g, Bisection{b}) == identity_morphism(g)) kernel.push_back(Bisection{b});
    CHECK(ciso_bisections(g) == kernel);
  }
}

TEST_CASE("bisection products") {
  const auto g = transitive_groupoid(groups::cyclic(3), 2);
  const auto bs = bisections(g);
  CHECK(bs.size() == 18);
  for (const auto& n : bs) {
    CHECK(multiply(g, n, inverse(g, n)) == unit_bisection(g));
    for (const auto& m : bs)
      CHECK(inner_automorphism(g, multiply(g, n, m)) == compose(inner_automorphism(g, n), inner_automorphism(g, m)));
  }
}

TEST_CASE("an orbit swap has no section and a nontrivial centre map") {
  const auto g = orbit_swap();
  const auto pic = picard_group(g);
  REQUIRE(pic.group.order() == 2);
  CHECK(static_picard(pic) == std::vector<int>{0});
  CHECK(center_map(pic.representatives[0]) == std::vector<int>{0, 1});
  CHECK(center_map(pic.representatives[1]) == std::vector<int>{1, 0});
  CHECK(lemma_section_check(pic.representatives[0]).has_value());
  CHECK_FALSE(lemma_section_check(pic.representatives[1]).has_value());
  CHECK_THROWS_AS(picard_group(g, PicardMethod::formula), Error);
  try {
    picard_group(g, PicardMethod::formula);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::formula_inapplicable);
  }
  CHECK_FALSE(pic.formula_agrees.has_value());
}

TEST_CASE("the section lemma recovers an automorphism") {
  for (const auto& g : {g_of(groups::klein_four()), transitive_groupoid(groups::cyclic(3), 2),
                        bundle_of_groups({groups::cyclic(2), groups::cyclic(2)})}) {
    const auto pic = picard_group(g);
    for (const auto& s : pic.representatives) {
      const auto r = lemma_section_check(s);
      REQUIRE(r.has_value());
      for (int x = 0; x < g.object_count(); ++x) CHECK(s.j2(r->section[static_cast<std::size_t>(x)]) == x);
      CHECK(oracle::bibundles_isomorphic_by_propagation(from_homomorphism(g, g, r->automorphism), s));
      CHECK(j_homomorphism(g, pic, r->automorphism) == pic.class_of(s));
    }
  }
}

TEST_CASE("bundles of groups use the outer automorphisms of the whole bundle") {
  const auto twice = bundle_of_groups({groups::symmetric(3), groups::symmetric(3)});
  const auto formula = picard_group(twice, PicardMethod::formula);
  CHECK(formula.source == PicardSource::bundle_of_groups_formula);
  const auto pic = picard_group(twice);
  CHECK(pic.group.order() == oracle::picard_class_count(twice));
  CHECK(oracle::groups_isomorphic(pic.group, formula.group));
  CHECK(pic.formula_agrees == std::optional<bool>(true));
  CHECK(static_picard(pic).size() == 1);
}

TEST_CASE("exact sequences hold on the corpus") {
  const auto c = corpus::exact_sequence_corpus();
  CHECK(c.size() >= 20);
  for (const auto& [name, g] : c) {
    CAPTURE(name);
    const auto r = verify_exact_sequences(g);
    for (const auto& f : r.failures) MESSAGE(f);
    CHECK(r.ok());
    CHECK(r.ker_j_equals_inaut);
    CHECK(r.ciso_is_kernel);
    CHECK(r.static_is_kernel);
    CHECK(r.aut_order % r.inaut_order == 0);
    CHECK(r.bisection_count == r.ciso_count * r.inaut_order);
    const auto pic = picard_group(g);
    if (pic.formula_agrees) CHECK(*pic.formula_agrees);
  }
}
