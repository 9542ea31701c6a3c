#include <doctest.h>

#include <algorithm>

#include "corpus.hpp"
#include "morita/constructions.hpp"
#include "morita/error.hpp"
#include "morita/functor.hpp"
#include "morita/groupoid.hpp"
#include "oracles.hpp"

using namespace morita;

namespace {

std::vector<FiniteGroup> small_groups() {
  return {groups::trivial(),        groups::cyclic(2),  groups::cyclic(3),   groups::cyclic(4),
          groups::klein_four(),     groups::cyclic(6),  groups::symmetric(3), groups::cyclic(8),
          groups::dihedral(4),      groups::quaternion(),
          groups::direct_product(groups::cyclic(2), groups::cyclic(4))};
}

FiniteGroupoid edited(const FiniteGroupoid& g, const std::function<void(GroupoidTables&)>& edit) {
  auto t = g.to_tables();
  edit(t);
  return FiniteGroupoid::from_tables(t);
}

std::vector<GroupoidMorphism> sorted(std::vector<GroupoidMorphism> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("group tables are checked") {
  CHECK_THROWS_AS(FiniteGroup({"a", "b"}, {{0, 0}, {0, 0}}), Error);
  CHECK_THROWS_AS(FiniteGroup({"a", "b"}, {{0, 1}}), Error);
  CHECK_THROWS_AS(FiniteGroup({"a", "a"}, {{0, 1}, {1, 0}}), Error);
  // Latin square with identity that is not associative.
  CHECK_THROWS_AS(FiniteGroup({"e", "a", "b", "c", "d"},
                              {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}}),
                  Error);
  try {
    FiniteGroup({"a", "b"}, {{0, 0}, {0, 0}});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_group);
  }
}

TEST_CASE("named groups") {
  CHECK(groups::cyclic(5).order() == 5);
  CHECK(groups::dihedral(4).order() == 8);
  CHECK(groups::symmetric(4).order() == 24);
  CHECK(groups::quaternion().center().size() == 2);
  CHECK(groups::dihedral(4).center().size() == 2);
  CHECK(groups::symmetric(3).center().size() == 1);
  CHECK(groups::klein_four().is_abelian());
  CHECK_FALSE(groups::quaternion().is_abelian());
}

TEST_CASE("group isomorphism agrees with trying every bijection") {
  const auto gs = small_groups();
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = 0; j < gs.size(); ++j) {
      if (gs[i].order() != gs[j].order()) continue;
      CAPTURE(i);
      CAPTURE(j);
      const auto phi = find_group_isomorphism(gs[i], gs[j]);
      CHECK(phi.has_value() == oracle::groups_isomorphic(gs[i], gs[j]));
      if (!phi) continue;
      for (int a = 0; a < gs[i].order(); ++a)
        for (int b = 0; b < gs[i].order(); ++b)
          CHECK((*phi)[static_cast<std::size_t>(gs[i].multiply(a, b))] ==
                gs[j].multiply((*phi)[static_cast<std::size_t>(a)], (*phi)[static_cast<std::size_t>(b)]));
    }
}

TEST_CASE("quotients") {
  const auto d4 = groups::dihedral(4);
  const auto q = quotient_group(d4, d4.center());
  CHECK(oracle::groups_isomorphic(q.group, groups::klein_four()));
  const auto s3 = groups::symmetric(3);
  std::vector<int> rotations;
  for (int a = 0; a < s3.order(); ++a)
    if (s3.element_order(a) != 2) rotations.push_back(a);
  REQUIRE(is_normal_subgroup(s3, rotations));
  CHECK(oracle::groups_isomorphic(quotient_group(s3, rotations).group, groups::cyclic(2)));
  // A reflection generates a subgroup that is not normal.
  int reflection = 0;
  while (s3.element_order(reflection) != 2) ++reflection;
  const auto sub = s3.generated_subgroup({reflection});
  CHECK(is_subgroup(s3, sub));
  CHECK_FALSE(is_normal_subgroup(s3, sub));
}

TEST_CASE("malformed tables are reported by kind") {
  const auto p = pair_groupoid(2);
  CHECK(validate(p).ok());

  const auto wrong_target = edited(p, [](GroupoidTables& t) {
    for (auto& c : t.comp)
      if (c[0] == "(1,2)" && c[1] == "(2,1)") c[2] = "(2,2)";
  });
  CHECK(validate(wrong_target).has("composite-endpoints"));

  const auto missing = edited(p, [](GroupoidTables& t) {
    std::erase_if(t.comp, [](const auto& c) { return c[0] == "(1,2)" && c[1] == "(2,2)"; });
  });
  CHECK(validate(missing).has("totality"));

  const auto bad_inverse = edited(p, [](GroupoidTables& t) { t.inv["(1,2)"] = "(1,2)"; });
  CHECK(validate(bad_inverse).has("inverse"));

  const auto bad_unit = edited(p, [](GroupoidTables& t) { t.units["1"] = "(1,2)"; });
  CHECK_FALSE(validate(bad_unit).ok());

  GroupoidTables dup = p.to_tables();
  dup.objects.push_back("1");
  CHECK_THROWS_AS(FiniteGroupoid::from_tables(dup), Error);
  GroupoidTables unknown = p.to_tables();
  unknown.comp.push_back({"(1,2)", "nope", "(1,2)"});
  CHECK_THROWS_AS(FiniteGroupoid::from_tables(unknown), Error);
}

TEST_CASE("every corpus groupoid validates and matches its orbitwise gauge model") {
  for (const auto& [name, g] : corpus::exact_sequence_corpus()) {
    CAPTURE(name);
    CHECK(validate(g).ok());
    CHECK(groupoid_isomorphic(g, orbitwise_gauge_model(g)).has_value());
  }
}

TEST_CASE("orbits and isotropy") {
  const auto z2 = groups::cyclic(2);
  const auto g = action_groupoid(z2, {"a", "b", "c"}, {{0, 1, 2}, {1, 0, 2}});
  CHECK(validate(g).ok());
  const auto o = orbits(g);
  REQUIRE(o.count() == 2);
  CHECK(o.blocks[0] == std::vector<int>{0, 1});
  CHECK(o.blocks[1] == std::vector<int>{2});
  CHECK(isotropy(g, 0).order() == 1);
  CHECK(isotropy(g, 2).order() == 2);
  CHECK_FALSE(is_transitive(g));
  CHECK_FALSE(is_group_bundle(g));

  const auto t = transitive_groupoid(groups::symmetric(3), 3);
  CHECK(t.arrow_count() == 54);
  CHECK(is_transitive(t));
  for (int x = 0; x < 3; ++x) CHECK(oracle::groups_isomorphic(isotropy(t, x), groups::symmetric(3)));

  const auto p = pair_groupoid(4);
  CHECK(p.arrow_count() == 16);
  CHECK(is_transitive(p));
  CHECK(isotropy(p, 1).order() == 1);
  CHECK(is_group_bundle(bundle_of_groups({z2, groups::cyclic(3)})));
}

TEST_CASE("bad constructions") {
  const auto z2 = groups::cyclic(2);
  try {
    action_groupoid(z2, {"a", "b"}, {{1, 0}, {0, 1}});
    FAIL("expected invalid_action");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_action);
  }
  PrincipalBundleData d = corpus::z4_over_z2();
  d.act = {{0, 0}, {1, 1}, {2, 2}, {3, 3}};  // trivial action is not free
  CHECK_FALSE(principal_bundle_defects(d).empty());
  try {
    gauge_groupoid(d);
    FAIL("expected not_principal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_principal);
  }
  CHECK(principal_bundle_defects(corpus::q8_over_centre()).empty());
}

TEST_CASE("functor enumeration agrees with brute force") {
  const auto z2 = group_groupoid(groups::cyclic(2));
  const auto z3 = group_groupoid(groups::cyclic(3));
  const auto z4 = group_groupoid(groups::cyclic(4));
  const auto v4 = group_groupoid(groups::klein_four());
  const auto s3 = group_groupoid(groups::symmetric(3));
  const auto p2 = pair_groupoid(2);
  const auto t2 = transitive_groupoid(groups::cyclic(2), 2);
  const auto b22 = bundle_of_groups({groups::cyclic(2), groups::cyclic(2)});
  const auto u = disjoint_union({z2, p2});
  const std::vector<std::pair<FiniteGroupoid, FiniteGroupoid>> pairs{
      {z2, z4}, {z4, z2}, {v4, s3}, {z3, s3}, {s3, z2}, {p2, z2}, {z2, p2}, {t2, z2}, {z2, t2},
      {t2, t2}, {b22, t2}, {t2, b22}, {u, u}, {p2, b22}, {v4, v4}, {z4, v4}};
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    CAPTURE(i);
    const auto& [a, b] = pairs[i];
    const auto brute = oracle::functors(a, b);
    CHECK(sorted(all_functors(a, b, FunctorKind::any)) == brute);
    for (const auto& phi : brute) CHECK(is_functor(a, b, phi));

    std::vector<GroupoidMorphism> equivalences, isomorphisms;
    for (const auto& phi : brute) {
      if (oracle::is_equivalence(a, b, phi)) equivalences.push_back(phi);
      if (oracle::is_equivalence(a, b, phi) && oracle::is_isomorphism(a, b, phi)) isomorphisms.push_back(phi);
      CHECK(is_equivalence(a, b, phi) == oracle::is_equivalence(a, b, phi));
    }
    CHECK(sorted(all_functors(a, b, FunctorKind::equivalence)) == equivalences);
    CHECK(sorted(all_functors(a, b, FunctorKind::isomorphism)) == isomorphisms);
  }
}

TEST_CASE("morphism composition and inversion") {
  const auto t = transitive_groupoid(groups::cyclic(3), 2);
  const auto isos = all_functors(t, t, FunctorKind::isomorphism);
  REQUIRE(isos.size() > 1);
  for (const auto& phi : isos) {
    CHECK(compose(phi, invert(phi)) == identity_morphism(t));
    for (const auto& psi : isos) CHECK(is_functor(t, t, compose(phi, psi)));
  }
  CHECK(groupoid_isomorphic(t, t) == identity_morphism(t));
  CHECK_FALSE(groupoid_isomorphic(group_groupoid(groups::cyclic(4)), group_groupoid(groups::klein_four())));
}
