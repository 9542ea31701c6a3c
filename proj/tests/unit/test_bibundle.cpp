#include <doctest.h>

#include "corpus.hpp"
#include "morita/bibundle.hpp"
#include "morita/constructions.hpp"
#include "morita/error.hpp"
#include "morita/functor.hpp"
#include "oracles.hpp"

using namespace morita;

namespace {

bool isomorphic(const Bibundle& a, const Bibundle& b) { return bibundle_isomorphic(a, b).has_value(); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::parse;
}

std::vector<FiniteGroupoid> morita_zoo() {
  return {pair_groupoid(1),
          group_groupoid(groups::cyclic(2)),
          group_groupoid(groups::cyclic(3)),
          group_groupoid(groups::cyclic(4)),
          group_groupoid(groups::klein_four()),
          pair_groupoid(2),
          pair_groupoid(3),
          transitive_groupoid(groups::cyclic(2), 2),
          bundle_of_groups({groups::cyclic(2), groups::cyclic(2)}),
          disjoint_union({group_groupoid(groups::cyclic(2)), pair_groupoid(2)}),
          disjoint_union({pair_groupoid(2), group_groupoid(groups::cyclic(2))}),
          transitive_groupoid(groups::cyclic(3), 2),
          bundle_of_groups({groups::cyclic(2), groups::trivial()})};
}

}  // namespace

TEST_CASE("identity bibundles are biprincipal") {
  for (const auto& [name, g] : corpus::exact_sequence_corpus()) {
    CAPTURE(name);
    const auto id = identity_bibundle(g);
    CHECK(id.size() == g.arrow_count());
    CHECK(validate_bibundle(id).ok());
    CHECK(principality(id).biprincipal());
  }
}

TEST_CASE("bibundle isomorphism agrees with trying every bijection") {
  const auto z4 = group_groupoid(groups::cyclic(4));
  const auto t2 = transitive_groupoid(groups::cyclic(2), 2);
  for (const auto& g : {z4, t2}) {
    std::vector<Bibundle> bs;
    for (const auto& phi : oracle::functors(g, g)) {
      bs.push_back(from_homomorphism(g, g, phi));
      if (bs.size() == 6) break;
    }
    bs.push_back(identity_bibundle(g));
    for (std::size_t i = 0; i < bs.size(); ++i)
      for (std::size_t j = 0; j < bs.size(); ++j) {
        CAPTURE(i);
        CAPTURE(j);
        const auto iso = bibundle_isomorphic(bs[i], bs[j]);
        CHECK(iso.has_value() == oracle::bibundles_isomorphic(bs[i], bs[j]));
        if (!iso) continue;
        for (int x = 0; x < bs[i].size(); ++x) {
          const int fx = (*iso)[static_cast<std::size_t>(x)];
          CHECK(bs[i].j1(x) == bs[j].j1(fx));
          CHECK(bs[i].j2(x) == bs[j].j2(fx));
        }
      }
  }
}

TEST_CASE("from_homomorphism of a group homomorphism") {
  const auto z4 = group_groupoid(groups::cyclic(4));
  const auto z2 = group_groupoid(groups::cyclic(2));
  const auto homs = oracle::functors(z2, z4);
  REQUIRE(homs.size() == 2);
  for (const auto& phi : homs) {
    const auto s = from_homomorphism(z4, z2, phi);
    CHECK(s.size() == 4);
    CHECK(validate_bibundle(s).ok());
    CHECK(is_left_principal(s));
    // Neither homomorphism is an equivalence. The injective one acts freely
    // with two orbits; the trivial one does not act freely.
    const auto pr = principality(s);
    CHECK_FALSE(pr.right_principal);
    const bool injective = phi.arrow_map[1] != phi.arrow_map[0];
    bool free_failure = false, transitive_failure = false;
    for (const auto& w : pr.witnesses) {
      free_failure = free_failure || w.kind == "right-freeness";
      transitive_failure = transitive_failure || w.kind == "right-transitivity";
    }
    CHECK(free_failure == !injective);
    CHECK(transitive_failure);
  }
  GroupoidMorphism bogus{{0}, {1, 1}};
  CHECK(code_of([&] { from_homomorphism(z4, z2, bogus); }) == ErrorCode::not_functor);
}

TEST_CASE("tensor preconditions") {
  const auto z2 = group_groupoid(groups::cyclic(2));
  const auto z3 = group_groupoid(groups::cyclic(3));
  CHECK(code_of([&] { tensor(identity_bibundle(z2), identity_bibundle(z3)); }) == ErrorCode::middle_mismatch);

  const auto pt = pair_groupoid(1);
  const auto collapse = from_homomorphism(pt, z2, GroupoidMorphism{{0}, {0, 0}});
  CHECK(is_left_principal(collapse));
  const auto back = opposite(collapse);
  CHECK(validate_bibundle(back).ok());
  CHECK_FALSE(is_left_principal(back));
  const auto pr = principality(back);
  CHECK_FALSE(pr.witnesses.empty());
  CHECK(pr.witnesses.front().kind.rfind("left-", 0) == 0);
  CHECK(code_of([&] { tensor(back, identity_bibundle(pt)); }) == ErrorCode::not_left_principal);
  CHECK(code_of([&] { induced_orbit_map(back); }) == ErrorCode::not_left_principal);
}

TEST_CASE("broken actions are reported") {
  const auto z3 = group_groupoid(groups::cyclic(3));
  auto t = identity_bibundle(z3).to_tables();
  for (auto& a : t.right_act)
    if (a[0] == "1" && a[1] == "1") a[2] = "0";
  const auto broken = Bibundle::from_tables(t);
  const auto r = validate_bibundle(broken);
  CHECK_FALSE(r.ok());
  CHECK(r.has("action-associativity"));
}

TEST_CASE("Morita equivalence agrees with existence of an equivalence functor") {
  const auto zoo = morita_zoo();
  for (std::size_t i = 0; i < zoo.size(); ++i)
    for (std::size_t j = 0; j < zoo.size(); ++j) {
      CAPTURE(i);
      CAPTURE(j);
      bool expected = false;
      for (const auto& phi : oracle::functors(zoo[j], zoo[i]))
        if (oracle::is_equivalence(zoo[j], zoo[i], phi)) {
          expected = true;
          break;
        }
      const auto w = morita_equivalent(zoo[i], zoo[j]);
      REQUIRE(w.has_value() == expected);
      CHECK(match_orbits(zoo[i], zoo[j]).has_value() == expected);
      if (!w) continue;
      CHECK(w->left() == zoo[i]);
      CHECK(w->right() == zoo[j]);
      CHECK(validate_bibundle(*w).ok());
      CHECK(principality(*w).biprincipal());
    }
}

TEST_CASE("a witness composed with its opposite is the identity") {
  const auto zoo = morita_zoo();
  for (std::size_t i = 0; i < zoo.size(); ++i)
    for (std::size_t j = 0; j < zoo.size(); ++j) {
      const auto w = morita_equivalent(zoo[i], zoo[j]);
      if (!w) continue;
      CAPTURE(i);
      CAPTURE(j);
      const auto op = opposite(*w);
      CHECK(validate_bibundle(op).ok());
      CHECK(principality(op).biprincipal());
      CHECK(isomorphic(tensor(*w, op), identity_bibundle(zoo[i])));
      CHECK(isomorphic(tensor(op, *w), identity_bibundle(zoo[j])));
      CHECK(isomorphic(tensor(identity_bibundle(zoo[i]), *w), *w));
      CHECK(isomorphic(tensor(*w, identity_bibundle(zoo[j])), *w));
    }
}

TEST_CASE("tensor of homomorphism bibundles on Z4") {
  const auto z4 = group_groupoid(groups::cyclic(4));
  const auto autos = all_functors(z4, z4, FunctorKind::isomorphism);
  REQUIRE(autos.size() == 2);
  for (const auto& phi : autos)
    for (const auto& psi : autos) {
      const auto lhs = tensor(from_homomorphism(z4, z4, phi), from_homomorphism(z4, z4, psi));
      const auto rhs = from_homomorphism(z4, z4, compose(phi, psi));
      CHECK(validate_bibundle(lhs).ok());
      CHECK(oracle::bibundles_isomorphic(lhs, rhs));
      CHECK(isomorphic(lhs, rhs));
    }
  CHECK_FALSE(isomorphic(from_homomorphism(z4, z4, autos[0]), from_homomorphism(z4, z4, autos[1])));
}

TEST_CASE("induced orbit maps") {
  const auto b = bundle_of_groups({groups::cyclic(2), groups::cyclic(2)});
  for (const auto& phi : all_functors(b, b, FunctorKind::isomorphism)) {
    const auto s = from_homomorphism(b, b, phi);
    // The orbit of y in the right groupoid goes to the orbit of phi(y).
    CHECK(induced_orbit_map(s) == phi.object_map);
  }
  const auto w = morita_equivalent(transitive_groupoid(groups::cyclic(3), 2), group_groupoid(groups::cyclic(3)));
  REQUIRE(w.has_value());
  CHECK(induced_orbit_map(*w) == std::vector<int>{0});
}
