#pragma once

// Brute-force reference implementations. They share no search code with the
// library and are only meant for inputs small enough to enumerate.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "morita/bibundle.hpp"
#include "morita/finite_group.hpp"
#include "morita/functor.hpp"
#include "morita/groupoid.hpp"
#include "morita/tss.hpp"

namespace oracle {

using morita::Bibundle;
using morita::FiniteGroup;
using morita::FiniteGroupoid;
using morita::GroupoidMorphism;

/// Every functor from -> to: all object maps, then every arrow image
/// allowed by the object map.
inline std::vector<GroupoidMorphism> functors(const FiniteGroupoid& from, const FiniteGroupoid& to) {
  std::vector<GroupoidMorphism> out;
  const int m = from.object_count(), n = from.arrow_count();
  std::vector<int> objs(static_cast<std::size_t>(m), 0);
  std::vector<int> arrows(static_cast<std::size_t>(n), -1);

  auto arrow_step = [&](auto&& self, int a) -> void {
    if (a == n) {
      out.push_back({objs, arrows});
      return;
    }
    const int s = objs[static_cast<std::size_t>(from.src(a))];
    const int t = objs[static_cast<std::size_t>(from.tgt(a))];
    for (int b = 0; b < to.arrow_count(); ++b) {
      if (to.src(b) != s || to.tgt(b) != t) continue;
      arrows[static_cast<std::size_t>(a)] = b;
      // Check each composite once, when the largest of its three indices
      // has just been assigned.
      bool ok = true;
      for (int x = 0; x <= a && ok; ++x)
        for (int y = 0; y <= a && ok; ++y) {
          const int c = from.compose(x, y);
          if (c < 0 || c > a || std::max({x, y, c}) != a) continue;
          ok = to.compose(arrows[static_cast<std::size_t>(x)], arrows[static_cast<std::size_t>(y)]) ==
               arrows[static_cast<std::size_t>(c)];
        }
      if (ok) self(self, a + 1);
    }
    arrows[static_cast<std::size_t>(a)] = -1;
  };
  auto object_step = [&](auto&& self, int x) -> void {
    if (x == m) {
      arrow_step(arrow_step, 0);
      return;
    }
    for (int y = 0; y < to.object_count(); ++y) {
      objs[static_cast<std::size_t>(x)] = y;
      self(self, x + 1);
    }
  };
  object_step(object_step, 0);
  std::sort(out.begin(), out.end());
  return out;
}

/// Bijective on every hom-set and every target object is reachable from an
/// image object.
inline bool is_equivalence(const FiniteGroupoid& from, const FiniteGroupoid& to, const GroupoidMorphism& phi) {
  for (int x = 0; x < from.object_count(); ++x)
    for (int y = 0; y < from.object_count(); ++y) {
      std::set<int> images;
      int count = 0;
      for (int a = 0; a < from.arrow_count(); ++a)
        if (from.src(a) == x && from.tgt(a) == y) {
          images.insert(phi.arrow_map[static_cast<std::size_t>(a)]);
          ++count;
        }
      if (static_cast<int>(images.size()) != count) return false;
      int target = 0;
      for (int b = 0; b < to.arrow_count(); ++b)
        target += to.src(b) == phi.object_map[static_cast<std::size_t>(x)] && to.tgt(b) == phi.object_map[static_cast<std::size_t>(y)];
      if (target != count) return false;
    }
  for (int z = 0; z < to.object_count(); ++z) {
    bool reached = false;
    for (int b = 0; b < to.arrow_count() && !reached; ++b)
      if (to.tgt(b) == z)
        for (int x = 0; x < from.object_count() && !reached; ++x) reached = to.src(b) == phi.object_map[static_cast<std::size_t>(x)];
    if (!reached) return false;
  }
  return true;
}

inline bool is_isomorphism(const FiniteGroupoid& from, const FiniteGroupoid& to, const GroupoidMorphism& phi) {
  std::set<int> objs(phi.object_map.begin(), phi.object_map.end());
  std::set<int> arrows(phi.arrow_map.begin(), phi.arrow_map.end());
  return static_cast<int>(objs.size()) == to.object_count() && static_cast<int>(arrows.size()) == to.arrow_count() &&
         from.object_count() == to.object_count() && from.arrow_count() == to.arrow_count();
}

/// Tries every bijection.
inline bool groups_isomorphic(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.order() != h.order()) return false;
  std::vector<int> perm(static_cast<std::size_t>(h.order()));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool hom = true;
    for (int a = 0; a < g.order() && hom; ++a)
      for (int b = 0; b < g.order() && hom; ++b)
        hom = perm[static_cast<std::size_t>(g.multiply(a, b))] ==
              h.multiply(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]);
    if (hom) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// Tries every bijection of carriers.
inline bool bibundles_isomorphic(const Bibundle& s, const Bibundle& t) {
  if (!(s.left() == t.left()) || !(s.right() == t.right()) || s.size() != t.size()) return false;
  std::vector<int> perm(static_cast<std::size_t>(t.size()));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int x = 0; x < s.size() && ok; ++x) {
      const int fx = perm[static_cast<std::size_t>(x)];
      ok = s.j1(x) == t.j1(fx) && s.j2(x) == t.j2(fx);
      for (int g = 0; g < s.left().arrow_count() && ok; ++g) {
        const int gx = s.act_left(g, x);
        ok = (gx < 0 ? -1 : perm[static_cast<std::size_t>(gx)]) == t.act_left(g, fx);
      }
      for (int g = 0; g < s.right().arrow_count() && ok; ++g) {
        const int xg = s.act_right(x, g);
        ok = (xg < 0 ? -1 : perm[static_cast<std::size_t>(xg)]) == t.act_right(fx, g);
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// Number of isomorphism classes of biprincipal (Z_n, Z_n)-bibundles,
/// counted from raw actions: the carrier has n points, the right action of
/// the generator is a fixed n-cycle, and the left action of the generator
/// ranges over all permutations of the carrier.
inline int cyclic_self_bibundle_classes(int n) {
  const FiniteGroup zn = morita::groups::cyclic(n);
  const FiniteGroupoid g = [&] {
    std::vector<std::string> objects{"pt"};
    std::vector<std::string> arrows;
    for (int a = 0; a < n; ++a) arrows.push_back(zn.label(a));
    std::vector<int> src(static_cast<std::size_t>(n), 0), tgt(static_cast<std::size_t>(n), 0), comp, inv;
    for (int a = 0; a < n; ++a) {
      inv.push_back(zn.inverse(a));
      for (int b = 0; b < n; ++b) comp.push_back(zn.multiply(a, b));
    }
    return FiniteGroupoid::from_indexed(objects, arrows, src, tgt, comp, {zn.identity()}, inv);
  }();
  std::vector<std::string> carrier;
  for (int x = 0; x < n; ++x) carrier.push_back("p" + std::to_string(x));
  std::vector<int> tau(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) tau[static_cast<std::size_t>(x)] = (x + 1) % n;

  auto power_table = [&](const std::vector<int>& gen) {
    // k-th power of the generator applied to x, for the arrow whose label is k.
    std::vector<std::vector<int>> table(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a) {
      const int k = std::stoi(g.arrow_id(a));
      for (int x = 0; x < n; ++x) {
        int y = x;
        for (int i = 0; i < k; ++i) y = gen[static_cast<std::size_t>(y)];
        table[static_cast<std::size_t>(a)][static_cast<std::size_t>(x)] = y;
      }
    }
    return table;
  };
  const auto right = power_table(tau);

  std::vector<Bibundle> found;
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    // Free and transitive: sigma is a single n-cycle.
    int len = 1;
    for (int y = sigma[0]; y != 0; y = sigma[static_cast<std::size_t>(y)]) ++len;
    if (len != n) continue;
    bool commutes = true;
    for (int x = 0; x < n; ++x)
      commutes = commutes && sigma[static_cast<std::size_t>(tau[static_cast<std::size_t>(x)])] ==
                                 tau[static_cast<std::size_t>(sigma[static_cast<std::size_t>(x)])];
    if (!commutes) continue;
    const auto left = power_table(sigma);
    std::vector<int> la(static_cast<std::size_t>(n * n)), ra(static_cast<std::size_t>(n * n));
    for (int a = 0; a < n; ++a)
      for (int x = 0; x < n; ++x) {
        la[static_cast<std::size_t>(a * n + x)] = left[static_cast<std::size_t>(a)][static_cast<std::size_t>(x)];
        ra[static_cast<std::size_t>(x * n + a)] = right[static_cast<std::size_t>(a)][static_cast<std::size_t>(x)];
      }
    Bibundle s = Bibundle::from_indexed(g, g, carrier, std::vector<int>(static_cast<std::size_t>(n), 0),
                                        std::vector<int>(static_cast<std::size_t>(n), 0), la, ra);
    bool fresh = true;
    for (const auto& t : found) fresh = fresh && !bibundles_isomorphic(s, t);
    if (fresh) found.push_back(std::move(s));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return static_cast<int>(found.size());
}

/// Surface graphs are isomorphic iff some vertex permutation matches genera
/// and, for every ordered vertex pair, the sorted period lists.
inline bool tss_isomorphic(const morita::LabeledSurfaceGraph& a, const morita::LabeledSurfaceGraph& b, double tol) {
  const int n = a.vertex_count();
  if (n != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  auto bucket = [](const morita::LabeledSurfaceGraph& g) {
    std::map<std::pair<int, int>, std::vector<double>> out;
    for (const auto& e : g.edges) out[{e.tail, e.head}].push_back(e.period);
    for (auto& [k, v] : out) std::sort(v.begin(), v.end());
    return out;
  };
  const auto ba = bucket(a), bb = bucket(b);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v)
      ok = a.vertices[static_cast<std::size_t>(v)].genus == b.vertices[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])].genus;
    for (int u = 0; u < n && ok; ++u)
      for (int v = 0; v < n && ok; ++v) {
        auto ia = ba.find({u, v});
        auto ib = bb.find({perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]});
        const std::size_t na = ia == ba.end() ? 0 : ia->second.size();
        const std::size_t nb = ib == bb.end() ? 0 : ib->second.size();
        ok = na == nb;
        for (std::size_t i = 0; i < na && ok; ++i) ok = std::abs(ia->second[i] - ib->second[i]) <= tol;
      }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// Out(G) = Aut(G) / Inn(G), with automorphisms found by trying every
/// bijection. Elements are cosets, multiplied through representatives.
inline FiniteGroup outer_automorphism_group(const FiniteGroup& g) {
  const int n = g.order();
  std::vector<std::vector<int>> aut;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool hom = true;
    for (int a = 0; a < n && hom; ++a)
      for (int b = 0; b < n && hom; ++b)
        hom = perm[static_cast<std::size_t>(g.multiply(a, b))] ==
              g.multiply(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]);
    if (hom) aut.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::set<std::vector<int>> inner;
  for (int c = 0; c < n; ++c) {
    std::vector<int> conj(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) conj[static_cast<std::size_t>(a)] = g.multiply(g.multiply(c, a), g.inverse(c));
    inner.insert(conj);
  }
  auto after = [&](const std::vector<int>& f, const std::vector<int>& h) {
    std::vector<int> out(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) out[static_cast<std::size_t>(a)] = f[static_cast<std::size_t>(h[static_cast<std::size_t>(a)])];
    return out;
  };
  // Coset of f: the set {f after i}.
  std::vector<std::set<std::vector<int>>> cosets;
  std::vector<std::vector<int>> reps;
  for (const auto& f : aut) {
    bool seen = false;
    for (const auto& c : cosets) seen = seen || c.count(f);
    if (seen) continue;
    std::set<std::vector<int>> c;
    for (const auto& i : inner) c.insert(after(f, i));
    cosets.push_back(std::move(c));
    reps.push_back(f);
  }
  const int m = static_cast<int>(reps.size());
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m)));
  for (int i = 0; i < m; ++i) {
    labels.push_back("c" + std::to_string(i));
    for (int j = 0; j < m; ++j) {
      const auto prod = after(reps[static_cast<std::size_t>(i)], reps[static_cast<std::size_t>(j)]);
      for (int k = 0; k < m; ++k)
        if (cosets[static_cast<std::size_t>(k)].count(prod)) table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = k;
    }
  }
  return FiniteGroup(labels, table);
}

/// Isomorphism test that guesses the image of one point per orbit of the
/// combined actions and propagates it along both actions.
inline bool bibundles_isomorphic_by_propagation(const Bibundle& s, const Bibundle& t) {
  if (!(s.left() == t.left()) || !(s.right() == t.right()) || s.size() != t.size()) return false;
  const int n = s.size();
  std::vector<int> map(static_cast<std::size_t>(n), -1), used(static_cast<std::size_t>(n), 0);

  auto extend = [&](int x, int fx, std::vector<int>& touched) {
    std::vector<std::pair<int, int>> stack{{x, fx}};
    while (!stack.empty()) {
      auto [a, fa] = stack.back();
      stack.pop_back();
      if (map[static_cast<std::size_t>(a)] >= 0) {
        if (map[static_cast<std::size_t>(a)] != fa) return false;
        continue;
      }
      if (used[static_cast<std::size_t>(fa)] || s.j1(a) != t.j1(fa) || s.j2(a) != t.j2(fa)) return false;
      map[static_cast<std::size_t>(a)] = fa;
      used[static_cast<std::size_t>(fa)] = 1;
      touched.push_back(a);
      for (int g = 0; g < s.left().arrow_count(); ++g) {
        const int ga = s.act_left(g, a), gfa = t.act_left(g, fa);
        if ((ga < 0) != (gfa < 0)) return false;
        if (ga >= 0) stack.push_back({ga, gfa});
      }
      for (int g = 0; g < s.right().arrow_count(); ++g) {
        const int ag = s.act_right(a, g), fag = t.act_right(fa, g);
        if ((ag < 0) != (fag < 0)) return false;
        if (ag >= 0) stack.push_back({ag, fag});
      }
    }
    return true;
  };
  auto search = [&](auto&& self) -> bool {
    int x = 0;
    while (x < n && map[static_cast<std::size_t>(x)] >= 0) ++x;
    if (x == n) return true;
    for (int y = 0; y < n; ++y) {
      if (used[static_cast<std::size_t>(y)]) continue;
      std::vector<int> touched;
      if (extend(x, y, touched) && self(self)) return true;
      for (int a : touched) {
        used[static_cast<std::size_t>(map[static_cast<std::size_t>(a)])] = 0;
        map[static_cast<std::size_t>(a)] = -1;
      }
    }
    return false;
  };
  return search(search);
}

/// Number of classes of (g)_Phi over all self-equivalences Phi, with
/// functors and isomorphisms both found by the routines above.
inline int picard_class_count(const FiniteGroupoid& g) {
  std::vector<Bibundle> found;
  for (const auto& phi : oracle::functors(g, g)) {
    if (!oracle::is_equivalence(g, g, phi)) continue;
    Bibundle s = morita::from_homomorphism(g, g, phi);
    bool fresh = true;
    for (const auto& t : found) fresh = fresh && !bibundles_isomorphic_by_propagation(s, t);
    if (fresh) found.push_back(std::move(s));
  }
  return static_cast<int>(found.size());
}

/// Bisections by choosing one arrow out of every object and keeping the
/// choices whose targets are all distinct.
inline std::vector<std::vector<int>> bisections(const FiniteGroupoid& g) {
  std::vector<std::vector<int>> out;
  std::vector<int> pick(static_cast<std::size_t>(g.object_count()));
  auto step = [&](auto&& self, int x) -> void {
    if (x == g.object_count()) {
      std::set<int> targets;
      for (int a : pick) targets.insert(g.tgt(a));
      if (static_cast<int>(targets.size()) == g.object_count()) out.push_back(pick);
      return;
    }
    for (int a = 0; a < g.arrow_count(); ++a)
      if (g.src(a) == x) {
        pick[static_cast<std::size_t>(x)] = a;
        self(self, x + 1);
      }
  };
  step(step, 0);
  return out;
}

}  // namespace oracle
