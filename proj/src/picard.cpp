#include "morita/picard.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "morita/constructions.hpp"
#include "morita/error.hpp"

namespace morita {

int AutomorphismGroup::index_of(const GroupoidMorphism& phi) const {
  auto it = std::lower_bound(maps.begin(), maps.end(), phi);
  if (it == maps.end() || *it != phi) return -1;
  return static_cast<int>(it - maps.begin());
}

namespace {

// Multiplication table of a finite set of maps closed under `compose`;
// `maps` must be sorted.
template <class T, class Compose>
FiniteGroup table_group(const std::vector<T>& maps, const std::string& prefix, Compose&& compose_fn) {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table(maps.size());
  for (std::size_t i = 0; i < maps.size(); ++i) {
    labels.push_back(prefix + std::to_string(i));
    for (const auto& b : maps) {
      const T c = compose_fn(maps[i], b);
      auto it = std::lower_bound(maps.begin(), maps.end(), c);
      if (it == maps.end() || *it != c) throw std::logic_error("map set is not closed under composition");
      table[i].push_back(static_cast<int>(it - maps.begin()));
    }
  }
  return FiniteGroup(std::move(labels), std::move(table));
}

}  // namespace

AutomorphismGroup automorphisms(const FiniteGroupoid& g) {
  AutomorphismGroup out;
  out.maps = all_functors(g, g, FunctorKind::isomorphism);
  std::sort(out.maps.begin(), out.maps.end());
  out.group = table_group(out.maps, "a", [](const GroupoidMorphism& a, const GroupoidMorphism& b) { return compose(a, b); });
  return out;
}

std::vector<Bisection> bisections(const FiniteGroupoid& g) {
  std::vector<Bisection> out;
  const int m = g.object_count();
  Bisection current{std::vector<int>(static_cast<std::size_t>(m), -1)};
  std::vector<char> target_used(static_cast<std::size_t>(m), 0);
  auto search = [&](auto&& self, int x) -> void {
    if (x == m) {
      out.push_back(current);
      return;
    }
    for (int a : g.arrows_from(x)) {
      if (target_used[static_cast<std::size_t>(g.tgt(a))]) continue;
      target_used[static_cast<std::size_t>(g.tgt(a))] = 1;
      current.arrow_at_source[static_cast<std::size_t>(x)] = a;
      self(self, x + 1);
      target_used[static_cast<std::size_t>(g.tgt(a))] = 0;
    }
  };
  search(search, 0);
  std::sort(out.begin(), out.end());
  return out;
}

Bisection multiply(const FiniteGroupoid& g, const Bisection& n, const Bisection& m) {
  Bisection out;
  for (int b : m.arrow_at_source)
    out.arrow_at_source.push_back(g.compose(n.arrow_at_source[static_cast<std::size_t>(g.tgt(b))], b));
  return out;
}

Bisection inverse(const FiniteGroupoid& g, const Bisection& n) {
  Bisection out{std::vector<int>(n.arrow_at_source.size(), -1)};
  for (int a : n.arrow_at_source) out.arrow_at_source[static_cast<std::size_t>(g.tgt(a))] = g.inverse(a);
  return out;
}

Bisection unit_bisection(const FiniteGroupoid& g) {
  Bisection out;
  for (int x = 0; x < g.object_count(); ++x) out.arrow_at_source.push_back(g.unit(x));
  return out;
}

GroupoidMorphism inner_automorphism(const FiniteGroupoid& g, const Bisection& n) {
  GroupoidMorphism phi;
  for (int a : n.arrow_at_source) phi.object_map.push_back(g.tgt(a));
  for (int a = 0; a < g.arrow_count(); ++a) {
    const int left = n.arrow_at_source[static_cast<std::size_t>(g.tgt(a))];
    const int right = g.inverse(n.arrow_at_source[static_cast<std::size_t>(g.src(a))]);
    phi.arrow_map.push_back(g.compose(left, g.compose(a, right)));
  }
  return phi;
}

InnerAutomorphisms inaut(const FiniteGroupoid& g) {
  InnerAutomorphisms out;
  out.aut = automorphisms(g);
  std::set<int> inner;
  for (const auto& n : bisections(g)) {
    const int idx = out.aut.index_of(inner_automorphism(g, n));
    if (idx < 0) throw std::logic_error("inner automorphism missing from the automorphism group");
    inner.insert(idx);
  }
  out.elements.assign(inner.begin(), inner.end());
  if (!is_normal_subgroup(out.aut.group, out.elements))
    throw std::logic_error("inner automorphisms do not form a normal subgroup");
  out.group = subgroup(out.aut.group, out.elements);
  return out;
}

OuterAutomorphisms outaut(const FiniteGroupoid& g) {
  InnerAutomorphisms in = inaut(g);
  Quotient q = quotient_group(in.aut.group, in.elements);
  return OuterAutomorphisms{std::move(in.aut), std::move(in.elements), std::move(q)};
}

std::vector<Bisection> ciso_bisections(const FiniteGroupoid& g) {
  // A central element at the base of each orbit, carried to the other
  // objects of the orbit by conjugation.
  const OrbitPartition orb = orbits(g);
  std::vector<std::vector<int>> centres;
  std::vector<std::vector<int>> carrier_arrow;  // per orbit: base -> object
  for (const auto& block : orb.blocks) {
    const int base = block.front();
    const auto loops = isotropy_arrows(g, base);
    std::vector<int> centre;
    for (int a : loops) {
      bool central = true;
      for (int b : loops) central = central && g.compose(a, b) == g.compose(b, a);
      if (central) centre.push_back(a);
    }
    centres.push_back(std::move(centre));
    std::vector<int> k;
    for (int y : block) k.push_back(g.arrows_between(base, y).front());
    carrier_arrow.push_back(std::move(k));
  }
  std::vector<Bisection> out;
  Bisection current{std::vector<int>(static_cast<std::size_t>(g.object_count()), -1)};
  auto search = [&](auto&& self, std::size_t o) -> void {
    if (o == orb.blocks.size()) {
      out.push_back(current);
      return;
    }
    for (int z : centres[o]) {
      for (std::size_t i = 0; i < orb.blocks[o].size(); ++i) {
        const int k = carrier_arrow[o][i];
        current.arrow_at_source[static_cast<std::size_t>(orb.blocks[o][i])] =
            g.compose(k, g.compose(z, g.inverse(k)));
      }
      self(self, o + 1);
    }
  };
  search(search, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(PicardSource source) {
  switch (source) {
    case PicardSource::enumeration: return "enumeration";
    case PicardSource::transitive_formula: return "transitive-formula";
    case PicardSource::bundle_of_groups_formula: return "bundle-of-groups-formula";
  }
  return "unknown";
}

int PicardGroup::class_of(const Bibundle& s) const {
  for (std::size_t i = 0; i < representatives.size(); ++i)
    if (bibundle_isomorphic(s, representatives[i])) return static_cast<int>(i);
  return -1;
}

namespace {

PicardGroup picard_by_enumeration(const FiniteGroupoid& g) {
  PicardGroup pic;
  pic.source = PicardSource::enumeration;
  pic.representatives.push_back(identity_bibundle(g));
  for_each_functor(g, g, FunctorKind::equivalence, [&](const GroupoidMorphism& phi) {
    Bibundle s = from_homomorphism(g, g, phi);
    if (pic.class_of(s) < 0) pic.representatives.push_back(std::move(s));
    return true;
  });
  const std::size_t n = pic.representatives.size();
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("P" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      const int k = pic.class_of(tensor(pic.representatives[i], pic.representatives[j]));
      if (k < 0) throw std::logic_error("tensor product of Picard classes left the enumerated set");
      table[i].push_back(k);
    }
  }
  pic.group = FiniteGroup(std::move(labels), std::move(table));
  return pic;
}

std::optional<PicardGroup> picard_by_formula(const FiniteGroupoid& g) {
  PicardGroup pic;
  if (is_transitive(g)) {
    pic.source = PicardSource::transitive_formula;
    pic.group = outaut(group_groupoid(isotropy(g, 0))).quotient.group;
    return pic;
  }
  if (is_group_bundle(g)) {
    pic.source = PicardSource::bundle_of_groups_formula;
    pic.group = outaut(g).quotient.group;
    return pic;
  }
  return std::nullopt;
}

}  // namespace

PicardGroup picard_group(const FiniteGroupoid& g, PicardMethod method) {
  switch (method) {
    case PicardMethod::enumerate:
      return picard_by_enumeration(g);
    case PicardMethod::formula: {
      auto pic = picard_by_formula(g);
      if (!pic)
        throw Error(ErrorCode::formula_inapplicable,
                    "closed form needs a transitive groupoid or a bundle of groups");
      return *pic;
    }
    case PicardMethod::automatic: {
      PicardGroup pic = picard_by_enumeration(g);
      if (auto formula = picard_by_formula(g)) pic.formula_agrees = groups_isomorphic(pic.group, formula->group);
      return pic;
    }
  }
  throw std::logic_error("unknown Picard method");
}

int j_homomorphism(const FiniteGroupoid& g, const PicardGroup& pic, const GroupoidMorphism& phi) {
  return pic.class_of(from_homomorphism(g, g, phi));
}

std::vector<int> center_map(const Bibundle& s) { return induced_orbit_map(s); }

std::vector<int> static_picard(const PicardGroup& pic) {
  std::vector<int> out;
  for (std::size_t i = 0; i < pic.representatives.size(); ++i) {
    const auto h = center_map(pic.representatives[i]);
    bool identity = true;
    for (std::size_t o = 0; o < h.size(); ++o) identity = identity && h[o] == static_cast<int>(o);
    if (identity) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::optional<SectionLemmaResult> lemma_section_check(const Bibundle& s) {
  const FiniteGroupoid& g = s.right();
  const int m = g.object_count();
  std::vector<std::vector<int>> fibre(static_cast<std::size_t>(m));
  for (int z = 0; z < s.size(); ++z) fibre[static_cast<std::size_t>(s.j2(z))].push_back(z);

  std::vector<int> sigma(static_cast<std::size_t>(m), -1);
  std::vector<char> hit(static_cast<std::size_t>(s.left().object_count()), 0);
  auto search = [&](auto&& self, int y) -> bool {
    if (y == m) return true;
    for (int z : fibre[static_cast<std::size_t>(y)]) {
      if (hit[static_cast<std::size_t>(s.j1(z))]) continue;
      hit[static_cast<std::size_t>(s.j1(z))] = 1;
      sigma[static_cast<std::size_t>(y)] = z;
      if (self(self, y + 1)) return true;
      hit[static_cast<std::size_t>(s.j1(z))] = 0;
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;

  SectionLemmaResult out;
  out.section = sigma;
  for (int y = 0; y < m; ++y) out.automorphism.object_map.push_back(s.j1(sigma[static_cast<std::size_t>(y)]));
  for (int k = 0; k < g.arrow_count(); ++k) {
    const int target = s.act_right(sigma[static_cast<std::size_t>(g.tgt(k))], k);
    const int base = sigma[static_cast<std::size_t>(g.src(k))];
    int found = -1;
    for (int a : s.left().arrows_from(s.j1(base)))
      if (s.act_left(a, base) == target) found = a;
    if (found < 0) return std::nullopt;
    out.automorphism.arrow_map.push_back(found);
  }
  return out;
}

ExactnessReport verify_exact_sequences(const FiniteGroupoid& g) {
  ExactnessReport r;
  auto fail = [&](std::string msg) { r.failures.push_back(std::move(msg)); };

  const AutomorphismGroup aut = automorphisms(g);
  const PicardGroup pic = picard_group(g, PicardMethod::enumerate);
  r.aut_order = aut.group.order();
  r.picard_order = pic.group.order();
  if (pic.class_of(identity_bibundle(g)) != 0) fail("identity bibundle is not the unit class");

  // 1 -> Inaut -> Aut -> Pic
  std::vector<int> j(static_cast<std::size_t>(aut.group.order()));
  for (int i = 0; i < aut.group.order(); ++i) {
    j[static_cast<std::size_t>(i)] = j_homomorphism(g, pic, aut.maps[static_cast<std::size_t>(i)]);
    if (j[static_cast<std::size_t>(i)] < 0) fail("j(a" + std::to_string(i) + ") is not a Picard class");
  }
  if (!r.ok()) return r;
  r.j_is_homomorphism = true;
  for (int a = 0; a < aut.group.order(); ++a)
    for (int b = 0; b < aut.group.order(); ++b)
      if (j[static_cast<std::size_t>(aut.group.multiply(a, b))] !=
          pic.group.multiply(j[static_cast<std::size_t>(a)], j[static_cast<std::size_t>(b)])) {
        if (r.j_is_homomorphism) fail("j(ab) != j(a)j(b) at (a" + std::to_string(a) + ",a" + std::to_string(b) + ")");
        r.j_is_homomorphism = false;
      }

  const std::vector<Bisection> bis = bisections(g);
  r.bisection_count = static_cast<int>(bis.size());
  std::vector<int> inner_of(bis.size());
  std::set<int> inner;
  for (std::size_t n = 0; n < bis.size(); ++n) {
    inner_of[n] = aut.index_of(inner_automorphism(g, bis[n]));
    if (inner_of[n] < 0) {
      fail("Phi_N is not an automorphism for bisection " + std::to_string(n));
      return r;
    }
    inner.insert(inner_of[n]);
  }
  r.inaut_order = static_cast<int>(inner.size());
  std::set<int> ker_j;
  for (int i = 0; i < aut.group.order(); ++i)
    if (j[static_cast<std::size_t>(i)] == 0) ker_j.insert(i);
  r.ker_j_order = static_cast<int>(ker_j.size());
  r.ker_j_equals_inaut = ker_j == inner;
  if (!r.ker_j_equals_inaut) {
    for (int i : ker_j)
      if (!inner.count(i)) fail("a" + std::to_string(i) + " is in ker j but not inner");
    for (int i : inner)
      if (!ker_j.count(i)) fail("a" + std::to_string(i) + " is inner but not in ker j");
  }

  // 1 -> CIsoBis -> Bis -> Inaut -> 1
  r.bisection_map_is_homomorphism = true;
  for (std::size_t n = 0; n < bis.size(); ++n)
    for (std::size_t m = 0; m < bis.size(); ++m) {
      const Bisection nm = multiply(g, bis[n], bis[m]);
      const auto it = std::lower_bound(bis.begin(), bis.end(), nm);
      if (it == bis.end() || *it != nm) {
        fail("bisections not closed under multiplication");
        r.bisection_map_is_homomorphism = false;
        return r;
      }
      const int composite = inner_of[static_cast<std::size_t>(it - bis.begin())];
      if (composite != aut.group.multiply(inner_of[n], inner_of[m]) && r.bisection_map_is_homomorphism) {
        fail("Phi_{NM} != Phi_N Phi_M at (" + std::to_string(n) + "," + std::to_string(m) + ")");
        r.bisection_map_is_homomorphism = false;
      }
    }
  const std::vector<int> inner_vec(inner.begin(), inner.end());
  r.bisections_onto_inaut = is_normal_subgroup(aut.group, inner_vec);
  if (!r.bisections_onto_inaut) fail("image of Bis is not a normal subgroup of Aut");
  const std::vector<Bisection> ciso = ciso_bisections(g);
  r.ciso_count = static_cast<int>(ciso.size());
  std::vector<Bisection> kernel;
  for (std::size_t n = 0; n < bis.size(); ++n)
    if (inner_of[n] == 0) kernel.push_back(bis[n]);
  r.ciso_is_kernel = kernel == ciso;
  if (!r.ciso_is_kernel) fail("CIsoBis differs from the kernel of N -> Phi_N");

  // 1 -> PicZ -> Pic -> Aut(Z)
  const int np = pic.group.order();
  std::vector<std::vector<int>> h;
  for (const auto& rep : pic.representatives) {
    h.push_back(center_map(rep));
    auto sorted = h.back();
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t o = 0; o < sorted.size(); ++o)
      if (sorted[o] != static_cast<int>(o)) {
        fail("center map of P" + std::to_string(h.size() - 1) + " is not a permutation");
        break;
      }
  }
  r.center_map_is_homomorphism = true;
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < np; ++b) {
      std::vector<int> composed;
      for (int o : h[static_cast<std::size_t>(b)]) composed.push_back(h[static_cast<std::size_t>(a)][static_cast<std::size_t>(o)]);
      if (composed != h[static_cast<std::size_t>(pic.group.multiply(a, b))] && r.center_map_is_homomorphism) {
        fail("h(PQ) != h(P)h(Q) at (P" + std::to_string(a) + ",P" + std::to_string(b) + ")");
        r.center_map_is_homomorphism = false;
      }
    }
  const std::vector<int> stat = static_picard(pic);
  r.static_picard_order = static_cast<int>(stat.size());
  std::vector<int> kernel_h;
  for (int a = 0; a < np; ++a) {
    bool identity = true;
    for (std::size_t o = 0; o < h[static_cast<std::size_t>(a)].size(); ++o)
      identity = identity && h[static_cast<std::size_t>(a)][o] == static_cast<int>(o);
    if (identity) kernel_h.push_back(a);
  }
  r.static_is_kernel = stat == kernel_h && is_normal_subgroup(pic.group, stat);
  if (!r.static_is_kernel) fail("static Picard group is not the kernel of h");
  return r;
}

}  // namespace morita
