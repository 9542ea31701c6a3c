#include "morita/functor.hpp"

#include <set>

#include "morita/error.hpp"

namespace morita {

GroupoidMorphism identity_morphism(const FiniteGroupoid& g) {
  GroupoidMorphism id;
  for (int x = 0; x < g.object_count(); ++x) id.object_map.push_back(x);
  for (int a = 0; a < g.arrow_count(); ++a) id.arrow_map.push_back(a);
  return id;
}

GroupoidMorphism compose(const GroupoidMorphism& phi, const GroupoidMorphism& psi) {
  GroupoidMorphism out;
  for (int x : psi.object_map) out.object_map.push_back(phi.object_map[static_cast<std::size_t>(x)]);
  for (int a : psi.arrow_map) out.arrow_map.push_back(phi.arrow_map[static_cast<std::size_t>(a)]);
  return out;
}

GroupoidMorphism invert(const GroupoidMorphism& phi) {
  GroupoidMorphism out;
  out.object_map.assign(phi.object_map.size(), -1);
  out.arrow_map.assign(phi.arrow_map.size(), -1);
  for (std::size_t x = 0; x < phi.object_map.size(); ++x)
    out.object_map.at(static_cast<std::size_t>(phi.object_map[x])) = static_cast<int>(x);
  for (std::size_t a = 0; a < phi.arrow_map.size(); ++a)
    out.arrow_map.at(static_cast<std::size_t>(phi.arrow_map[a])) = static_cast<int>(a);
  return out;
}

bool is_functor(const FiniteGroupoid& from, const FiniteGroupoid& to, const GroupoidMorphism& phi) {
  if (static_cast<int>(phi.object_map.size()) != from.object_count() ||
      static_cast<int>(phi.arrow_map.size()) != from.arrow_count())
    return false;
  for (int x : phi.object_map)
    if (x < 0 || x >= to.object_count()) return false;
  for (int a : phi.arrow_map)
    if (a < 0 || a >= to.arrow_count()) return false;
  auto F = [&](int a) { return phi.arrow_map[static_cast<std::size_t>(a)]; };
  auto f = [&](int x) { return phi.object_map[static_cast<std::size_t>(x)]; };
  for (int a = 0; a < from.arrow_count(); ++a)
    if (to.src(F(a)) != f(from.src(a)) || to.tgt(F(a)) != f(from.tgt(a))) return false;
  for (int x = 0; x < from.object_count(); ++x)
    if (F(from.unit(x)) != to.unit(f(x))) return false;
  for (int a = 0; a < from.arrow_count(); ++a)
    for (int b = 0; b < from.arrow_count(); ++b) {
      const int ab = from.compose(a, b);
      if (ab >= 0 && F(ab) != to.compose(F(a), F(b))) return false;
    }
  return true;
}

bool is_equivalence(const FiniteGroupoid& from, const FiniteGroupoid& to, const GroupoidMorphism& phi) {
  if (!is_functor(from, to, phi)) return false;
  for (int x = 0; x < from.object_count(); ++x)
    for (int y = 0; y < from.object_count(); ++y) {
      const auto hom = from.arrows_between(x, y);
      const auto image_hom =
          to.arrows_between(phi.object_map[static_cast<std::size_t>(x)], phi.object_map[static_cast<std::size_t>(y)]);
      std::set<int> image;
      for (int a : hom) image.insert(phi.arrow_map[static_cast<std::size_t>(a)]);
      if (image.size() != hom.size() || image.size() != image_hom.size()) return false;
    }
  const OrbitPartition target_orbits = orbits(to);
  std::vector<char> hit(static_cast<std::size_t>(target_orbits.count()), 0);
  for (int y : phi.object_map) hit[static_cast<std::size_t>(target_orbits.block_of[static_cast<std::size_t>(y)])] = 1;
  for (char h : hit)
    if (!h) return false;
  return true;
}

namespace {

int loop_order(const FiniteGroupoid& g, int a) {
  const int e = g.unit(g.src(a));
  int k = 1;
  for (int x = a; x != e; x = g.compose(x, a)) ++k;
  return k;
}

class FunctorSearch {
 public:
  FunctorSearch(const FiniteGroupoid& from, const FiniteGroupoid& to, FunctorKind kind,
                const std::function<bool(const GroupoidMorphism&)>& visit)
      : from_(from), to_(to), kind_(kind), visit_(visit), from_orbits_(orbits(from)), to_orbits_(orbits(to)) {
    for (int x = 0; x < from.object_count(); ++x) from_iso_.push_back(static_cast<int>(from.arrows_between(x, x).size()));
    for (int y = 0; y < to.object_count(); ++y) to_iso_.push_back(static_cast<int>(to.arrows_between(y, y).size()));
    for (int a = 0; a < from.arrow_count(); ++a)
      from_loop_order_.push_back(from.src(a) == from.tgt(a) ? loop_order(from, a) : 0);
    for (int b = 0; b < to.arrow_count(); ++b)
      to_loop_order_.push_back(to.src(b) == to.tgt(b) ? loop_order(to, b) : 0);
  }

  void run() {
    if (kind_ == FunctorKind::isomorphism &&
        (from_.object_count() != to_.object_count() || from_.arrow_count() != to_.arrow_count()))
      return;
    if (from_.object_count() > 0 && to_.object_count() == 0) return;
    State s;
    s.obj.assign(static_cast<std::size_t>(from_.object_count()), -1);
    s.arr.assign(static_cast<std::size_t>(from_.arrow_count()), -1);
    s.used.assign(static_cast<std::size_t>(to_.arrow_count()), 0);
    branch_object(s, 0);
  }

 private:
  struct State {
    std::vector<int> obj;
    std::vector<int> arr;
    std::vector<int> assigned;
    std::vector<char> used;
  };

  bool injective() const { return kind_ == FunctorKind::isomorphism; }
  bool reflects_orbits() const { return kind_ != FunctorKind::any; }

  bool object_allowed(const State& s, int x, int y) const {
    const auto ux = static_cast<std::size_t>(x), uy = static_cast<std::size_t>(y);
    if (kind_ != FunctorKind::any && from_iso_[ux] != to_iso_[uy]) return false;
    if (kind_ == FunctorKind::isomorphism) {
      if (from_.arrows_from(x).size() != to_.arrows_from(y).size()) return false;
      for (int z = 0; z < x; ++z)
        if (s.obj[static_cast<std::size_t>(z)] == y) return false;
    }
    for (int z = 0; z < x; ++z) {
      const bool same_source_orbit = from_orbits_.block_of[static_cast<std::size_t>(z)] == from_orbits_.block_of[ux];
      const bool same_target_orbit =
          to_orbits_.block_of[static_cast<std::size_t>(s.obj[static_cast<std::size_t>(z)])] == to_orbits_.block_of[uy];
      if (same_source_orbit && !same_target_orbit) return false;
      if (reflects_orbits() && !same_source_orbit && same_target_orbit) return false;
    }
    return true;
  }

  bool branch_object(State& s, int x) {
    if (x == from_.object_count()) {
      State next = s;
      for (int z = 0; z < from_.object_count(); ++z)
        if (!assign(next, from_.unit(z), to_.unit(next.obj[static_cast<std::size_t>(z)]))) return true;
      return branch_arrow(next);
    }
    for (int y = 0; y < to_.object_count(); ++y) {
      if (!object_allowed(s, x, y)) continue;
      s.obj[static_cast<std::size_t>(x)] = y;
      if (!branch_object(s, x + 1)) return false;
    }
    s.obj[static_cast<std::size_t>(x)] = -1;
    return true;
  }

  // Returns false when the visitor asked to stop.
  bool branch_arrow(State& s) {
    int g = 0;
    while (g < from_.arrow_count() && s.arr[static_cast<std::size_t>(g)] >= 0) ++g;
    if (g == from_.arrow_count()) return leaf(s);
    const int fs = s.obj[static_cast<std::size_t>(from_.src(g))];
    const int ft = s.obj[static_cast<std::size_t>(from_.tgt(g))];
    for (int b : to_.arrows_between(fs, ft)) {
      if (from_.src(g) == from_.tgt(g)) {
        const int og = from_loop_order_[static_cast<std::size_t>(g)];
        const int ob = to_loop_order_[static_cast<std::size_t>(b)];
        if (kind_ == FunctorKind::any ? og % ob != 0 : og != ob) continue;
      }
      State next = s;
      if (!assign(next, g, b)) continue;
      if (!branch_arrow(next)) return false;
    }
    return true;
  }

  bool set_one(State& s, std::vector<int>& queue, int g, int image) const {
    if (g < 0 || image < 0) return false;
    int& slot = s.arr[static_cast<std::size_t>(g)];
    if (slot >= 0) return slot == image;
    if (to_.src(image) != s.obj[static_cast<std::size_t>(from_.src(g))] ||
        to_.tgt(image) != s.obj[static_cast<std::size_t>(from_.tgt(g))])
      return false;
    if (injective()) {
      if (s.used[static_cast<std::size_t>(image)]) return false;
      s.used[static_cast<std::size_t>(image)] = 1;
    }
    slot = image;
    s.assigned.push_back(g);
    queue.push_back(g);
    return true;
  }

  bool assign(State& s, int g, int image) const {
    std::vector<int> queue;
    if (!set_one(s, queue, g, image)) return false;
    while (!queue.empty()) {
      const int a = queue.back();
      queue.pop_back();
      const int fa = s.arr[static_cast<std::size_t>(a)];
      if (!set_one(s, queue, from_.inverse(a), to_.inverse(fa))) return false;
      for (std::size_t i = 0; i < s.assigned.size(); ++i) {
        const int b = s.assigned[i];
        const int fb = s.arr[static_cast<std::size_t>(b)];
        if (from_.src(a) == from_.tgt(b) && !set_one(s, queue, from_.compose(a, b), to_.compose(fa, fb)))
          return false;
        if (from_.src(b) == from_.tgt(a) && !set_one(s, queue, from_.compose(b, a), to_.compose(fb, fa)))
          return false;
      }
    }
    return true;
  }

  bool leaf(const State& s) {
    GroupoidMorphism phi{s.obj, s.arr};
    if (kind_ == FunctorKind::equivalence && !is_equivalence(from_, to_, phi)) return true;
    return visit_(phi);
  }

  const FiniteGroupoid& from_;
  const FiniteGroupoid& to_;
  FunctorKind kind_;
  const std::function<bool(const GroupoidMorphism&)>& visit_;
  OrbitPartition from_orbits_, to_orbits_;
  std::vector<int> from_iso_, to_iso_, from_loop_order_, to_loop_order_;
};

}  // namespace

void for_each_functor(const FiniteGroupoid& from, const FiniteGroupoid& to, FunctorKind kind,
                      const std::function<bool(const GroupoidMorphism&)>& visit) {
  FunctorSearch(from, to, kind, visit).run();
}

std::vector<GroupoidMorphism> all_functors(const FiniteGroupoid& from, const FiniteGroupoid& to,
                                           FunctorKind kind) {
  std::vector<GroupoidMorphism> out;
  for_each_functor(from, to, kind, [&](const GroupoidMorphism& phi) {
    out.push_back(phi);
    return true;
  });
  return out;
}

std::optional<GroupoidMorphism> groupoid_isomorphic(const FiniteGroupoid& g1, const FiniteGroupoid& g2) {
  if (g1 == g2) return identity_morphism(g1);
  std::optional<GroupoidMorphism> found;
  for_each_functor(g1, g2, FunctorKind::isomorphism, [&](const GroupoidMorphism& phi) {
    found = phi;
    return false;
  });
  return found;
}

}  // namespace morita
