#include "morita/bibundle.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>
#include <unordered_map>

#include "morita/error.hpp"
#include "morita/union_find.hpp"

namespace morita {

Bibundle Bibundle::from_indexed(FiniteGroupoid left, FiniteGroupoid right, std::vector<std::string> carrier,
                                const std::vector<int>& j1, const std::vector<int>& j2,
                                const std::vector<int>& left_act, const std::vector<int>& right_act) {
  const std::size_t n = carrier.size();
  const auto nl = static_cast<std::size_t>(left.arrow_count());
  const auto nr = static_cast<std::size_t>(right.arrow_count());
  if (j1.size() != n || j2.size() != n || left_act.size() != nl * n || right_act.size() != n * nr)
    throw Error(ErrorCode::parse, "bibundle tables have inconsistent sizes");
  for (std::size_t x = 0; x < n; ++x)
    if (j1[x] < 0 || j1[x] >= left.object_count() || j2[x] < 0 || j2[x] >= right.object_count())
      throw Error(ErrorCode::parse, "moment value out of range for point " + carrier[x]);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return carrier[static_cast<std::size_t>(a)] < carrier[static_cast<std::size_t>(b)]; });
  for (std::size_t i = 1; i < n; ++i)
    if (carrier[static_cast<std::size_t>(order[i])] == carrier[static_cast<std::size_t>(order[i - 1])])
      throw Error(ErrorCode::parse, "duplicate carrier id '" + carrier[static_cast<std::size_t>(order[i])] + "'");
  std::vector<int> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  auto remap = [&](int x) { return x < 0 ? -1 : rank[static_cast<std::size_t>(x)]; };

  Bibundle s;
  s.left_ = std::move(left);
  s.right_ = std::move(right);
  s.left_act_.assign(nl * n, -1);
  s.right_act_.assign(n * nr, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = static_cast<std::size_t>(order[i]);
    s.carrier_.push_back(std::move(carrier[x]));
    s.j1_.push_back(j1[x]);
    s.j2_.push_back(j2[x]);
    for (std::size_t g = 0; g < nl; ++g) s.left_act_[g * n + i] = remap(left_act[g * n + x]);
    for (std::size_t g = 0; g < nr; ++g) s.right_act_[i * nr + g] = remap(right_act[x * nr + g]);
  }
  return s;
}

Bibundle Bibundle::from_tables(const BibundleTables& t) {
  std::unordered_map<std::string, int> point;
  for (std::size_t i = 0; i < t.carrier.size(); ++i)
    if (!point.emplace(t.carrier[i], static_cast<int>(i)).second)
      throw Error(ErrorCode::parse, "duplicate carrier id '" + t.carrier[i] + "'");
  auto pt = [&](const std::string& id) {
    auto it = point.find(id);
    if (it == point.end()) throw Error(ErrorCode::parse, "unknown carrier id '" + id + "'");
    return it->second;
  };
  auto need = [](std::optional<int> v, const std::string& id, const char* what) {
    if (!v) throw Error(ErrorCode::parse, std::string("unknown ") + what + " id '" + id + "'");
    return *v;
  };
  const std::size_t n = t.carrier.size();
  std::vector<int> j1(n, -1), j2(n, -1);
  for (const auto& [x, obj] : t.j1) j1[static_cast<std::size_t>(pt(x))] = need(t.left.find_object(obj), obj, "left object");
  for (const auto& [x, obj] : t.j2) j2[static_cast<std::size_t>(pt(x))] = need(t.right.find_object(obj), obj, "right object");
  for (std::size_t x = 0; x < n; ++x)
    if (j1[x] < 0 || j2[x] < 0) throw Error(ErrorCode::parse, "moment missing for point '" + t.carrier[x] + "'");

  const auto nl = static_cast<std::size_t>(t.left.arrow_count());
  const auto nr = static_cast<std::size_t>(t.right.arrow_count());
  std::vector<int> left_act(nl * n, -1), right_act(n * nr, -1);
  for (const auto& [g, x, y] : t.left_act)
    left_act[static_cast<std::size_t>(need(t.left.find_arrow(g), g, "left arrow")) * n + static_cast<std::size_t>(pt(x))] = pt(y);
  for (const auto& [x, g, y] : t.right_act)
    right_act[static_cast<std::size_t>(pt(x)) * nr + static_cast<std::size_t>(need(t.right.find_arrow(g), g, "right arrow"))] = pt(y);
  return from_indexed(t.left, t.right, t.carrier, j1, j2, left_act, right_act);
}

BibundleTables Bibundle::to_tables() const {
  BibundleTables t;
  t.left = left_;
  t.right = right_;
  t.carrier = carrier_;
  for (int x = 0; x < size(); ++x) {
    t.j1[point_id(x)] = left_.object_id(j1(x));
    t.j2[point_id(x)] = right_.object_id(j2(x));
  }
  for (int g = 0; g < left_.arrow_count(); ++g)
    for (int x = 0; x < size(); ++x)
      if (act_left(g, x) >= 0) t.left_act.push_back({left_.arrow_id(g), point_id(x), point_id(act_left(g, x))});
  for (int x = 0; x < size(); ++x)
    for (int g = 0; g < right_.arrow_count(); ++g)
      if (act_right(x, g) >= 0) t.right_act.push_back({point_id(x), right_.arrow_id(g), point_id(act_right(x, g))});
  return t;
}

ValidationReport validate_bibundle(const Bibundle& s) {
  constexpr std::size_t kMaxWitnesses = 64;
  ValidationReport report;
  std::map<std::string, std::size_t> counts;
  auto flag = [&](const char* kind, std::vector<std::string> w) {
    if (counts[kind]++ < kMaxWitnesses) report.violations.push_back({kind, std::move(w)});
  };
  const FiniteGroupoid& L = s.left();
  const FiniteGroupoid& R = s.right();
  auto pid = [&](int x) { return s.point_id(x); };

  bool domains_ok = true;
  for (int x = 0; x < s.size(); ++x) {
    for (int g = 0; g < L.arrow_count(); ++g) {
      const bool should = L.src(g) == s.j1(x);
      const int gx = s.act_left(g, x);
      if (should != (gx >= 0)) {
        flag("action-domain", {"left", L.arrow_id(g), pid(x)});
        domains_ok = false;
      } else if (gx >= 0 && (s.j1(gx) != L.tgt(g) || s.j2(gx) != s.j2(x))) {
        flag("moment-equivariance", {"left", L.arrow_id(g), pid(x)});
      }
    }
    for (int g = 0; g < R.arrow_count(); ++g) {
      const bool should = s.j2(x) == R.tgt(g);
      const int xg = s.act_right(x, g);
      if (should != (xg >= 0)) {
        flag("action-domain", {"right", pid(x), R.arrow_id(g)});
        domains_ok = false;
      } else if (xg >= 0 && (s.j1(xg) != s.j1(x) || s.j2(xg) != R.src(g))) {
        flag("moment-equivariance", {"right", pid(x), R.arrow_id(g)});
      }
    }
  }
  if (!domains_ok || report.has("moment-equivariance")) return report;

  for (int x = 0; x < s.size(); ++x) {
    if (s.act_left(L.unit(s.j1(x)), x) != x) flag("unit-action", {"left", pid(x)});
    if (s.act_right(x, R.unit(s.j2(x))) != x) flag("unit-action", {"right", pid(x)});
    for (int h = 0; h < L.arrow_count(); ++h) {
      const int hx = s.act_left(h, x);
      if (hx < 0) continue;
      for (int g = 0; g < L.arrow_count(); ++g)
        if (L.src(g) == L.tgt(h) && s.act_left(L.compose(g, h), x) != s.act_left(g, hx))
          flag("action-associativity", {"left", L.arrow_id(g), L.arrow_id(h), pid(x)});
      for (int k = 0; k < R.arrow_count(); ++k) {
        const int xk = s.act_right(x, k);
        if (xk >= 0 && s.act_right(hx, k) != s.act_left(h, xk))
          flag("commutation", {L.arrow_id(h), pid(x), R.arrow_id(k)});
      }
    }
    for (int g = 0; g < R.arrow_count(); ++g) {
      const int xg = s.act_right(x, g);
      if (xg < 0) continue;
      for (int h = 0; h < R.arrow_count(); ++h)
        if (R.src(g) == R.tgt(h) && s.act_right(x, R.compose(g, h)) != s.act_right(xg, h))
          flag("action-associativity", {"right", pid(x), R.arrow_id(g), R.arrow_id(h)});
    }
  }
  return report;
}

PrincipalityReport principality(const Bibundle& s) {
  PrincipalityReport r;
  const FiniteGroupoid& L = s.left();
  const FiniteGroupoid& R = s.right();

  // Left action along J2-fibres.
  bool left_ok = true;
  std::vector<char> hit(static_cast<std::size_t>(R.object_count()), 0);
  for (int x = 0; x < s.size(); ++x) hit[static_cast<std::size_t>(s.j2(x))] = 1;
  for (int y = 0; y < R.object_count(); ++y)
    if (!hit[static_cast<std::size_t>(y)]) {
      r.witnesses.push_back({"left-surjectivity", {R.object_id(y)}});
      left_ok = false;
    }
  for (int x = 0; x < s.size(); ++x) {
    std::vector<char> reached(static_cast<std::size_t>(s.size()), 0);
    for (int g : L.arrows_from(s.j1(x))) {
      const int gx = s.act_left(g, x);
      if (gx < 0) continue;
      if (gx == x && !L.is_unit(g)) {
        r.witnesses.push_back({"left-freeness", {L.arrow_id(g), s.point_id(x)}});
        left_ok = false;
      }
      reached[static_cast<std::size_t>(gx)] = 1;
    }
    for (int y = 0; y < s.size(); ++y)
      if (s.j2(y) == s.j2(x) && !reached[static_cast<std::size_t>(y)]) {
        r.witnesses.push_back({"left-transitivity", {s.point_id(x), s.point_id(y)}});
        left_ok = false;
      }
  }

  // Right action along J1-fibres.
  bool right_ok = true;
  hit.assign(static_cast<std::size_t>(L.object_count()), 0);
  for (int x = 0; x < s.size(); ++x) hit[static_cast<std::size_t>(s.j1(x))] = 1;
  for (int y = 0; y < L.object_count(); ++y)
    if (!hit[static_cast<std::size_t>(y)]) {
      r.witnesses.push_back({"right-surjectivity", {L.object_id(y)}});
      right_ok = false;
    }
  for (int x = 0; x < s.size(); ++x) {
    std::vector<char> reached(static_cast<std::size_t>(s.size()), 0);
    for (int g = 0; g < R.arrow_count(); ++g) {
      const int xg = s.act_right(x, g);
      if (xg < 0) continue;
      if (xg == x && !R.is_unit(g)) {
        r.witnesses.push_back({"right-freeness", {s.point_id(x), R.arrow_id(g)}});
        right_ok = false;
      }
      reached[static_cast<std::size_t>(xg)] = 1;
    }
    for (int y = 0; y < s.size(); ++y)
      if (s.j1(y) == s.j1(x) && !reached[static_cast<std::size_t>(y)]) {
        r.witnesses.push_back({"right-transitivity", {s.point_id(x), s.point_id(y)}});
        right_ok = false;
      }
  }
  r.left_principal = left_ok;
  r.right_principal = right_ok;
  return r;
}

bool is_left_principal(const Bibundle& s) { return principality(s).left_principal; }

Bibundle identity_bibundle(const FiniteGroupoid& g) {
  const int n = g.arrow_count();
  std::vector<int> j1, j2, act(static_cast<std::size_t>(n * n), -1);
  for (int a = 0; a < n; ++a) {
    j1.push_back(g.tgt(a));
    j2.push_back(g.src(a));
    for (int b = 0; b < n; ++b) act[static_cast<std::size_t>(a * n + b)] = g.compose(a, b);
  }
  // Both actions are composition: left_act[a][x] = a x, right_act[x][b] = x b.
  return Bibundle::from_indexed(g, g, g.arrow_ids(), j1, j2, act, act);
}

Bibundle opposite(const Bibundle& s) {
  const FiniteGroupoid& l = s.left();
  const FiniteGroupoid& r = s.right();
  const int n = s.size();
  std::vector<int> j1, j2;
  std::vector<int> left_act(static_cast<std::size_t>(r.arrow_count() * n), -1);
  std::vector<int> right_act(static_cast<std::size_t>(n * l.arrow_count()), -1);
  for (int x = 0; x < n; ++x) {
    j1.push_back(s.j2(x));
    j2.push_back(s.j1(x));
    for (int g = 0; g < r.arrow_count(); ++g)
      left_act[static_cast<std::size_t>(g * n + x)] = s.act_right(x, r.inverse(g));
    for (int h = 0; h < l.arrow_count(); ++h)
      right_act[static_cast<std::size_t>(x * l.arrow_count() + h)] = s.act_left(l.inverse(h), x);
  }
  return Bibundle::from_indexed(r, l, s.carrier(), j1, j2, left_act, right_act);
}

Bibundle from_homomorphism(const FiniteGroupoid& gamma1, const FiniteGroupoid& gamma2, const GroupoidMorphism& phi) {
  if (!is_functor(gamma2, gamma1, phi)) throw Error(ErrorCode::not_functor, "map is not a groupoid homomorphism");
  std::vector<std::string> carrier;
  std::vector<int> j1, j2;
  std::vector<std::pair<int, int>> pairs;
  std::map<std::pair<int, int>, int> index;
  for (int y = 0; y < gamma2.object_count(); ++y)
    for (int g : gamma1.arrows_from(phi.object_map[static_cast<std::size_t>(y)])) {
      index[{g, y}] = static_cast<int>(pairs.size());
      pairs.emplace_back(g, y);
      carrier.push_back("(" + gamma1.arrow_id(g) + "," + gamma2.object_id(y) + ")");
      j1.push_back(gamma1.tgt(g));
      j2.push_back(y);
    }
  const std::size_t n = pairs.size();
  const auto nl = static_cast<std::size_t>(gamma1.arrow_count());
  const auto nr = static_cast<std::size_t>(gamma2.arrow_count());
  std::vector<int> left_act(nl * n, -1), right_act(n * nr, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [g, y] = pairs[i];
    for (std::size_t h = 0; h < nl; ++h)
      if (gamma1.src(static_cast<int>(h)) == gamma1.tgt(g))
        left_act[h * n + i] = index.at({gamma1.compose(static_cast<int>(h), g), y});
    for (std::size_t k = 0; k < nr; ++k)
      if (gamma2.tgt(static_cast<int>(k)) == y)
        right_act[i * nr + k] = index.at({gamma1.compose(g, phi.arrow_map[k]), gamma2.src(static_cast<int>(k))});
  }
  return Bibundle::from_indexed(gamma1, gamma2, std::move(carrier), j1, j2, left_act, right_act);
}

Bibundle tensor(const Bibundle& s, const Bibundle& t) {
  if (!(s.right() == t.left())) throw Error(ErrorCode::middle_mismatch, "right groupoid of S differs from left groupoid of S'");
  if (!is_left_principal(s)) throw Error(ErrorCode::not_left_principal, "first factor is not left principal");
  if (!is_left_principal(t)) throw Error(ErrorCode::not_left_principal, "second factor is not left principal");
  const FiniteGroupoid& mid = s.right();
  const int ns = s.size(), nt = t.size();
  auto pair_index = [nt](int x, int y) { return x * nt + y; };

  // Index order on pairs is lexicographic order on (id x, id y).
  UnionFind uf(ns * nt);
  for (int x = 0; x < ns; ++x)
    for (int g = 0; g < mid.arrow_count(); ++g) {
      const int xg = s.act_right(x, g);
      if (xg < 0) continue;
      for (int y = 0; y < nt; ++y)
        if (t.j1(y) == mid.src(g)) uf.unite(pair_index(xg, y), pair_index(x, t.act_left(g, y)));
    }

  std::vector<int> class_of(static_cast<std::size_t>(ns * nt), -1);
  std::vector<int> reps;
  std::vector<int> class_of_root(static_cast<std::size_t>(ns * nt), -1);
  for (int x = 0; x < ns; ++x)
    for (int y = 0; y < nt; ++y) {
      if (s.j2(x) != t.j1(y)) continue;
      const int p = pair_index(x, y);
      const int root = uf.find(p);
      int& c = class_of_root[static_cast<std::size_t>(root)];
      if (c < 0) {
        c = static_cast<int>(reps.size());
        reps.push_back(root);
      }
      class_of[static_cast<std::size_t>(p)] = c;
    }

  const std::size_t n = reps.size();
  const auto nl = static_cast<std::size_t>(s.left().arrow_count());
  const auto nr = static_cast<std::size_t>(t.right().arrow_count());
  std::vector<std::string> carrier;
  std::vector<int> j1, j3, left_act(nl * n, -1), right_act(n * nr, -1);
  for (std::size_t c = 0; c < n; ++c) {
    const int x = reps[c] / nt, y = reps[c] % nt;
    carrier.push_back("(" + s.point_id(x) + "," + t.point_id(y) + ")");
    j1.push_back(s.j1(x));
    j3.push_back(t.j2(y));
    for (std::size_t h = 0; h < nl; ++h) {
      const int hx = s.act_left(static_cast<int>(h), x);
      if (hx >= 0) left_act[h * n + c] = class_of[static_cast<std::size_t>(pair_index(hx, y))];
    }
    for (std::size_t k = 0; k < nr; ++k) {
      const int yk = t.act_right(y, static_cast<int>(k));
      if (yk >= 0) right_act[c * nr + k] = class_of[static_cast<std::size_t>(pair_index(x, yk))];
    }
  }
  return Bibundle::from_indexed(s.left(), t.right(), std::move(carrier), j1, j3, left_act, right_act);
}

namespace {

using Signature = std::tuple<int, int, int, int>;

std::vector<Signature> signatures(const Bibundle& s) {
  std::vector<Signature> out;
  for (int x = 0; x < s.size(); ++x) {
    int left_fix = 0, right_fix = 0;
    for (int g : s.left().arrows_from(s.j1(x)))
      if (s.act_left(g, x) == x) ++left_fix;
    for (int g = 0; g < s.right().arrow_count(); ++g)
      if (s.act_right(x, g) == x) ++right_fix;
    out.emplace_back(s.j1(x), s.j2(x), left_fix, right_fix);
  }
  return out;
}

class BibundleIsoSearch {
 public:
  BibundleIsoSearch(const Bibundle& a, const Bibundle& b) : a_(a), b_(b), sig_a_(signatures(a)), sig_b_(signatures(b)) {}

  std::optional<std::vector<int>> run() {
    auto sa = sig_a_, sb = sig_b_;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
    State s{std::vector<int>(static_cast<std::size_t>(a_.size()), -1), std::vector<char>(static_cast<std::size_t>(b_.size()), 0)};
    if (search(s)) return result_;
    return std::nullopt;
  }

 private:
  struct State {
    std::vector<int> map;
    std::vector<char> used;
  };

  bool set_one(State& s, std::vector<int>& queue, int x, int y) const {
    if (x < 0 || y < 0) return x < 0 && y < 0;
    int& slot = s.map[static_cast<std::size_t>(x)];
    if (slot >= 0) return slot == y;
    if (s.used[static_cast<std::size_t>(y)] || sig_a_[static_cast<std::size_t>(x)] != sig_b_[static_cast<std::size_t>(y)]) return false;
    slot = y;
    s.used[static_cast<std::size_t>(y)] = 1;
    queue.push_back(x);
    return true;
  }

  bool assign(State& s, int x, int y) const {
    std::vector<int> queue;
    if (!set_one(s, queue, x, y)) return false;
    while (!queue.empty()) {
      const int p = queue.back();
      queue.pop_back();
      const int q = s.map[static_cast<std::size_t>(p)];
      for (int g : a_.left().arrows_from(a_.j1(p)))
        if (!set_one(s, queue, a_.act_left(g, p), b_.act_left(g, q))) return false;
      for (int g = 0; g < a_.right().arrow_count(); ++g)
        if (!set_one(s, queue, a_.act_right(p, g), b_.act_right(q, g))) return false;
    }
    return true;
  }

  bool search(State& s) {
    int x = 0;
    while (x < a_.size() && s.map[static_cast<std::size_t>(x)] >= 0) ++x;
    if (x == a_.size()) {
      result_ = s.map;
      return true;
    }
    for (int y = 0; y < b_.size(); ++y) {
      if (s.used[static_cast<std::size_t>(y)] || sig_a_[static_cast<std::size_t>(x)] != sig_b_[static_cast<std::size_t>(y)]) continue;
      State next = s;
      if (assign(next, x, y) && search(next)) return true;
    }
    return false;
  }

  const Bibundle& a_;
  const Bibundle& b_;
  std::vector<Signature> sig_a_, sig_b_;
  std::vector<int> result_;
};

}  // namespace

std::optional<std::vector<int>> bibundle_isomorphic(const Bibundle& s1, const Bibundle& s2) {
  if (!(s1.left() == s2.left()) || !(s1.right() == s2.right()) || s1.size() != s2.size()) return std::nullopt;
  return BibundleIsoSearch(s1, s2).run();
}

std::vector<int> induced_orbit_map(const Bibundle& s) {
  if (!is_left_principal(s)) throw Error(ErrorCode::not_left_principal, "orbit map needs a left principal bibundle");
  const OrbitPartition lo = orbits(s.left()), ro = orbits(s.right());
  std::vector<int> map(static_cast<std::size_t>(ro.count()), -1);
  for (int x = 0; x < s.size(); ++x) {
    const int o2 = ro.block_of[static_cast<std::size_t>(s.j2(x))];
    const int o1 = lo.block_of[static_cast<std::size_t>(s.j1(x))];
    int& slot = map[static_cast<std::size_t>(o2)];
    if (slot >= 0 && slot != o1) throw Error(ErrorCode::not_left_principal, "orbit relation is not single valued");
    slot = o1;
  }
  return map;
}

std::optional<std::vector<int>> match_orbits(const FiniteGroupoid& g1, const FiniteGroupoid& g2) {
  const OrbitPartition o1 = orbits(g1), o2 = orbits(g2);
  if (o1.count() != o2.count()) return std::nullopt;
  std::vector<FiniteGroup> iso1, iso2;
  for (const auto& b : o1.blocks) iso1.push_back(isotropy(g1, b.front()));
  for (const auto& b : o2.blocks) iso2.push_back(isotropy(g2, b.front()));
  std::vector<int> match(static_cast<std::size_t>(o2.count()), -1);
  std::vector<char> taken(static_cast<std::size_t>(o1.count()), 0);
  for (int j = 0; j < o2.count(); ++j) {
    for (int i = 0; i < o1.count() && match[static_cast<std::size_t>(j)] < 0; ++i)
      if (!taken[static_cast<std::size_t>(i)] && groups_isomorphic(iso2[static_cast<std::size_t>(j)], iso1[static_cast<std::size_t>(i)])) {
        match[static_cast<std::size_t>(j)] = i;
        taken[static_cast<std::size_t>(i)] = 1;
      }
    if (match[static_cast<std::size_t>(j)] < 0) return std::nullopt;
  }
  return match;
}

std::optional<Bibundle> morita_equivalent(const FiniteGroupoid& g1, const FiniteGroupoid& g2) {
  const auto match = match_orbits(g1, g2);
  if (!match) return std::nullopt;
  const OrbitPartition o1 = orbits(g1), o2 = orbits(g2);

  GroupoidMorphism phi;
  phi.object_map.assign(static_cast<std::size_t>(g2.object_count()), -1);
  phi.arrow_map.assign(static_cast<std::size_t>(g2.arrow_count()), -1);
  for (int j = 0; j < o2.count(); ++j) {
    const int x2 = o2.blocks[static_cast<std::size_t>(j)].front();
    const int x1 = o1.blocks[static_cast<std::size_t>((*match)[static_cast<std::size_t>(j)])].front();
    const std::vector<int> loops2 = isotropy_arrows(g2, x2), loops1 = isotropy_arrows(g1, x1);
    const auto iso = find_group_isomorphism(isotropy(g2, x2), isotropy(g1, x1));
    std::vector<int> loop_image(static_cast<std::size_t>(g2.arrow_count()), -1);
    for (std::size_t i = 0; i < loops2.size(); ++i)
      loop_image[static_cast<std::size_t>(loops2[i])] = loops1[static_cast<std::size_t>((*iso)[i])];

    // k[y]: the smallest arrow x2 -> y.
    std::vector<int> k(static_cast<std::size_t>(g2.object_count()), -1);
    for (int a : g2.arrows_from(x2))
      if (k[static_cast<std::size_t>(g2.tgt(a))] < 0) k[static_cast<std::size_t>(g2.tgt(a))] = a;
    for (int y : o2.blocks[static_cast<std::size_t>(j)]) {
      phi.object_map[static_cast<std::size_t>(y)] = x1;
      for (int a : g2.arrows_from(y)) {
        const int c = g2.compose(g2.inverse(k[static_cast<std::size_t>(g2.tgt(a))]), g2.compose(a, k[static_cast<std::size_t>(y)]));
        phi.arrow_map[static_cast<std::size_t>(a)] = loop_image[static_cast<std::size_t>(c)];
      }
    }
  }
  Bibundle witness = from_homomorphism(g1, g2, phi);
  if (!principality(witness).biprincipal())
    throw std::logic_error("Morita witness construction produced a non-biprincipal bibundle");
  return witness;
}

}  // namespace morita
