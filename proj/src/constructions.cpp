#include "morita/constructions.hpp"

#include <algorithm>
#include <numeric>

#include "morita/error.hpp"
#include "morita/union_find.hpp"

namespace morita {

FiniteGroupoid pair_groupoid(int n) {
  if (n < 1) throw Error(ErrorCode::parse, "pair groupoid needs at least one object");
  std::vector<std::string> objects, arrows;
  for (int x = 1; x <= n; ++x) objects.push_back(std::to_string(x));
  // arrow index a = x * n + y stands for (x,y): from y to x
  std::vector<int> src, tgt, inverse, unit(static_cast<std::size_t>(n));
  const int count = n * n;
  std::vector<int> comp(static_cast<std::size_t>(count * count), -1);
  for (int x = 0; x < n; ++x) {
    unit[static_cast<std::size_t>(x)] = x * n + x;
    for (int y = 0; y < n; ++y) {
      arrows.push_back("(" + objects[static_cast<std::size_t>(x)] + "," + objects[static_cast<std::size_t>(y)] + ")");
      src.push_back(y);
      tgt.push_back(x);
      inverse.push_back(y * n + x);
      for (int z = 0; z < n; ++z)
        comp[static_cast<std::size_t>((x * n + y) * count + (y * n + z))] = x * n + z;
    }
  }
  return FiniteGroupoid::from_indexed(objects, arrows, src, tgt, comp, unit, inverse);
}

FiniteGroupoid group_groupoid(const FiniteGroup& group, const std::string& object) {
  const int n = group.order();
  std::vector<int> src(static_cast<std::size_t>(n), 0), tgt(static_cast<std::size_t>(n), 0), inverse;
  std::vector<int> comp(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a) {
    inverse.push_back(group.inverse(a));
    for (int b = 0; b < n; ++b) comp[static_cast<std::size_t>(a * n + b)] = group.multiply(a, b);
  }
  return FiniteGroupoid::from_indexed({object}, group.labels(), src, tgt, comp, {group.identity()}, inverse);
}

FiniteGroupoid action_groupoid(const FiniteGroup& group, const std::vector<std::string>& points,
                               const std::vector<std::vector<int>>& act) {
  const int ng = group.order();
  const int nx = static_cast<int>(points.size());
  if (static_cast<int>(act.size()) != ng) throw Error(ErrorCode::invalid_action, "action table needs one row per element");
  for (const auto& row : act) {
    if (static_cast<int>(row.size()) != nx) throw Error(ErrorCode::invalid_action, "action row has wrong length");
    for (int v : row)
      if (v < 0 || v >= nx) throw Error(ErrorCode::invalid_action, "action entry out of range");
  }
  auto acts = [&](int g, int x) { return act[static_cast<std::size_t>(g)][static_cast<std::size_t>(x)]; };
  for (int x = 0; x < nx; ++x) {
    if (acts(group.identity(), x) != x)
      throw Error(ErrorCode::invalid_action, "identity moves point " + points[static_cast<std::size_t>(x)]);
    for (int g = 0; g < ng; ++g)
      for (int h = 0; h < ng; ++h)
        if (acts(group.multiply(g, h), x) != acts(g, acts(h, x)))
          throw Error(ErrorCode::invalid_action, "(gh).x != g.(h.x) for g=" + group.label(g) + ", h=" + group.label(h) +
                                                     ", x=" + points[static_cast<std::size_t>(x)]);
  }

  const int n = ng * nx;  // arrow a = g * nx + x stands for (g,x)
  std::vector<std::string> arrows;
  std::vector<int> src, tgt, inverse, unit;
  std::vector<int> comp(static_cast<std::size_t>(n * n), -1);
  for (int g = 0; g < ng; ++g)
    for (int x = 0; x < nx; ++x) {
      arrows.push_back("(" + group.label(g) + "," + points[static_cast<std::size_t>(x)] + ")");
      src.push_back(x);
      tgt.push_back(acts(g, x));
      inverse.push_back(group.inverse(g) * nx + acts(g, x));
      for (int h = 0; h < ng; ++h)
        for (int y = 0; y < nx; ++y)
          if (acts(h, y) == x)
            comp[static_cast<std::size_t>((g * nx + x) * n + (h * nx + y))] = group.multiply(g, h) * nx + y;
    }
  for (int x = 0; x < nx; ++x) unit.push_back(group.identity() * nx + x);
  return FiniteGroupoid::from_indexed(points, arrows, src, tgt, comp, unit, inverse);
}

std::vector<std::string> principal_bundle_defects(const PrincipalBundleData& d) {
  std::vector<std::string> defects;
  const int ne = static_cast<int>(d.total.size()), nb = static_cast<int>(d.base.size());
  const int ng = d.group.order();
  if (static_cast<int>(d.projection.size()) != ne) return {"projection has wrong length"};
  if (static_cast<int>(d.act.size()) != ne) return {"action table needs one row per total-space point"};
  for (int e = 0; e < ne; ++e) {
    const int b = d.projection[static_cast<std::size_t>(e)];
    if (b < 0 || b >= nb) return {"projection value out of range"};
    if (static_cast<int>(d.act[static_cast<std::size_t>(e)].size()) != ng) return {"action row has wrong length"};
    for (int v : d.act[static_cast<std::size_t>(e)])
      if (v < 0 || v >= ne) return {"action entry out of range"};
  }
  auto acts = [&](int e, int g) { return d.act[static_cast<std::size_t>(e)][static_cast<std::size_t>(g)]; };
  auto p = [&](int e) { return d.projection[static_cast<std::size_t>(e)]; };

  std::vector<char> hit(static_cast<std::size_t>(nb), 0);
  for (int e = 0; e < ne; ++e) hit[static_cast<std::size_t>(p(e))] = 1;
  for (int b = 0; b < nb; ++b)
    if (!hit[static_cast<std::size_t>(b)]) defects.push_back("projection misses base point " + d.base[static_cast<std::size_t>(b)]);

  for (int e = 0; e < ne; ++e) {
    const std::string& id = d.total[static_cast<std::size_t>(e)];
    if (acts(e, d.group.identity()) != e) defects.push_back("identity moves " + id);
    for (int g = 0; g < ng; ++g) {
      if (p(acts(e, g)) != p(e)) defects.push_back("action leaves the fibre of " + id);
      if (g != d.group.identity() && acts(e, g) == e) defects.push_back("action not free at " + id);
      for (int h = 0; h < ng; ++h)
        if (acts(acts(e, g), h) != acts(e, d.group.multiply(g, h)))
          defects.push_back("(e.g).h != e.(gh) at " + id);
    }
    for (int f = 0; f < ne; ++f) {
      if (p(f) != p(e)) continue;
      bool reached = false;
      for (int g = 0; g < ng && !reached; ++g) reached = acts(e, g) == f;
      if (!reached) defects.push_back("action not transitive on the fibre of " + id);
    }
  }
  return defects;
}

namespace {

// Copy of the bundle with total-space points sorted by id.
PrincipalBundleData sorted_total(const PrincipalBundleData& d) {
  std::vector<int> order(d.total.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return d.total[static_cast<std::size_t>(a)] < d.total[static_cast<std::size_t>(b)]; });
  std::vector<int> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  PrincipalBundleData out;
  out.base = d.base;
  out.group = d.group;
  for (int e : order) {
    out.total.push_back(d.total[static_cast<std::size_t>(e)]);
    out.projection.push_back(d.projection[static_cast<std::size_t>(e)]);
    std::vector<int> row;
    for (int v : d.act[static_cast<std::size_t>(e)]) row.push_back(rank[static_cast<std::size_t>(v)]);
    out.act.push_back(std::move(row));
  }
  return out;
}

}  // namespace

FiniteGroupoid gauge_groupoid(const PrincipalBundleData& data) {
  if (auto defects = principal_bundle_defects(data); !defects.empty())
    throw Error(ErrorCode::not_principal, defects.front());
  const PrincipalBundleData d = sorted_total(data);
  const int ne = static_cast<int>(d.total.size()), ng = d.group.order();
  auto p = [&](int e) { return d.projection[static_cast<std::size_t>(e)]; };
  auto acts = [&](int e, int g) { return d.act[static_cast<std::size_t>(e)][static_cast<std::size_t>(g)]; };

  // Pair (x,y) has index x * ne + y, which is lexicographic order on ids.
  UnionFind uf(ne * ne);
  for (int x = 0; x < ne; ++x)
    for (int y = 0; y < ne; ++y)
      for (int g = 0; g < ng; ++g) uf.unite(x * ne + y, acts(x, g) * ne + acts(y, g));

  std::vector<int> class_of(static_cast<std::size_t>(ne * ne));
  std::vector<int> reps;
  std::vector<int> class_of_root(static_cast<std::size_t>(ne * ne), -1);
  for (int pr = 0; pr < ne * ne; ++pr) {
    const int root = uf.find(pr);
    int& c = class_of_root[static_cast<std::size_t>(root)];
    if (c < 0) {
      c = static_cast<int>(reps.size());
      reps.push_back(root);
    }
    class_of[static_cast<std::size_t>(pr)] = c;
  }
  auto cls = [&](int x, int y) { return class_of[static_cast<std::size_t>(x * ne + y)]; };

  // shift[e * ne + f] = the unique g with e.g = f, for e and f in one fibre.
  std::vector<int> shift(static_cast<std::size_t>(ne * ne), -1);
  for (int e = 0; e < ne; ++e)
    for (int g = 0; g < ng; ++g) shift[static_cast<std::size_t>(e * ne + acts(e, g))] = g;

  const int n = static_cast<int>(reps.size());
  std::vector<std::string> arrows;
  std::vector<int> src, tgt, inverse;
  std::vector<int> comp(static_cast<std::size_t>(n * n), -1);
  for (int a = 0; a < n; ++a) {
    const int x1 = reps[static_cast<std::size_t>(a)] / ne, y1 = reps[static_cast<std::size_t>(a)] % ne;
    arrows.push_back("[" + d.total[static_cast<std::size_t>(x1)] + "," + d.total[static_cast<std::size_t>(y1)] + "]");
    src.push_back(p(y1));
    tgt.push_back(p(x1));
    inverse.push_back(cls(y1, x1));
    for (int b = 0; b < n; ++b) {
      const int x2 = reps[static_cast<std::size_t>(b)] / ne, y2 = reps[static_cast<std::size_t>(b)] % ne;
      if (p(y1) != p(x2)) continue;
      const int g = shift[static_cast<std::size_t>(x2 * ne + y1)];
      comp[static_cast<std::size_t>(a * n + b)] = cls(x1, acts(y2, g));
    }
  }
  std::vector<int> unit(d.base.size(), -1);
  for (int e = ne - 1; e >= 0; --e) unit[static_cast<std::size_t>(p(e))] = cls(e, e);
  return FiniteGroupoid::from_indexed(d.base, arrows, src, tgt, comp, unit, inverse);
}

FiniteGroupoid disjoint_union(const std::vector<FiniteGroupoid>& parts) {
  GroupoidTables all;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const std::string prefix = std::to_string(k) + ":";
    GroupoidTables t = parts[k].to_tables();
    for (const auto& x : t.objects) all.objects.push_back(prefix + x);
    for (const auto& a : t.arrows) all.arrows.push_back({prefix + a.id, prefix + a.src, prefix + a.tgt});
    for (const auto& [g, h, gh] : t.comp) all.comp.push_back({prefix + g, prefix + h, prefix + gh});
    for (const auto& [x, e] : t.units) all.units[prefix + x] = prefix + e;
    for (const auto& [g, gi] : t.inv) all.inv[prefix + g] = prefix + gi;
  }
  return FiniteGroupoid::from_tables(all);
}

FiniteGroupoid bundle_of_groups(const std::vector<FiniteGroup>& fibres) {
  std::vector<FiniteGroupoid> parts;
  for (const auto& g : fibres) parts.push_back(group_groupoid(g));
  return disjoint_union(parts);
}

PrincipalBundleData trivial_bundle(const FiniteGroup& h, int n) {
  PrincipalBundleData d;
  d.group = h;
  const int nh = h.order();
  for (int i = 1; i <= n; ++i) {
    d.base.push_back(std::to_string(i));
    for (int a = 0; a < nh; ++a) {
      d.total.push_back("(" + std::to_string(i) + "," + h.label(a) + ")");
      d.projection.push_back(i - 1);
      std::vector<int> row;
      for (int g = 0; g < nh; ++g) row.push_back((i - 1) * nh + h.multiply(a, g));
      d.act.push_back(std::move(row));
    }
  }
  return d;
}

FiniteGroupoid transitive_groupoid(const FiniteGroup& h, int n) { return gauge_groupoid(trivial_bundle(h, n)); }

PrincipalBundleData source_fibre_bundle(const FiniteGroupoid& g, int x) {
  const OrbitPartition orb = orbits(g);
  const auto& block = orb.blocks[static_cast<std::size_t>(orb.block_of[static_cast<std::size_t>(x)])];
  std::vector<int> base_index(static_cast<std::size_t>(g.object_count()), -1);
  PrincipalBundleData d;
  for (std::size_t i = 0; i < block.size(); ++i) {
    base_index[static_cast<std::size_t>(block[i])] = static_cast<int>(i);
    d.base.push_back(g.object_id(block[i]));
  }
  d.group = isotropy(g, x);
  const std::vector<int> loops = isotropy_arrows(g, x);
  const std::vector<int>& fibre = g.arrows_from(x);
  std::vector<int> local(static_cast<std::size_t>(g.arrow_count()), -1);
  for (std::size_t i = 0; i < fibre.size(); ++i) local[static_cast<std::size_t>(fibre[i])] = static_cast<int>(i);
  for (int e : fibre) {
    d.total.push_back(g.arrow_id(e));
    d.projection.push_back(base_index[static_cast<std::size_t>(g.tgt(e))]);
    std::vector<int> row;
    for (int h : loops) row.push_back(local[static_cast<std::size_t>(g.compose(e, h))]);
    d.act.push_back(std::move(row));
  }
  return d;
}

FiniteGroupoid orbitwise_gauge_model(const FiniteGroupoid& g) {
  std::vector<FiniteGroupoid> parts;
  for (const auto& block : orbits(g).blocks) parts.push_back(gauge_groupoid(source_fibre_bundle(g, block.front())));
  return disjoint_union(parts);
}

}  // namespace morita
