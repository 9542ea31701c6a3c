#include "morita/groupoid.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "morita/error.hpp"
#include "morita/union_find.hpp"

namespace morita {

struct FiniteGroupoid::Data {
  std::vector<std::string> objects;
  std::vector<std::string> arrows;
  std::vector<int> src, tgt, unit, inverse;
  std::vector<int> comp;  // arrows x arrows
  std::vector<std::vector<int>> from;
};

namespace {

using Index = std::unordered_map<std::string, int>;

Index make_index(const std::vector<std::string>& ids, const char* what) {
  Index index;
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (!index.emplace(ids[i], static_cast<int>(i)).second)
      throw Error(ErrorCode::parse, std::string("duplicate ") + what + " id '" + ids[i] + "'");
  return index;
}

int lookup(const Index& index, const std::string& id, const char* what) {
  auto it = index.find(id);
  if (it == index.end()) throw Error(ErrorCode::parse, std::string("unknown ") + what + " id '" + id + "'");
  return it->second;
}

// order[i] = original index of the i-th smallest id; rank is its inverse.
std::pair<std::vector<int>, std::vector<int>> sort_permutation(const std::vector<std::string>& ids) {
  std::vector<int> order(ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return ids[static_cast<std::size_t>(a)] < ids[static_cast<std::size_t>(b)]; });
  std::vector<int> rank(ids.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  return {order, rank};
}

}  // namespace

FiniteGroupoid::FiniteGroupoid() : d_(std::make_shared<Data>()) {}

FiniteGroupoid FiniteGroupoid::from_indexed(std::vector<std::string> objects,
                                            std::vector<std::string> arrows,
                                            const std::vector<int>& src, const std::vector<int>& tgt,
                                            const std::vector<int>& comp,
                                            const std::vector<int>& unit,
                                            const std::vector<int>& inverse) {
  make_index(objects, "object");
  make_index(arrows, "arrow");
  const std::size_t n = arrows.size(), m = objects.size();
  if (src.size() != n || tgt.size() != n || inverse.size() != n || unit.size() != m ||
      comp.size() != n * n)
    throw Error(ErrorCode::parse, "groupoid tables have inconsistent sizes");

  auto [obj_order, obj_rank] = sort_permutation(objects);
  auto [arr_order, arr_rank] = sort_permutation(arrows);
  auto remap_arrow = [&](int g) { return g < 0 ? -1 : arr_rank[static_cast<std::size_t>(g)]; };

  auto d = std::make_shared<Data>();
  for (int i : obj_order) d->objects.push_back(std::move(objects[static_cast<std::size_t>(i)]));
  for (int i : arr_order) d->arrows.push_back(std::move(arrows[static_cast<std::size_t>(i)]));
  d->src.resize(n);
  d->tgt.resize(n);
  d->inverse.resize(n);
  d->unit.resize(m);
  d->comp.assign(n * n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto g = static_cast<std::size_t>(arr_order[i]);
    if (src[g] < 0 || tgt[g] < 0 || static_cast<std::size_t>(src[g]) >= m || static_cast<std::size_t>(tgt[g]) >= m)
      throw Error(ErrorCode::parse, "arrow endpoint out of range");
    d->src[i] = obj_rank[static_cast<std::size_t>(src[g])];
    d->tgt[i] = obj_rank[static_cast<std::size_t>(tgt[g])];
    d->inverse[i] = remap_arrow(inverse[g]);
    for (std::size_t j = 0; j < n; ++j)
      d->comp[i * n + j] = remap_arrow(comp[g * n + static_cast<std::size_t>(arr_order[j])]);
  }
  for (std::size_t x = 0; x < m; ++x) d->unit[x] = remap_arrow(unit[static_cast<std::size_t>(obj_order[x])]);
  d->from.resize(m);
  for (std::size_t g = 0; g < n; ++g) d->from[static_cast<std::size_t>(d->src[g])].push_back(static_cast<int>(g));
  return FiniteGroupoid(std::move(d));
}

FiniteGroupoid FiniteGroupoid::from_tables(const GroupoidTables& t) {
  const Index objects = make_index(t.objects, "object");
  std::vector<std::string> arrow_ids;
  for (const auto& a : t.arrows) arrow_ids.push_back(a.id);
  const Index arrows = make_index(arrow_ids, "arrow");
  const std::size_t n = arrow_ids.size();

  std::vector<int> src, tgt;
  for (const auto& a : t.arrows) {
    src.push_back(lookup(objects, a.src, "object"));
    tgt.push_back(lookup(objects, a.tgt, "object"));
  }
  std::vector<int> comp(n * n, -1);
  for (const auto& [g, h, gh] : t.comp) {
    const auto cell = static_cast<std::size_t>(lookup(arrows, g, "arrow")) * n +
                      static_cast<std::size_t>(lookup(arrows, h, "arrow"));
    const int value = lookup(arrows, gh, "arrow");
    if (comp[cell] >= 0 && comp[cell] != value)
      throw Error(ErrorCode::parse, "conflicting composition entries for (" + g + "," + h + ")");
    comp[cell] = value;
  }
  std::vector<int> unit(t.objects.size(), -1);
  for (const auto& [x, e] : t.units)
    unit[static_cast<std::size_t>(lookup(objects, x, "object"))] = lookup(arrows, e, "arrow");
  std::vector<int> inverse(n, -1);
  for (const auto& [g, gi] : t.inv)
    inverse[static_cast<std::size_t>(lookup(arrows, g, "arrow"))] = lookup(arrows, gi, "arrow");
  return from_indexed(t.objects, arrow_ids, src, tgt, comp, unit, inverse);
}

GroupoidTables FiniteGroupoid::to_tables() const {
  GroupoidTables t;
  t.objects = d_->objects;
  const int n = arrow_count();
  for (int g = 0; g < n; ++g) {
    t.arrows.push_back({arrow_id(g), object_id(src(g)), object_id(tgt(g))});
    if (inverse(g) >= 0) t.inv[arrow_id(g)] = arrow_id(inverse(g));
    for (int h = 0; h < n; ++h)
      if (compose(g, h) >= 0) t.comp.push_back({arrow_id(g), arrow_id(h), arrow_id(compose(g, h))});
  }
  for (int x = 0; x < object_count(); ++x)
    if (unit(x) >= 0) t.units[object_id(x)] = arrow_id(unit(x));
  return t;
}

int FiniteGroupoid::object_count() const { return static_cast<int>(d_->objects.size()); }
int FiniteGroupoid::arrow_count() const { return static_cast<int>(d_->arrows.size()); }
const std::string& FiniteGroupoid::object_id(int x) const { return d_->objects[static_cast<std::size_t>(x)]; }
const std::string& FiniteGroupoid::arrow_id(int g) const { return d_->arrows[static_cast<std::size_t>(g)]; }
const std::vector<std::string>& FiniteGroupoid::object_ids() const { return d_->objects; }
const std::vector<std::string>& FiniteGroupoid::arrow_ids() const { return d_->arrows; }

std::optional<int> FiniteGroupoid::find_object(std::string_view id) const {
  auto it = std::lower_bound(d_->objects.begin(), d_->objects.end(), id);
  if (it == d_->objects.end() || *it != id) return std::nullopt;
  return static_cast<int>(it - d_->objects.begin());
}

std::optional<int> FiniteGroupoid::find_arrow(std::string_view id) const {
  auto it = std::lower_bound(d_->arrows.begin(), d_->arrows.end(), id);
  if (it == d_->arrows.end() || *it != id) return std::nullopt;
  return static_cast<int>(it - d_->arrows.begin());
}

int FiniteGroupoid::src(int g) const { return d_->src[static_cast<std::size_t>(g)]; }
int FiniteGroupoid::tgt(int g) const { return d_->tgt[static_cast<std::size_t>(g)]; }
int FiniteGroupoid::unit(int x) const { return d_->unit[static_cast<std::size_t>(x)]; }
int FiniteGroupoid::inverse(int g) const { return d_->inverse[static_cast<std::size_t>(g)]; }

int FiniteGroupoid::compose(int g, int h) const {
  return d_->comp[static_cast<std::size_t>(g) * d_->arrows.size() + static_cast<std::size_t>(h)];
}

const std::vector<int>& FiniteGroupoid::arrows_from(int x) const { return d_->from[static_cast<std::size_t>(x)]; }

std::vector<int> FiniteGroupoid::arrows_between(int from, int to) const {
  std::vector<int> out;
  for (int g : arrows_from(from))
    if (tgt(g) == to) out.push_back(g);
  return out;
}

bool operator==(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  if (a.d_ == b.d_) return true;
  return a.d_->objects == b.d_->objects && a.d_->arrows == b.d_->arrows && a.d_->src == b.d_->src &&
         a.d_->tgt == b.d_->tgt && a.d_->unit == b.d_->unit && a.d_->inverse == b.d_->inverse &&
         a.d_->comp == b.d_->comp;
}

ValidationReport validate(const FiniteGroupoid& G) {
  constexpr std::size_t kMaxWitnesses = 64;
  ValidationReport report;
  std::map<std::string, std::size_t> counts;
  auto flag = [&](const char* kind, std::vector<std::string> witness) {
    if (counts[kind]++ < kMaxWitnesses) report.violations.push_back({kind, std::move(witness)});
  };
  const int n = G.arrow_count();
  auto id = [&](int g) { return G.arrow_id(g); };

  bool table_sound = true;
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      const int gh = G.compose(g, h);
      const bool composable = G.src(g) == G.tgt(h);
      if (gh >= 0 && !composable) {
        flag("composability", {id(g), id(h)});
        table_sound = false;
      } else if (gh < 0 && composable) {
        flag("totality", {id(g), id(h)});
        table_sound = false;
      } else if (gh >= 0 && (G.src(gh) != G.src(h) || G.tgt(gh) != G.tgt(g))) {
        flag("composite-endpoints", {id(g), id(h), id(gh)});
        table_sound = false;
      }
    }
  }

  if (table_sound) {
    for (int h = 0; h < n; ++h) {
      for (int g = 0; g < n; ++g) {
        if (G.src(g) != G.tgt(h)) continue;
        const int gh = G.compose(g, h);
        for (int k = 0; k < n; ++k) {
          if (G.tgt(k) != G.src(h)) continue;
          if (G.compose(gh, k) != G.compose(g, G.compose(h, k)))
            flag("associativity", {id(g), id(h), id(k)});
        }
      }
    }
  }

  for (int x = 0; x < G.object_count(); ++x) {
    const int e = G.unit(x);
    if (e < 0) {
      flag("unit", {G.object_id(x), "missing"});
      continue;
    }
    if (G.src(e) != x || G.tgt(e) != x) {
      flag("unit", {G.object_id(x), id(e), "endpoints"});
      continue;
    }
  }
  if (table_sound) {
    for (int g = 0; g < n; ++g) {
      const int et = G.unit(G.tgt(g)), es = G.unit(G.src(g));
      if (et >= 0 && G.tgt(et) == G.tgt(g) && G.src(et) == G.tgt(g) && G.compose(et, g) != g)
        flag("unit", {id(et), id(g), "left"});
      if (es >= 0 && G.tgt(es) == G.src(g) && G.src(es) == G.src(g) && G.compose(g, es) != g)
        flag("unit", {id(g), id(es), "right"});
    }
  }

  for (int g = 0; g < n; ++g) {
    const int gi = G.inverse(g);
    if (gi < 0) {
      flag("inverse", {id(g), "missing"});
      continue;
    }
    if (G.src(gi) != G.tgt(g) || G.tgt(gi) != G.src(g)) {
      flag("inverse", {id(g), id(gi), "endpoints"});
      continue;
    }
    if (table_sound && (G.compose(gi, g) != G.unit(G.src(g)) || G.compose(g, gi) != G.unit(G.tgt(g))))
      flag("inverse", {id(g), id(gi)});
  }
  return report;
}

OrbitPartition orbits(const FiniteGroupoid& g) {
  UnionFind uf(g.object_count());
  for (int a = 0; a < g.arrow_count(); ++a) uf.unite(g.src(a), g.tgt(a));
  OrbitPartition out;
  out.block_of.assign(static_cast<std::size_t>(g.object_count()), -1);
  std::vector<int> block_of_root(static_cast<std::size_t>(g.object_count()), -1);
  for (int x = 0; x < g.object_count(); ++x) {
    const int r = uf.find(x);
    int& b = block_of_root[static_cast<std::size_t>(r)];
    if (b < 0) {
      b = out.count();
      out.blocks.emplace_back();
    }
    out.blocks[static_cast<std::size_t>(b)].push_back(x);
    out.block_of[static_cast<std::size_t>(x)] = b;
  }
  return out;
}

bool is_transitive(const FiniteGroupoid& g) { return orbits(g).count() == 1; }

bool is_group_bundle(const FiniteGroupoid& g) {
  for (int a = 0; a < g.arrow_count(); ++a)
    if (g.src(a) != g.tgt(a)) return false;
  return true;
}

std::vector<int> isotropy_arrows(const FiniteGroupoid& g, int x) { return g.arrows_between(x, x); }

FiniteGroup isotropy(const FiniteGroupoid& g, int x) {
  const std::vector<int> arrows = isotropy_arrows(g, x);
  std::vector<int> local(static_cast<std::size_t>(g.arrow_count()), -1);
  for (std::size_t i = 0; i < arrows.size(); ++i) local[static_cast<std::size_t>(arrows[i])] = static_cast<int>(i);
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table(arrows.size());
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    labels.push_back(g.arrow_id(arrows[i]));
    for (int b : arrows) table[i].push_back(local[static_cast<std::size_t>(g.compose(arrows[i], b))]);
  }
  return FiniteGroup(std::move(labels), std::move(table));
}

}  // namespace morita
