#include "morita/tss.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "morita/error.hpp"
#include "morita/union_find.hpp"

namespace morita {

int LabeledSurfaceGraph::degree(int v) const {
  int d = 0;
  for (const auto& e : edges) d += (e.tail == v) + (e.head == v);
  return d;
}

LabeledSurfaceGraph LabeledSurfaceGraph::reversed() const {
  LabeledSurfaceGraph out = *this;
  for (auto& e : out.edges) std::swap(e.tail, e.head);
  return out;
}

ValidationReport validate_tss(const LabeledSurfaceGraph& g) {
  ValidationReport report;
  const int n = g.vertex_count();
  if (n == 0) {
    report.violations.push_back({"empty", {}});
    return report;
  }
  bool endpoints_ok = true;
  for (int i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edges[static_cast<std::size_t>(i)];
    if (e.tail < 0 || e.tail >= n || e.head < 0 || e.head >= n) {
      report.violations.push_back({"edge-endpoint", {std::to_string(i)}});
      endpoints_ok = false;
      continue;
    }
    if (!(e.period > 0) || !std::isfinite(e.period))
      report.violations.push_back({"period", {std::to_string(i), std::to_string(e.period)}});
  }
  for (const auto& v : g.vertices)
    if (v.genus < 0) report.violations.push_back({"genus", {v.id, std::to_string(v.genus)}});
  if (!endpoints_ok) return report;

  UnionFind uf(n);
  for (const auto& e : g.edges) uf.unite(e.tail, e.head);
  for (int v = 1; v < n; ++v)
    if (uf.find(v) != uf.find(0)) report.violations.push_back({"connectivity", {g.vertices[0].id, g.vertices[static_cast<std::size_t>(v)].id}});

  const int chi = euler_characteristic(g);
  if (chi % 2 != 0) report.violations.push_back({"euler-parity", {std::to_string(chi)}});
  if (chi > 2) report.violations.push_back({"euler-bound", {std::to_string(chi)}});
  return report;
}

int euler_characteristic(const LabeledSurfaceGraph& g) {
  int chi = 0;
  for (int v = 0; v < g.vertex_count(); ++v) chi += 2 - 2 * g.vertices[static_cast<std::size_t>(v)].genus - g.degree(v);
  return chi;
}

int surface_genus(const LabeledSurfaceGraph& g) {
  const int chi = euler_characteristic(g);
  if (chi % 2 != 0) throw Error(ErrorCode::inconsistent_topology, "odd Euler characteristic " + std::to_string(chi));
  if (chi > 2) throw Error(ErrorCode::inconsistent_topology, "Euler characteristic " + std::to_string(chi) + " > 2");
  return (2 - chi) / 2;
}

namespace {

// Edges between each ordered pair of vertices, sorted by period.
class EdgeIndex {
 public:
  explicit EdgeIndex(const LabeledSurfaceGraph& g) : g_(&g) {
    for (int i = 0; i < g.edge_count(); ++i) {
      const auto& e = g.edges[static_cast<std::size_t>(i)];
      between_[{e.tail, e.head}].push_back(i);
    }
    for (auto& [key, list] : between_)
      std::stable_sort(list.begin(), list.end(), [&](int a, int b) { return period(a) < period(b); });
    for (int v = 0; v < g.vertex_count(); ++v) {
      int out = 0, in = 0;
      for (const auto& e : g.edges) {
        out += e.tail == v;
        in += e.head == v;
      }
      out_degree_.push_back(out);
      in_degree_.push_back(in);
    }
  }

  const std::vector<int>& between(int u, int v) const {
    static const std::vector<int> none;
    auto it = between_.find({u, v});
    return it == between_.end() ? none : it->second;
  }
  double period(int e) const { return g_->edges[static_cast<std::size_t>(e)].period; }
  int out_degree(int v) const { return out_degree_[static_cast<std::size_t>(v)]; }
  int in_degree(int v) const { return in_degree_[static_cast<std::size_t>(v)]; }
  const std::map<std::pair<int, int>, std::vector<int>>& all() const { return between_; }

 private:
  const LabeledSurfaceGraph* g_;
  std::map<std::pair<int, int>, std::vector<int>> between_;
  std::vector<int> out_degree_, in_degree_;
};

// Sorted lists admit a tolerance-respecting bijection iff they match
// positionally.
bool periods_match(const EdgeIndex& a, const std::vector<int>& ea, const EdgeIndex& b, const std::vector<int>& eb,
                   double tol) {
  if (ea.size() != eb.size()) return false;
  for (std::size_t i = 0; i < ea.size(); ++i)
    if (!(std::abs(a.period(ea[i]) - b.period(eb[i])) <= tol)) return false;
  return true;
}

// Vertex order for the search: breadth first, so that each vertex after the
// first of its component is adjacent to an earlier one.
std::vector<int> search_order(const LabeledSurfaceGraph& g) {
  const int n = g.vertex_count();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const auto& e : g.edges) {
    adj[static_cast<std::size_t>(e.tail)].push_back(e.head);
    adj[static_cast<std::size_t>(e.head)].push_back(e.tail);
  }
  std::vector<int> order;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int start = 0; start < n; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    seen[static_cast<std::size_t>(start)] = 1;
    std::size_t i = order.size();
    order.push_back(start);
    for (; i < order.size(); ++i)
      for (int w : adj[static_cast<std::size_t>(order[i])])
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          order.push_back(w);
        }
  }
  return order;
}

// Calls `visit` with every vertex bijection compatible with genus labels and
// edge periods; stops early when it returns false.
void for_each_vertex_map(const LabeledSurfaceGraph& g1, const LabeledSurfaceGraph& g2, double tol,
                         const std::function<bool(const std::vector<int>&)>& visit) {
  const int n = g1.vertex_count();
  if (n != g2.vertex_count() || g1.edge_count() != g2.edge_count()) return;
  const EdgeIndex e1(g1), e2(g2);
  const std::vector<int> order = search_order(g1);
  std::vector<int> image(static_cast<std::size_t>(n), -1);
  std::vector<char> used(static_cast<std::size_t>(n), 0);

  auto compatible = [&](int u, int fu, std::size_t placed) {
    if (g1.vertices[static_cast<std::size_t>(u)].genus != g2.vertices[static_cast<std::size_t>(fu)].genus) return false;
    if (e1.out_degree(u) != e2.out_degree(fu) || e1.in_degree(u) != e2.in_degree(fu)) return false;
    if (!periods_match(e1, e1.between(u, u), e2, e2.between(fu, fu), tol)) return false;
    for (std::size_t i = 0; i < placed; ++i) {
      const int w = order[i];
      const int fw = image[static_cast<std::size_t>(w)];
      if (!periods_match(e1, e1.between(u, w), e2, e2.between(fu, fw), tol)) return false;
      if (!periods_match(e1, e1.between(w, u), e2, e2.between(fw, fu), tol)) return false;
    }
    return true;
  };

  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == order.size()) return visit(image);
    const int u = order[depth];
    for (int fu = 0; fu < n; ++fu) {
      if (used[static_cast<std::size_t>(fu)] || !compatible(u, fu, depth)) continue;
      used[static_cast<std::size_t>(fu)] = 1;
      image[static_cast<std::size_t>(u)] = fu;
      if (!self(self, depth + 1)) return false;
      used[static_cast<std::size_t>(fu)] = 0;
      image[static_cast<std::size_t>(u)] = -1;
    }
    return true;
  };
  search(search, 0);
}

TssIsomorphism positional_edge_map(const LabeledSurfaceGraph& g1, const LabeledSurfaceGraph& g2,
                                   const std::vector<int>& vertex_map) {
  const EdgeIndex e1(g1), e2(g2);
  TssIsomorphism iso{vertex_map, std::vector<int>(static_cast<std::size_t>(g1.edge_count()), -1)};
  for (const auto& [key, list] : e1.all()) {
    const auto& target = e2.between(vertex_map[static_cast<std::size_t>(key.first)],
                                    vertex_map[static_cast<std::size_t>(key.second)]);
    for (std::size_t i = 0; i < list.size(); ++i) iso.edge_map[static_cast<std::size_t>(list[i])] = target[i];
  }
  return iso;
}

std::vector<double> sorted_periods(const LabeledSurfaceGraph& g) {
  std::vector<double> p;
  for (const auto& e : g.edges) p.push_back(e.period);
  std::sort(p.begin(), p.end());
  return p;
}

}  // namespace

std::optional<TssIsomorphism> morita_equivalent_tss(const LabeledSurfaceGraph& g1, const LabeledSurfaceGraph& g2,
                                                    double period_tolerance, Orientation orientation) {
  const LabeledSurfaceGraph target = orientation == Orientation::reversing ? g2.reversed() : g2;
  std::optional<TssIsomorphism> found;
  for_each_vertex_map(g1, target, period_tolerance, [&](const std::vector<int>& vm) {
    found = positional_edge_map(g1, target, vm);
    return false;
  });
  return found;
}

std::optional<TssIsomorphism> gauge_equivalent_tss(const LabeledSurfaceGraph& g1, const LabeledSurfaceGraph& g2,
                                                   double period_tolerance, Orientation orientation) {
  return morita_equivalent_tss(g1, g2, period_tolerance, orientation);
}

std::optional<TssIsomorphism> poisson_isomorphic_tss(const LabeledSurfaceGraph& g1, const LabeledSurfaceGraph& g2,
                                                     double tolerance, Orientation orientation) {
  if (!g1.volume || !g2.volume) throw Error(ErrorCode::missing_volume, "both structures need a regularized volume");
  if (!(std::abs(*g1.volume - *g2.volume) <= tolerance)) return std::nullopt;
  return morita_equivalent_tss(g1, g2, tolerance, orientation);
}

std::optional<std::string> first_invariant_difference(const LabeledSurfaceGraph& g1, const LabeledSurfaceGraph& g2,
                                                      double period_tolerance) {
  if (g1.vertex_count() != g2.vertex_count()) return "vertex-count";
  if (g1.edge_count() != g2.edge_count()) return "edge-count";
  std::vector<int> genera1, genera2;
  for (const auto& v : g1.vertices) genera1.push_back(v.genus);
  for (const auto& v : g2.vertices) genera2.push_back(v.genus);
  std::sort(genera1.begin(), genera1.end());
  std::sort(genera2.begin(), genera2.end());
  if (genera1 != genera2) return "genus-multiset";
  const auto p1 = sorted_periods(g1), p2 = sorted_periods(g2);
  for (std::size_t i = 0; i < p1.size(); ++i)
    if (!(std::abs(p1[i] - p2[i]) <= period_tolerance)) return "period-multiset";
  if (euler_characteristic(g1) != euler_characteristic(g2)) return "surface-genus";
  return std::nullopt;
}

GraphAutomorphisms graph_automorphisms(const LabeledSurfaceGraph& g) {
  GraphAutomorphisms out;
  const EdgeIndex idx(g);
  for_each_vertex_map(g, g, 0.0, [&](const std::vector<int>& vm) {
    const TssIsomorphism base = positional_edge_map(g, g, vm);
    // Runs of equal periods inside each bucket can be permuted freely.
    std::vector<std::vector<int>> runs;
    for (const auto& [key, list] : idx.all()) {
      for (std::size_t i = 0; i < list.size();) {
        std::size_t j = i;
        while (j < list.size() && idx.period(list[j]) == idx.period(list[i])) ++j;
        if (j - i > 1) runs.emplace_back(list.begin() + static_cast<std::ptrdiff_t>(i),
                                         list.begin() + static_cast<std::ptrdiff_t>(j));
        i = j;
      }
    }
    std::vector<std::vector<int>> images;
    for (const auto& run : runs) {
      std::vector<int> im;
      for (int e : run) im.push_back(base.edge_map[static_cast<std::size_t>(e)]);
      std::sort(im.begin(), im.end());
      images.push_back(std::move(im));
    }
    auto expand = [&](auto&& self, std::size_t r, TssIsomorphism& current) -> void {
      if (r == runs.size()) {
        out.maps.push_back(current);
        return;
      }
      std::vector<int> im = images[r];
      do {
        for (std::size_t i = 0; i < im.size(); ++i) current.edge_map[static_cast<std::size_t>(runs[r][i])] = im[i];
        self(self, r + 1, current);
      } while (std::next_permutation(im.begin(), im.end()));
    };
    TssIsomorphism current = base;
    expand(expand, 0, current);
    return true;
  });
  std::sort(out.maps.begin(), out.maps.end());

  std::vector<std::string> labels;
  std::vector<std::vector<int>> table(out.maps.size());
  for (std::size_t a = 0; a < out.maps.size(); ++a) {
    labels.push_back("g" + std::to_string(a));
    for (const auto& b : out.maps) {
      TssIsomorphism c;
      for (int v : b.vertex_map) c.vertex_map.push_back(out.maps[a].vertex_map[static_cast<std::size_t>(v)]);
      for (int e : b.edge_map) c.edge_map.push_back(out.maps[a].edge_map[static_cast<std::size_t>(e)]);
      auto it = std::lower_bound(out.maps.begin(), out.maps.end(), c);
      table[a].push_back(static_cast<int>(it - out.maps.begin()));
    }
  }
  out.group = FiniteGroup(std::move(labels), std::move(table));
  return out;
}

PicardIngredients picard_ingredients(const LabeledSurfaceGraph& g) {
  PicardIngredients out;
  out.graph_aut = graph_automorphisms(g);
  out.torus_rank = g.edge_count();
  for (int v = 0; v < g.vertex_count(); ++v)
    out.leaf_descriptors.emplace_back(g.vertices[static_cast<std::size_t>(v)].genus, g.degree(v));
  return out;
}

}  // namespace morita
