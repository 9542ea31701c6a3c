#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "morita/tss.hpp"

namespace corpus {

/// Connected labeled multigraph: a random spanning tree plus extra edges
/// (loops and parallels allowed). Genera and periods come from short lists
/// so that equal labels are common.
inline morita::LabeledSurfaceGraph random_surface_graph(std::mt19937& rng, int vertices, int edges) {
  std::uniform_int_distribution<int> genus(0, 1);
  const std::vector<double> periods{0.5, 1.0, 1.0, 2.0};
  std::uniform_int_distribution<std::size_t> period(0, periods.size() - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  morita::LabeledSurfaceGraph g;
  for (int v = 0; v < vertices; ++v) g.vertices.push_back({"v" + std::to_string(v), genus(rng)});
  for (int v = 1; v < vertices; ++v) {
    const int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
    if (coin(rng)) g.edges.push_back({u, v, periods[period(rng)]});
    else g.edges.push_back({v, u, periods[period(rng)]});
  }
  std::uniform_int_distribution<int> any(0, vertices - 1);
  while (g.edge_count() < edges) g.edges.push_back({any(rng), any(rng), periods[period(rng)]});
  return g;
}

/// The same graph with vertices and edges listed in a random order.
inline morita::LabeledSurfaceGraph shuffled(std::mt19937& rng, const morita::LabeledSurfaceGraph& g) {
  std::vector<int> perm(static_cast<std::size_t>(g.vertex_count()));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  morita::LabeledSurfaceGraph out;
  out.volume = g.volume;
  out.vertices.resize(g.vertices.size());
  for (int v = 0; v < g.vertex_count(); ++v) {
    out.vertices[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])] = g.vertices[static_cast<std::size_t>(v)];
    out.vertices[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])].id = "w" + std::to_string(perm[static_cast<std::size_t>(v)]);
  }
  for (const auto& e : g.edges)
    out.edges.push_back({perm[static_cast<std::size_t>(e.tail)], perm[static_cast<std::size_t>(e.head)], e.period});
  std::shuffle(out.edges.begin(), out.edges.end(), rng);
  return out;
}

/// A structured family of pairs: isomorphic shuffles, shuffles with one
/// period scaled by 1 + 1e-3, one edge reversed, one genus changed, and
/// unrelated graphs of the same size.
struct SurfacePair {
  morita::LabeledSurfaceGraph a, b;
  std::string kind;
};

inline std::vector<SurfacePair> surface_pair_corpus(unsigned seed, int count) {
  std::mt19937 rng(seed);
  std::vector<SurfacePair> out;
  for (int i = 0; static_cast<int>(out.size()) < count; ++i) {
    const int n = 1 + i % 6;
    const int e = std::min(8, n - 1 + static_cast<int>(rng() % 4));
    const auto a = random_surface_graph(rng, n, e);
    auto b = shuffled(rng, a);
    switch (i % 5) {
      case 0:
        out.push_back({a, b, "shuffle"});
        break;
      case 1:
        if (b.edges.empty()) {
          out.push_back({a, b, "shuffle"});
          break;
        }
        b.edges[rng() % b.edges.size()].period *= 1.0 + 1e-3;
        out.push_back({a, b, "perturbed"});
        break;
      case 2:
        if (b.edges.empty()) {
          out.push_back({a, b, "shuffle"});
          break;
        }
        std::swap(b.edges.front().tail, b.edges.front().head);
        out.push_back({a, b, "reversed-edge"});
        break;
      case 3:
        b.vertices[rng() % b.vertices.size()].genus ^= 1;
        out.push_back({a, b, "genus"});
        break;
      default:
        out.push_back({a, random_surface_graph(rng, n, e), "unrelated"});
    }
  }
  return out;
}

}  // namespace corpus
