#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "morita/finite_group.hpp"
#include "morita/validation.hpp"

namespace morita {

/// A leaf of the open symplectic part. `genus` is the genus of the closed
/// surface obtained by capping off its boundary circles.
struct SurfaceVertex {
  std::string id;
  int genus = 0;
};

/// A zero curve separating `tail` from `head`; the structure is positive on
/// the head side. `period` is the modular period around the curve.
struct SurfaceEdge {
  int tail = 0;
  int head = 0;
  double period = 1.0;
};

/// Combinatorial model of a topologically stable Poisson structure on a
/// compact oriented surface. Loops and parallel edges are allowed.
struct LabeledSurfaceGraph {
  std::vector<SurfaceVertex> vertices;
  std::vector<SurfaceEdge> edges;
  std::optional<double> volume;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  /// Number of boundary circles of the leaf; a loop counts twice.
  int degree(int v) const;
  /// Same graph with every edge reversed.
  LabeledSurfaceGraph reversed() const;
};

/// Violation kinds: "empty", "edge-endpoint", "genus", "period",
/// "connectivity", "euler-parity", "euler-bound".
ValidationReport validate_tss(const LabeledSurfaceGraph& g);

/// Sum over vertices of 2 - 2 genus - degree. Zero curves contribute 0.
int euler_characteristic(const LabeledSurfaceGraph& g);

/// (2 - chi) / 2. Throws Error(inconsistent_topology) if chi is odd or
/// exceeds 2.
int surface_genus(const LabeledSurfaceGraph& g);

/// vertex_map[v] is the image of vertex v, edge_map[e] the image of edge e.
struct TssIsomorphism {
  std::vector<int> vertex_map;
  std::vector<int> edge_map;

  friend auto operator<=>(const TssIsomorphism&, const TssIsomorphism&) = default;
};

/// Whether an isomorphism of g1 onto g2 carries the head of each edge to the
/// head of its image (preserving) or to its tail (reversing, i.e. comparing
/// against g2 with all edges reversed).
enum class Orientation { preserving, reversing };

/// Labeled oriented multigraph isomorphism preserving genus exactly and
/// periods within `period_tolerance` (absolute).
std::optional<TssIsomorphism> morita_equivalent_tss(const LabeledSurfaceGraph& g1, const LabeledSurfaceGraph& g2,
                                                    double period_tolerance = 0.0,
                                                    Orientation orientation = Orientation::preserving);

/// Morita and gauge equivalence agree for these structures.
std::optional<TssIsomorphism> gauge_equivalent_tss(const LabeledSurfaceGraph& g1, const LabeledSurfaceGraph& g2,
                                                   double period_tolerance = 0.0,
                                                   Orientation orientation = Orientation::preserving);

/// Graph isomorphism plus |vol1 - vol2| <= tolerance. Throws
/// Error(missing_volume) when either graph has no volume.
std::optional<TssIsomorphism> poisson_isomorphic_tss(const LabeledSurfaceGraph& g1, const LabeledSurfaceGraph& g2,
                                                     double tolerance = 0.0,
                                                     Orientation orientation = Orientation::preserving);

/// Name of the first cheap invariant that separates g1 from g2, if any:
/// "vertex-count", "edge-count", "genus-multiset", "period-multiset",
/// "surface-genus".
std::optional<std::string> first_invariant_difference(const LabeledSurfaceGraph& g1, const LabeledSurfaceGraph& g2,
                                                      double period_tolerance = 0.0);

struct GraphAutomorphisms {
  FiniteGroup group = groups::trivial();
  std::vector<TssIsomorphism> maps;  // sorted, identity first; maps[i] is element i
};

/// All label-preserving orientation-preserving automorphisms, including
/// permutations of parallel edges with equal periods. Periods compared exactly.
GraphAutomorphisms graph_automorphisms(const LabeledSurfaceGraph& g);

struct PicardIngredients {
  GraphAutomorphisms graph_aut;
  int torus_rank = 0;
  /// Per vertex: (genus, number of boundary circles).
  std::vector<std::pair<int, int>> leaf_descriptors;
};

/// The pieces from which the Picard group would be assembled. How they fit
/// together is not determined here.
PicardIngredients picard_ingredients(const LabeledSurfaceGraph& g);

}  // namespace morita
