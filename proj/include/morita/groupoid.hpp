#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "morita/finite_group.hpp"
#include "morita/validation.hpp"

namespace morita {

struct ArrowSpec {
  std::string id;
  std::string src;
  std::string tgt;
};

/// Groupoid tables keyed by id, as they appear in files. Nothing here is
/// checked beyond what is needed to index it.
struct GroupoidTables {
  std::vector<std::string> objects;
  std::vector<ArrowSpec> arrows;
  std::vector<std::array<std::string, 3>> comp;  // (g, h, gh)
  std::map<std::string, std::string> units;
  std::map<std::string, std::string> inv;
};

/// A finite groupoid stored as dense index tables. Object and arrow ids are
/// kept in lexicographic order and index i always refers to the i-th id in
/// that order. Composition follows the convention that gh is "h then g":
/// compose(g, h) is meant to be defined exactly when src(g) == tgt(h).
///
/// Instances are immutable and share their tables, so copies are cheap.
/// A FiniteGroupoid may violate the groupoid axioms (it is what files are
/// parsed into); validate() reports such violations and every other
/// operation assumes a valid groupoid.
class FiniteGroupoid {
 public:
  FiniteGroupoid();

  /// Throws Error(parse) on duplicate ids, unknown ids, or conflicting
  /// composition entries.
  static FiniteGroupoid from_tables(const GroupoidTables& tables);

  /// Index-based construction. `comp` is row-major arrows x arrows with -1
  /// for undefined entries; `unit` and `inverse` may hold -1 for missing
  /// entries. Ids are sorted and every table is renumbered accordingly.
  static FiniteGroupoid from_indexed(std::vector<std::string> objects,
                                     std::vector<std::string> arrows, const std::vector<int>& src,
                                     const std::vector<int>& tgt, const std::vector<int>& comp,
                                     const std::vector<int>& unit, const std::vector<int>& inverse);

  GroupoidTables to_tables() const;

  int object_count() const;
  int arrow_count() const;
  const std::string& object_id(int x) const;
  const std::string& arrow_id(int g) const;
  const std::vector<std::string>& object_ids() const;
  const std::vector<std::string>& arrow_ids() const;
  std::optional<int> find_object(std::string_view id) const;
  std::optional<int> find_arrow(std::string_view id) const;

  int src(int g) const;
  int tgt(int g) const;
  /// -1 when the table has no unit for x.
  int unit(int x) const;
  /// -1 when the table has no inverse for g.
  int inverse(int g) const;
  /// gh, or -1 when the table has no entry.
  int compose(int g, int h) const;

  /// Arrows with source x, in index order.
  const std::vector<int>& arrows_from(int x) const;
  /// Arrows with source `from` and target `to`, in index order.
  std::vector<int> arrows_between(int from, int to) const;
  bool is_unit(int g) const { return unit(src(g)) == g; }

  friend bool operator==(const FiniteGroupoid& a, const FiniteGroupoid& b);

 private:
  struct Data;
  explicit FiniteGroupoid(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

/// Checks every groupoid axiom and returns the violations with witnesses.
/// Violation kinds: "composability", "totality", "composite-endpoints",
/// "associativity", "unit", "inverse". At most 64 witnesses per kind.
ValidationReport validate(const FiniteGroupoid& g);

/// Partition of the objects into orbits. Blocks are sorted and ordered by
/// their smallest member.
struct OrbitPartition {
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of;  // object -> block index

  int count() const { return static_cast<int>(blocks.size()); }
};

OrbitPartition orbits(const FiniteGroupoid& g);
bool is_transitive(const FiniteGroupoid& g);
/// True when every arrow is a loop (s = t), i.e. g is a bundle of groups.
bool is_group_bundle(const FiniteGroupoid& g);

/// Isotropy group at x; element labels are the arrow ids.
FiniteGroup isotropy(const FiniteGroupoid& g, int x);
/// Arrow indices of the isotropy group at x, in the element order used by
/// isotropy(g, x).
std::vector<int> isotropy_arrows(const FiniteGroupoid& g, int x);

}  // namespace morita
