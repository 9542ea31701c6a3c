#include "morita/finite_group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "morita/error.hpp"

namespace morita {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse: return "ParseError";
    case ErrorCode::invalid_group: return "InvalidGroup";
    case ErrorCode::invalid_action: return "InvalidAction";
    case ErrorCode::not_principal: return "NotPrincipal";
    case ErrorCode::not_functor: return "NotFunctor";
    case ErrorCode::middle_mismatch: return "MiddleMismatch";
    case ErrorCode::not_left_principal: return "NotLeftPrincipal";
    case ErrorCode::formula_inapplicable: return "FormulaInapplicable";
    case ErrorCode::inconsistent_topology: return "InconsistentTopology";
    case ErrorCode::missing_volume: return "MissingVolume";
    case ErrorCode::grid_mismatch: return "GridMismatch";
    case ErrorCode::grid_too_small: return "GridTooSmall";
    case ErrorCode::singular_endomorphism: return "SingularEndomorphism";
  }
  return "Error";
}

FiniteGroup::FiniteGroup(std::vector<std::string> labels, std::vector<std::vector<int>> table)
    : labels_(std::move(labels)) {
  const int n = order();
  if (n == 0) throw Error(ErrorCode::invalid_group, "empty group");
  if (static_cast<int>(table.size()) != n)
    throw Error(ErrorCode::invalid_group, "table has wrong number of rows");
  table_.reserve(static_cast<std::size_t>(n * n));
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n)
      throw Error(ErrorCode::invalid_group, "table has a row of wrong length");
    for (int v : row) {
      if (v < 0 || v >= n) throw Error(ErrorCode::invalid_group, "table entry out of range");
      table_.push_back(v);
    }
  }
  {
    auto sorted = labels_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(ErrorCode::invalid_group, "duplicate element label");
  }

  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = multiply(e, a) == a && multiply(a, e) == a;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw Error(ErrorCode::invalid_group, "no identity element");

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (multiply(multiply(a, b), c) != multiply(a, multiply(b, c)))
          throw Error(ErrorCode::invalid_group, "associativity fails at (" + labels_[a] + "," +
                                                    labels_[b] + "," + labels_[c] + ")");

  inverse_.assign(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (multiply(a, b) == identity_ && multiply(b, a) == identity_) {
        inverse_[static_cast<std::size_t>(a)] = b;
        break;
      }
    }
    if (inverse_[static_cast<std::size_t>(a)] < 0)
      throw Error(ErrorCode::invalid_group, "element " + labels_[a] + " has no inverse");
  }
}

std::optional<int> FiniteGroup::find(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<int>(it - labels_.begin());
}

int FiniteGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != identity_; x = multiply(x, a)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order(); ++a)
    for (int b = a + 1; b < order(); ++b)
      if (multiply(a, b) != multiply(b, a)) return false;
  return true;
}

std::vector<int> FiniteGroup::center() const {
  std::vector<int> out;
  for (int a = 0; a < order(); ++a) {
    bool central = true;
    for (int b = 0; b < order() && central; ++b) central = multiply(a, b) == multiply(b, a);
    if (central) out.push_back(a);
  }
  return out;
}

std::vector<int> FiniteGroup::generated_subgroup(const std::vector<int>& gens) const {
  std::vector<char> in(static_cast<std::size_t>(order()), 0);
  std::deque<int> queue{identity_};
  in[static_cast<std::size_t>(identity_)] = 1;
  while (!queue.empty()) {
    int a = queue.front();
    queue.pop_front();
    for (int s : gens) {
      int b = multiply(a, s);
      if (!in[static_cast<std::size_t>(b)]) {
        in[static_cast<std::size_t>(b)] = 1;
        queue.push_back(b);
      }
    }
  }
  std::vector<int> out;
  for (int a = 0; a < order(); ++a)
    if (in[static_cast<std::size_t>(a)]) out.push_back(a);
  return out;
}

std::vector<int> FiniteGroup::generators() const {
  std::vector<int> gens;
  std::vector<int> span{identity_};
  while (static_cast<int>(span.size()) < order()) {
    int next = 0;
    while (std::binary_search(span.begin(), span.end(), next)) ++next;
    gens.push_back(next);
    span = generated_subgroup(gens);
  }
  return gens;
}

std::vector<std::vector<int>> FiniteGroup::table() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(order()));
  for (int a = 0; a < order(); ++a)
    for (int b = 0; b < order(); ++b) out[static_cast<std::size_t>(a)].push_back(multiply(a, b));
  return out;
}

namespace {

std::map<int, int> order_profile(const FiniteGroup& g) {
  std::map<int, int> profile;
  for (int a = 0; a < g.order(); ++a) ++profile[g.element_order(a)];
  return profile;
}

// Extends an assignment on generators to a map on all of g by walking words
// in the generators; returns nullopt if the extension is inconsistent or not
// a bijective homomorphism.
std::optional<std::vector<int>> extend_from_generators(const FiniteGroup& g, const FiniteGroup& h,
                                                       const std::vector<int>& gens,
                                                       const std::vector<int>& images) {
  const int n = g.order();
  std::vector<int> phi(static_cast<std::size_t>(n), -1);
  phi[static_cast<std::size_t>(g.identity())] = h.identity();
  std::deque<int> queue{g.identity()};
  while (!queue.empty()) {
    int a = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < gens.size(); ++k) {
      int b = g.multiply(a, gens[k]);
      int image = h.multiply(phi[static_cast<std::size_t>(a)], images[k]);
      int& slot = phi[static_cast<std::size_t>(b)];
      if (slot < 0) {
        slot = image;
        queue.push_back(b);
      } else if (slot != image) {
        return std::nullopt;
      }
    }
  }
  std::vector<char> hit(static_cast<std::size_t>(n), 0);
  for (int v : phi) {
    if (v < 0 || hit[static_cast<std::size_t>(v)]) return std::nullopt;
    hit[static_cast<std::size_t>(v)] = 1;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (phi[static_cast<std::size_t>(g.multiply(a, b))] !=
          h.multiply(phi[static_cast<std::size_t>(a)], phi[static_cast<std::size_t>(b)]))
        return std::nullopt;
  return phi;
}

}  // namespace

std::optional<std::vector<int>> find_group_isomorphism(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.order() != h.order()) return std::nullopt;
  if (g.is_abelian() != h.is_abelian()) return std::nullopt;
  if (order_profile(g) != order_profile(h)) return std::nullopt;
  if (g.center().size() != h.center().size()) return std::nullopt;

  const std::vector<int> gens = g.generators();
  std::vector<std::vector<int>> candidates(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const int ord = g.element_order(gens[k]);
    for (int b = 0; b < h.order(); ++b)
      if (h.element_order(b) == ord) candidates[k].push_back(b);
  }

  std::vector<int> images(gens.size(), -1);
  std::optional<std::vector<int>> found;
  auto search = [&](auto&& self, std::size_t k) -> bool {
    if (k == gens.size()) {
      found = extend_from_generators(g, h, gens, images);
      return found.has_value();
    }
    for (int b : candidates[k]) {
      images[k] = b;
      if (self(self, k + 1)) return true;
    }
    return false;
  };
  search(search, 0);
  return found;
}

bool is_subgroup(const FiniteGroup& g, const std::vector<int>& subset) {
  if (subset.empty()) return false;
  std::vector<char> in(static_cast<std::size_t>(g.order()), 0);
  for (int a : subset) in[static_cast<std::size_t>(a)] = 1;
  if (!in[static_cast<std::size_t>(g.identity())]) return false;
  for (int a : subset) {
    if (!in[static_cast<std::size_t>(g.inverse(a))]) return false;
    for (int b : subset)
      if (!in[static_cast<std::size_t>(g.multiply(a, b))]) return false;
  }
  return true;
}

bool is_normal_subgroup(const FiniteGroup& g, const std::vector<int>& subset) {
  if (!is_subgroup(g, subset)) return false;
  std::vector<char> in(static_cast<std::size_t>(g.order()), 0);
  for (int a : subset) in[static_cast<std::size_t>(a)] = 1;
  for (int x = 0; x < g.order(); ++x)
    for (int a : subset)
      if (!in[static_cast<std::size_t>(g.multiply(g.multiply(x, a), g.inverse(x)))]) return false;
  return true;
}

Quotient quotient_group(const FiniteGroup& g, const std::vector<int>& normal_subgroup) {
  if (!is_normal_subgroup(g, normal_subgroup))
    throw Error(ErrorCode::invalid_group, "quotient by a subset that is not a normal subgroup");
  const int n = g.order();
  std::vector<int> coset_of(static_cast<std::size_t>(n), -1);
  std::vector<int> reps;
  for (int a = 0; a < n; ++a) {
    if (coset_of[static_cast<std::size_t>(a)] >= 0) continue;
    const int idx = static_cast<int>(reps.size());
    reps.push_back(a);
    for (int k : normal_subgroup) coset_of[static_cast<std::size_t>(g.multiply(a, k))] = idx;
  }
  const int m = static_cast<int>(reps.size());
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    labels.push_back(g.label(reps[static_cast<std::size_t>(i)]));
    for (int j = 0; j < m; ++j)
      table[static_cast<std::size_t>(i)].push_back(coset_of[static_cast<std::size_t>(
          g.multiply(reps[static_cast<std::size_t>(i)], reps[static_cast<std::size_t>(j)]))]);
  }
  return Quotient{FiniteGroup(std::move(labels), std::move(table)), std::move(reps),
                  std::move(coset_of)};
}

FiniteGroup subgroup(const FiniteGroup& g, const std::vector<int>& elements) {
  if (!is_subgroup(g, elements)) throw Error(ErrorCode::invalid_group, "subset is not a subgroup");
  std::vector<int> sorted = elements;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> local(static_cast<std::size_t>(g.order()), -1);
  for (std::size_t i = 0; i < sorted.size(); ++i) local[static_cast<std::size_t>(sorted[i])] = static_cast<int>(i);
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    labels.push_back(g.label(sorted[i]));
    for (int b : sorted) table[i].push_back(local[static_cast<std::size_t>(g.multiply(sorted[i], b))]);
  }
  return FiniteGroup(std::move(labels), std::move(table));
}

namespace groups {

FiniteGroup trivial() { return cyclic(1); }

FiniteGroup cyclic(int n) {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    labels.push_back(std::to_string(a));
    for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a)].push_back((a + b) % n);
  }
  return FiniteGroup(std::move(labels), std::move(table));
}

FiniteGroup dihedral(int n) {
  // r^k for k < n, s r^k stored as n + k. Relations: s r = r^{-1} s.
  auto mul = [n](int a, int b) {
    const bool as = a >= n, bs = b >= n;
    const int ak = a % n, bk = b % n;
    if (!as && !bs) return (ak + bk) % n;
    if (!as && bs) return n + ((bk - ak) % n + n) % n;  // r^a s r^b = s r^{b-a}
    if (as && !bs) return n + (ak + bk) % n;
    return ((bk - ak) % n + n) % n;  // s r^a s r^b = r^{b-a}
  };
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table(static_cast<std::size_t>(2 * n));
  for (int a = 0; a < 2 * n; ++a) {
    labels.push_back(a < n ? "r" + std::to_string(a) : "s" + std::to_string(a - n));
    for (int b = 0; b < 2 * n; ++b) table[static_cast<std::size_t>(a)].push_back(mul(a, b));
  }
  return FiniteGroup(std::move(labels), std::move(table));
}

FiniteGroup symmetric(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> perms;
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  std::map<std::vector<int>, int> index;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    index[perms[i]] = static_cast<int>(i);
    std::string label;
    for (int v : perms[i]) label += std::to_string(v + 1);
    labels.push_back(label);
  }
  // (ab)(x) = a(b(x)), i.e. b acts first.
  std::vector<std::vector<int>> table(perms.size());
  for (std::size_t i = 0; i < perms.size(); ++i)
    for (const auto& b : perms) {
      std::vector<int> c(static_cast<std::size_t>(n));
      for (int x = 0; x < n; ++x) c[static_cast<std::size_t>(x)] = perms[i][static_cast<std::size_t>(b[static_cast<std::size_t>(x)])];
      table[i].push_back(index.at(c));
    }
  return FiniteGroup(std::move(labels), std::move(table));
}

FiniteGroup quaternion() {
  // Elements (sign, unit) with unit in {1,i,j,k}; index = 2*unit + (sign<0).
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int unit_sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  static const char* names[4] = {"1", "i", "j", "k"};
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table(8);
  for (int a = 0; a < 8; ++a) {
    labels.push_back(std::string(a % 2 ? "-" : "") + names[a / 2]);
    for (int b = 0; b < 8; ++b) {
      const int ua = a / 2, ub = b / 2;
      int sign = (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1) * unit_sign[ua][ub];
      table[static_cast<std::size_t>(a)].push_back(2 * unit_mul[ua][ub] + (sign < 0 ? 1 : 0));
    }
  }
  return FiniteGroup(std::move(labels), std::move(table));
}

FiniteGroup klein_four() { return direct_product(cyclic(2), cyclic(2)); }

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order();
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table(static_cast<std::size_t>(na * nb));
  for (int x = 0; x < na * nb; ++x) {
    labels.push_back("(" + a.label(x / nb) + "," + b.label(x % nb) + ")");
    for (int y = 0; y < na * nb; ++y)
      table[static_cast<std::size_t>(x)].push_back(a.multiply(x / nb, y / nb) * nb +
                                                    b.multiply(x % nb, y % nb));
  }
  return FiniteGroup(std::move(labels), std::move(table));
}

}  // namespace groups

}  // namespace morita
