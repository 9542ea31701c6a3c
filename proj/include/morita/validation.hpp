#pragma once

#include <string>
#include <vector>

namespace morita {

struct Violation {
  std::string kind;
  std::vector<std::string> witness;
};

/// Outcome of an axiom check. Violations are data: each names the axiom that
/// failed and a tuple of ids that exhibits the failure.
struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(const std::string& kind) const {
    for (const auto& v : violations)
      if (v.kind == kind) return true;
    return false;
  }
};

}  // namespace morita
