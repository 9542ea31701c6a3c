#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace morita {

enum class ErrorCode {
  parse,
  invalid_group,
  invalid_action,
  not_principal,
  not_functor,
  middle_mismatch,
  not_left_principal,
  formula_inapplicable,
  inconsistent_topology,
  missing_volume,
  grid_mismatch,
  grid_too_small,
  singular_endomorphism,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// command line front end can map it onto a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace morita
