#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eplast {

enum class ErrorKind {
  singular_matrix,
  non_positive_determinant,
  negative_temperature,
  non_deviatoric_input,
  non_deviatoric_rate,
  no_convergence,
  cfl_violation,
  linear_solve_failure,
  negative_enthalpy,
  parse_error,
  validation_error,
  unknown_name,
};

std::string_view to_string(ErrorKind kind);

// Every recoverable failure in the library surfaces as this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace eplast
