#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace singheat {

enum class ErrorKind {
  invalid_parameter,
  domain_too_small,
  under_resolved,
  placement,
  positivity,
  invalid_sweep,
  insufficient_data,
  inadmissible_input,
  singular_system,
  config,
  io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace singheat
