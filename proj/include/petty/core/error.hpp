#pragma once

#include <stdexcept>
#include <string>

namespace petty {

enum class Errc {
  unsupported_dimension,
  non_finite,
  no_sign_change,
  out_of_range,
  invalid_body,
  degenerate_normal,
  grid_mismatch,
  bracket_failure,
  body_too_large,
  outside_domain,
  infeasible,
  io,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace petty
