#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ahnn {

enum class ErrorKind {
  malformed_number,
  row_length_mismatch,
  dimension_zero,
  missing_rows,
  trailing_data,
  dimension_mismatch,
  non_finite,
  singular_matrix,
  nonpositive_scale,
  scale_too_small,
  negative_coefficient,
  offdiag_positive,
  wrong_dimension,
  invalid_config,
};

const char* to_string(ErrorKind kind) noexcept;

// Every validation failure in the library surfaces as this type. `line` is
// set (1-based) only for errors raised while parsing text input.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::size_t line = 0)
      : std::runtime_error(what), kind_(kind), line_(line) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorKind kind_;
  std::size_t line_;
};

}  // namespace ahnn
