#include "ahnn/error.hpp"

namespace ahnn {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::malformed_number: return "malformed-number";
    case ErrorKind::row_length_mismatch: return "row-length-mismatch";
    case ErrorKind::dimension_zero: return "dimension-zero";
    case ErrorKind::missing_rows: return "missing-rows";
    case ErrorKind::trailing_data: return "trailing-data";
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::non_finite: return "non-finite";
    case ErrorKind::singular_matrix: return "singular-matrix";
    case ErrorKind::nonpositive_scale: return "nonpositive-scale";
    case ErrorKind::scale_too_small: return "scale-too-small";
    case ErrorKind::negative_coefficient: return "negative-coefficient";
    case ErrorKind::offdiag_positive: return "offdiag-positive";
    case ErrorKind::wrong_dimension: return "wrong-dimension";
    case ErrorKind::invalid_config: return "invalid-config";
  }
  return "unknown";
}

}  // namespace ahnn
