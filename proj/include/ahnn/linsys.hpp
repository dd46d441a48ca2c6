#pragma once

#include <istream>
#include <string>
#include <string_view>

#include "ahnn/error.hpp"
#include "ahnn/types.hpp"

namespace ahnn {

/// A square linear system A·V = b.
template <typename Scalar = double>
struct LinearSystem {
  MatrixX<Scalar> A;
  VectorX<Scalar> b;

  Index size() const { return A.rows(); }
};

using LinearSystemd = LinearSystem<double>;

/// Throws Error unless A is n×n with n ≥ 1, b has length n and every entry
/// is finite.
template <typename Scalar>
void validate(const LinearSystem<Scalar>& sys) {
  if (sys.A.rows() == 0) {
    throw Error(ErrorKind::dimension_zero, "system dimension must be at least 1");
  }
  if (sys.A.rows() != sys.A.cols() || sys.b.size() != sys.A.rows()) {
    throw Error(ErrorKind::dimension_mismatch,
                "coefficient matrix must be square and match the constant vector");
  }
  if (!sys.A.allFinite() || !sys.b.allFinite()) {
    throw Error(ErrorKind::non_finite, "system contains non-finite entries");
  }
}

template <typename Scalar>
LinearSystem<Scalar> make_system(MatrixX<Scalar> A, VectorX<Scalar> b) {
  LinearSystem<Scalar> sys{std::move(A), std::move(b)};
  validate(sys);
  return sys;
}

/// Pivot magnitudes below `relative_pivot_tolerance · ‖A‖∞` mark the matrix
/// as singular.
template <typename Scalar>
struct LuOptions {
  Scalar relative_pivot_tolerance = Scalar(1e-12);
};

/// Direct solve by LU with partial pivoting. This is the reference oracle
/// every simulated answer is compared against.
template <typename Scalar>
VectorX<Scalar> lu_solve(const LinearSystem<Scalar>& sys,
                         const LuOptions<Scalar>& opts = {}) {
  validate(sys);
  const Scalar norm_a = sys.A.cwiseAbs().rowwise().sum().maxCoeff();
  const Eigen::PartialPivLU<MatrixX<Scalar>> lu(sys.A);
  const Scalar threshold = opts.relative_pivot_tolerance * norm_a;
  const auto& packed = lu.matrixLU();
  for (Index k = 0; k < packed.rows(); ++k) {
    if (!(Eigen::numext::abs(packed(k, k)) >= threshold) || norm_a == Scalar(0)) {
      throw Error(ErrorKind::singular_matrix,
                  "coefficient matrix is singular (pivot " + std::to_string(k + 1) +
                      " below threshold)");
    }
  }
  return lu.solve(sys.b);
}

template <typename Scalar>
struct Residual {
  VectorX<Scalar> r;
  Scalar norm_inf;
};

/// r = A·V − b.
template <typename Scalar, typename Derived>
Residual<Scalar> residual(const LinearSystem<Scalar>& sys,
                          const Eigen::MatrixBase<Derived>& V) {
  if (V.size() != sys.size()) {
    throw Error(ErrorKind::dimension_mismatch,
                "solution length does not match system dimension");
  }
  Residual<Scalar> out;
  out.r = sys.A * V - sys.b;
  out.norm_inf = out.r.size() ? out.r.cwiseAbs().maxCoeff() : Scalar(0);
  return out;
}

template <typename Scalar>
struct DiagonalDominance {
  VectorX<Scalar> margins;  ///< |a_ii| − Σ_{j≠i} |a_ij|, signed
  bool dominant;            ///< every margin ≥ 0
};

template <typename Derived>
DiagonalDominance<typename Derived::Scalar> diagonal_dominance(
    const Eigen::MatrixBase<Derived>& A) {
  using Scalar = typename Derived::Scalar;
  if (A.rows() != A.cols()) {
    throw Error(ErrorKind::dimension_mismatch, "matrix must be square");
  }
  VectorX<Scalar> margins(A.rows());
  for (Index i = 0; i < A.rows(); ++i) {
    Scalar off{0};
    for (Index j = 0; j < A.cols(); ++j) {
      if (j != i) off += Eigen::numext::abs(A(i, j));
    }
    margins(i) = Eigen::numext::abs(A(i, i)) - off;
  }
  const bool dominant = (margins.array() >= Scalar(0)).all();
  return {std::move(margins), dominant};
}

template <typename Scalar>
DiagonalDominance<Scalar> is_diagonally_dominant(const LinearSystem<Scalar>& sys) {
  return diagonal_dominance(sys.A);
}

// Text format: optional '#' comment lines, a line holding n, then n rows of
// n+1 numbers (a_i1 … a_in b_i).
LinearSystemd parse_system(std::istream& in);
LinearSystemd parse_system(std::string_view text);
LinearSystemd read_system_file(const std::string& path);

/// Writes the system in the same format with 17 significant digits, so
/// parse_system(render_system(sys)) reproduces sys exactly.
std::string render_system(const LinearSystemd& sys);

}  // namespace ahnn
