#pragma once

#include <string>

#include "ahnn/linsys.hpp"
#include "ahnn/synthesis.hpp"

namespace ahnn {

/// Normalized interconnection weights W_ij = −a_ij / s_i. The sign follows
/// the inverting amplifier: the network effectively realizes −A.
template <typename Scalar = double>
struct WeightMatrix {
  MatrixX<Scalar> values;

  Index size() const { return values.rows(); }
  Scalar operator()(Index i, Index j) const { return values(i, j); }
};

/// t_ii = 1 − W_ii, t_ij = −|W_ij|.
template <typename Scalar = double>
struct TMatrix {
  MatrixX<Scalar> values;

  Index size() const { return values.rows(); }
  Scalar operator()(Index i, Index j) const { return values(i, j); }
};

template <typename Scalar>
WeightMatrix<Scalar> build_weight_matrix(const LinearSystem<Scalar>& sys,
                                         const ScalingVector<Scalar>& s) {
  validate(sys);
  if (s.size() != sys.size()) {
    throw Error(ErrorKind::dimension_mismatch, "scaling vector does not match system");
  }
  WeightMatrix<Scalar> W{MatrixX<Scalar>(sys.size(), sys.size())};
  for (Index i = 0; i < sys.size(); ++i) {
    if (!(s(i) > Scalar(0))) {
      throw Error(ErrorKind::nonpositive_scale,
                  "scale for row " + std::to_string(i + 1) + " must be positive");
    }
    W.values.row(i) = -sys.A.row(i) / s(i);
  }
  return W;
}

template <typename Scalar>
TMatrix<Scalar> build_t_matrix(const WeightMatrix<Scalar>& W) {
  if (W.values.rows() != W.values.cols()) {
    throw Error(ErrorKind::dimension_mismatch, "weight matrix must be square");
  }
  TMatrix<Scalar> T{-W.values.cwiseAbs()};
  T.values.diagonal() = VectorX<Scalar>::Ones(W.size()) - W.values.diagonal();
  return T;
}

template <typename Scalar = double>
struct MinorChain {
  VectorX<Scalar> minors;  ///< det of the k×k leading block, k = 1..n
  bool is_m_matrix;        ///< every minor > boundary tolerance
  bool boundary;           ///< some minor lies within the tolerance of zero
};

/// Leading principal minors of `values` by fraction-free (Bareiss)
/// elimination without pivoting: after step k the pivot is exactly the k-th
/// leading minor. If a pivot vanishes the remaining minors come from
/// independent pivoted LU determinants of the leading blocks.
template <typename Derived>
VectorX<typename Derived::Scalar> leading_principal_minors(
    const Eigen::MatrixBase<Derived>& values) {
  using Scalar = typename Derived::Scalar;
  const Index n = values.rows();
  MatrixX<Scalar> M = values;
  VectorX<Scalar> minors(n);
  Scalar previous{1};
  Index k = 0;
  for (; k < n; ++k) {
    const Scalar pivot = M(k, k);
    minors(k) = pivot;
    if (pivot == Scalar(0)) break;
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j) {
        M(i, j) = (M(i, j) * pivot - M(i, k) * M(k, j)) / previous;
      }
    }
    previous = pivot;
  }
  for (Index m = k + 1; m < n; ++m) {
    minors(m) = MatrixX<Scalar>(values.topLeftCorner(m + 1, m + 1)).partialPivLu().determinant();
  }
  return minors;
}

/// M-matrix test. A minor within `boundary_tolerance` of zero does not count
/// as positive and raises the boundary flag.
template <typename Scalar>
MinorChain<Scalar> is_m_matrix(const TMatrix<Scalar>& T,
                               Scalar boundary_tolerance = Scalar(1e-12)) {
  const Index n = T.size();
  if (T.values.rows() != T.values.cols()) {
    throw Error(ErrorKind::dimension_mismatch, "T matrix must be square");
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i != j && T(i, j) > Scalar(0)) {
        throw Error(ErrorKind::offdiag_positive,
                    "T(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                        ") is positive; M-matrix test needs non-positive off-diagonals");
      }
    }
  }
  MinorChain<Scalar> out{leading_principal_minors(T.values), true, false};
  for (Index k = 0; k < n; ++k) {
    const Scalar m = out.minors(k);
    if (Eigen::numext::abs(m) <= boundary_tolerance) out.boundary = true;
    if (!(m > boundary_tolerance)) out.is_m_matrix = false;
  }
  return out;
}

enum class HopfieldClass { standard, symmetric, asymmetric };
enum class Verdict { certified_stable, not_certified };

const char* to_string(HopfieldClass c) noexcept;
const char* to_string(Verdict v) noexcept;

/// standard: symmetric with zero diagonal (no self-feedback); symmetric:
/// W = Wᵀ with self-feedback allowed. Symmetry uses a 1e-12 relative
/// tolerance so decimal inputs that are not exactly representable still
/// classify as they were written.
template <typename Scalar>
HopfieldClass classify(const WeightMatrix<Scalar>& W,
                       Scalar relative_tolerance = Scalar(1e-12)) {
  const Index n = W.size();
  bool symmetric = true;
  for (Index i = 0; i < n && symmetric; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const Scalar a = W(i, j);
      const Scalar b = W(j, i);
      const Scalar scale = std::max(Eigen::numext::abs(a), Eigen::numext::abs(b));
      if (Eigen::numext::abs(a - b) > relative_tolerance * scale) {
        symmetric = false;
        break;
      }
    }
  }
  if (!symmetric) return HopfieldClass::asymmetric;
  return (W.values.diagonal().array() == Scalar(0)).all() ? HopfieldClass::standard
                                                          : HopfieldClass::symmetric;
}

template <typename Scalar = double>
struct StabilityReport {
  WeightMatrix<Scalar> weights;
  TMatrix<Scalar> t_matrix;
  VectorX<Scalar> leading_minors;
  bool is_m_matrix;
  bool boundary;
  VectorX<Scalar> dd_margins;
  bool diagonally_dominant;
  HopfieldClass hopfield_class;
  Verdict verdict;
};

using StabilityReportd = StabilityReport<double>;

template <typename Scalar>
StabilityReport<Scalar> check_stability(const LinearSystem<Scalar>& sys,
                                        const ScalingVector<Scalar>& s) {
  auto W = build_weight_matrix(sys, s);
  auto T = build_t_matrix(W);
  auto chain = is_m_matrix(T);
  auto dd = is_diagonally_dominant(sys);
  const HopfieldClass cls = classify(W);
  return StabilityReport<Scalar>{
      std::move(W),
      std::move(T),
      std::move(chain.minors),
      chain.is_m_matrix,
      chain.boundary,
      std::move(dd.margins),
      dd.dominant,
      cls,
      chain.is_m_matrix ? Verdict::certified_stable : Verdict::not_certified};
}

/// Key-value text block (one `key: value` per line).
std::string format_report(const StabilityReportd& report);

/// `index,minor` CSV, one row per leading minor.
std::string minors_csv(const StabilityReportd& report);

}  // namespace ahnn
