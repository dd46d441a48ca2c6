#pragma once

#include <Eigen/Dense>

namespace ahnn {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

// Neumaier-compensated sum of a dense expression. Keeps the accumulated
// error of an n-term row sum within a couple of ulps of the exact value.
template <typename Derived>
typename Derived::Scalar compensated_sum(const Eigen::DenseBase<Derived>& xs) {
  using Scalar = typename Derived::Scalar;
  Scalar sum{0};
  Scalar carry{0};
  for (Index k = 0; k < xs.size(); ++k) {
    const Scalar x = xs.derived().coeff(k);
    const Scalar t = sum + x;
    if (Eigen::numext::abs(sum) >= Eigen::numext::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

}  // namespace ahnn
