#pragma once

// Test-only reference computations. Nothing here calls into the library's
// numerical paths.

#include <cmath>
#include <cstdint>
#include <cstring>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

/// Determinant by cofactor expansion along the first row.
inline double cofactor_det(const Eigen::MatrixXd& M) {
  const Eigen::Index n = M.rows();
  if (n == 0) return 1.0;
  if (n == 1) return M(0, 0);
  double det = 0.0;
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::MatrixXd sub(n - 1, n - 1);
    for (Eigen::Index i = 1; i < n; ++i) {
      for (Eigen::Index j = 0, k = 0; j < n; ++j) {
        if (j == c) continue;
        sub(i - 1, k++) = M(i, j);
      }
    }
    const double sign = (c % 2 == 0) ? 1.0 : -1.0;
    det += sign * M(0, c) * cofactor_det(sub);
  }
  return det;
}

inline std::vector<double> cofactor_leading_minors(const Eigen::MatrixXd& M) {
  std::vector<double> out;
  for (Eigen::Index k = 1; k <= M.rows(); ++k) out.push_back(cofactor_det(M.topLeftCorner(k, k)));
  return out;
}

/// Plain Gaussian elimination with partial pivoting on std::vector rows.
inline std::vector<double> gauss_solve(std::vector<std::vector<double>> A, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(A[i][k]) > std::abs(A[p][k])) p = i;
    }
    std::swap(A[k], A[p]);
    std::swap(b[k], b[p]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = A[i][k] / A[k][k];
      for (std::size_t j = k; j < n; ++j) A[i][j] -= f * A[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= A[i][j] * x[j];
    x[i] = s / A[i][i];
  }
  return x;
}

inline Eigen::MatrixXd random_matrix(std::mt19937_64& rng, Eigen::Index n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  Eigen::MatrixXd M(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) M(i, j) = d(rng);
  return M;
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, Eigen::Index n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = d(rng);
  return v;
}

/// Distance in units in the last place between two doubles of equal sign.
inline std::int64_t ulp_distance(double a, double b) {
  std::int64_t ia, ib;
  std::memcpy(&ia, &a, sizeof a);
  std::memcpy(&ib, &b, sizeof b);
  return ia > ib ? ia - ib : ib - ia;
}

}  // namespace oracle
