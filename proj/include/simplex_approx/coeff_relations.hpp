#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "simplex_approx/triangle_basis.hpp"

namespace simplex_approx {

/// A_{r,j,k,n}^{alpha,beta}: the coefficients expressing r-th derivative
/// Fourier coefficients as short sums of coefficients of the function
/// itself. Zero outside 0 <= j <= r. Finite for all alpha, beta > -1.
inline double A_coeff(int r, int j, int k, int n, double alpha, double beta) {
  if (j < 0 || j > r) return 0.0;
  double binom = 1.0;
  for (int i = 0; i < j; ++i) binom = binom * (r - i) / (i + 1);
  return binom * pochhammer(k + beta + 1.0, j) * pochhammer(n + k + alpha + beta + 2.0, j) /
         (pochhammer(2.0 * k + alpha + beta + j + 1.0, j) *
          pochhammer(2.0 * k + alpha + beta + r + 2.0, j));
}

/// n-free part of A_{r,j,k,n} (the factor (n+k+alpha+beta+2)_j removed).
inline double A_coeff_nfree(int r, int j, int k, double alpha, double beta) {
  if (j < 0 || j > r) return 0.0;
  double binom = 1.0;
  for (int i = 0; i < j; ++i) binom = binom * (r - i) / (i + 1);
  return binom * pochhammer(k + beta + 1.0, j) /
         (pochhammer(2.0 * k + alpha + beta + j + 1.0, j) *
          pochhammer(2.0 * k + alpha + beta + r + 2.0, j));
}

/// The 2r x 2r band matrix M_r(k,n) linking the coefficients
/// (f_{k,n},...,f_{k+2r-1,n}) to r-th derivative coefficients in directions
/// 1 and 2. Rows 0..r-1 hold A^{alpha,beta} entries, rows r..2r-1 signed
/// A^{beta,alpha} entries.
struct MrMatrix {
  int r;
  int k;
  int n;
  WeightParams params;
  Eigen::MatrixXd entries;
};

inline MrMatrix build_Mr(int r, int k, int n, WeightParams w) {
  if (r < 1 || k < 0 || n < k) throw std::invalid_argument("build_Mr: need r >= 1, 0 <= k <= n");
  MrMatrix m{r, k, n, w, Eigen::MatrixXd::Zero(2 * r, 2 * r)};
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < 2 * r; ++j) m.entries(i, j) = A_coeff(r, j - i, k + i, n, w.alpha, w.beta);
  for (int i = r; i < 2 * r; ++i)
    for (int j = 0; j < 2 * r; ++j) {
      const int off = j - i + r;
      const double sign = (off % 2 == 0) ? 1.0 : -1.0;
      m.entries(i, j) = sign * A_coeff(r, off, k + i - r, n, w.beta, w.alpha);
    }
  return m;
}

/// n-free companion matrix M_r(k); M_r(k,n) factors through it by diagonal
/// row/column scalings (see scaling_L / scaling_R).
inline Eigen::MatrixXd build_Mr_nfree(int r, int k, WeightParams w) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * r, 2 * r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < 2 * r; ++j) m(i, j) = A_coeff_nfree(r, j - i, k + i, w.alpha, w.beta);
  for (int i = r; i < 2 * r; ++i)
    for (int j = 0; j < 2 * r; ++j) {
      const int off = j - i + r;
      const double sign = (off % 2 == 0) ? 1.0 : -1.0;
      m(i, j) = sign * A_coeff_nfree(r, off, k + i - r, w.beta, w.alpha);
    }
  return m;
}

/// Diagonal scalings with M_r(k,n) = L_r(k,n) M_r(k) R_r(k,n):
/// R = diag{(n+k+alpha+beta+2)_j} and L repeats diag{1/(n+k+alpha+beta+2)_i},
/// i < r, over both row blocks.
inline Eigen::MatrixXd scaling_R(int r, int k, int n, WeightParams w) {
  Eigen::VectorXd d(2 * r);
  for (int j = 0; j < 2 * r; ++j) d(j) = pochhammer(n + k + w.alpha + w.beta + 2.0, j);
  return d.asDiagonal();
}

inline Eigen::MatrixXd scaling_L(int r, int k, int n, WeightParams w) {
  Eigen::VectorXd d(2 * r);
  for (int i = 0; i < r; ++i) {
    const double v = 1.0 / pochhammer(n + k + w.alpha + w.beta + 2.0, i);
    d(i) = v;
    d(r + i) = v;
  }
  return d.asDiagonal();
}

/// Closed-form determinant of M_r(k,n):
/// (-1)^{r^2} prod_{j=1..r} (n+k+alpha+beta+j+1)_r / (2k+alpha+beta+2r+j)_r.
inline double det_Mr_closed(int r, int k, int n, WeightParams w) {
  double v = (r % 2 == 0) ? 1.0 : -1.0;  // (-1)^{r^2}
  for (int j = 1; j <= r; ++j)
    v *= pochhammer(n + k + w.alpha + w.beta + j + 1.0, r) /
         pochhammer(2.0 * k + w.alpha + w.beta + 2.0 * r + j, r);
  return v;
}

/// First row of M_r(k,n)^{-1}: the Cramer coefficients B_{l,1} (entries
/// 0..r-1) and B_{l,2} (entries r..2r-1) recovering f_{k,n} from derivative
/// coefficients. Solved with a pivoted LU against the first unit vector;
/// the matrix is provably invertible for admissible parameters, but a
/// numerically singular solve is still reported rather than returned.
inline std::vector<double> solve_B(int r, int k, int n, WeightParams w) {
  if (n < k + 2 * r - 1) throw std::invalid_argument("solve_B: need n >= k + 2r - 1");
  const MrMatrix m = build_Mr(r, k, n, w);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m.entries.transpose());
  if (!lu.isInvertible()) throw std::runtime_error("solve_B: numerically singular M_r(k,n)");
  Eigen::VectorXd e0 = Eigen::VectorXd::Zero(2 * r);
  e0(0) = 1.0;
  const Eigen::VectorXd row = lu.solve(e0);
  return {row.data(), row.data() + 2 * r};
}

}  // namespace simplex_approx
