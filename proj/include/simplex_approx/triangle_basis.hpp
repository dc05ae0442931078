#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "simplex_approx/jacobi.hpp"

namespace simplex_approx {

/// Exponents of the triangle weight x^alpha y^beta (1-x-y)^gamma.
struct WeightParams {
  double alpha;
  double beta;
  double gamma;

  void validate() const {
    if (!(alpha > -1.0) || !(beta > -1.0) || !(gamma > -1.0))
      throw std::domain_error("WeightParams: all exponents must be > -1");
  }
  bool operator==(const WeightParams&) const = default;
};

/// Index (k,n) with 0 <= k <= n of a degree-n basis element.
struct BasisIndex {
  int k;
  int n;

  void validate() const {
    if (k < 0 || n < 0 || k > n) throw std::invalid_argument("BasisIndex: need 0 <= k <= n");
  }
};

struct TrianglePoint {
  double x;
  double y;

  bool inside() const { return x >= 0.0 && y >= 0.0 && x + y <= 1.0; }
};

/// Position of entry (k,m), k <= m, in a triangular array stored row by row.
inline std::size_t tri_index(int k, int m) {
  return static_cast<std::size_t>(m) * (m + 1) / 2 + static_cast<std::size_t>(k);
}

/// Number of entries in rows 0..N.
inline std::size_t tri_size(int max_degree) {
  if (max_degree < 0) return 0;
  return static_cast<std::size_t>(max_degree + 1) * (max_degree + 2) / 2;
}

namespace detail {

// Below this the collapsed coordinate (y-x)/(x+y) is not formed; the factor
// is evaluated through its polynomial continuation instead.
inline constexpr double kCollapseEps = 1e-10;

/// (x+y)^k J_k^{alpha,beta}((y-x)/(x+y)), a polynomial in (x,y).
/// Near x+y = 0 the removable singularity is sidestepped by expanding the
/// hypergeometric series of J_k in powers of x and x+y.
inline double collapsed_factor(int k, double alpha, double beta, double x, double y) {
  const double s = x + y;
  if (k == 0) return 1.0;
  if (s >= kCollapseEps) return std::pow(s, k) * jacobi_J(k, {alpha, beta}, (y - x) / s);

  const double pre =
      pochhammer(alpha + 1.0, k) / (pochhammer(k + alpha + beta + 1.0, k) * pochhammer(1.0, k));
  double term = 1.0, sum = 0.0;
  for (int j = 0; j <= k; ++j) {
    sum += term * std::pow(x, j) * std::pow(s, k - j);
    term *= (-k + j) * (k + alpha + beta + 1.0 + j) / ((alpha + 1.0 + j) * (j + 1.0));
  }
  return pre * sum;
}

}  // namespace detail

/// Basis value J_{k,n}^{alpha,beta,gamma}(x,y).
inline double basis_eval(BasisIndex idx, WeightParams w, TrianglePoint pt) {
  idx.validate();
  const double q = detail::collapsed_factor(idx.k, w.alpha, w.beta, pt.x, pt.y);
  const double z = 1.0 - 2.0 * pt.x - 2.0 * pt.y;
  return q * jacobi_J(idx.n - idx.k, {2.0 * idx.k + w.alpha + w.beta + 1.0, w.gamma}, z);
}

/// All basis values J_{k,m} with m <= max_degree at one point, in tri_index
/// layout. Runs the 1-D recurrences once per k, so the whole table costs
/// O(max_degree^2).
inline std::vector<double> basis_eval_all(int max_degree, WeightParams w, TrianglePoint pt) {
  std::vector<double> out(tri_size(max_degree));
  const double z = 1.0 - 2.0 * pt.x - 2.0 * pt.y;
  for (int k = 0; k <= max_degree; ++k) {
    const double q = detail::collapsed_factor(k, w.alpha, w.beta, pt.x, pt.y);
    const double a2 = 2.0 * k + w.alpha + w.beta + 1.0;
    const double ab = a2 + w.gamma;  // alpha+beta of the second factor
    double pm1 = 0.0, pm0 = 1.0;
    double scale = 1.0;  // 1 / (j+a2+gamma+1)_j, updated per degree
    for (int j = 0; k + j <= max_degree; ++j) {
      if (j > 0) {
        double next;
        if (j == 1) {
          next = (a2 + 1.0) + (ab + 2.0) * (z - 1.0) / 2.0;
        } else {
          const double c1 = 2.0 * j * (j + ab) * (2.0 * j + ab - 2.0);
          const double c2 =
              (2.0 * j + ab - 1.0) * ((2.0 * j + ab) * (2.0 * j + ab - 2.0) * z + a2 * a2 - w.gamma * w.gamma);
          const double c3 = 2.0 * (j + a2 - 1.0) * (j + w.gamma - 1.0) * (2.0 * j + ab);
          next = (c2 * pm0 - c3 * pm1) / c1;
        }
        pm1 = pm0;
        pm0 = next;
        scale *= (j + ab) / ((2.0 * j + ab - 1.0) * (2.0 * j + ab));
      }
      out[tri_index(k, k + j)] = q * pm0 * scale;
    }
  }
  return out;
}

/// Squared norm h_{k,n}^{alpha,beta,gamma} = <J_{k,n}, J_{k,n}>.
/// The closed form is rearranged so every Pochhammer base is strictly
/// positive: the raw formula pairs (a)_k / (a)_{2k} factors whose base can
/// vanish for admissible exponents (e.g. alpha+beta+1 = 0), and the pairing
/// (a)_k/(a)_{2k} = 1/(a+k)_k removes that.
inline double basis_norm_h(BasisIndex idx, WeightParams w) {
  idx.validate();
  w.validate();
  const int k = idx.k, n = idx.n;
  const double a = w.alpha, b = w.beta, g = w.gamma;
  const double log_h = log_pochhammer(a + 1.0, k) + log_pochhammer(b + 1.0, k) +
                       log_pochhammer(g + 1.0, n - k) + log_pochhammer(a + b + 2.0, n + k) -
                       std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) -
                       log_pochhammer(a + b + 1.0 + k, k) - log_pochhammer(a + b + 2.0, 2 * k) -
                       log_pochhammer(a + b + g + 2.0 + n + k, n - k) -
                       log_pochhammer(a + b + g + 3.0, 2 * n);
  return std::exp(log_h);
}

/// a_{k,n}^{alpha,beta} from the first-derivative relations.
inline double a_coeff(int k, int n, double alpha, double beta) {
  const double d0 = 2.0 * k + alpha + beta;
  if (d0 == 0.0 || d0 + 1.0 == 0.0)
    throw std::domain_error("a_coeff: parameter combination 2k+alpha+beta in {0,-1}");
  return (k + beta) * (n + k + alpha + beta + 1.0) / (d0 * (d0 + 1.0));
}

/// Eigenvalue of the divergence-form operator on degree-n orthogonal
/// polynomials: lambda_n = -n (n + alpha + beta + gamma + 2).
inline double lambda_n(int n, WeightParams w) {
  return -static_cast<double>(n) * (n + w.alpha + w.beta + w.gamma + 2.0);
}

namespace detail {

/// J_{k,n} with out-of-range indices treated as zero.
inline double basis_or_zero(int k, int n, WeightParams w, TrianglePoint pt) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  return basis_eval({k, n}, w, pt);
}

}  // namespace detail

/// Partial derivative of J_{k,n}^{alpha,beta,gamma} in direction 1, 2 or
/// 3 (:= d2 - d1), evaluated through the lowering relations: each derivative
/// is a signed combination of lower-degree basis elements with shifted
/// exponents. Out-of-range indices on the right-hand side drop out.
inline double basis_partial(int direction, BasisIndex idx, WeightParams w, TrianglePoint pt) {
  idx.validate();
  const int k = idx.k, n = idx.n;
  switch (direction) {
    case 1: {
      const WeightParams ws{w.alpha + 1.0, w.beta, w.gamma + 1.0};
      double v = -detail::basis_or_zero(k, n - 1, ws, pt);
      if (k >= 1) v -= a_coeff(k, n, w.alpha, w.beta) * detail::basis_or_zero(k - 1, n - 1, ws, pt);
      return v;
    }
    case 2: {
      const WeightParams ws{w.alpha, w.beta + 1.0, w.gamma + 1.0};
      double v = -detail::basis_or_zero(k, n - 1, ws, pt);
      if (k >= 1) v += a_coeff(k, n, w.beta, w.alpha) * detail::basis_or_zero(k - 1, n - 1, ws, pt);
      return v;
    }
    case 3:
      return detail::basis_or_zero(k - 1, n - 1, {w.alpha + 1.0, w.beta + 1.0, w.gamma}, pt);
    default:
      throw std::invalid_argument("basis_partial: direction must be 1, 2 or 3");
  }
}

/// Same derivative through the product structure of the basis (chain rule on
/// the collapsed coordinate plus the 1-D derivative identity). Valid away
/// from x+y = 0; kept as an independent evaluation route for cross-checks.
inline double basis_partial_direct(int direction, BasisIndex idx, WeightParams w,
                                   TrianglePoint pt) {
  idx.validate();
  if (direction == 3)
    return basis_partial_direct(2, idx, w, pt) - basis_partial_direct(1, idx, w, pt);
  if (direction != 1 && direction != 2)
    throw std::invalid_argument("basis_partial_direct: direction must be 1, 2 or 3");
  const int k = idx.k, n = idx.n;
  const double s = pt.x + pt.y;
  if (s < detail::kCollapseEps)
    throw std::domain_error("basis_partial_direct: needs x+y bounded away from 0");

  const JacobiParams p1{w.alpha, w.beta};
  const JacobiParams p2{2.0 * k + w.alpha + w.beta + 1.0, w.gamma};
  const double t = (pt.y - pt.x) / s;
  const double z = 1.0 - 2.0 * pt.x - 2.0 * pt.y;

  const double jk = jacobi_J(k, p1, t);
  // J'(t) = J_{k-1}^{alpha+1,beta+1}(t) / 2
  const double jk_d = k >= 1 ? 0.5 * jacobi_J(k - 1, {w.alpha + 1.0, w.beta + 1.0}, t) : 0.0;
  const double rn = jacobi_J(n - k, p2, z);
  const double rn_d =
      n - k >= 1 ? 0.5 * jacobi_J(n - k - 1, {p2.alpha + 1.0, p2.beta + 1.0}, z) : 0.0;

  const double dt = direction == 1 ? -2.0 * pt.y / (s * s) : 2.0 * pt.x / (s * s);
  const double q = std::pow(s, k) * jk;
  const double dq = k * std::pow(s, k - 1) * jk + std::pow(s, k) * jk_d * dt;
  return dq * rn + q * rn_d * (-2.0);
}

}  // namespace simplex_approx
