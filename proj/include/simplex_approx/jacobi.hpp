#pragma once

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace simplex_approx {

/// Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1.
/// Evaluated as the literal product, so non-positive bases give the literal
/// (possibly zero or negative) value rather than a Gamma-function detour.
inline double pochhammer(double a, int n) {
  double p = 1.0;
  for (int i = 0; i < n; ++i) p *= a + i;
  return p;
}

/// log (a)_n for a > 0; used where the plain product would overflow.
inline double log_pochhammer(double a, int n) {
  if (n == 0) return 0.0;
  return std::lgamma(a + n) - std::lgamma(a);
}

/// Exponent pair of the 1-D Jacobi weight (1-t)^alpha (1+t)^beta on [-1,1].
struct JacobiParams {
  double alpha;
  double beta;

  void validate() const {
    if (!(alpha > -1.0) || !(beta > -1.0))
      throw std::domain_error("JacobiParams: alpha and beta must be > -1");
  }
};

/// P_n^{(alpha,beta)}(t) by the classical three-term recurrence.
inline double jacobi_P(int n, JacobiParams p, double t) {
  if (n < 0) throw std::invalid_argument("jacobi_P: n must be >= 0");
  const double a = p.alpha, b = p.beta;
  if (n == 0) return 1.0;
  double pm1 = 1.0;
  double pm0 = (a + 1.0) + (a + b + 2.0) * (t - 1.0) / 2.0;
  for (int m = 2; m <= n; ++m) {
    const double c1 = 2.0 * m * (m + a + b) * (2.0 * m + a + b - 2.0);
    const double c2 =
        (2.0 * m + a + b - 1.0) * ((2.0 * m + a + b) * (2.0 * m + a + b - 2.0) * t + a * a - b * b);
    const double c3 = 2.0 * (m + a - 1.0) * (m + b - 1.0) * (2.0 * m + a + b);
    const double next = (c2 * pm0 - c3 * pm1) / c1;
    pm1 = pm0;
    pm0 = next;
  }
  return pm0;
}

/// J_n^{alpha,beta}(t) = P_n^{(alpha,beta)}(t) / (n+alpha+beta+1)_n.
/// The recurrence runs in the P normalization and the scale is applied once
/// at the end; recursing on J directly loses precision as the values decay.
inline double jacobi_J(int n, JacobiParams p, double t) {
  return jacobi_P(n, p, t) / pochhammer(n + p.alpha + p.beta + 1.0, n);
}

/// r-th derivative in t of J_n^{alpha,beta}(2t-1). Each derivative raises
/// both parameters by one and lowers the degree by one; the chain-rule
/// factor is absorbed by the normalization. Orders r > n give 0.
inline double jacobi_J_shifted_deriv(int n, JacobiParams p, double t, int r) {
  if (r < 0) throw std::invalid_argument("jacobi_J_shifted_deriv: r must be >= 0");
  if (r > n) return 0.0;
  return jacobi_J(n - r, {p.alpha + r, p.beta + r}, 2.0 * t - 1.0);
}

/// Total mass of the weight: int_{-1}^{1} (1-t)^alpha (1+t)^beta dt.
inline double jacobi_weight_mass(JacobiParams p) {
  return std::exp((p.alpha + p.beta + 1.0) * std::log(2.0) + std::lgamma(p.alpha + 1.0) +
                  std::lgamma(p.beta + 1.0) - std::lgamma(p.alpha + p.beta + 2.0));
}

/// Gauss-Jacobi rule: m nodes in (-1,1), positive weights, exact for
/// polynomials of degree <= 2m-1 against (1-t)^alpha (1+t)^beta.
struct GaussRule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
  JacobiParams params;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// Golub-Welsch construction: eigen-decompose the symmetric tridiagonal
/// matrix of recurrence coefficients; nodes are the eigenvalues and weights
/// come from the first components of the eigenvectors.
inline GaussRule1D gauss_jacobi_rule(int m, JacobiParams p) {
  if (m < 1) throw std::invalid_argument("gauss_jacobi_rule: m must be >= 1");
  p.validate();
  const double a = p.alpha, b = p.beta;

  // Recurrence coefficients of the monic orthogonal polynomials.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
  J(0, 0) = (b - a) / (a + b + 2.0);
  for (int k = 1; k < m; ++k) {
    const double den = (2.0 * k + a + b) * (2.0 * k + a + b + 2.0);
    J(k, k) = (b * b - a * a) / den;
    double bk;  // off-diagonal squared
    if (k == 1) {
      bk = 4.0 * (a + 1.0) * (b + 1.0) /
           ((a + b + 2.0) * (a + b + 2.0) * (a + b + 3.0));
    } else {
      const double q = 2.0 * k + a + b;
      bk = 4.0 * k * (k + a) * (k + b) * (k + a + b) / (q * q * (q + 1.0) * (q - 1.0));
    }
    J(k, k - 1) = J(k - 1, k) = std::sqrt(bk);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("gauss_jacobi_rule: tridiagonal eigen solve did not converge");

  GaussRule1D rule;
  rule.params = p;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  const double mass = jacobi_weight_mass(p);
  for (int i = 0; i < m; ++i) {
    rule.nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    rule.weights[i] = mass * v0 * v0;
  }
  for (int i = 0; i < m; ++i) {
    const bool ordered = i == 0 || rule.nodes[i] > rule.nodes[i - 1];
    if (!(rule.nodes[i] > -1.0 && rule.nodes[i] < 1.0) || !(rule.weights[i] > 0.0) || !ordered)
      throw std::runtime_error("gauss_jacobi_rule: invalid node/weight from eigen solve");
  }
  return rule;
}

}  // namespace simplex_approx
