#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "simplex_approx/jacobi.hpp"
#include "simplex_approx/triangle_basis.hpp"
#include "simplex_approx/util.hpp"

namespace simplex_approx {

/// Normalizing constant of the inner product, chosen so that <1,1> = 1:
/// Gamma(alpha+beta+gamma+3) / (Gamma(alpha+1) Gamma(beta+1) Gamma(gamma+1)).
inline double c_const(WeightParams w) {
  w.validate();
  return std::exp(std::lgamma(w.alpha + w.beta + w.gamma + 3.0) - std::lgamma(w.alpha + 1.0) -
                  std::lgamma(w.beta + 1.0) - std::lgamma(w.gamma + 1.0));
}

/// Quadrature rule on the triangle for the normalized weighted integral.
/// Weights sum to 1; nodes lie strictly inside the triangle.
struct TriangleRule {
  std::vector<TrianglePoint> nodes;
  std::vector<double> weights;
  WeightParams params;
  int exact_degree;

  std::size_t size() const { return nodes.size(); }
};

/// Tensor rule in collapsed coordinates x = u(1-t)/2, y = u(1+t)/2. The
/// u-axis carries u^{alpha+beta+1} (1-u)^gamma (the extra u from the
/// Jacobian) and the t-axis carries (1-t)^alpha (1+t)^beta, so the triangle
/// weight is absorbed exactly for any admissible exponents. One point per
/// axis is over-allocated relative to the requested order, and the claimed
/// exact_degree charges the Jacobian's power of u to the u-axis budget.
inline TriangleRule triangle_rule(int order, WeightParams w) {
  if (order < 0) throw std::invalid_argument("triangle_rule: order must be >= 0");
  w.validate();
  const int m = order / 2 + 2;
  // u = (1+v)/2 maps the u-weight to (1-v)^gamma (1+v)^{alpha+beta+1}.
  const GaussRule1D ur = gauss_jacobi_rule(m, {w.gamma, w.alpha + w.beta + 1.0});
  const GaussRule1D tr = gauss_jacobi_rule(m, {w.alpha, w.beta});

  TriangleRule rule;
  rule.params = w;
  rule.exact_degree = 2 * m - 2;  // min of the u budget (2m-1 less one for the Jacobian) and 2m-1
  rule.nodes.reserve(static_cast<std::size_t>(m) * m);
  rule.weights.reserve(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    const double u = 0.5 * (1.0 + ur.nodes[i]);
    for (int j = 0; j < m; ++j) {
      const double t = tr.nodes[j];
      rule.nodes.push_back({u * (1.0 - t) / 2.0, u * (1.0 + t) / 2.0});
      rule.weights.push_back(ur.weights[i] * tr.weights[j]);
    }
  }
  const double total = pairwise_sum(rule.weights);
  for (double& wi : rule.weights) wi /= total;
  return rule;
}

/// Rule sized for expanding through degree N; the default margin keeps
/// quadrature error negligible for smooth non-polynomial integrands.
inline TriangleRule expansion_rule(WeightParams w, int max_degree, int margin = 20) {
  return triangle_rule(2 * max_degree + margin, w);
}

/// <f, g>_{alpha,beta,gamma}: normalized weighted integral, exact whenever
/// f*g is a polynomial of degree <= rule.exact_degree. The reduction is a
/// fixed-order cascade so repeated runs are bit-identical.
template <typename F, typename G>
double inner_product(F&& f, G&& g, WeightParams w, const TriangleRule& rule) {
  if (!(w == rule.params))
    throw std::invalid_argument("inner_product: rule was built for different WeightParams");
  return pairwise_sum(rule.size(), [&](std::size_t i) {
    const TrianglePoint& p = rule.nodes[i];
    return rule.weights[i] * f(p.x, p.y) * g(p.x, p.y);
  });
}

template <typename F>
double norm_sq(F&& f, WeightParams w, const TriangleRule& rule) {
  return simplex_approx::inner_product(f, f, w, rule);  // qualified: std::inner_product otherwise joins overload resolution through ADL
}

}  // namespace simplex_approx
