#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "simplex_approx/coeff_relations.hpp"
#include "simplex_approx/quadrature.hpp"
#include "simplex_approx/triangle_basis.hpp"
#include "simplex_approx/util.hpp"

namespace simplex_approx {

/// Triangular table of Fourier coefficients f_{k,m}, k <= m <= max_degree,
/// for one weight triple. Norms h_{k,m} are stored alongside the values so
/// Parseval sums and derivative projections avoid recomputing them.
struct CoeffTable {
  WeightParams params{0.0, 0.0, 0.0};
  int max_degree = -1;           // -1 means the empty table
  std::vector<double> values;    // tri_index layout
  std::vector<double> norms;     // h_{k,m}, same layout

  static CoeffTable zeros(WeightParams w, int max_degree) {
    w.validate();
    CoeffTable t;
    t.params = w;
    t.max_degree = max_degree;
    t.values.assign(tri_size(max_degree), 0.0);
    t.norms.resize(tri_size(max_degree));
    for (int m = 0; m <= max_degree; ++m)
      for (int k = 0; k <= m; ++k) t.norms[tri_index(k, m)] = basis_norm_h({k, m}, w);
    return t;
  }

  double& at(int k, int m) { return values[tri_index(k, m)]; }
  double at(int k, int m) const { return values[tri_index(k, m)]; }
  double norm_of(int k, int m) const { return norms[tri_index(k, m)]; }
};

/// Expand f through degree max_degree: f_{k,m} = <f, J_{k,m}> / h_{k,m}.
/// The caller supplies a rule of order >= 2*max_degree (plus a margin for
/// non-polynomial f). Entries are computed in parallel; each one reduces
/// over nodes in a fixed cascade, so results do not depend on thread count.
template <typename F>
CoeffTable expand(F&& f, WeightParams w, int max_degree, const TriangleRule& rule) {
  if (!(w == rule.params))
    throw std::invalid_argument("expand: rule was built for different WeightParams");
  CoeffTable tab = CoeffTable::zeros(w, max_degree);
  const std::size_t entries = tri_size(max_degree);
  const std::size_t nnodes = rule.size();

  // Per-node basis tables and weighted f values, computed once.
  std::vector<double> basis_tab(entries * nnodes);
  std::vector<double> wf(nnodes);
  parallel_for(nnodes, [&](std::size_t i) {
    const TrianglePoint p = rule.nodes[i];
    wf[i] = rule.weights[i] * f(p.x, p.y);
    const std::vector<double> row = basis_eval_all(max_degree, w, p);
    for (std::size_t e = 0; e < entries; ++e) basis_tab[e * nnodes + i] = row[e];
  });
  parallel_for(entries, [&](std::size_t e) {
    const double* col = basis_tab.data() + e * nnodes;
    const double ip = pairwise_sum(nnodes, [&](std::size_t i) { return wf[i] * col[i]; });
    tab.values[e] = ip / tab.norms[e];
  });
  return tab;
}

/// Partial sum S_n f at a point: sum of f_{k,m} J_{k,m} over m <= n.
inline double partial_sum_eval(const CoeffTable& tab, int n, TrianglePoint pt) {
  if (n > tab.max_degree) throw std::out_of_range("partial_sum_eval: n exceeds table degree");
  if (n < 0 || tab.max_degree < 0) return 0.0;
  const std::vector<double> basis = basis_eval_all(n, tab.params, pt);
  return pairwise_sum(tri_size(n), [&](std::size_t e) { return tab.values[e] * basis[e]; });
}

/// Parseval sum  sum |f_{k,m}|^2 h_{k,m} over the whole table.
inline double parseval_norm_sq(const CoeffTable& tab) {
  return pairwise_sum(tab.values.size(),
                      [&](std::size_t e) { return tab.values[e] * tab.values[e] * tab.norms[e]; });
}

/// Best-approximation error by the Parseval residual:
/// E_n(f)^2 = ||f||^2 - sum_{m<=n} sum_k |f_{k,m}|^2 h_{k,m}, clamped at 0.
/// significance_loss marks radicands below 1e3 * eps * ||f||^2, where the
/// subtraction has no digits left.
struct BestError {
  double value;
  bool significance_loss;
};

inline BestError best_error(const CoeffTable& tab, double f_norm_sq, int n) {
  const int nn = std::min(n, tab.max_degree);
  const double partial = pairwise_sum(tri_size(nn), [&](std::size_t e) {
    return tab.values[e] * tab.values[e] * tab.norms[e];
  });
  const double radicand = f_norm_sq - partial;
  const bool loss =
      radicand < 1e3 * std::numeric_limits<double>::epsilon() * std::abs(f_norm_sq);
  return {std::sqrt(std::max(0.0, radicand)), loss};
}

/// Copy of the table with rows above m dropped.
inline CoeffTable truncated(const CoeffTable& tab, int m) {
  if (m >= tab.max_degree) return tab;
  CoeffTable out;
  out.params = tab.params;
  out.max_degree = std::max(m, -1);
  const std::size_t sz = tri_size(out.max_degree);
  out.values.assign(tab.values.begin(), tab.values.begin() + sz);
  out.norms.assign(tab.norms.begin(), tab.norms.begin() + sz);
  return out;
}

/// Spectral action of the fractional operator power: entry (k,m) is scaled
/// by |lambda_m|^{r_half} and the m = 0 row maps to zero (lambda_0 = 0, and
/// the defining expansion starts at m = 1). The positive-operator
/// convention uses |lambda_m|; with r_half = r/2 the Parseval norm of the
/// result is (sum_m |lambda_m|^r ||proj_m f||^2)^{1/2}.
inline CoeffTable apply_D_power(const CoeffTable& tab, double r_half) {
  CoeffTable out = tab;
  for (int m = 0; m <= tab.max_degree; ++m) {
    const double factor = m == 0 ? 0.0 : std::pow(std::abs(lambda_n(m, tab.params)), r_half);
    for (int k = 0; k <= m; ++k) out.at(k, m) = factor * tab.at(k, m);
  }
  return out;
}

/// Coefficient table of the r-th derivative of f in direction 1, 2 or 3,
/// living in the shifted weight system and of degree max_degree - r. No
/// quadrature: directions 1 and 2 are short signed A-coefficient sums over
/// the source rows, direction 3 is an index shift.
inline CoeffTable project_derivative(const CoeffTable& tab, int direction, int r) {
  if (r < 0) throw std::invalid_argument("project_derivative: r must be >= 0");
  if (direction < 1 || direction > 3)
    throw std::invalid_argument("project_derivative: direction must be 1, 2 or 3");
  const double a = tab.params.alpha, b = tab.params.beta, g = tab.params.gamma;
  WeightParams ws;
  switch (direction) {
    case 1: ws = {a + r, b, g + r}; break;
    case 2: ws = {a, b + r, g + r}; break;
    default: ws = {a + r, b + r, g}; break;
  }
  CoeffTable out = CoeffTable::zeros(ws, tab.max_degree - r);
  const double sign = (r % 2 == 0) ? 1.0 : -1.0;
  for (int m = 0; m <= out.max_degree; ++m) {
    const int n = m + r;  // source degree
    for (int k = 0; k <= m; ++k) {
      double v = 0.0;
      switch (direction) {
        case 1:
          for (int j = 0; j <= r; ++j) v += A_coeff(r, j, k, n, a, b) * tab.at(k + j, n);
          v *= sign;
          break;
        case 2:
          for (int j = 0; j <= r; ++j)
            v += (j % 2 == 0 ? 1.0 : -1.0) * A_coeff(r, j, k, n, b, a) * tab.at(k + j, n);
          v *= sign;
          break;
        default:
          v = tab.at(k + r, n);
          break;
      }
      out.at(k, m) = v;
    }
  }
  return out;
}

/// Recover f_{k,n} from the direction-1 and direction-2 derivative tables
/// through the Cramer coefficients. The linear system equates the matrix
/// rows to (-1)^r times the derivative coefficients, so that factor is
/// applied here; with it the recovery is exact on polynomials.
inline double reconstruct_from_derivs(int r, int k, int n, WeightParams w, const CoeffTable& d1,
                                      const CoeffTable& d2) {
  const std::vector<double> B = solve_B(r, k, n, w);
  double v = 0.0;
  for (int l = 0; l < r; ++l)
    v += B[l] * d1.at(k + l, n - r) + B[r + l] * d2.at(k + l, n - r);
  return (r % 2 == 0) ? v : -v;
}

/// Serialize to JSON with 17-significant-digit decimal strings, enough for
/// bit-faithful round trips of the coefficient values.
inline nlohmann::json to_json(const CoeffTable& tab) {
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  nlohmann::json rows = nlohmann::json::array();
  for (int m = 0; m <= tab.max_degree; ++m) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k <= m; ++k) row.push_back(fmt(tab.at(k, m)));
    rows.push_back(std::move(row));
  }
  return nlohmann::json{{"params",
                         {{"alpha", fmt(tab.params.alpha)},
                          {"beta", fmt(tab.params.beta)},
                          {"gamma", fmt(tab.params.gamma)}}},
                        {"max_degree", tab.max_degree},
                        {"rows", std::move(rows)}};
}

inline CoeffTable coeff_table_from_json(const nlohmann::json& j) {
  const WeightParams w{std::stod(j.at("params").at("alpha").get<std::string>()),
                       std::stod(j.at("params").at("beta").get<std::string>()),
                       std::stod(j.at("params").at("gamma").get<std::string>())};
  const int N = j.at("max_degree").get<int>();
  CoeffTable tab = CoeffTable::zeros(w, N);
  const auto& rows = j.at("rows");
  if (static_cast<int>(rows.size()) != N + 1)
    throw std::invalid_argument("coeff_table_from_json: row count mismatch");
  for (int m = 0; m <= N; ++m) {
    if (static_cast<int>(rows[m].size()) != m + 1)
      throw std::invalid_argument("coeff_table_from_json: triangular shape violated");
    for (int k = 0; k <= m; ++k) tab.at(k, m) = std::stod(rows[m][k].get<std::string>());
  }
  return tab;
}

}  // namespace simplex_approx
