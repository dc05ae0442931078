// Acceptance suite: one pass/fail line per criterion. Run with no arguments
// for the full gate, or pass criterion numbers to run a subset.

#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "simplex_approx/determinant_identities.hpp"
#include "simplex_approx/estimates.hpp"
#include "simplex_approx/expansion.hpp"
#include "simplex_approx/report.hpp"

using namespace simplex_approx;

namespace {

bool all_equal(const std::vector<ExactCheckRecord>& recs, std::string& detail) {
  int bad = 0;
  for (const auto& r : recs)
    if (!r.equal) {
      if (bad == 0) detail = "first failure: " + r.params;
      ++bad;
    }
  if (bad == 0) detail = std::to_string(recs.size()) + " cases, all exactly equal";
  return bad == 0;
}

// 1. determinant family, exact
bool criterion1(std::string& detail) {
  return all_equal(sweep_det_family(4, 4, 25, 0), detail);
}

// 2. coefficient-matrix determinant specialization, exact
bool criterion2(std::string& detail) {
  const std::vector<Rational> exponents = {Rational(0), Rational(1, 2), Rational(-1, 4),
                                           Rational(7, 3)};
  return all_equal(sweep_mr_det(3, 4, 6, exponents), detail);
}

// 3. terminating summation identity, exact
bool criterion3(std::string& detail) {
  return all_equal(sweep_terminating_sum(3, 6, 10, 0), detail);
}

// 4. Laplace structure, exact
bool criterion4(std::string& detail) {
  return all_equal(sweep_laplace(6, 5, 0), detail);
}

// 5. Gram matrix vs diag(h)
bool criterion5(std::string& detail) {
  const std::vector<WeightParams> weights = {
      {0, 0, 0}, {-0.5, -0.5, -0.5}, {1, 2, 0.5}, {0.5, -0.25, 1.5}};
  const int N = 8;
  double worst_off = 0.0, worst_diag = 0.0;
  for (const WeightParams& w : weights) {
    const TriangleRule rule = triangle_rule(2 * N, w);
    const std::size_t entries = tri_size(N);
    std::vector<std::vector<double>> tables(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) tables[i] = basis_eval_all(N, w, rule.nodes[i]);
    for (std::size_t a = 0; a < entries; ++a)
      for (std::size_t b = a; b < entries; ++b) {
        const double v = pairwise_sum(rule.size(), [&](std::size_t i) {
          return rule.weights[i] * tables[i][a] * tables[i][b];
        });
        if (a == b) {
          int m = 0;
          while (tri_size(m) <= a) ++m;
          const int k = static_cast<int>(a - tri_index(0, m));
          const double h = basis_norm_h({k, m}, w);
          worst_diag = std::max(worst_diag, std::abs(v - h) / h);
        } else {
          worst_off = std::max(worst_off, std::abs(v));
        }
      }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "max off-diagonal %.3g (<=1e-10), max diagonal rel %.3g (<=1e-10)",
                worst_off, worst_diag);
  detail = buf;
  return worst_off <= 1e-10 && worst_diag <= 1e-10;
}

// 6. derivative relations pointwise + finite differences
bool criterion6(std::string& detail) {
  SplitMix64 rng(6);
  double worst_rel = 0.0, worst_fd = 0.0;
  for (const WeightParams w : {WeightParams{0, 0, 0}, WeightParams{0.5, -0.25, 1.0}}) {
    for (int n = 0; n <= 8; ++n)
      for (int k = 0; k <= n; ++k)
        for (int s = 0; s < 50; ++s) {
          double x, y;
          do {
            x = rng.uniform(0.05, 0.9);
            y = rng.uniform(0.05, 0.9);
          } while (x + y > 0.95);
          const TrianglePoint pt{x, y};
          for (int dir = 1; dir <= 3; ++dir) {
            const double lhs = basis_partial_direct(dir, {k, n}, w, pt);
            const double rhs = basis_partial(dir, {k, n}, w, pt);
            worst_rel = std::max(worst_rel, std::abs(lhs - rhs));
          }
          const double fd1 = oracles::diff_central(
              [&](double u) { return basis_eval({k, n}, w, {u, y}); }, x);
          const double fd2 = oracles::diff_central(
              [&](double u) { return basis_eval({k, n}, w, {x, u}); }, y);
          worst_fd = std::max({worst_fd, std::abs(basis_partial(1, {k, n}, w, pt) - fd1),
                               std::abs(basis_partial(2, {k, n}, w, pt) - fd2),
                               std::abs(basis_partial(3, {k, n}, w, pt) - (fd2 - fd1))});
        }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "max relation residual %.3g (<=1e-9), max FD residual %.3g (<=1e-7)",
                worst_rel, worst_fd);
  detail = buf;
  return worst_rel <= 1e-9 && worst_fd <= 1e-7;
}

// 7. coefficient algebra: derivative projection vs quadrature, and recovery
bool criterion7(std::string& detail) {
  const WeightParams w{0, 0, 0};
  const int N = 10;
  const TestFunction& f = find_test_function("exp-x2y");
  const TriangleRule rule = expansion_rule(w, N);
  const CoeffTable tab = expand(f.f, w, N, rule);
  double worst_proj = 0.0;
  for (int r = 1; r <= 2; ++r)
    for (int dir = 1; dir <= 3; ++dir) {
      const CoeffTable da = project_derivative(tab, dir, r);
      const auto g = f.deriv(dir, r);
      const CoeffTable dq =
          expand(g, da.params, N - r, expansion_rule(da.params, N - r));
      for (int m = 0; m <= N - r; ++m)
        for (int k = 0; k <= m; ++k)
          worst_proj = std::max(worst_proj, std::abs(da.at(k, m) - dq.at(k, m)) *
                                                std::sqrt(da.norm_of(k, m)));
    }

  SplitMix64 rng(7);
  double worst_rec = 0.0;
  for (int rep = 0; rep < 5; ++rep) {
    CoeffTable p = CoeffTable::zeros(w, N);  // unit-scale coefficients
    for (double& v : p.values) v = rng.uniform(-1.0, 1.0);
    for (int r = 1; r <= 2; ++r) {
      const CoeffTable d1 = project_derivative(p, 1, r);
      const CoeffTable d2 = project_derivative(p, 2, r);
      for (int n = 0; n <= N; ++n)
        for (int k = 0; k + 2 * r - 1 <= n; ++k)
          worst_rec = std::max(
              worst_rec, std::abs(reconstruct_from_derivs(r, k, n, w, d1, d2) - p.at(k, n)));
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "max projection residual %.3g (<=1e-8), max recovery %.3g (<=1e-9)",
                worst_proj, worst_rec);
  detail = buf;
  return worst_proj <= 1e-8 && worst_rec <= 1e-9;
}

bool report_ok(const RatioReport& rep, std::string& detail) {
  int gated = 0;
  for (const RatioRow& row : rep.rows) {
    if (!std::isfinite(row.ratio) || row.ratio < 0.0) {
      detail = rep.experiment + "/" + rep.function_id + ": non-finite ratio";
      return false;
    }
    if (rep.row_gated(row)) ++gated;
  }
  if (gated == 0) {
    detail = rep.experiment + "/" + rep.function_id + ": no usable rows";
    return false;
  }
  if (!rep.trend_ok) {
    detail = rep.experiment + "/" + rep.function_id + ": trend check failed";
    return false;
  }
  return true;
}

// 8. main estimate, property-based
bool criterion8(std::string& detail) {
  double sup = 0.0;
  for (const char* id : {"exp-x2y", "cos-pi-sum"}) {
    const TestFunction& f = find_test_function(id);
    for (int r : {1, 2}) {
      std::vector<int> range;
      for (int n = 3 * r; n <= 40; ++n) range.push_back(n);
      const RatioReport rep = main_estimate_ratio(f, {0, 0, 0}, r, range);
      if (!report_ok(rep, detail)) return false;
      sup = std::max(sup, rep.sup_ratio);
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "ratios finite, trend ok; measured sup ratio %.3g", sup);
  detail = buf;
  return true;
}

// 9. Bernstein inequality, ensemble
bool criterion9(std::string& detail) {
  std::vector<int> range;
  for (int n = 1; n <= 30; ++n) range.push_back(n);
  double sup = 0.0;
  std::uint64_t seed = 9;
  for (int r : {1, 2})
    for (int dir : {1, 2, 3}) {
      const RatioReport rep = bernstein_sweep({0, 0, 0}, r, dir, range, 200, seed++);
      if (!report_ok(rep, detail)) return false;
      sup = std::max(sup, rep.sup_ratio);
    }
  char buf[96];
  std::snprintf(buf, sizeof buf, "trend ok for r in {1,2}, i in {1,2,3}; measured sup %.3g", sup);
  detail = buf;
  return true;
}

// 10. K-functional comparison
bool criterion10(std::string& detail) {
  const WeightParams w{0, 0, 0};

  // single-mode pin: module values must match the closed forms
  const TestFunction mode = make_mode_function({1, 3}, w);
  std::vector<double> t_grid;
  for (int n = 1; n <= 30; ++n) t_grid.push_back(1.0 / n);
  const auto pins = k_equiv_check(mode, w, 1, t_grid, 6);
  const double fnorm = std::sqrt(basis_norm_h({1, 3}, w));
  const double d1 = std::hypot(a_coeff(1, 3, 0, 0) * std::sqrt(basis_norm_h({0, 2}, {1, 0, 1})),
                               std::sqrt(basis_norm_h({1, 2}, {1, 0, 1})));
  const double d2 = std::hypot(a_coeff(1, 3, 0, 0) * std::sqrt(basis_norm_h({0, 2}, {0, 1, 1})),
                               std::sqrt(basis_norm_h({1, 2}, {0, 1, 1})));
  const double d3 = std::sqrt(basis_norm_h({0, 2}, {1, 1, 0}));
  const double lam3 = std::abs(lambda_n(3, w));
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    const double kstar_cf = std::min(fnorm, t * (d1 + d2 + d3));
    const double kclassic_cf = std::min(fnorm, t * std::sqrt(lam3) * fnorm);
    if (std::abs(pins[0].rows[i].lhs - kstar_cf) > 1e-8 * kstar_cf ||
        std::abs(pins[0].rows[i].rhs - kclassic_cf) > 1e-8 * kclassic_cf) {
      detail = "single-mode closed forms not reproduced";
      return false;
    }
  }

  // analytic specimen: both ratio curves finite over the t grid
  const TestFunction& f = find_test_function("exp-sum");
  const auto reports = k_equiv_check(f, w, 1, t_grid, 20);
  double lo = 1e300, hi1 = 0.0, hi2 = 0.0;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double r1 = reports[0].rows[i].ratio, r2 = reports[1].rows[i].ratio;
    if (!std::isfinite(r1) || !std::isfinite(r2) || r1 <= 0.0 || r2 <= 0.0) {
      detail = "ratio curve left the finite positive range";
      return false;
    }
    lo = std::min({lo, r1, r2});
    hi1 = std::max(hi1, r1);
    hi2 = std::max(hi2, r2);
  }
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "pins exact; measured envelopes: K*/K in (%.3g, %.3g], K/(K*+t^r||f||) <= %.3g",
                lo, hi1, hi2);
  detail = buf;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* label;
    std::function<bool(std::string&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "determinant family det M(r1,r2) = closed form, exact", criterion1},
      {2, "det M_r(k,n) specialization, exact", criterion2},
      {3, "terminating summation identity, exact", criterion3},
      {4, "Laplace expansion structure, exact", criterion4},
      {5, "orthogonality and norms vs diag(h)", criterion5},
      {6, "derivative relations, pointwise and finite differences", criterion6},
      {7, "coefficient algebra: projections and recovery", criterion7},
      {8, "main estimate ratio, bounded trend", criterion8},
      {9, "Bernstein inequality ensemble, bounded trend", criterion9},
      {10, "K-functional comparison pins and envelopes", criterion10},
  };

  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %2d: %s — %s\n", ok ? "PASS" : "FAIL", c.id, c.label,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
