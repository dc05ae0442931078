#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "simplex_approx/estimates.hpp"
#include "simplex_approx/expansion.hpp"
#include "simplex_approx/util.hpp"

using namespace simplex_approx;
using Catch::Approx;

TEST_CASE("expand reproduces a basis element", "[expansion]") {
  const WeightParams w{0.5, 0, 1.0};
  const TriangleRule rule = expansion_rule(w, 3);
  const auto f = [&](double x, double y) { return basis_eval({1, 2}, w, {x, y}); };
  const CoeffTable tab = expand(f, w, 3, rule);
  for (int m = 0; m <= 3; ++m)
    for (int k = 0; k <= m; ++k) {
      if (k == 1 && m == 2)
        CHECK(tab.at(k, m) == Approx(1.0).margin(1e-10));
      else
        CHECK(std::abs(tab.at(k, m)) <= 1e-10);
    }
}

TEST_CASE("expand of a constant", "[expansion]") {
  const WeightParams w{0, 0, 0};
  const TriangleRule rule = expansion_rule(w, 2);
  const CoeffTable tab = expand([](double, double) { return 7.0; }, w, 2, rule);
  CHECK(tab.at(0, 0) == Approx(7.0).margin(1e-12));
  for (int m = 1; m <= 2; ++m)
    for (int k = 0; k <= m; ++k) CHECK(std::abs(tab.at(k, m)) <= 1e-12);
}

TEST_CASE("expand reconstructs linear functions exactly", "[expansion]") {
  const WeightParams w{0, 0, 0};
  const TriangleRule rule = expansion_rule(w, 1);
  const CoeffTable tab = expand([](double x, double) { return x; }, w, 1, rule);
  SplitMix64 rng(2);
  for (int s = 0; s < 20; ++s) {
    const double x = rng.uniform(0, 0.9), y = rng.uniform(0, 1.0 - x);
    CHECK(partial_sum_eval(tab, 1, {x, y}) == Approx(x).margin(1e-12));
  }
}

TEST_CASE("partial sums project and reproduce", "[expansion]") {
  const WeightParams w{0, 0, 0};
  const TriangleRule rule3 = expansion_rule(w, 3);
  const auto j12 = [&](double x, double y) { return basis_eval({1, 2}, w, {x, y}); };
  const CoeffTable t12 = expand(j12, w, 3, rule3);
  CHECK(std::abs(partial_sum_eval(t12, 1, {0.3, 0.4})) <= 1e-10);
  CHECK_THROWS_AS(partial_sum_eval(t12, 4, {0.3, 0.4}), std::out_of_range);

  // S_d reproduces a degree-d polynomial
  SplitMix64 rng(21);
  CoeffTable p = random_polynomial(w, 4, rng);
  const auto fp = [&](double x, double y) { return partial_sum_eval(p, 4, {x, y}); };
  const TriangleRule rule4 = expansion_rule(w, 4);
  const CoeffTable q = expand(fp, w, 4, rule4);
  for (int s = 0; s < 10; ++s) {
    const double x = rng.uniform(0, 0.9), y = rng.uniform(0, 1.0 - x);
    CHECK(partial_sum_eval(q, 4, {x, y}) == Approx(fp(x, y)).margin(1e-9));
  }

  // spectral accuracy on an entire function
  const auto f = [](double x, double y) { return std::exp(x + y); };
  const TriangleRule rule8 = expansion_rule(w, 8);
  const CoeffTable t8 = expand(f, w, 8, rule8);
  CHECK(std::abs(partial_sum_eval(t8, 8, {0.25, 0.25}) - f(0.25, 0.25)) <= 1e-6);
}

TEST_CASE("best_error by Parseval residual", "[expansion]") {
  const WeightParams w{0, 0, 0};

  // polynomial: zero beyond its degree
  SplitMix64 rng(22);
  const CoeffTable p = random_polynomial(w, 3, rng);
  const double pns = parseval_norm_sq(p);
  const BestError e3 = best_error(p, pns, 3);
  CHECK(e3.value == 0.0);
  CHECK(e3.significance_loss);

  // single mode: E_0 = sqrt(h_{0,1})
  CoeffTable single = CoeffTable::zeros(w, 1);
  single.at(0, 1) = 1.0;
  const double h01 = basis_norm_h({0, 1}, w);
  CHECK(best_error(single, parseval_norm_sq(single), 0).value ==
        Approx(std::sqrt(h01)).epsilon(1e-13));

  // orthogonal components with norms 3 and 4 give E_0 = 5
  CoeffTable two = CoeffTable::zeros(w, 1);
  two.at(0, 1) = 3.0 / std::sqrt(basis_norm_h({0, 1}, w));
  two.at(1, 1) = 4.0 / std::sqrt(basis_norm_h({1, 1}, w));
  CHECK(best_error(two, parseval_norm_sq(two), 0).value == Approx(5.0).epsilon(1e-13));

  // monotone in n, never NaN
  const TriangleRule rule = expansion_rule(w, 10);
  const auto f = [](double x, double y) { return std::exp(x + 2.0 * y); };
  const CoeffTable tf = expand(f, w, 10, rule);
  const double fns = norm_sq(f, w, rule);
  // monotone in n down to the Parseval noise floor, where the loss flag
  // takes over
  const double floor_scale =
      std::sqrt(1e3 * std::numeric_limits<double>::epsilon() * fns);
  double prev = std::numeric_limits<double>::infinity();
  for (int n = 0; n <= 10; ++n) {
    const BestError e = best_error(tf, fns, n);
    CHECK(std::isfinite(e.value));
    if (!e.significance_loss)
      CHECK(e.value <= prev + 1e-15);
    else
      CHECK(e.value <= floor_scale);
    prev = e.value;
  }
}

TEST_CASE("apply_D_power scales rows by eigenvalue powers", "[expansion]") {
  const WeightParams w{0, 0, 0};
  CoeffTable c = CoeffTable::zeros(w, 2);
  c.at(0, 0) = 3.0;
  CoeffTable out = apply_D_power(c, 2.0);
  for (double v : out.values) CHECK(v == 0.0);

  CoeffTable u = CoeffTable::zeros(w, 2);
  u.at(0, 2) = 1.0;
  CHECK(apply_D_power(u, 1.0).at(0, 2) == Approx(8.0));

  CoeffTable m = CoeffTable::zeros(w, 2);
  m.at(0, 0) = 1.0;
  m.at(0, 1) = 2.0;
  m.at(1, 2) = -3.0;
  const CoeffTable id = apply_D_power(m, 0.0);
  CHECK(id.at(0, 0) == 0.0);
  CHECK(id.at(0, 1) == 2.0);
  CHECK(id.at(1, 2) == -3.0);
}

TEST_CASE("project_derivative pinned coefficient moves", "[expansion]") {
  const WeightParams w{0.5, -0.25, 1.0};
  CoeffTable u = CoeffTable::zeros(w, 3);
  u.at(2, 3) = 1.0;
  const CoeffTable d3 = project_derivative(u, 3, 1);
  CHECK(d3.params == WeightParams{w.alpha + 1, w.beta + 1, w.gamma});
  CHECK(d3.max_degree == 2);
  CHECK(d3.at(1, 2) == 1.0);

  const WeightParams w0{0, 0, 0};
  CoeffTable v = CoeffTable::zeros(w0, 1);
  v.at(0, 1) = 1.0;
  const CoeffTable d1 = project_derivative(v, 1, 1);
  CHECK(d1.at(0, 0) == Approx(-1.0));
}

TEST_CASE("project_derivative matches quadrature expansion of derivatives", "[expansion]") {
  const WeightParams w{0, 0, 0};
  const int N = 8;
  const TestFunction& f = find_test_function("exp-x2y");
  const TriangleRule rule = expansion_rule(w, N);
  const CoeffTable tab = expand(f.f, w, N, rule);
  for (int r = 1; r <= 2; ++r) {
    for (int dir = 1; dir <= 3; ++dir) {
      const CoeffTable via_algebra = project_derivative(tab, dir, r);
      const auto g = f.deriv(dir, r);
      const TriangleRule rs = expansion_rule(via_algebra.params, N - r);
      const CoeffTable via_quadrature = expand(g, via_algebra.params, N - r, rs);
      for (int m = 0; m <= N - r; ++m)
        for (int k = 0; k <= m; ++k) {
          const double scale = std::sqrt(via_algebra.norm_of(k, m));
          CHECK(std::abs(via_algebra.at(k, m) - via_quadrature.at(k, m)) * scale <= 1e-8);
        }
    }
  }
}

TEST_CASE("derivatives commute with projections", "[expansion]") {
  // per-row comparison between the coefficient route and re-expansion of the
  // analytic derivative, for f = exp(x+y)
  const WeightParams w{0, 0, 0};
  const int N = 8;
  const TestFunction& f = find_test_function("exp-sum");
  const TriangleRule rule = expansion_rule(w, N);
  const CoeffTable tab = expand(f.f, w, N, rule);
  for (int r = 1; r <= 2; ++r)
    for (int dir = 1; dir <= 3; ++dir) {
      const CoeffTable da = project_derivative(tab, dir, r);
      const auto g = f.deriv(dir, r);
      const TriangleRule rs = expansion_rule(da.params, N - r);
      const CoeffTable dq = expand(g, da.params, N - r, rs);
      for (int n = r; n <= N; ++n) {
        // row n-r of the derivative table is d^r proj_n f
        const int m = n - r;
        for (int k = 0; k <= m; ++k)
          CHECK(std::abs(da.at(k, m) - dq.at(k, m)) * std::sqrt(da.norm_of(k, m)) <= 1e-8);
      }
    }
}

TEST_CASE("parseval identity for polynomials", "[expansion]") {
  const WeightParams w{1, 0, 0.5};
  SplitMix64 rng(23);
  const CoeffTable p = random_polynomial(w, 5, rng);
  const auto fp = [&](double x, double y) { return partial_sum_eval(p, 5, {x, y}); };
  const TriangleRule rule = expansion_rule(w, 5);
  CHECK(norm_sq(fp, w, rule) == Approx(parseval_norm_sq(p)).epsilon(1e-10));
}

TEST_CASE("coefficient table JSON round trip", "[expansion]") {
  const WeightParams w{0.5, -0.25, 2.0};
  SplitMix64 rng(24);
  CoeffTable tab = random_polynomial(w, 6, rng);
  const nlohmann::json j = to_json(tab);
  const CoeffTable back = coeff_table_from_json(j);
  CHECK(back.params == tab.params);
  REQUIRE(back.max_degree == tab.max_degree);
  for (std::size_t e = 0; e < tab.values.size(); ++e)
    CHECK(back.values[e] == tab.values[e]);  // bit-faithful
}
