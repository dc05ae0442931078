#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "simplex_approx/expansion.hpp"

namespace simplex_approx {

/// A named experiment function. `deriv(i, r)` returns the analytic
/// directional derivative d_i^r (d3 := d2 - d1) when one is available;
/// functions of finite smoothness carry none and are only used in
/// experiments that differentiate partial sums instead.
struct TestFunction {
  std::string id;
  std::function<double(double, double)> f;
  std::function<std::function<double(double, double)>(int, int)> deriv;

  bool has_derivatives() const { return static_cast<bool>(deriv); }
};

/// Fixed registry: analytic, product-type and finite-smoothness specimens.
inline const std::vector<TestFunction>& test_function_registry() {
  static const std::vector<TestFunction> registry = [] {
    std::vector<TestFunction> r;

    r.push_back({"exp-x2y", [](double x, double y) { return std::exp(x + 2.0 * y); },
                 [](int i, int order) -> std::function<double(double, double)> {
                   // d1 multiplies by 1, d2 by 2, d3 = d2 - d1 by 1
                   const double factor = i == 2 ? std::pow(2.0, order) : 1.0;
                   return [factor](double x, double y) { return factor * std::exp(x + 2.0 * y); };
                 }});

    r.push_back({"exp-sum", [](double x, double y) { return std::exp(x + y); },
                 [](int i, int order) -> std::function<double(double, double)> {
                   if (i == 3 && order >= 1)
                     return [](double, double) { return 0.0; };
                   return [](double x, double y) { return std::exp(x + y); };
                 }});

    r.push_back({"exp-xy", [](double x, double y) { return std::exp(x * y); },
                 [](int i, int order) -> std::function<double(double, double)> {
                   if (order > 2) throw std::invalid_argument("exp-xy: derivatives up to r=2");
                   switch (10 * i + order) {
                     case 11: return [](double x, double y) { return y * std::exp(x * y); };
                     case 12: return [](double x, double y) { return y * y * std::exp(x * y); };
                     case 21: return [](double x, double y) { return x * std::exp(x * y); };
                     case 22: return [](double x, double y) { return x * x * std::exp(x * y); };
                     case 31: return [](double x, double y) { return (x - y) * std::exp(x * y); };
                     case 32:
                       return [](double x, double y) {
                         return ((x - y) * (x - y) - 2.0) * std::exp(x * y);
                       };
                     default: throw std::invalid_argument("bad derivative request");
                   }
                 }});

    r.push_back({"cos-pi-sum", [](double x, double y) { return std::cos(M_PI * (x + y)); },
                 [](int i, int order) -> std::function<double(double, double)> {
                   if (i == 3)
                     return [](double, double) { return 0.0; };
                   const double amp = std::pow(M_PI, order);
                   const int phase = order % 4;
                   return [amp, phase](double x, double y) {
                     const double s = M_PI * (x + y);
                     switch (phase) {
                       case 0: return amp * std::cos(s);
                       case 1: return -amp * std::sin(s);
                       case 2: return -amp * std::cos(s);
                       default: return amp * std::sin(s);
                     }
                   };
                 }});

    // |1/2 - x - y|^{3/2}: finite smoothness across the ridge, algebraic
    // coefficient decay; no analytic derivative provider.
    r.push_back({"ridge-3half",
                 [](double x, double y) { return std::pow(std::abs(0.5 - x - y), 1.5); },
                 nullptr});

    return r;
  }();
  return registry;
}

inline const TestFunction& find_test_function(const std::string& id) {
  for (const TestFunction& t : test_function_registry())
    if (t.id == id) return t;
  throw std::invalid_argument("unknown test function '" + id + "'");
}

/// Single basis mode J_{k,n}^{w} as a test function. Derivatives come from
/// the coefficient algebra applied to the unit coefficient table, so any
/// order up to n is available.
inline TestFunction make_mode_function(BasisIndex idx, WeightParams w) {
  idx.validate();
  TestFunction t;
  t.id = "mode-" + std::to_string(idx.k) + "-" + std::to_string(idx.n);
  t.f = [idx, w](double x, double y) { return basis_eval(idx, w, {x, y}); };
  t.deriv = [idx, w](int i, int order) -> std::function<double(double, double)> {
    CoeffTable unit = CoeffTable::zeros(w, idx.n);
    unit.at(idx.k, idx.n) = 1.0;
    auto dtab = std::make_shared<CoeffTable>(project_derivative(unit, i, order));
    return [dtab](double x, double y) {
      return partial_sum_eval(*dtab, dtab->max_degree, {x, y});
    };
  };
  return t;
}

}  // namespace simplex_approx
