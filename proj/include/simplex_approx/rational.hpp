#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace simplex_approx {

/// Arbitrary-precision rational with canonical form (positive denominator,
/// gcd 1) maintained by every operation.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational pochhammer_q(const Rational& a, long n) {
  if (n < 0) throw std::invalid_argument("pochhammer_q: n must be >= 0");
  Rational p = 1;
  for (long i = 0; i < n; ++i) p *= a + i;
  return p;
}

inline BigInt factorial_int(long n) {
  if (n < 0) throw std::domain_error("factorial_int: negative argument");
  BigInt f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

inline BigInt binomial_int(long n, long k) {
  if (k < 0 || k > n) return 0;
  BigInt c = 1;
  for (long i = 0; i < k; ++i) {
    c *= n - i;
    c /= i + 1;  // exact at every step
  }
  return c;
}

/// hi! / lo! for rational arguments whose difference is an integer,
/// rewritten as a rising factorial so everything stays rational:
/// hi >= lo gives (lo+1)_{hi-lo}, otherwise 1/(hi+1)_{lo-hi}.
/// A vanishing factor in the reciprocal case is a parameter-domain error.
inline Rational factorial_ratio_q(const Rational& hi, const Rational& lo) {
  const Rational diff = hi - lo;
  if (boost::multiprecision::denominator(diff) != 1)
    throw std::invalid_argument("factorial_ratio_q: arguments must differ by an integer");
  const long d = static_cast<long>(boost::multiprecision::numerator(diff));
  if (d >= 0) return pochhammer_q(lo + 1, d);
  const Rational p = pochhammer_q(hi + 1, -d);
  if (p == 0) throw std::domain_error("factorial_ratio_q: pole in denominator factorial");
  return 1 / p;
}

/// Parse "p/q", an integer, or a plain decimal ("-0.25") exactly.
inline Rational parse_rational(const std::string& text) {
  const auto bad = [&] { return std::invalid_argument("malformed rational: '" + text + "'"); };
  if (text.empty()) throw bad();
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      const BigInt num(text.substr(0, slash));
      const BigInt den(text.substr(slash + 1));
      if (den == 0) throw bad();
      return Rational(num, den);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(BigInt(text));
    const std::string head = text.substr(0, dot), tail = text.substr(dot + 1);
    if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos) throw bad();
    BigInt scale = 1;
    for (std::size_t i = 0; i < tail.size(); ++i) scale *= 10;
    const bool neg = !head.empty() && head[0] == '-';
    const BigInt whole(head.empty() || head == "-" ? std::string("0") : head);
    const BigInt frac(tail);
    const BigInt num = whole * scale + (neg ? -frac : frac);
    return Rational(num, scale);
  } catch (const std::runtime_error&) {
    throw bad();
  }
}

inline std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r;  // "p/q", or "p" when the denominator is 1
  return os.str();
}

struct RationalMatrix {
  int dim = 0;
  std::vector<Rational> a;

  explicit RationalMatrix(int d = 0) : dim(d), a(static_cast<std::size_t>(d) * d) {}

  Rational& at(int i, int j) { return a[static_cast<std::size_t>(i) * dim + j]; }
  const Rational& at(int i, int j) const { return a[static_cast<std::size_t>(i) * dim + j]; }

  static RationalMatrix identity(int d) {
    RationalMatrix m(d);
    for (int i = 0; i < d; ++i) m.at(i, i) = 1;
    return m;
  }
};

/// Exact determinant by fraction-free Bareiss elimination: denominators are
/// cleared row by row, the integer condensation runs with exact divisions,
/// and the row factors are divided back out at the end.
inline Rational det_bareiss(const RationalMatrix& m) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::lcm;
  using boost::multiprecision::numerator;
  const int d = m.dim;
  if (d == 0) return 1;

  std::vector<BigInt> M(static_cast<std::size_t>(d) * d);
  BigInt row_scale_product = 1;
  for (int i = 0; i < d; ++i) {
    BigInt l = 1;
    for (int j = 0; j < d; ++j) l = lcm(l, denominator(m.at(i, j)));
    for (int j = 0; j < d; ++j)
      M[static_cast<std::size_t>(i) * d + j] =
          numerator(m.at(i, j)) * (l / denominator(m.at(i, j)));
    row_scale_product *= l;
  }
  auto e = [&](int i, int j) -> BigInt& { return M[static_cast<std::size_t>(i) * d + j]; };

  int sign = 1;
  BigInt prev = 1;
  for (int k = 0; k + 1 < d; ++k) {
    if (e(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < d; ++i)
        if (e(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      for (int j = 0; j < d; ++j) std::swap(e(k, j), e(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < d; ++i) {
      for (int j = k + 1; j < d; ++j)
        e(i, j) = (e(i, j) * e(k, k) - e(i, k) * e(k, j)) / prev;  // exact division
      e(i, k) = 0;
    }
    prev = e(k, k);
  }
  return Rational(sign * e(d - 1, d - 1), row_scale_product);
}

/// Exact determinant by plain rational Gaussian elimination; independent of
/// the Bareiss path and used to cross-check it.
inline Rational det_gauss(RationalMatrix m) {
  const int d = m.dim;
  if (d == 0) return 1;
  Rational det = 1;
  for (int k = 0; k < d; ++k) {
    int p = -1;
    for (int i = k; i < d; ++i)
      if (m.at(i, k) != 0) {
        p = i;
        break;
      }
    if (p < 0) return 0;
    if (p != k) {
      for (int j = 0; j < d; ++j) std::swap(m.at(k, j), m.at(p, j));
      det = -det;
    }
    det *= m.at(k, k);
    for (int i = k + 1; i < d; ++i) {
      if (m.at(i, k) == 0) continue;
      const Rational f = m.at(i, k) / m.at(k, k);
      for (int j = k; j < d; ++j) m.at(i, j) -= f * m.at(k, j);
    }
  }
  return det;
}

inline Rational det_exact(const RationalMatrix& m) { return det_bareiss(m); }

}  // namespace simplex_approx
