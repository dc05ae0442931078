#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "simplex_approx/rational.hpp"
#include "simplex_approx/util.hpp"

namespace simplex_approx {

namespace detail {
inline int parity_sign(long e) { return (e % 2 + 2) % 2 == 0 ? 1 : -1; }
}

/// Entry generator of the determinant family:
/// f(s1,s2,r,i,j) = binom(r, j-i) (s1+i)_{j-i}
///                  / ((s1+s2+i+j-1)_{j-i} (s1+s2+r+2i)_{j-i}).
/// Zero outside the band 0 <= j-i <= r; a vanishing Pochhammer in the
/// denominator is a parameter-domain error.
inline Rational f_entry(const Rational& s1, const Rational& s2, long r, long i, long j) {
  const long d = j - i;
  if (d < 0 || d > r) return 0;
  const Rational den1 = pochhammer_q(s1 + s2 + i + j - 1, d);
  const Rational den2 = pochhammer_q(s1 + s2 + r + 2 * i, d);
  if (den1 == 0 || den2 == 0)
    throw std::domain_error("f_entry: vanishing Pochhammer denominator");
  return Rational(binomial_int(r, d)) * pochhammer_q(s1 + i, d) / (den1 * den2);
}

/// Shape and parameters of one member of the determinant family.
struct DetFamilySpec {
  long r1;
  long r2;
  Rational s1;
  Rational s2;

  void validate() const {
    if (r1 < 1 || r2 < 1) throw std::invalid_argument("DetFamilySpec: r1, r2 must be >= 1");
    // Probe every entry so vanishing denominators are rejected up front.
    for (long i = 0; i < r2; ++i)
      for (long j = 0; j < r1 + r2; ++j) (void)f_entry(s1, s2, r1, i, j);
    for (long i = r2; i < r1 + r2; ++i)
      for (long j = 0; j < r1 + r2; ++j) (void)f_entry(s2, s1, r2, i - r2, j);
  }
};

/// The (r1+r2) x (r1+r2) matrix M(r1,r2): rows below r2 use f(s1,s2,r1,i,j),
/// the remaining rows use (-1)^{j-i-r2} f(s2,s1,r2,i-r2,j).
inline RationalMatrix build_M_general(const DetFamilySpec& spec) {
  spec.validate();
  const long d = spec.r1 + spec.r2;
  RationalMatrix m(static_cast<int>(d));
  for (long i = 0; i < spec.r2; ++i)
    for (long j = 0; j < d; ++j) m.at(i, j) = f_entry(spec.s1, spec.s2, spec.r1, i, j);
  for (long i = spec.r2; i < d; ++i)
    for (long j = 0; j < d; ++j)
      m.at(i, j) = detail::parity_sign(j - i - spec.r2) *
                   f_entry(spec.s2, spec.s1, spec.r2, i - spec.r2, j);
  return m;
}

/// Closed form of det M(r1,r2):
/// (-1)^{r1 r2} prod_{j=1..r1} 1 / (s1+s2+r1+r2+j-2)_{r2}.
inline Rational closed_form_rhs(const DetFamilySpec& spec) {
  Rational v = detail::parity_sign(spec.r1 * spec.r2);
  for (long j = 1; j <= spec.r1; ++j) {
    const Rational p = pochhammer_q(spec.s1 + spec.s2 + spec.r1 + spec.r2 + j - 2, spec.r2);
    if (p == 0) throw std::domain_error("closed_form_rhs: vanishing Pochhammer denominator");
    v /= p;
  }
  return v;
}

/// Minor determinant and its closed form: the r2 x r2 matrix with entries
/// f(s1,s2,r1,i,k_j) for a strictly increasing column set k_0 < ... <
/// k_{r2-1}. Factorials of shifted non-integer arguments in the closed form
/// occur only in ratios with integer offsets and are evaluated through
/// factorial_ratio_q.
inline std::pair<Rational, Rational> minor_det_pair(long r1, long r2, const Rational& s1,
                                                 const Rational& s2,
                                                 const std::vector<long>& ks) {
  if (static_cast<long>(ks.size()) != r2)
    throw std::invalid_argument("minor_det_pair: need r2 column indices");
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] < 0 || ks[i] > r1 + r2 - 1)
      throw std::invalid_argument("minor_det_pair: indices must lie in [0, r1+r2-1]");
    if (i > 0 && ks[i] <= ks[i - 1])
      throw std::invalid_argument("minor_det_pair: indices must be strictly increasing");
  }

  RationalMatrix m(static_cast<int>(r2));
  for (long i = 0; i < r2; ++i)
    for (long j = 0; j < r2; ++j) m.at(i, j) = f_entry(s1, s2, r1, i, ks[j]);
  const Rational lhs = det_exact(m);

  const Rational S = s1 + s2;
  Rational rhs = 1;
  for (long a = 0; a < r2; ++a)
    for (long b = a + 1; b < r2; ++b) rhs *= Rational(ks[b] - ks[a]) * (ks[a] + ks[b] + S - 1);
  for (long i = 0; i < r2; ++i) {
    const long ki = ks[i];
    const Rational den = pochhammer_q(s1, i);
    if (den == 0) throw std::domain_error("minor_det_pair: vanishing (s1)_i");
    rhs *= pochhammer_q(s1, ki) / den;
    rhs *= factorial_ratio_q(S + r1 + 2 * i - 2, S + r1 + i - 2);
    rhs *= factorial_ratio_q(S + r1 + 2 * i - 1, S + 2 * ki - 2);
    rhs *= factorial_ratio_q(S + ki - 2, S + r1 + r2 + ki - 2);
    rhs *= Rational(factorial_int(r1 + i), factorial_int(ki) * factorial_int(r1 + r2 - ki - 1));
  }
  return {lhs, rhs};
}

/// Terminating summation identity: multiple sum over strictly increasing
/// tuples 0 <= k_1 < ... < k_r <= m against the closed product on the right.
/// When r > m+1 the sum is empty and the right side hits the reciprocal of
/// a negative-integer factorial, read as zero (Gamma pole), so both sides
/// vanish.
inline std::pair<Rational, Rational> terminating_sum_pair(long r, long m, const Rational& a,
                                                 const Rational& b) {
  if (r < 1 || m < 0) throw std::invalid_argument("terminating_sum_pair: need r >= 1, m >= 0");
  if (a == 0) throw std::domain_error("terminating_sum_pair: a must be nonzero");

  Rational lhs = 0;
  std::vector<long> ks(r);
  for (long i = 0; i < r; ++i) ks[i] = i;
  if (r <= m + 1) {
    while (true) {
      long ksum = 0;
      for (long v : ks) ksum += v;
      Rational term = detail::parity_sign(ksum);
      for (long i = 0; i < r; ++i)
        for (long j = i + 1; j < r; ++j) {
          const Rational d2 = Rational(ks[j] - ks[i]) * (ks[j] - ks[i]);
          const Rational s2 = (ks[i] + ks[j] + a) * (ks[i] + ks[j] + a);
          term *= d2 * s2;
        }
      for (long v : ks) {
        const Rational den =
            Rational(factorial_int(v)) * pochhammer_q(a + 1 - b, v) * pochhammer_q(a + 1 + m, v);
        if (den == 0) throw std::domain_error("terminating_sum_pair: vanishing denominator in summand");
        term *= (a + 2 * v) / a * pochhammer_q(a, v) * pochhammer_q(b, v) *
                pochhammer_q(Rational(-m), v) / den;
      }
      lhs += term;
      // next strictly increasing tuple in [0, m]
      long pos = r - 1;
      while (pos >= 0 && ks[pos] == m - (r - 1 - pos)) --pos;
      if (pos < 0) break;
      ++ks[pos];
      for (long i = pos + 1; i < r; ++i) ks[i] = ks[i - 1] + 1;
    }
  }

  Rational rhs = 1;
  for (long i = 1; i <= r; ++i) {
    if (m + 1 - i < 0) {
      rhs = 0;
      break;
    }
    const Rational den =
        Rational(factorial_int(m + 1 - i)) * pochhammer_q(a + 1 - b, m + 1 - i);
    if (den == 0) throw std::domain_error("terminating_sum_pair: vanishing denominator on right side");
    rhs *= Rational(factorial_int(i - 1)) * pochhammer_q(b, i - 1) * factorial_int(m) *
           pochhammer_q(a + 1, m) / den;
  }
  return {lhs, rhs};
}

/// Laplace expansion of det M(r1,r2) along the first r2 rows: signed sum
/// over r2-subsets of column indices of products of complementary minors.
inline Rational laplace_expansion_sum(const DetFamilySpec& spec) {
  const long d = spec.r1 + spec.r2;
  if (d > 8) throw std::invalid_argument("laplace_expansion_sum: r1 + r2 must be <= 8");
  const RationalMatrix M = build_M_general(spec);

  Rational total = 0;
  std::vector<long> ks(spec.r2);
  for (long i = 0; i < spec.r2; ++i) ks[i] = i;
  while (true) {
    std::vector<long> ls;
    {
      std::vector<bool> used(d, false);
      for (long v : ks) used[v] = true;
      for (long j = 0; j < d; ++j)
        if (!used[j]) ls.push_back(j);
    }
    long ksum = 0;
    for (long v : ks) ksum += v;
    const int sign = detail::parity_sign(spec.r2 * (spec.r2 - 1) / 2 + ksum);

    RationalMatrix top(static_cast<int>(spec.r2));
    for (long i = 0; i < spec.r2; ++i)
      for (long j = 0; j < spec.r2; ++j) top.at(i, j) = M.at(i, ks[j]);
    RationalMatrix bottom(static_cast<int>(spec.r1));
    for (long i = 0; i < spec.r1; ++i)
      for (long j = 0; j < spec.r1; ++j) bottom.at(i, j) = M.at(spec.r2 + i, ls[j]);
    total += sign * det_exact(top) * det_exact(bottom);

    long pos = spec.r2 - 1;
    while (pos >= 0 && ks[pos] == d - (spec.r2 - 1 - pos) - 1) --pos;
    if (pos < 0) break;
    ++ks[pos];
    for (long i = pos + 1; i < spec.r2; ++i) ks[i] = ks[i - 1] + 1;
  }
  return total;
}

inline bool laplace_check(const DetFamilySpec& spec) {
  return laplace_expansion_sum(spec) == det_exact(build_M_general(spec));
}

/// Exact A_{r,j,k,n}^{alpha,beta} for rational exponents.
inline Rational A_coeff_q(long r, long j, long k, long n, const Rational& alpha,
                          const Rational& beta) {
  if (j < 0 || j > r) return 0;
  const Rational den1 = pochhammer_q(2 * k + alpha + beta + j + 1, j);
  const Rational den2 = pochhammer_q(2 * k + alpha + beta + r + 2, j);
  if (den1 == 0 || den2 == 0)
    throw std::domain_error("A_coeff_q: vanishing Pochhammer denominator");
  return Rational(binomial_int(r, j)) * pochhammer_q(k + beta + 1, j) *
         pochhammer_q(n + k + alpha + beta + 2, j) / (den1 * den2);
}

inline RationalMatrix build_Mr_q(long r, long k, long n, const Rational& alpha,
                                 const Rational& beta) {
  RationalMatrix m(static_cast<int>(2 * r));
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < 2 * r; ++j) m.at(i, j) = A_coeff_q(r, j - i, k + i, n, alpha, beta);
  for (long i = r; i < 2 * r; ++i)
    for (long j = 0; j < 2 * r; ++j)
      m.at(i, j) =
          detail::parity_sign(j - i + r) * A_coeff_q(r, j - i + r, k + i - r, n, beta, alpha);
  return m;
}

inline Rational detMr_closed_q(long r, long k, long n, const Rational& alpha,
                               const Rational& beta) {
  Rational v = detail::parity_sign(r * r);
  for (long j = 1; j <= r; ++j) {
    const Rational den = pochhammer_q(2 * k + alpha + beta + 2 * r + j, r);
    if (den == 0) throw std::domain_error("detMr_closed_q: vanishing Pochhammer denominator");
    v *= pochhammer_q(n + k + alpha + beta + j + 1, r) / den;
  }
  return v;
}

/// Exact specialization check: determinant of M_r(k,n) against its closed
/// form, in rational arithmetic. Also verifies the n-free reduction
/// det M_r(k) = (-1)^{r^2} / prod (2k+alpha+beta+2r+j)_r obtained after the
/// diagonal scalings.
inline std::pair<Rational, Rational> mr_det_exact(long r, long k, long n, const Rational& alpha,
                                                   const Rational& beta) {
  if (r < 1 || k < 0 || n < k) throw std::invalid_argument("mr_det_exact: need r>=1, 0<=k<=n");
  const Rational lhs = det_exact(build_Mr_q(r, k, n, alpha, beta));
  const Rational rhs = detMr_closed_q(r, k, n, alpha, beta);

  // n-free reduction
  RationalMatrix mk(static_cast<int>(2 * r));
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < 2 * r; ++j) {
      const long off = j - i;
      if (off < 0 || off > r) continue;
      const Rational den1 = pochhammer_q(2 * (k + i) + alpha + beta + off + 1, off);
      const Rational den2 = pochhammer_q(2 * (k + i) + alpha + beta + r + 2, off);
      if (den1 == 0 || den2 == 0) throw std::domain_error("mr_det_exact: vanishing denominator");
      mk.at(i, j) =
          Rational(binomial_int(r, off)) * pochhammer_q(k + i + beta + 1, off) / (den1 * den2);
    }
  for (long i = r; i < 2 * r; ++i)
    for (long j = 0; j < 2 * r; ++j) {
      const long off = j - i + r;
      if (off < 0 || off > r) continue;
      const long kk = k + i - r;
      const Rational den1 = pochhammer_q(2 * kk + alpha + beta + off + 1, off);
      const Rational den2 = pochhammer_q(2 * kk + alpha + beta + r + 2, off);
      if (den1 == 0 || den2 == 0) throw std::domain_error("mr_det_exact: vanishing denominator");
      mk.at(i, j) = detail::parity_sign(off) * Rational(binomial_int(r, off)) *
                    pochhammer_q(kk + alpha + 1, off) / (den1 * den2);
    }
  Rational reduced_rhs = detail::parity_sign(r * r);
  for (long j = 1; j <= r; ++j)
    reduced_rhs /= pochhammer_q(2 * k + alpha + beta + 2 * r + j, r);
  if (det_exact(mk) != reduced_rhs)
    throw std::logic_error("mr_det_exact: n-free reduction failed");

  return {lhs, rhs};
}

// ---------------------------------------------------------------------------
// Sweep drivers. One JSON-lines record per case; rationals as "p/q" strings.
// ---------------------------------------------------------------------------

struct ExactCheckRecord {
  std::string suite;
  std::string params;
  std::string lhs;
  std::string rhs;
  bool equal;
};

inline nlohmann::json to_json(const ExactCheckRecord& r) {
  return nlohmann::json{
      {"suite", r.suite}, {"params", r.params}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"equal", r.equal}};
}

inline Rational random_rational(SplitMix64& rng, long num_abs_max, long den_max) {
  const long num = rng.below(2 * num_abs_max + 1) - num_abs_max;
  const long den = 1 + rng.below(den_max);
  return Rational(num, den);
}

inline std::vector<ExactCheckRecord> sweep_det_family(long r1_max, long r2_max, int samples,
                                                     std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<DetFamilySpec> cases;
  for (long r1 = 1; r1 <= r1_max; ++r1)
    for (long r2 = 1; r2 <= r2_max; ++r2) {
      int got = 0;
      while (got < samples) {
        DetFamilySpec spec{r1, r2, random_rational(rng, 20, 20), random_rational(rng, 20, 20)};
        try {
          spec.validate();
          (void)closed_form_rhs(spec);
        } catch (const std::domain_error&) {
          continue;
        }
        cases.push_back(std::move(spec));
        ++got;
      }
    }
  std::vector<ExactCheckRecord> out(cases.size());
  parallel_for(cases.size(), [&](std::size_t i) {
    const DetFamilySpec& spec = cases[i];
    const Rational lhs = det_exact(build_M_general(spec));
    const Rational rhs = closed_form_rhs(spec);
    out[i] = {"det-family",
              "r1=" + std::to_string(spec.r1) + " r2=" + std::to_string(spec.r2) +
                  " s1=" + to_string(spec.s1) + " s2=" + to_string(spec.s2),
              to_string(lhs), to_string(rhs), lhs == rhs};
  });
  return out;
}

inline std::vector<ExactCheckRecord> sweep_minor_det(long r1_max, long r2_max, int samples,
                                                   std::uint64_t seed) {
  SplitMix64 rng(seed);
  struct Case {
    long r1, r2;
    Rational s1, s2;
    std::vector<long> ks;
  };
  std::vector<Case> cases;
  for (long r1 = 1; r1 <= r1_max; ++r1)
    for (long r2 = 1; r2 <= r2_max; ++r2) {
      int got = 0;
      while (got < samples) {
        // random strictly increasing column set inside [0, r1+r2-1]
        std::vector<long> ks;
        for (long v = 0; v < r1 + r2 && static_cast<long>(ks.size()) < r2; ++v)
          if (rng.below(2) == 0 || r1 + r2 - v == r2 - static_cast<long>(ks.size())) ks.push_back(v);
        Case c{r1, r2, random_rational(rng, 12, 12), random_rational(rng, 12, 12), ks};
        try {
          (void)minor_det_pair(c.r1, c.r2, c.s1, c.s2, c.ks);
        } catch (const std::domain_error&) {
          continue;
        }
        cases.push_back(std::move(c));
        ++got;
      }
    }
  std::vector<ExactCheckRecord> out(cases.size());
  parallel_for(cases.size(), [&](std::size_t i) {
    const Case& c = cases[i];
    const auto [lhs, rhs] = minor_det_pair(c.r1, c.r2, c.s1, c.s2, c.ks);
    std::string ks = "[";
    for (std::size_t t = 0; t < c.ks.size(); ++t)
      ks += (t ? "," : "") + std::to_string(c.ks[t]);
    ks += "]";
    out[i] = {"minor-det",
              "r1=" + std::to_string(c.r1) + " r2=" + std::to_string(c.r2) + " s1=" +
                  to_string(c.s1) + " s2=" + to_string(c.s2) + " ks=" + ks,
              to_string(lhs), to_string(rhs), lhs == rhs};
  });
  return out;
}

inline std::vector<ExactCheckRecord> sweep_terminating_sum(long r_max, long m_max, int samples,
                                                   std::uint64_t seed) {
  SplitMix64 rng(seed);
  struct Case {
    long r, m;
    Rational a, b;
  };
  std::vector<Case> cases;
  for (long r = 1; r <= r_max; ++r)
    for (long m = 0; m <= m_max; ++m) {
      int got = 0;
      while (got < samples) {
        Case c{r, m, random_rational(rng, 20, 20), random_rational(rng, 20, 20)};
        try {
          (void)terminating_sum_pair(c.r, c.m, c.a, c.b);
        } catch (const std::domain_error&) {
          continue;
        }
        cases.push_back(std::move(c));
        ++got;
      }
    }
  std::vector<ExactCheckRecord> out(cases.size());
  parallel_for(cases.size(), [&](std::size_t i) {
    const Case& c = cases[i];
    const auto [lhs, rhs] = terminating_sum_pair(c.r, c.m, c.a, c.b);
    out[i] = {"terminating-sum",
              "r=" + std::to_string(c.r) + " m=" + std::to_string(c.m) + " a=" + to_string(c.a) +
                  " b=" + to_string(c.b),
              to_string(lhs), to_string(rhs), lhs == rhs};
  });
  return out;
}

inline std::vector<ExactCheckRecord> sweep_laplace(long dim_max, int samples,
                                                   std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<DetFamilySpec> cases;
  for (long r1 = 1; r1 < dim_max; ++r1)
    for (long r2 = 1; r1 + r2 <= dim_max; ++r2) {
      int got = 0;
      while (got < samples) {
        DetFamilySpec spec{r1, r2, random_rational(rng, 12, 12), random_rational(rng, 12, 12)};
        try {
          spec.validate();
        } catch (const std::domain_error&) {
          continue;
        }
        cases.push_back(std::move(spec));
        ++got;
      }
    }
  std::vector<ExactCheckRecord> out(cases.size());
  parallel_for(cases.size(), [&](std::size_t i) {
    const DetFamilySpec& spec = cases[i];
    const Rational lhs = laplace_expansion_sum(spec);
    const Rational rhs = det_exact(build_M_general(spec));
    out[i] = {"laplace",
              "r1=" + std::to_string(spec.r1) + " r2=" + std::to_string(spec.r2) +
                  " s1=" + to_string(spec.s1) + " s2=" + to_string(spec.s2),
              to_string(lhs), to_string(rhs), lhs == rhs};
  });
  return out;
}

inline std::vector<ExactCheckRecord> sweep_mr_det(long r_max, long k_max, long n_extra,
                                                   const std::vector<Rational>& exponents) {
  struct Case {
    long r, k, n;
    Rational alpha, beta;
  };
  std::vector<Case> cases;
  for (const Rational& alpha : exponents)
    for (const Rational& beta : exponents)
      for (long r = 1; r <= r_max; ++r)
        for (long k = 0; k <= k_max; ++k)
          for (long n = k; n <= k + 2 * r + n_extra; ++n) cases.push_back({r, k, n, alpha, beta});
  std::vector<ExactCheckRecord> out(cases.size());
  parallel_for(cases.size(), [&](std::size_t i) {
    const Case& c = cases[i];
    const auto [lhs, rhs] = mr_det_exact(c.r, c.k, c.n, c.alpha, c.beta);
    out[i] = {"mr-det",
              "r=" + std::to_string(c.r) + " k=" + std::to_string(c.k) + " n=" +
                  std::to_string(c.n) + " alpha=" + to_string(c.alpha) + " beta=" + to_string(c.beta),
              to_string(lhs), to_string(rhs), lhs == rhs};
  });
  return out;
}

}  // namespace simplex_approx
