// Command-line front end: verification suites and experiments with
// machine-readable CSV/JSON output. Exit codes: 0 success, 1 a gated check
// failed, 2 usage error.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "simplex_approx/determinant_identities.hpp"
#include "simplex_approx/estimates.hpp"
#include "simplex_approx/report.hpp"

using namespace simplex_approx;

namespace {

double parse_weight_component(const std::string& text) {
  return static_cast<double>(parse_rational(text));
}

struct CommonOptions {
  std::string alpha = "0", beta = "0", gamma = "0";
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 0;

  WeightParams weight() const {
    const WeightParams w{parse_weight_component(alpha), parse_weight_component(beta),
                         parse_weight_component(gamma)};
    w.validate();
    return w;
  }
};

void add_weight_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--alpha", opt.alpha, "weight exponent alpha (decimal or p/q)");
  cmd->add_option("--beta", opt.beta, "weight exponent beta (decimal or p/q)");
  cmd->add_option("--gamma", opt.gamma, "weight exponent gamma (decimal or p/q)");
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::fputs(text.c_str(), stdout);
  else
    write_file_atomic(out_path, text);
}

std::vector<int> make_range(int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("empty degree range: n-min > n-max");
  std::vector<int> r;
  for (int n = lo; n <= hi; ++n) r.push_back(n);
  return r;
}

TestFunction resolve_function(const std::string& id, WeightParams w) {
  if (id.rfind("mode:", 0) == 0) {
    const auto comma = id.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("mode function syntax: mode:k,n");
    const int k = std::stoi(id.substr(5, comma - 5));
    const int n = std::stoi(id.substr(comma + 1));
    return make_mode_function({k, n}, w);
  }
  return find_test_function(id);
}

int run_orthogonality(const CommonOptions& opt, int n_max) {
  const WeightParams w = opt.weight();
  const TriangleRule rule = triangle_rule(2 * n_max, w);
  const std::size_t entries = tri_size(n_max);
  std::vector<std::vector<double>> tables(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) tables[i] = basis_eval_all(n_max, w, rule.nodes[i]);

  double max_off = 0.0, max_diag = 0.0;
  std::string worst_off_id = "-", worst_diag_id = "-";
  for (int n = 0; n <= n_max; ++n)
    for (int k = 0; k <= n; ++k) {
      const std::size_t a = tri_index(k, n);
      for (std::size_t b = a; b < entries; ++b) {
        const double v = pairwise_sum(rule.size(), [&](std::size_t i) {
          return rule.weights[i] * tables[i][a] * tables[i][b];
        });
        if (a == b) {
          const double h = basis_norm_h({k, n}, w);
          const double rel = std::abs(v - h) / h;
          if (rel > max_diag) {
            max_diag = rel;
            worst_diag_id = "(" + std::to_string(k) + "," + std::to_string(n) + ")";
          }
        } else if (std::abs(v) > max_off) {
          max_off = std::abs(v);
          int m = n;
          while (tri_size(m) <= b) ++m;
          const int j = static_cast<int>(b - tri_index(0, m));
          worst_off_id = "(" + std::to_string(k) + "," + std::to_string(n) + ")x(" +
                         std::to_string(j) + "," + std::to_string(m) + ")";
        }
      }
    }

  const bool ok = max_off <= 1e-10 && max_diag <= 1e-10;
  nlohmann::json j{{"schema", kReportSchema},
                   {"command", "orthogonality"},
                   {"n_max", n_max},
                   {"max_offdiagonal", max_off},
                   {"worst_offdiagonal_pair", worst_off_id},
                   {"max_diagonal_rel", max_diag},
                   {"worst_diagonal_index", worst_diag_id},
                   {"pass", ok}};
  emit(j.dump(2) + "\n", opt.out);
  if (!ok)
    std::fprintf(stderr, "orthogonality: worst offenders %s (off-diagonal %.3g), %s (diagonal %.3g)\n",
                 worst_off_id.c_str(), max_off, worst_diag_id.c_str(), max_diag);
  return ok ? 0 : 1;
}

int run_diffrel(const CommonOptions& opt, int n_max, int points) {
  const WeightParams w = opt.weight();
  SplitMix64 rng(opt.seed);
  double max_rel = 0.0, max_fd = 0.0;
  for (int n = 0; n <= n_max; ++n)
    for (int k = 0; k <= n; ++k)
      for (int s = 0; s < points; ++s) {
        double x, y;
        do {
          x = rng.uniform(0.05, 0.9);
          y = rng.uniform(0.05, 0.9);
        } while (x + y > 0.95);
        for (int dir = 1; dir <= 3; ++dir) {
          const double lhs = basis_partial_direct(dir, {k, n}, w, {x, y});
          const double rhs = basis_partial(dir, {k, n}, w, {x, y});
          max_rel = std::max(max_rel, std::abs(lhs - rhs));
        }
        const double h = 1e-5;
        const double fd1 =
            (basis_eval({k, n}, w, {x + h, y}) - basis_eval({k, n}, w, {x - h, y})) / (2 * h);
        const double fd2 =
            (basis_eval({k, n}, w, {x, y + h}) - basis_eval({k, n}, w, {x, y - h})) / (2 * h);
        max_fd = std::max({max_fd, std::abs(basis_partial(1, {k, n}, w, {x, y}) - fd1),
                           std::abs(basis_partial(2, {k, n}, w, {x, y}) - fd2),
                           std::abs(basis_partial(3, {k, n}, w, {x, y}) - (fd2 - fd1))});
      }
  const bool ok = max_rel <= 1e-9 && max_fd <= 1e-7;
  nlohmann::json j{{"schema", kReportSchema},
                   {"command", "diffrel"},
                   {"n_max", n_max},
                   {"points", points},
                   {"max_relation_residual", max_rel},
                   {"max_fd_residual", max_fd},
                   {"pass", ok}};
  emit(j.dump(2) + "\n", opt.out);
  return ok ? 0 : 1;
}

struct DetVerifyOptions {
  std::string suite = "all";
  long r1_max = 3, r2_max = 3;
  long r_max = 3, m_max = 6;
  long k_max = 4, n_extra = 6;
  int cases = 10;
  std::string s1, s2;
  long r1 = 1, r2 = 1;
};

int run_det_verify(const CommonOptions& opt, const DetVerifyOptions& dv) {
  std::vector<ExactCheckRecord> records;
  if (!dv.s1.empty() || !dv.s2.empty()) {
    if (dv.s1.empty() || dv.s2.empty())
      throw std::invalid_argument("det-verify: --s1 and --s2 must be given together");
    const DetFamilySpec spec{dv.r1, dv.r2, parse_rational(dv.s1), parse_rational(dv.s2)};
    const Rational lhs = det_exact(build_M_general(spec));
    const Rational rhs = closed_form_rhs(spec);
    records.push_back({"det-family",
                       "r1=" + std::to_string(dv.r1) + " r2=" + std::to_string(dv.r2) +
                           " s1=" + to_string(spec.s1) + " s2=" + to_string(spec.s2),
                       to_string(lhs), to_string(rhs), lhs == rhs});
  } else {
    const auto append = [&](std::vector<ExactCheckRecord> v) {
      records.insert(records.end(), v.begin(), v.end());
    };
    if (dv.suite == "all" || dv.suite == "det-family")
      append(sweep_det_family(dv.r1_max, dv.r2_max, dv.cases, opt.seed));
    if (dv.suite == "all" || dv.suite == "minor-det")
      append(sweep_minor_det(dv.r1_max, dv.r2_max, dv.cases, opt.seed + 1));
    if (dv.suite == "all" || dv.suite == "terminating-sum")
      append(sweep_terminating_sum(dv.r_max, dv.m_max, dv.cases, opt.seed + 2));
    if (dv.suite == "all" || dv.suite == "laplace")
      append(sweep_laplace(std::min(dv.r1_max + dv.r2_max, 6L), std::min(dv.cases, 5), opt.seed + 3));
    if (dv.suite == "all" || dv.suite == "mr-det") {
      std::vector<Rational> exps;
      for (const std::string& s : {opt.alpha, opt.beta})
        exps.push_back(parse_rational(s));
      if (exps[0] == exps[1]) exps.pop_back();
      append(sweep_mr_det(dv.r_max, dv.k_max, dv.n_extra, exps));
    }
    if (records.empty()) throw std::invalid_argument("det-verify: unknown suite '" + dv.suite + "'");
  }
  emit(to_json_lines(records), opt.out);
  for (const auto& r : records)
    if (!r.equal) return 1;
  return 0;
}

struct ApproxOptions {
  std::string experiment;
  std::string f = "exp-x2y";
  int r = 1;
  int n_min = -1, n_max = 40;
  int ensemble = 200;
  int margin = 20;
};

int run_approx(const CommonOptions& opt, const ApproxOptions& ao) {
  const WeightParams w = opt.weight();
  std::vector<RatioReport> reports;
  bool gate_trend = false;

  if (ao.experiment == "theorem31" || ao.experiment == "corollary") {
    const int lo = ao.n_min >= 0 ? ao.n_min : 3 * ao.r;
    if (lo < 3 * ao.r)
      throw std::invalid_argument(ao.experiment + " requires n >= 3r");
    const TestFunction f = resolve_function(ao.f, w);
    const auto range = make_range(lo, ao.n_max);
    reports.push_back(ao.experiment == "theorem31"
                          ? main_estimate_ratio(f, w, ao.r, range, ao.margin)
                          : derivative_norm_ratio(f, w, ao.r, range, ao.margin));
    gate_trend = true;
  } else if (ao.experiment == "endecay") {
    const TestFunction f = resolve_function(ao.f, w);
    reports.push_back(endecay_table(f, w, make_range(std::max(0, ao.n_min), ao.n_max), ao.margin));
  } else if (ao.experiment == "jackson") {
    const TestFunction f = resolve_function(ao.f, w);
    reports.push_back(
        jackson_ratio(f, w, ao.r, make_range(std::max(1, ao.n_min), ao.n_max), ao.margin));
  } else if (ao.experiment == "inverse") {
    const TestFunction f = resolve_function(ao.f, w);
    reports.push_back(inverse_estimate_check(f, w, ao.r,
                                             make_range(std::max(1, ao.n_min), ao.n_max), ao.margin));
  } else if (ao.experiment == "kequiv") {
    const TestFunction f = resolve_function(ao.f, w);
    std::vector<double> t_grid;
    for (int n = std::max(1, ao.n_min); n <= ao.n_max; ++n) t_grid.push_back(1.0 / n);
    const auto pair = k_equiv_check(f, w, ao.r, t_grid, ao.n_max + ao.r, ao.margin);
    reports.push_back(pair[0]);
    reports.push_back(pair[1]);
  } else if (ao.experiment == "bernstein") {
    reports.push_back(bernstein_sweep(w, ao.r, 1, make_range(std::max(1, ao.n_min), ao.n_max),
                                      ao.ensemble, opt.seed));
    reports.push_back(bernstein_sweep(w, ao.r, 2, make_range(std::max(1, ao.n_min), ao.n_max),
                                      ao.ensemble, opt.seed + 1));
    reports.push_back(bernstein_sweep(w, ao.r, 3, make_range(std::max(1, ao.n_min), ao.n_max),
                                      ao.ensemble, opt.seed + 2));
    gate_trend = true;
  } else {
    throw std::invalid_argument("unknown experiment '" + ao.experiment + "'");
  }

  emit(opt.format == "json" ? to_json_text(reports) : to_csv(reports), opt.out);
  if (gate_trend)
    for (const RatioReport& rep : reports)
      if (!rep.trend_ok) return 1;
  return 0;
}

int run_coeffs(const CommonOptions& opt, const std::string& fid, int n_max, int margin) {
  const WeightParams w = opt.weight();
  const TestFunction f = resolve_function(fid, w);
  const CoeffTable tab = expand(f.f, w, n_max, expansion_rule(w, n_max, margin));
  emit(to_json(tab).dump(2) + "\n", opt.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted Fourier-Jacobi analysis on the triangle"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "expanded help for every subcommand");

  CommonOptions common;
  int n_max = 8;
  int points = 50;
  DetVerifyOptions dv;
  ApproxOptions ao;
  std::string coeffs_f = "exp-x2y";

  CLI::App* orth = app.add_subcommand("orthogonality", "Gram matrix vs closed-form norms");
  add_weight_flags(orth, common);
  orth->add_option("--n-max", n_max, "largest basis degree");
  orth->add_option("--out", common.out, "output path (atomic write)");
  orth->add_option("--format", common.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  CLI::App* diffrel = app.add_subcommand("diffrel", "derivative relations residual checks");
  add_weight_flags(diffrel, common);
  diffrel->add_option("--n-max", n_max, "largest basis degree");
  diffrel->add_option("--points", points, "random interior points per index");
  diffrel->add_option("--seed", common.seed, "seed for point sampling");
  diffrel->add_option("--out", common.out, "output path (atomic write)");

  CLI::App* det = app.add_subcommand("det-verify", "exact determinant and summation identities");
  det->add_option("--suite", dv.suite, "all|det-family|minor-det|terminating-sum|laplace|mr-det");
  det->add_option("--r1-max", dv.r1_max, "max r1 for family sweeps");
  det->add_option("--r2-max", dv.r2_max, "max r2 for family sweeps");
  det->add_option("--r-max", dv.r_max, "max r (terminating-sum / M_r sweeps)");
  det->add_option("--m-max", dv.m_max, "max m (terminating-sum sweep)");
  det->add_option("--k-max", dv.k_max, "max k (M_r sweep)");
  det->add_option("--n-extra", dv.n_extra, "n range above k+2r (M_r sweep)");
  det->add_option("--cases", dv.cases, "random samples per shape");
  det->add_option("--seed", common.seed, "sweep seed");
  det->add_option("--s1", dv.s1, "pin a single family case: s1 (rational)");
  det->add_option("--s2", dv.s2, "pin a single family case: s2 (rational)");
  det->add_option("--r1", dv.r1, "pinned case r1");
  det->add_option("--r2", dv.r2, "pinned case r2");
  det->add_option("--alpha", common.alpha, "M_r sweep exponent alpha (rational)");
  det->add_option("--beta", common.beta, "M_r sweep exponent beta (rational)");
  det->add_option("--out", common.out, "output path (atomic write)");

  CLI::App* approx = app.add_subcommand("approx", "approximation and K-functional experiments");
  add_weight_flags(approx, common);
  approx
      ->add_option("--experiment", ao.experiment,
                   "endecay|theorem31|corollary|jackson|inverse|kequiv|bernstein")
      ->required();
  approx->add_option("--f", ao.f, "registry function id, or mode:k,n");
  approx->add_option("--r", ao.r, "derivative order");
  approx->add_option("--n-min", ao.n_min, "first degree (default depends on experiment)");
  approx->add_option("--n-max", ao.n_max, "last degree");
  approx->add_option("--ensemble", ao.ensemble, "random polynomials per degree (bernstein)");
  approx->add_option("--margin", ao.margin, "quadrature order margin beyond 2N");
  approx->add_option("--seed", common.seed, "ensemble seed");
  approx->add_option("--out", common.out, "output path (atomic write)");
  approx->add_option("--format", common.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  CLI::App* coeffs = app.add_subcommand("coeffs", "expand a function and serialize the table");
  add_weight_flags(coeffs, common);
  coeffs->add_option("--f", coeffs_f, "registry function id, or mode:k,n");
  coeffs->add_option("--n-max", n_max, "expansion degree");
  coeffs->add_option("--margin", ao.margin, "quadrature order margin beyond 2N");
  coeffs->add_option("--out", common.out, "output path (atomic write)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (orth->parsed()) return run_orthogonality(common, n_max);
    if (diffrel->parsed()) return run_diffrel(common, n_max, points);
    if (det->parsed()) return run_det_verify(common, dv);
    if (approx->parsed()) return run_approx(common, ao);
    if (coeffs->parsed()) return run_coeffs(common, coeffs_f, n_max, ao.margin);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
  return 0;
}
