#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "simplex_approx/determinant_identities.hpp"
#include "simplex_approx/estimates.hpp"
#include "simplex_approx/util.hpp"

namespace simplex_approx {

inline constexpr const char* kReportSchema = "simplex-approx report v1";

namespace detail {
inline std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}
}  // namespace detail

/// CSV rendering: schema header line, metadata comments, then
/// x,lhs,rhs,ratio,flags rows. Numbers carry 17 significant digits so
/// identical runs are byte-identical.
inline std::string to_csv(const RatioReport& rep) {
  std::string out = "# ";
  out += kReportSchema;
  out += "\n# experiment=" + rep.experiment + " f=" + rep.function_id +
         " r=" + std::to_string(rep.order) + " alpha=" + detail::fmt17(rep.params.alpha) +
         " beta=" + detail::fmt17(rep.params.beta) +
         " gamma=" + detail::fmt17(rep.params.gamma) + "\n";
  out += "# sup_ratio=" + detail::fmt17(rep.sup_ratio) +
         " trend_ok=" + (rep.trend_ok ? std::string("1") : std::string("0")) + "\n";
  out += "x,lhs,rhs,ratio,flags\n";
  for (const RatioRow& r : rep.rows)
    out += detail::fmt17(r.x) + "," + detail::fmt17(r.lhs) + "," + detail::fmt17(r.rhs) + "," +
           detail::fmt17(r.ratio) + "," + std::to_string(r.flags) + "\n";
  return out;
}

inline std::string to_csv(const std::vector<RatioReport>& reports) {
  std::string out;
  for (const RatioReport& rep : reports) out += to_csv(rep);
  return out;
}

inline nlohmann::json to_json(const RatioReport& rep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const RatioRow& r : rep.rows)
    rows.push_back({{"x", detail::fmt17(r.x)},
                    {"lhs", detail::fmt17(r.lhs)},
                    {"rhs", detail::fmt17(r.rhs)},
                    {"ratio", detail::fmt17(r.ratio)},
                    {"flags", r.flags}});
  return nlohmann::json{{"schema", kReportSchema},
                        {"experiment", rep.experiment},
                        {"f", rep.function_id},
                        {"r", rep.order},
                        {"alpha", detail::fmt17(rep.params.alpha)},
                        {"beta", detail::fmt17(rep.params.beta)},
                        {"gamma", detail::fmt17(rep.params.gamma)},
                        {"sup_ratio", detail::fmt17(rep.sup_ratio)},
                        {"trend_ok", rep.trend_ok},
                        {"rows", std::move(rows)}};
}

inline std::string to_json_text(const std::vector<RatioReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const RatioReport& rep : reports) arr.push_back(to_json(rep));
  return arr.dump(2) + "\n";
}

/// JSON-lines rendering of an exact-identity sweep, one record per case,
/// preceded by a schema comment line.
inline std::string to_json_lines(const std::vector<ExactCheckRecord>& records) {
  std::string out = std::string("# ") + kReportSchema + "\n";
  for (const ExactCheckRecord& r : records) out += to_json(r).dump() + "\n";
  return out;
}

}  // namespace simplex_approx
