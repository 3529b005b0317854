#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "cheeger_lab/sampling.hpp"

namespace cheeger {

/// One CSV row. `replicate` is -1 for rows aggregated over replicates.
/// Missing numbers (no target, say) serialize as empty fields.
struct ReportRow {
  std::string experiment;
  std::size_t n = 0;
  long long replicate = 0;
  std::uint64_t seed = 0;
  double r_n = 0.0;
  std::optional<double> rho_n;
  std::string quantity;
  std::string param;
  double value = 0.0;
  std::optional<double> target;
  std::optional<double> abs_error;
  std::optional<double> rel_error;
  std::string flag = "ok";
  std::string detail;

  void set_target(double t) {
    target = t;
    if (std::isinf(value) && std::isinf(t) && (value > 0) == (t > 0)) {
      abs_error = 0.0;
    } else {
      abs_error = std::abs(value - t);
    }
    rel_error = t != 0.0 ? std::optional<double>(*abs_error / std::abs(t)) : std::nullopt;
  }
};

inline const char* kReportHeader =
    "experiment,n,replicate,seed,r_n,rho_n,quantity,param,value,target,abs_error,rel_error,flag,detail";

namespace detail {

inline std::string csv_safe(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

inline std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

inline double parse_number(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::runtime_error("report csv: bad number '" + s + "'");
  return v;
}

inline std::optional<double> parse_opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_number(s);
}

}  // namespace detail

inline void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  out << kReportHeader << '\n';
  for (const auto& r : rows) {
    out << detail::csv_safe(r.experiment) << ',' << r.n << ',' << r.replicate << ',' << r.seed << ','
        << format_double(r.r_n) << ',' << detail::opt(r.rho_n) << ',' << detail::csv_safe(r.quantity) << ','
        << detail::csv_safe(r.param) << ',' << format_double(r.value) << ',' << detail::opt(r.target) << ','
        << detail::opt(r.abs_error) << ',' << detail::opt(r.rel_error) << ',' << detail::csv_safe(r.flag) << ','
        << detail::csv_safe(r.detail) << '\n';
  }
}

inline std::string report_csv_string(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  write_report_csv(out, rows);
  return out.str();
}

inline std::vector<ReportRow> read_report_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kReportHeader) throw std::runtime_error("report csv: unexpected header");
  std::vector<ReportRow> rows;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 14) throw std::runtime_error("report csv: expected 14 fields, got " + std::to_string(f.size()));
    ReportRow r;
    r.experiment = f[0];
    r.n = std::stoull(f[1]);
    r.replicate = std::stoll(f[2]);
    r.seed = std::stoull(f[3]);
    r.r_n = detail::parse_number(f[4]);
    r.rho_n = detail::parse_opt(f[5]);
    r.quantity = f[6];
    r.param = f[7];
    r.value = detail::parse_number(f[8]);
    r.target = detail::parse_opt(f[9]);
    r.abs_error = detail::parse_opt(f[10]);
    r.rel_error = detail::parse_opt(f[11]);
    r.flag = f[12];
    r.detail = f[13];
    rows.push_back(std::move(r));
  }
  return rows;
}

/// Linear-interpolation quantile of sorted data (q in [0, 1]).
inline double sorted_quantile(const std::vector<double>& v, double q) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  if (frac == 0.0 || v[lo] == v[hi]) return v[lo];
  return v[lo] + frac * (v[hi] - v[lo]);
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return sorted_quantile(v, 0.5);
}

/// Median and interquartile range of value and abs_error per
/// (n, quantity, param), over per-replicate rows.
struct SummaryEntry {
  std::size_t n;
  std::string quantity;
  std::string param;
  std::size_t count;
  double median_value, iqr_value;
  double median_abs_error, iqr_abs_error;  // NaN without targets
};

inline std::vector<SummaryEntry> summarize(const std::vector<ReportRow>& rows) {
  std::map<std::tuple<std::size_t, std::string, std::string>, std::pair<std::vector<double>, std::vector<double>>>
      groups;
  for (const auto& r : rows) {
    if (r.replicate < 0) continue;
    auto& g = groups[{r.n, r.quantity, r.param}];
    g.first.push_back(r.value);
    if (r.abs_error) g.second.push_back(*r.abs_error);
  }
  std::vector<SummaryEntry> out;
  for (auto& [key, g] : groups) {
    auto& [values, errors] = g;
    std::sort(values.begin(), values.end());
    std::sort(errors.begin(), errors.end());
    auto iqr = [](const std::vector<double>& v) {
      const double a = sorted_quantile(v, 0.25), b = sorted_quantile(v, 0.75);
      return std::isinf(a) && std::isinf(b) && a == b ? 0.0 : b - a;
    };
    out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), values.size(), sorted_quantile(values, 0.5),
                   iqr(values), sorted_quantile(errors, 0.5), errors.empty() ? std::nan("") : iqr(errors)});
  }
  return out;
}

namespace detail {

inline nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

inline nlohmann::json json_opt(const std::optional<double>& v) { return v ? json_number(*v) : nlohmann::json(); }

}  // namespace detail

/// JSON report: config echo, summary block, and all rows. Non-finite
/// numbers are written as the strings "inf", "-inf", "nan".
inline nlohmann::json report_json(const std::string& experiment, const std::map<std::string, std::string>& config,
                                  const std::vector<ReportRow>& rows) {
  nlohmann::json j;
  j["experiment"] = experiment;
  j["config"] = config;
  nlohmann::json summary = nlohmann::json::array();
  for (const auto& s : summarize(rows)) {
    summary.push_back({{"n", s.n},
                       {"quantity", s.quantity},
                       {"param", s.param},
                       {"count", s.count},
                       {"median_value", detail::json_number(s.median_value)},
                       {"iqr_value", detail::json_number(s.iqr_value)},
                       {"median_abs_error", detail::json_number(s.median_abs_error)},
                       {"iqr_abs_error", detail::json_number(s.iqr_abs_error)}});
  }
  j["summary"] = summary;
  nlohmann::json rj = nlohmann::json::array();
  for (const auto& r : rows) {
    rj.push_back({{"n", r.n},
                  {"replicate", r.replicate},
                  {"seed", r.seed},
                  {"r_n", detail::json_number(r.r_n)},
                  {"rho_n", detail::json_opt(r.rho_n)},
                  {"quantity", r.quantity},
                  {"param", r.param},
                  {"value", detail::json_number(r.value)},
                  {"target", detail::json_opt(r.target)},
                  {"abs_error", detail::json_opt(r.abs_error)},
                  {"rel_error", detail::json_opt(r.rel_error)},
                  {"flag", r.flag},
                  {"detail", r.detail}});
  }
  j["rows"] = rj;
  return j;
}

/// Wall-clock time per (n, replicate), kept apart from the report so the
/// report itself is reproducible byte for byte.
struct TimingRow {
  std::size_t n;
  long long replicate;
  double wall_ms;
};

inline void write_timing_csv(std::ostream& out, const std::vector<TimingRow>& rows) {
  out << "n,replicate,wall_ms\n";
  for (const auto& t : rows) out << t.n << ',' << t.replicate << ',' << format_double(t.wall_ms) << '\n';
}

}  // namespace cheeger
