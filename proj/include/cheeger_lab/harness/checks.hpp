#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "cheeger_lab/harness/config.hpp"
#include "cheeger_lab/harness/experiments.hpp"
#include "cheeger_lab/harness/report.hpp"

namespace cheeger {

struct CheckOutcome {
  bool pass = true;
  std::vector<std::string> messages;

  void require(bool ok, const std::string& what) {
    messages.push_back(std::string(ok ? "PASS " : "FAIL ") + what);
    pass = pass && ok;
  }
};

/// Per-n medians of a column over per-replicate rows with the given quantity.
inline std::vector<std::pair<std::size_t, double>> per_n_median(const std::vector<ReportRow>& rows,
                                                                const std::string& quantity,
                                                                double (*column)(const ReportRow&)) {
  std::map<std::size_t, std::vector<double>> by_n;
  for (const auto& r : rows) {
    if (r.replicate >= 0 && r.quantity == quantity) by_n[r.n].push_back(column(r));
  }
  std::vector<std::pair<std::size_t, double>> out;
  for (auto& [n, v] : by_n) out.emplace_back(n, median(v));
  return out;
}

inline double rel_error_column(const ReportRow& r) {
  return r.rel_error ? *r.rel_error : std::numeric_limits<double>::infinity();
}
inline double abs_error_column(const ReportRow& r) {
  return r.abs_error ? *r.abs_error : std::numeric_limits<double>::infinity();
}
inline double value_column(const ReportRow& r) { return r.value; }

/// Steps k -> k+1 along the schedule where the median improves (strictly
/// when `strict`), and the number required: ceil(3/4 of the steps).
struct TrendCount {
  std::size_t improving = 0;
  std::size_t steps = 0;
  std::size_t required = 0;
  bool ok() const { return improving >= required; }
};

inline TrendCount trend(const std::vector<std::pair<std::size_t, double>>& medians, bool strict) {
  TrendCount t;
  t.steps = medians.empty() ? 0 : medians.size() - 1;
  t.required = static_cast<std::size_t>(std::ceil(0.75 * static_cast<double>(t.steps)));
  for (std::size_t k = 0; k + 1 < medians.size(); ++k) {
    const double a = medians[k].second, b = medians[k + 1].second;
    if (strict ? b < a : b <= a) ++t.improving;
  }
  return t;
}

inline std::string trend_text(const std::vector<std::pair<std::size_t, double>>& medians) {
  std::string s;
  for (const auto& [n, v] : medians) s += (s.empty() ? "" : " ") + std::to_string(n) + ":" + format_double(v);
  return s;
}

/// Acceptance thresholds for `--check`:
///   pointwise   median relative error of h_n at the largest n <= check.rel_error
///               (0.10) and medians nonincreasing in >= 3/4 of the steps;
///   estimate    median relative error of min h_n^ddag <= check.rel_error (0.15)
///               and median L1 score <= check.l1_fraction * Vol(M) at the largest n;
///   measure     median max discrepancy decreasing in >= 3/4 of the steps and
///               <= check.discrepancy at the largest n;
///   hoeffding   every exceedance within bound + 3 SE;
///   graph-oracle sweep >= exact and relabeling invariance on every instance.
inline CheckOutcome check_experiment(const ExperimentConfig& cfg, const ExperimentResult& res) {
  CheckOutcome out;
  const std::size_t last = cfg.n_schedule.back();
  auto at_last = [&](const std::vector<std::pair<std::size_t, double>>& m) {
    for (const auto& [n, v] : m) {
      if (n == last) return v;
    }
    return std::numeric_limits<double>::infinity();
  };
  switch (cfg.kind) {
    case ExperimentKind::pointwise: {
      const double tol = cfg.check_rel_error.value_or(0.10);
      const auto m = per_n_median(res.rows, "h_n", rel_error_column);
      out.require(at_last(m) <= tol, "median relative error of h_n at n=" + std::to_string(last) + " is " +
                                         format_double(at_last(m)) + " (limit " + format_double(tol) + ")");
      const auto t = trend(m, false);
      out.require(t.ok(), "median error nonincreasing in " + std::to_string(t.improving) + " of " +
                              std::to_string(t.steps) + " steps (need " + std::to_string(t.required) +
                              "): " + trend_text(m));
      break;
    }
    case ExperimentKind::estimate: {
      const double tol = cfg.check_rel_error.value_or(0.15);
      const auto m = per_n_median(res.rows, "h_ddag_min", rel_error_column);
      out.require(at_last(m) <= tol, "median relative error of min h_n^ddag at n=" + std::to_string(last) + " is " +
                                         format_double(at_last(m)) + " (limit " + format_double(tol) + ")");
      const auto l1 = per_n_median(res.rows, "l1_recovery", value_column);
      const double limit = cfg.check_l1_fraction * cfg.domain.volume();
      out.require(at_last(l1) <= limit, "median L1 recovery score " + format_double(at_last(l1)) + " (limit " +
                                            format_double(limit) + ")");
      break;
    }
    case ExperimentKind::measure: {
      const auto m = per_n_median(res.rows, "Qn_max_discrepancy", value_column);
      const auto t = trend(m, true);
      out.require(t.ok(), "median max discrepancy decreasing in " + std::to_string(t.improving) + " of " +
                              std::to_string(t.steps) + " steps (need " + std::to_string(t.required) +
                              "): " + trend_text(m));
      out.require(at_last(m) <= cfg.check_discrepancy, "median max discrepancy at n=" + std::to_string(last) +
                                                           " is " + format_double(at_last(m)) + " (limit " +
                                                           format_double(cfg.check_discrepancy) + ")");
      break;
    }
    case ExperimentKind::hoeffding: {
      std::size_t total = 0, bad = 0;
      for (const auto& r : res.rows) {
        if (r.quantity != "exceedance") continue;
        ++total;
        bad += r.flag != "ok";
      }
      out.require(total > 0 && bad == 0, std::to_string(total - bad) + " of " + std::to_string(total) +
                                             " grid points within bound + 3 SE");
      break;
    }
    case ExperimentKind::graph_oracle: {
      std::size_t total = 0, bad_sweep = 0, bad_perm = 0;
      for (const auto& r : res.rows) {
        if (r.quantity == "sweep_h") {
          ++total;
          bad_sweep += r.flag != "ok";
        }
        if (r.quantity == "H_relabeled") bad_perm += r.flag != "ok";
      }
      out.require(bad_sweep == 0, "sweep >= exact on " + std::to_string(total - bad_sweep) + " of " +
                                      std::to_string(total) + " instances");
      out.require(bad_perm == 0, "relabeling invariance on " + std::to_string(total - bad_perm) + " of " +
                                     std::to_string(total) + " instances");
      break;
    }
  }
  if (res.failed) out.require(false, "some replicate produced no finite estimate");
  return out;
}

}  // namespace cheeger
