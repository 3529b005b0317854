#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cheeger_lab/estimators.hpp"
#include "cheeger_lab/keyvalue.hpp"

namespace cheeger {

enum class ExperimentKind { pointwise, estimate, measure, hoeffding, graph_oracle };

inline std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::pointwise: return "pointwise";
    case ExperimentKind::estimate: return "estimate";
    case ExperimentKind::measure: return "measure";
    case ExperimentKind::hoeffding: return "hoeffding";
    case ExperimentKind::graph_oracle: return "graph-oracle";
  }
  return "?";
}

inline std::optional<ExperimentKind> parse_experiment_kind(const std::string& s) {
  for (auto k : {ExperimentKind::pointwise, ExperimentKind::estimate, ExperimentKind::measure,
                 ExperimentKind::hoeffding, ExperimentKind::graph_oracle}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

/// A radius schedule: one of the named rates, or a constant, with optional
/// per-n numeric overrides.
struct RateSchedule {
  // log_rate: ((log n)^2 / n)^(1/(d+1)); power_rate: n^(-1/(2d+2));
  // inverse_log: 1 / log n.
  enum class Rule { log_rate, power_rate, inverse_log, constant } rule = Rule::log_rate;
  double constant = 0.0;
  std::vector<std::pair<std::size_t, double>> overrides;

  double at(std::size_t n, int d) const {
    for (const auto& [m, v] : overrides) {
      if (m == n) return v;
    }
    switch (rule) {
      case Rule::log_rate: return log_rate_radius(n, d);
      case Rule::power_rate: return power_rate_radius(n, d);
      case Rule::inverse_log: return inverse_log_rho(n);
      case Rule::constant: return constant;
    }
    return constant;
  }
};

enum class HoeffdingKernel { volume, perimeter };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::pointwise;
  Domain domain = Domain::disk({0.5, 0.5}, 0.4);
  std::optional<CandidateSet> candidate;
  std::vector<std::size_t> n_schedule;
  std::size_t replicates = 1;
  std::uint64_t seed = 0;
  RateSchedule r_n;
  RateSchedule rho_n;
  FamilySpec family;
  int l1_grid = 2048;
  double quadrature_tolerance = kCutTolerance;
  bool observe_sweep = false;
  // hoeffding
  HoeffdingKernel kernel = HoeffdingKernel::volume;
  double t_max = 0.1;
  int t_points = 10;
  // measure
  std::vector<double> bump_center;
  double bump_width = 0.0;
  // --check thresholds
  std::optional<double> check_rel_error;  // default depends on the experiment
  double check_l1_fraction = 0.10;
  double check_discrepancy = 0.05;
  std::string output;

  double rho_at(std::size_t n) const {
    return rho_n.at(n, domain.dim());
  }
};

namespace detail {

// `names` maps the accepted keywords to rules; anything else must be a
// positive number.
inline RateSchedule parse_schedule(const KeyValueFile& kv, const std::string& key, RateSchedule::Rule fallback,
                                   const std::map<std::string, RateSchedule::Rule>& names) {
  RateSchedule s;
  s.rule = fallback;
  if (const auto* e = kv.find(key)) {
    if (const auto it = names.find(e->value); it != names.end()) {
      s.rule = it->second;
    } else {
      s.rule = RateSchedule::Rule::constant;
      s.constant = KeyValueFile::to_double(e->value, key, e->line);
      if (!(s.constant > 0.0)) throw ConfigError("key '" + key + "' must be positive", e->line);
    }
  }
  for (const auto& k : kv.keys_with_prefix(key + ".")) {
    const int line = kv.line_of(k);
    const long long n = KeyValueFile::to_int(k.substr(key.size() + 1), k, line);
    const double v = kv.get_double(k);
    if (n < 2) throw ConfigError("key '" + k + "': n must be at least 2", line);
    if (!(v > 0.0)) throw ConfigError("key '" + k + "' must be positive", line);
    s.overrides.emplace_back(static_cast<std::size_t>(n), v);
  }
  return s;
}

}  // namespace detail

/// Reads an experiment config. Keys:
///   experiment, domain.*, candidate.*, n, replicates, seed, r_n, r_n.<n>,
///   rho_n, rho_n.<n>, family.k_angle, family.k_offset, family.ball_grid,
///   family.ball_radii, l1.grid, quadrature.tolerance, observe_sweep,
///   hoeffding.kernel, hoeffding.t_max, hoeffding.t_points,
///   measure.bump_center, measure.bump_width, check.rel_error,
///   check.l1_fraction, check.discrepancy, output.
/// Unknown keys are rejected.
inline ExperimentConfig parse_experiment_config(const KeyValueFile& kv) {
  ExperimentConfig c;
  const auto& kind_entry = kv.require("experiment");
  const auto kind = parse_experiment_kind(kind_entry.value);
  if (!kind) {
    throw ConfigError("unknown experiment '" + kind_entry.value +
                          "' (pointwise, estimate, measure, hoeffding, graph-oracle)",
                      kind_entry.line);
  }
  c.kind = *kind;
  c.domain = domain_from_keys(kv);
  if (kv.has("candidate.kind")) c.candidate = candidate_from_keys(kv, c.domain);
  if ((c.kind == ExperimentKind::pointwise || c.kind == ExperimentKind::hoeffding) && !c.candidate) {
    throw ConfigError("experiment '" + to_string(c.kind) + "' needs candidate.* keys", kind_entry.line);
  }

  const int n_line = kv.line_of("n");
  for (long long n : kv.get_ints("n")) {
    if (n < 2) throw ConfigError("every scheduled n must be at least 2", n_line);
    if (!c.n_schedule.empty() && static_cast<std::size_t>(n) <= c.n_schedule.back()) {
      throw ConfigError("n schedule must be strictly increasing", n_line);
    }
    c.n_schedule.push_back(static_cast<std::size_t>(n));
  }
  if (c.n_schedule.empty()) throw ConfigError("n must list at least one sample size", n_line);
  const long long reps = kv.get_int("replicates", 1);
  if (reps < 1) throw ConfigError("replicates must be at least 1", kv.line_of("replicates"));
  c.replicates = static_cast<std::size_t>(reps);
  if (kv.has("seed")) {
    const auto& e = kv.require("seed");
    char* end = nullptr;
    c.seed = std::strtoull(e.value.c_str(), &end, 0);
    if (e.value.empty() || *end != '\0' || e.value[0] == '-') throw ConfigError("seed must be a 64-bit unsigned integer", e.line);
  }

  const bool penalized = c.kind == ExperimentKind::estimate || c.kind == ExperimentKind::measure;
  using Rule = RateSchedule::Rule;
  c.r_n = detail::parse_schedule(kv, "r_n", penalized ? Rule::power_rate : Rule::log_rate,
                                 {{"log-rate", Rule::log_rate}, {"power-rate", Rule::power_rate}});
  c.rho_n = detail::parse_schedule(kv, "rho_n", Rule::inverse_log, {{"inverse-log", Rule::inverse_log}});

  c.family.k_angle = static_cast<int>(kv.get_int("family.k_angle", c.family.k_angle));
  c.family.k_offset = static_cast<int>(kv.get_int("family.k_offset", c.family.k_offset));
  c.family.ball_grid = static_cast<int>(kv.get_int("family.ball_grid", 0));
  if (kv.has("family.ball_radii")) c.family.ball_radii = kv.get_doubles("family.ball_radii");
  if (c.family.k_angle < 0 || c.family.k_offset < 0 || c.family.ball_grid < 0) {
    throw ConfigError("family sizes must be nonnegative", kv.line_of("family.k_angle"));
  }
  c.l1_grid = static_cast<int>(kv.get_int("l1.grid", c.l1_grid));
  if (c.l1_grid < 16) throw ConfigError("l1.grid must be at least 16", kv.line_of("l1.grid"));
  c.quadrature_tolerance = kv.get_double("quadrature.tolerance", c.quadrature_tolerance);
  if (!(c.quadrature_tolerance > 0.0)) {
    throw ConfigError("quadrature.tolerance must be positive", kv.line_of("quadrature.tolerance"));
  }
  // Power iteration on millions of edges dominates the run time; off unless asked for.
  c.observe_sweep = kv.get_bool("observe_sweep", false);

  if (const auto* e = kv.find("hoeffding.kernel")) {
    if (e->value == "volume") {
      c.kernel = HoeffdingKernel::volume;
    } else if (e->value == "perimeter") {
      c.kernel = HoeffdingKernel::perimeter;
    } else {
      throw ConfigError("hoeffding.kernel must be volume or perimeter", e->line);
    }
  }
  c.t_max = kv.get_double("hoeffding.t_max", c.t_max);
  c.t_points = static_cast<int>(kv.get_int("hoeffding.t_points", c.t_points));
  if (!(c.t_max > 0.0) || c.t_points < 1) {
    throw ConfigError("hoeffding.t_max must be positive and hoeffding.t_points at least 1",
                      kv.line_of("hoeffding.t_max"));
  }

  c.bump_center = kv.has("measure.bump_center") ? kv.get_doubles("measure.bump_center") : c.domain.center();
  if (static_cast<int>(c.bump_center.size()) != c.domain.dim()) {
    throw ConfigError("measure.bump_center has the wrong dimension", kv.line_of("measure.bump_center"));
  }
  c.bump_width = kv.get_double("measure.bump_width", 0.25 * c.domain.inradius());
  if (!(c.bump_width > 0.0)) throw ConfigError("measure.bump_width must be positive", kv.line_of("measure.bump_width"));

  if (kv.has("check.rel_error")) c.check_rel_error = kv.get_double("check.rel_error");
  c.check_l1_fraction = kv.get_double("check.l1_fraction", c.check_l1_fraction);
  c.check_discrepancy = kv.get_double("check.discrepancy", c.check_discrepancy);
  c.output = kv.get_string("output", "");

  for (std::size_t n : c.n_schedule) {
    if (!(c.r_n.at(n, c.domain.dim()) > 0.0)) throw ConfigError("r_n is not positive at n = " + std::to_string(n));
    if (penalized && !(c.rho_at(n) > 0.0)) throw ConfigError("rho_n is not positive at n = " + std::to_string(n));
  }
  if (c.kind == ExperimentKind::graph_oracle && c.n_schedule.back() > kExactVertexLimit) {
    throw BudgetError("graph-oracle needs n <= " + std::to_string(kExactVertexLimit));
  }
  kv.reject_unused();
  return c;
}

inline ExperimentConfig load_experiment_config(const std::string& path) {
  return parse_experiment_config(KeyValueFile::load(path));
}

}  // namespace cheeger
