#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "cheeger_lab/continuum.hpp"
#include "cheeger_lab/cut.hpp"
#include "cheeger_lab/estimators.hpp"
#include "cheeger_lab/graph.hpp"
#include "cheeger_lab/harness/config.hpp"
#include "cheeger_lab/harness/report.hpp"
#include "cheeger_lab/parallel.hpp"
#include "cheeger_lab/random.hpp"
#include "cheeger_lab/sampling.hpp"
#include "cheeger_lab/spectral.hpp"

namespace cheeger {

struct ExperimentResult {
  std::vector<ReportRow> rows;
  std::vector<TimingRow> timings;
  bool failed = false;  // some replicate had no finite estimate
};

/// Seed of replicate `rep` at sample size n.
inline std::uint64_t replicate_seed(std::uint64_t master, std::size_t n, std::size_t rep) {
  return derive_seed(derive_seed(master, n), rep);
}

namespace detail {

struct Job {
  std::size_t n;
  std::size_t rep;
  std::uint64_t seed;
};

// Runs fn over every (n, replicate) pair, concurrently when workers allow.
// fn receives the thread budget for its own inner loops. Rows come back in
// (n, replicate) order.
inline ExperimentResult run_jobs(const ExperimentConfig& cfg,
                                 const std::function<std::vector<ReportRow>(const Job&, std::size_t)>& fn) {
  std::vector<Job> jobs;
  for (std::size_t n : cfg.n_schedule) {
    for (std::size_t rep = 0; rep < cfg.replicates; ++rep) jobs.push_back({n, rep, replicate_seed(cfg.seed, n, rep)});
  }
  const std::size_t workers = worker_count();
  const std::size_t outer = std::min(workers, jobs.size());
  const std::size_t inner = outer > 1 ? 1 : workers;
  std::vector<std::vector<ReportRow>> rows(jobs.size());
  std::vector<double> ms(jobs.size());
  parallel_for(
      jobs.size(),
      [&](std::size_t k) {
        const auto t0 = std::chrono::steady_clock::now();
        rows[k] = fn(jobs[k], inner);
        ms[k] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      },
      outer);
  ExperimentResult res;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    for (auto& r : rows[k]) {
      if (r.flag == "failure") res.failed = true;
      res.rows.push_back(std::move(r));
    }
    res.timings.push_back({jobs[k].n, static_cast<long long>(jobs[k].rep), ms[k]});
  }
  return res;
}

inline ReportRow base_row(const ExperimentConfig& cfg, const Job& job, double r, std::optional<double> rho) {
  ReportRow row;
  row.experiment = to_string(cfg.kind);
  row.n = job.n;
  row.replicate = static_cast<long long>(job.rep);
  row.seed = job.seed;
  row.r_n = r;
  row.rho_n = rho;
  return row;
}

inline std::string cut_detail(const CutEvaluation& e) {
  return "sigma=" + std::to_string(e.sigma_S) + ";delta_S=" + std::to_string(e.delta_S) +
         ";delta_Sc=" + std::to_string(e.delta_Sc);
}

inline RelativeCut continuum_cut(const ExperimentConfig& cfg, const CandidateSet& A) {
  try {
    return relative_cut_quantities(A, cfg.domain, cfg.quadrature_tolerance);
  } catch (const NoClosedForm& e) {
    throw ConfigError(std::string("no continuum target for this candidate: ") + e.what());
  }
}

inline CheegerSetInfo require_known_cheeger(const ExperimentConfig& cfg) {
  auto info = known_cheeger(cfg.domain);
  if (!info) {
    throw ConfigError("experiment '" + to_string(cfg.kind) + "' needs a domain with a known Cheeger set (planar disk or rectangle)");
  }
  return *info;
}

// Shared by estimate and measure: the penalized minimization and its rows.
struct EstimateOutcome {
  std::vector<ReportRow> rows;
  std::optional<CandidateSet> argmin;
  std::optional<OrbitMatch> orbit;
  Sample sample;
};

inline EstimateOutcome estimate_replicate(const ExperimentConfig& cfg, const CheegerSetInfo& info,
                                          const std::vector<CandidateSet>& family, const Job& job,
                                          std::size_t threads) {
  const double r = cfg.r_n.at(job.n, cfg.domain.dim());
  const double rho = cfg.rho_at(job.n);
  EstimateOutcome out{{}, std::nullopt, std::nullopt, sample_uniform(cfg.domain, job.n, job.seed)};
  const NeighborhoodGraph G = build_graph(out.sample, r, threads);
  const EstimatorContext ctx(G, cfg.domain);
  const PenalizedConfig pc{rho, family};
  const MinimizeResult m = minimize_h_n_ddag(ctx, pc, threads);

  ReportRow row = base_row(cfg, job, r, rho);
  row.quantity = "h_ddag_min";
  row.value = m.value;
  row.set_target(info.H);
  if (!m.index) {
    row.flag = "failure";
    row.detail = "every family member is infinite";
  } else {
    out.argmin = family[*m.index];
    row.detail = "index=" + std::to_string(*m.index) + ";" + out.argmin->describe();
  }
  out.rows.push_back(row);

  ReportRow l1 = base_row(cfg, job, r, rho);
  l1.quantity = "l1_recovery";
  if (out.argmin) {
    out.orbit = nearest_cheeger_set(*out.argmin, cfg.domain, info, cfg.l1_grid);
    l1.value = out.orbit->l1;
    l1.detail = "fraction=" + format_double(out.orbit->l1 / cfg.domain.volume()) + ";nearest=" +
                CandidateSet::half_space(out.orbit->element.normal, out.orbit->element.offset).describe();
  } else {
    l1.value = kInfinity;
    l1.flag = "failure";
  }
  l1.set_target(0.0);
  out.rows.push_back(l1);

  if (cfg.observe_sweep) {
    const SpectralResult s = spectral_sweep(G);
    ReportRow sw = base_row(cfg, job, r, rho);
    sw.quantity = "sweep_h_rescaled";
    sw.value = ctx.cut_scale() * s.h_upper;
    sw.set_target(info.H);
    sw.flag = s.converged ? "observation" : "observation;unconverged";
    sw.detail = "graph_h=" + format_double(s.h_upper) + ";lambda2=" + format_double(s.lambda2);
    out.rows.push_back(sw);
  }
  return out;
}

}  // namespace detail

/// Fixed candidate A: mu_n(A), mu_n(A^c), nu_n(A), h_n(A) against mu(A),
/// mu(A^c), nu(A) = Per(A; M)/tau and h(A; M).
inline ExperimentResult run_pointwise(const ExperimentConfig& cfg) {
  const CandidateSet& A = *cfg.candidate;
  const RelativeCut target = detail::continuum_cut(cfg, A);
  const double tau = cfg.domain.volume();
  return detail::run_jobs(cfg, [&](const detail::Job& job, std::size_t threads) {
    const double r = cfg.r_n.at(job.n, cfg.domain.dim());
    const Sample s = sample_uniform(cfg.domain, job.n, job.seed);
    const NeighborhoodGraph G = build_graph(s, r, threads);
    const EstimatorContext ctx(G, cfg.domain);
    const HnForms f = h_n_forms(ctx, A);
    std::vector<ReportRow> rows;
    auto add = [&](const std::string& q, double value, double t) {
      ReportRow row = detail::base_row(cfg, job, r, std::nullopt);
      row.quantity = q;
      row.value = value;
      row.set_target(t);
      row.detail = detail::cut_detail(f.cut);
      rows.push_back(row);
    };
    add("mu_n", ctx.volume_scale() * static_cast<double>(f.cut.delta_S), target.vol_in / tau);
    add("mu_n_complement", ctx.volume_scale() * static_cast<double>(f.cut.delta_Sc), target.vol_out / tau);
    add("nu_n", ctx.perimeter_scale() * static_cast<double>(f.cut.sigma_S), target.perimeter / tau);
    add("h_n", f.ratio, target.h);
    if (std::isinf(f.ratio) || f.cut.degenerate) rows.back().flag = "degenerate";
    return rows;
  });
}

/// Minimum over the family of h_n^ddag against H(M), and the L1
/// distance from the argmin to the Cheeger orbit.
inline ExperimentResult run_estimate(const ExperimentConfig& cfg) {
  const CheegerSetInfo info = detail::require_known_cheeger(cfg);
  std::map<std::size_t, std::vector<CandidateSet>> families;
  for (std::size_t n : cfg.n_schedule) {
    families.emplace(n, detail::as_config(0, [&] { return build_candidate_family(cfg.domain, cfg.rho_at(n), cfg.family); }));
    if (families.at(n).empty()) throw ConfigError("candidate family is empty");
  }
  return detail::run_jobs(cfg, [&](const detail::Job& job, std::size_t threads) {
    return detail::estimate_replicate(cfg, info, families.at(job.n), job, threads).rows;
  });
}

/// The measure test suite: 1, x1 - c1, x2 - c2 and a Gaussian bump.
struct TestFunction {
  std::string name;
  std::function<double(double, double)> f;
};

inline std::vector<TestFunction> measure_suite(const ExperimentConfig& cfg) {
  const auto& c = cfg.domain.center();
  const auto& b = cfg.bump_center;
  const double w2 = 2.0 * cfg.bump_width * cfg.bump_width;
  return {{"one", [](double, double) { return 1.0; }},
          {"x1-c1", [c0 = c[0]](double x, double) { return x - c0; }},
          {"x2-c2", [c1 = c[1]](double, double y) { return y - c1; }},
          {"bump", [b0 = b[0], b1 = b[1], w2](double x, double y) {
             return std::exp(-((x - b0) * (x - b0) + (y - b1) * (y - b1)) / w2);
           }}};
}

/// Q_n f = (1/n) sum over points of the argmin of f, against
/// (1/tau) times the integral of f over the nearest Cheeger set.
inline ExperimentResult run_measure(const ExperimentConfig& cfg) {
  if (cfg.domain.dim() != 2) throw ConfigError("measure experiments are planar");
  const CheegerSetInfo info = detail::require_known_cheeger(cfg);
  std::map<std::size_t, std::vector<CandidateSet>> families;
  for (std::size_t n : cfg.n_schedule) {
    families.emplace(n, detail::as_config(0, [&] { return build_candidate_family(cfg.domain, cfg.rho_at(n), cfg.family); }));
    if (families.at(n).empty()) throw ConfigError("candidate family is empty");
  }
  const auto suite = measure_suite(cfg);
  const double tau = cfg.domain.volume();
  return detail::run_jobs(cfg, [&](const detail::Job& job, std::size_t threads) {
    auto out = detail::estimate_replicate(cfg, info, families.at(job.n), job, threads);
    const double r = cfg.r_n.at(job.n, 2);
    const double rho = cfg.rho_at(job.n);
    double worst = 0.0;
    for (const auto& tf : suite) {
      ReportRow row = detail::base_row(cfg, job, r, rho);
      row.quantity = "Qn";
      row.param = tf.name;
      if (!out.argmin) {
        row.value = kInfinity;
        row.flag = "failure";
        worst = kInfinity;
        out.rows.push_back(row);
        continue;
      }
      double sum = 0.0;
      for (std::size_t i = 0; i < out.sample.n; ++i) {
        const auto p = out.sample.points[i];
        if (out.argmin->contains(p)) sum += tf.f(p[0], p[1]);
      }
      row.value = sum / static_cast<double>(job.n);
      row.set_target(integrate_over_halfspace_part(cfg.domain, out.orbit->element, tf.f, 1e-10) / tau);
      worst = std::max(worst, *row.abs_error);
      out.rows.push_back(row);
    }
    ReportRow m = detail::base_row(cfg, job, r, rho);
    m.quantity = "Qn_max_discrepancy";
    m.value = worst;
    m.set_target(0.0);
    if (!out.argmin) m.flag = "failure";
    out.rows.push_back(m);
    return out.rows;
  });
}

/// Monte Carlo exceedance of the centred U-statistic U_n(phi) - E phi against
/// exp(-n t^2 / (5 sigma^2 + 3 b t)) with b = 1 on the grid t_k = k t_max / K.
/// sigma^2 is mu(A) omega_d r^d / tau for the volume kernel and E phibar for
/// the perimeter kernel.
inline ExperimentResult run_hoeffding(const ExperimentConfig& cfg) {
  const auto hs = in_domain_halfspace(*cfg.candidate, cfg.domain);
  if (!hs) throw ConfigError("hoeffding experiments need a half-space candidate");
  if (cfg.domain.dim() != 2) throw ConfigError("hoeffding experiments are planar");
  const double tau = cfg.domain.volume();
  const RelativeCut cut = detail::continuum_cut(cfg, *cfg.candidate);
  std::map<std::size_t, std::pair<double, double>> moments;  // n -> (mean, sigma2)
  for (std::size_t n : cfg.n_schedule) {
    const double r = cfg.r_n.at(n, 2);
    if (cfg.kernel == HoeffdingKernel::volume) {
      const double mean = volume_kernel_mean(cfg.domain, *hs, r);
      moments[n] = {mean, (cut.vol_in / tau) * unit_ball_volume(2) * r * r / tau};
    } else {
      const double mean = perimeter_kernel_mean(cfg.domain, *hs, r);
      moments[n] = {mean, mean};
    }
  }
  const std::string kernel_name = cfg.kernel == HoeffdingKernel::volume ? "volume" : "perimeter";
  ExperimentResult res = detail::run_jobs(cfg, [&](const detail::Job& job, std::size_t threads) {
    const double r = cfg.r_n.at(job.n, 2);
    const Sample s = sample_uniform(cfg.domain, job.n, job.seed);
    const NeighborhoodGraph G = build_graph(s, r, threads);
    const KernelSpec k{cfg.kernel == HoeffdingKernel::volume ? KernelKind::volume : KernelKind::perimeter,
                       *cfg.candidate, r, {}};
    ReportRow row = detail::base_row(cfg, job, r, std::nullopt);
    row.quantity = "u_centered";
    row.param = kernel_name;
    row.value = u_statistic(k, s.points, &G) - moments.at(job.n).first;
    return std::vector<ReportRow>{row};
  });

  std::vector<ReportRow> rows;
  for (std::size_t n : cfg.n_schedule) {
    const auto [mean, sigma2] = moments.at(n);
    std::vector<double> centred;
    for (const auto& r : res.rows) {
      if (r.n == n) centred.push_back(r.value);
    }
    const double N = static_cast<double>(centred.size());
    for (int k = 1; k <= cfg.t_points; ++k) {
      const double t = cfg.t_max * k / cfg.t_points;
      const auto hits = std::count_if(centred.begin(), centred.end(), [&](double v) { return v >= t; });
      const double p = static_cast<double>(hits) / N;
      const double se = std::sqrt(p * (1.0 - p) / N);
      ReportRow row;
      row.experiment = to_string(cfg.kind);
      row.n = n;
      row.replicate = -1;
      row.seed = derive_seed(cfg.seed, n);
      row.r_n = cfg.r_n.at(n, 2);
      row.quantity = "exceedance";
      row.param = "t=" + format_double(t);
      row.value = p;
      row.set_target(hoeffding_tail_bound(n, t, sigma2, 1.0));
      row.flag = p <= *row.target + 3.0 * se ? "ok" : "violation";
      row.detail = "kernel=" + kernel_name + ";count=" + std::to_string(hits) + ";se=" + format_double(se) +
                   ";mean=" + format_double(mean) + ";sigma2=" + format_double(sigma2);
      rows.push_back(row);
    }
    for (const auto& r : res.rows) {
      if (r.n == n) rows.push_back(r);
    }
  }
  res.rows = std::move(rows);
  return res;
}

/// Graph with vertices relabeled by perm (new index of old vertex i is perm[i]).
inline NeighborhoodGraph relabel(const NeighborhoodGraph& G, const std::vector<std::uint32_t>& perm) {
  auto edges = G.edges();
  for (auto& [i, j] : edges) {
    i = perm[i];
    j = perm[j];
  }
  return NeighborhoodGraph::from_edges(G.vertex_count(), edges, G.radius());
}

inline std::vector<std::uint32_t> random_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0U);
  Xoshiro256 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform01() * static_cast<double>(i));
    std::swap(p[i - 1], p[std::min(j, i - 1)]);
  }
  return p;
}

/// Exact H(G) against the spectral sweep on small samples, with a vertex
/// relabeling check and the rescaled H(G) next to H(M) for observation.
inline ExperimentResult run_graph_oracle(const ExperimentConfig& cfg) {
  const auto info = known_cheeger(cfg.domain);
  return detail::run_jobs(cfg, [&](const detail::Job& job, std::size_t) {
    const double r = cfg.r_n.at(job.n, cfg.domain.dim());
    const Sample s = sample_uniform(cfg.domain, job.n, job.seed);
    const NeighborhoodGraph G = build_graph(s, r, 1);
    const ExactConductance exact = conductance_exact(G);
    const SpectralResult sweep = spectral_sweep(G);
    const NeighborhoodGraph P = relabel(G, random_permutation(job.n, derive_seed(job.seed, 1)));
    const ExactConductance permuted = conductance_exact(P);
    std::vector<ReportRow> rows;
    ReportRow e = detail::base_row(cfg, job, r, std::nullopt);
    e.quantity = "H_exact";
    e.value = exact.H;
    e.detail = "m=" + std::to_string(G.edge_count()) + ";subset=" + describe_subset(exact.subset);
    rows.push_back(e);

    ReportRow w = detail::base_row(cfg, job, r, std::nullopt);
    w.quantity = "sweep_h";
    w.value = sweep.h_upper;
    w.set_target(exact.H);
    w.flag = sweep.h_upper >= exact.H ? "ok" : "violation";
    w.detail = std::string(sweep.converged ? "" : "unconverged;") + "lambda2=" + format_double(sweep.lambda2) +
               ";subset=" + describe_subset(sweep.subset);
    rows.push_back(w);

    ReportRow p = detail::base_row(cfg, job, r, std::nullopt);
    p.quantity = "H_relabeled";
    p.value = permuted.H;
    p.set_target(exact.H);
    p.flag = permuted.H == exact.H ? "ok" : "violation";
    rows.push_back(p);

    ReportRow o = detail::base_row(cfg, job, r, std::nullopt);
    o.quantity = "H_rescaled";
    o.value = Constants::for_dimension(cfg.domain.dim()).omega_d /
              (Constants::for_dimension(cfg.domain.dim()).gamma_d * r) * exact.H;
    if (info) o.set_target(info->H);
    o.flag = "observation";
    rows.push_back(o);
    return rows;
  });
}

inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::pointwise: return run_pointwise(cfg);
    case ExperimentKind::estimate: return run_estimate(cfg);
    case ExperimentKind::measure: return run_measure(cfg);
    case ExperimentKind::hoeffding: return run_hoeffding(cfg);
    case ExperimentKind::graph_oracle: return run_graph_oracle(cfg);
  }
  return {};
}

/// Writes <output> (CSV), <stem>.json and <stem>.timing.csv, where stem is
/// output without a trailing ".csv".
inline void write_experiment_outputs(const std::string& output, const ExperimentConfig& cfg,
                                     const std::map<std::string, std::string>& config_echo,
                                     const ExperimentResult& res) {
  std::string stem = output;
  if (stem.size() > 4 && stem.substr(stem.size() - 4) == ".csv") stem.resize(stem.size() - 4);
  {
    std::ofstream csv(output, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write '" + output + "'");
    write_report_csv(csv, res.rows);
  }
  {
    std::ofstream js(stem + ".json", std::ios::binary);
    js << report_json(to_string(cfg.kind), config_echo, res.rows).dump(2) << '\n';
  }
  {
    std::ofstream tm(stem + ".timing.csv", std::ios::binary);
    write_timing_csv(tm, res.timings);
  }
}

}  // namespace cheeger
