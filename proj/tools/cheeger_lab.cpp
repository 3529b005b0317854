// cheeger_lab command-line interface.
//
// Exit codes: 0 success, 1 estimate failure or other error, 2 config error,
// 3 budget error, 4 --check threshold failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cheeger_lab.hpp"

using namespace cheeger;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;
constexpr int kExitCheck = 4;

struct ConfigSource {
  std::string path;
  std::vector<std::string> overrides;  // key=value

  void add_to(CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("-c,--config", path, "key = value config file");
    if (required) opt->required();
    cmd->add_option("--set", overrides, "override a config key (key=value), repeatable");
  }

  KeyValueFile load() const {
    KeyValueFile kv = path.empty() ? KeyValueFile{} : KeyValueFile::load(path);
    for (const auto& o : overrides) {
      const auto eq = o.find('=');
      if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects key=value, got '" + o + "'");
      kv.set(o.substr(0, eq), o.substr(eq + 1));
    }
    return kv;
  }
};

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + path + "'");
  return file;
}

NeighborhoodGraph load_edges(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open edge list '" + path + "'");
  return read_edge_list(in);
}

VertexSubset parse_subset(const std::string& text, std::size_t n) {
  VertexSubset S(n, 0);
  for (const auto& tok : KeyValueFile::split(text)) {
    const long long i = KeyValueFile::to_int(tok, "subset", 0);
    if (i < 0 || static_cast<std::size_t>(i) >= n) throw ConfigError("subset index " + tok + " out of range");
    S[static_cast<std::size_t>(i)] = 1;
  }
  return S;
}

void print_cut(const CutEvaluation& e) {
  std::cout << "delta_S " << e.delta_S << "\ndelta_Sc " << e.delta_Sc << "\nsigma_S " << e.sigma_S << "\nh "
            << format_double(e.h) << "\ndegenerate " << (e.degenerate ? "true" : "false") << "\nsubset " << e.subset
            << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph conductance and Cheeger-constant estimators on sampled domains"};
  app.require_subcommand(1);

  // constants
  auto* constants = app.add_subcommand("constants", "omega_d, gamma_d and cap volumes");
  int dim = 2;
  std::optional<double> eta;
  double gamma_tol = kGammaTolerance;
  constants->add_option("-d,--dim", dim, "dimension")->required();
  constants->add_option("--eta", eta, "also print the cap volume at this height");
  constants->add_option("--tol", gamma_tol, "quadrature tolerance for gamma_d");

  // sample
  auto* sample = app.add_subcommand("sample", "uniform sample from the configured domain");
  ConfigSource sample_cfg;
  sample_cfg.add_to(sample, false);
  std::size_t sample_n = 0;
  std::uint64_t sample_seed = 0;
  std::string sample_out;
  sample->add_option("-n", sample_n, "number of points")->required();
  sample->add_option("--seed", sample_seed, "seed");
  sample->add_option("-o,--out", sample_out, "CSV output (default stdout)");

  // graph
  auto* graph = app.add_subcommand("graph", "neighborhood graph edge list");
  std::string graph_points, graph_out;
  double graph_r = 0.0;
  graph->add_option("--points", graph_points, "point CSV (x1,...,xd header)")->required()->check(CLI::ExistingFile);
  graph->add_option("-r,--radius", graph_r, "connection radius")->required();
  graph->add_option("-o,--out", graph_out, "edge list output (default stdout)");

  // cut
  auto* cut = app.add_subcommand("cut", "delta, sigma and h(S; G) of a vertex subset");
  std::string cut_edges, cut_subset;
  cut->add_option("--edges", cut_edges, "edge list file")->required();
  cut->add_option("--subset", cut_subset, "vertex indices, space or comma separated")->required();

  // exact-cheeger
  auto* exact = app.add_subcommand("exact-cheeger", "H(G) by exhaustive enumeration (n <= 24)");
  std::string exact_edges;
  exact->add_option("--edges", exact_edges, "edge list file")->required();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "spectral sweep upper bound on H(G)");
  std::string sweep_edges;
  SpectralOptions sweep_opt;
  sweep->add_option("--edges", sweep_edges, "edge list file")->required();
  sweep->add_option("--tol", sweep_opt.tolerance, "power iteration tolerance");
  sweep->add_option("--max-iter", sweep_opt.max_iterations, "power iteration cap");

  // estimate
  auto* estimate = app.add_subcommand("estimate", "mu_n, nu_n, h_n and h_n^ddag of the configured candidate");
  ConfigSource estimate_cfg;
  estimate_cfg.add_to(estimate, false);
  std::size_t est_n = 0;
  std::uint64_t est_seed = 0;
  std::optional<double> est_r, est_rho;
  estimate->add_option("-n", est_n, "sample size")->required();
  estimate->add_option("--seed", est_seed, "seed");
  estimate->add_option("-r,--radius", est_r, "graph radius (default: ((log n)^2/n)^(1/(d+1)))");
  estimate->add_option("--rho", est_rho, "ball radius for h_n^ddag (default 1/log n)");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "run an experiment and write CSV/JSON reports");
  ConfigSource exp_cfg;
  exp_cfg.add_to(experiment, true);
  std::string exp_kind, exp_output;
  bool exp_check = false;
  experiment->add_option("kind", exp_kind, "pointwise | estimate | measure | hoeffding | graph-oracle")->required();
  experiment->add_option("-o,--output", exp_output, "CSV report path (overrides the output key)");
  experiment->add_flag("--check", exp_check, "exit 4 unless the acceptance thresholds hold");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*constants) {
      const Constants c = Constants::for_dimension(dim);
      std::cout << "d " << c.d << "\nomega_d " << format_double(c.omega_d) << "\ngamma_d "
                << format_double(gamma_constant(dim, gamma_tol)) << '\n';
      if (eta) std::cout << "cap_volume " << format_double(cap_volume(dim, *eta)) << '\n';
    } else if (*sample) {
      const KeyValueFile kv = sample_cfg.load();
      const Domain M = domain_from_keys(kv);
      const Sample s = sample_uniform(M, sample_n, sample_seed);
      std::ofstream file;
      write_points_csv(open_output(sample_out, file), s.points);
    } else if (*graph) {
      std::ifstream in(graph_points);
      const PointSet pts = read_points_csv(in);
      const NeighborhoodGraph G = build_graph(pts, graph_r);
      std::ofstream file;
      write_edge_list(open_output(graph_out, file), G);
    } else if (*cut) {
      const NeighborhoodGraph G = load_edges(cut_edges);
      print_cut(evaluate_cut(G, parse_subset(cut_subset, G.vertex_count())));
    } else if (*exact) {
      const NeighborhoodGraph G = load_edges(exact_edges);
      const ExactConductance e = conductance_exact(G);
      std::cout << "H " << format_double(e.H) << '\n';
      if (!e.subset.empty()) print_cut(evaluate_cut(G, e.subset));
    } else if (*sweep) {
      const NeighborhoodGraph G = load_edges(sweep_edges);
      const SpectralResult s = spectral_sweep(G, sweep_opt);
      std::cout << "h_upper " << format_double(s.h_upper) << "\nlambda2 " << format_double(s.lambda2)
                << "\nconverged " << (s.converged ? "true" : "false") << "\ndisconnected "
                << (s.disconnected ? "true" : "false") << "\niterations " << s.iterations << "\nsubset "
                << describe_subset(s.subset) << '\n';
    } else if (*estimate) {
      const KeyValueFile kv = estimate_cfg.load();
      const Domain M = domain_from_keys(kv);
      const CandidateSet A = candidate_from_keys(kv, M);
      kv.reject_unused();
      if (est_n < 2) throw ConfigError("-n must be at least 2");
      const double r = est_r.value_or(log_rate_radius(est_n, M.dim()));
      const double rho = est_rho.value_or(inverse_log_rho(est_n));
      const Sample s = sample_uniform(M, est_n, est_seed);
      const NeighborhoodGraph G = build_graph(s, r);
      const EstimatorContext ctx(G, M);
      const HnForms f = h_n_forms(ctx, A);
      std::cout << "n " << est_n << "\nr " << format_double(r) << "\nrho " << format_double(rho) << "\nedges "
                << G.edge_count() << "\nmu_n " << format_double(ctx.volume_scale() * f.cut.delta_S)
                << "\nmu_n_complement " << format_double(ctx.volume_scale() * f.cut.delta_Sc) << "\nnu_n "
                << format_double(ctx.perimeter_scale() * f.cut.sigma_S) << "\nh_n " << format_double(f.ratio)
                << "\nh_n_ddag " << format_double(h_n_ddag(ctx, rho, A)) << '\n';
      try {
        const RelativeCut c = relative_cut_quantities(A, M);
        std::cout << "mu " << format_double(c.vol_in / M.volume()) << "\nnu "
                  << format_double(c.perimeter / M.volume()) << "\nh " << format_double(c.h) << '\n';
      } catch (const NoClosedForm&) {
        std::cout << "h unavailable\n";
      }
    } else if (*experiment) {
      KeyValueFile kv = exp_cfg.load();
      if (!parse_experiment_kind(exp_kind)) {
        throw ConfigError("unknown experiment kind '" + exp_kind + "'");
      }
      if (kv.has("experiment") && kv.get_string("experiment") != exp_kind) {
        throw ConfigError("config declares experiment '" + kv.get_string("experiment") + "' but '" + exp_kind +
                              "' was requested",
                          kv.line_of("experiment"));
      }
      kv.set("experiment", exp_kind);
      if (!exp_output.empty()) kv.set("output", exp_output);
      const ExperimentConfig cfg = parse_experiment_config(kv);
      std::map<std::string, std::string> echo;
      for (const auto& [k, e] : kv.entries()) echo[k] = e.value;
      const ExperimentResult res = run_experiment(cfg);
      if (cfg.output.empty()) {
        write_report_csv(std::cout, res.rows);
      } else {
        write_experiment_outputs(cfg.output, cfg, echo, res);
      }
      for (const auto& s : summarize(res.rows)) {
        std::cerr << "n=" << s.n << ' ' << s.quantity << (s.param.empty() ? "" : "[" + s.param + "]")
                  << " median=" << format_double(s.median_value) << " iqr=" << format_double(s.iqr_value)
                  << " median_abs_error=" << format_double(s.median_abs_error) << '\n';
      }
      if (exp_check) {
        const CheckOutcome c = check_experiment(cfg, res);
        for (const auto& m : c.messages) std::cerr << m << '\n';
        if (!c.pass) return kExitCheck;
      }
      if (res.failed) {
        std::cerr << "error: some replicate produced no finite estimate\n";
        return kExitFailure;
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return 0;
}
