// Command-line front end: threshold, predict-core, scan, estimate, orient, audit.
//
// Exit codes: 0 ok, 2 usage or invalid arguments, 3 I/O or malformed input, 4 no crossing.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "horient/core_orient.hpp"
#include "horient/experiment.hpp"
#include "horient/hypergraph.hpp"
#include "horient/proof_audit.hpp"
#include "horient/threshold_solver.hpp"

using namespace horient;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNoCrossing = 4;

struct Options {
  int k = 3;
  int ell = 2;
  std::vector<double> c;
  double c_min = 0.0;
  double c_max = 0.0;
  double c_step = 0.01;
  int n = 1000;
  int trials = 10;
  std::uint64_t seed = 1;
  std::string model = "uniform";
  std::string out;
  double tol = 0.015;
  bool timing = false;
  int threads = 1;
  double beta_step = 1e-3;
  std::string file;
};

void print_kv(const char* key, double v) { std::printf("%s %.12g\n", key, v); }

int cmd_threshold(const Options& o) {
  const OrientParams p{o.k, o.ell};
  const ThresholdResult r = c_star(p);
  std::printf("k %d\nell %d\n", p.k, p.ell);
  print_kv("xi_star", r.xi_star);
  print_kv("gap", r.gap);
  print_kv("c_star", r.c_star);
  print_kv("lambda_core", r.lambda_core);
  print_kv("lambda_argmin", r.lambda_argmin);
  print_kv("residual_xi", r.residual_xi);
  std::printf("iterations %d\n", r.iterations);
  return 0;
}

int cmd_predict_core(const Options& o) {
  if (o.c.size() != 1) throw std::invalid_argument("predict-core needs exactly one --c value");
  if (o.n < 1) throw std::invalid_argument("n must be positive");
  const OrientParams p{o.k, o.ell};
  const CorePrediction r = core_prediction(p, o.c.front());
  if (!r.exists) {
    std::printf("no core predicted (c k = %.12g <= lambda = %.12g)\n", o.c.front() * o.k, lambda_core_threshold(p));
    return 0;
  }
  print_kv("xi", r.xi);
  print_kv("x_bar", r.x_bar);
  print_kv("core_fraction", r.n_frac);
  print_kv("core_edges_per_n", r.m_per_n);
  print_kv("density", r.density);
  print_kv("core_vertices", r.n_frac * o.n);
  print_kv("core_edges", r.m_per_n * o.n);
  print_kv("residual", r.residual);
  return 0;
}

ExperimentSpec make_spec(const Options& o, bool have_range) {
  ExperimentSpec s;
  s.k = o.k;
  s.ell = o.ell;
  s.model = parse_model(o.model);
  s.n = o.n;
  s.trials = o.trials;
  s.seed = o.seed;
  s.timing = o.timing;
  s.threads = o.threads;
  if (!o.c.empty()) {
    s.c_grid = o.c;
  } else if (have_range) {
    s.c_grid = make_grid(o.c_min, o.c_max, o.c_step);
  } else {
    throw std::invalid_argument("give --c values or --c-min and --c-max");
  }
  validate(s);
  return s;
}

// Opens --out, or returns nullptr for stdout.
std::unique_ptr<std::ofstream> open_out(const std::string& path) {
  if (path.empty()) return nullptr;
  auto f = std::make_unique<std::ofstream>(path, std::ios::out | std::ios::trunc);
  if (!*f) throw std::ios_base::failure("cannot open " + path + " for writing");
  return f;
}

void print_summary(std::FILE* to, const std::vector<ScanSummary>& sums) {
  for (const auto& s : sums) {
    std::fprintf(to, "c=%.6g trials=%d orientable=%d fraction=%.4f wilson95=[%.4f,%.4f] core_frac=%.5f core_density=%.5f\n",
                 s.c, s.trials, s.orientable, s.fraction, s.lo, s.hi, s.mean_core_frac, s.mean_core_density);
  }
}

int cmd_scan(const Options& o, bool have_range) {
  const ExperimentSpec s = make_spec(o, have_range);
  auto file = open_out(o.out);
  std::ostream& csv = file ? static_cast<std::ostream&>(*file) : std::cout;
  const ScanResult r = run_scan(s, &csv);
  print_summary(file ? stdout : stderr, r.summaries);
  return 0;
}

int cmd_estimate(const Options& o, bool have_range) {
  const ExperimentSpec s = make_spec(o, have_range);
  auto file = open_out(o.out);
  const ScanResult r = run_scan(s, file.get());
  print_summary(stderr, r.summaries);
  const auto est = estimate_crossing(r.summaries);
  if (!est) {
    std::fprintf(stderr, "no 0.5 crossing in the c grid\n");
    return kExitNoCrossing;
  }
  const double cs = c_star({s.k, s.ell}).c_star;
  print_kv("estimate", *est);
  print_kv("c_star", cs);
  print_kv("abs_error", std::abs(*est - cs));
  std::printf("within_tol %s\n", std::abs(*est - cs) <= o.tol ? "yes" : "no");
  return 0;
}

int cmd_orient(const Options& o) {
  if (o.ell < 1) throw std::invalid_argument("ell must be >= 1");
  const Hypergraph h = read_hypergraph_file(o.file);
  const OrientResult r = orient(h, o.ell);
  std::string text;
  if (r.orientable) {
    text = "ORIENTABLE\n";
    for (std::size_t e = 0; e < r.assignment.size(); ++e) {
      text += std::to_string(e) + ' ' + std::to_string(r.assignment[e]) + '\n';
    }
  } else {
    text = "NOT_ORIENTABLE\n";
    for (std::size_t i = 0; i < r.witness.vertices.size(); ++i) {
      if (i) text += ' ';
      text += std::to_string(r.witness.vertices[i]);
    }
    text += '\n';
  }
  std::fwrite(text.data(), 1, text.size(), stdout);
  return 0;
}

int cmd_audit(const Options& o, bool single_pair) {
  AuditGrid g;
  g.beta_step = o.beta_step;
  g.q_step = o.beta_step;
  std::vector<AuditReport> rows;
  if (single_pair) {
    rows = full_audit({o.k, o.ell}, g);
  } else {
    for (int k = 3; k <= 10; ++k) {
      for (int l = 2; l <= 10; ++l) {
        const OrientParams p{k, l};
        if (k <= 6 && l <= 4) {
          for (auto& r : full_audit(p, g)) rows.push_back(std::move(r));
        } else {
          for (auto& r : xi_bounds_audit(p)) rows.push_back(std::move(r));
        }
      }
    }
  }
  auto file = open_out(o.out);
  std::ostream& out = file ? static_cast<std::ostream&>(*file) : std::cout;
  out << "claim,k,ell,point,value,bound,pass\n";
  char buf[512];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%d,%d,%s,%.12g,%.12g,%d\n", r.claim.c_str(), r.k, r.ell, r.point.c_str(),
                  r.value, r.bound, r.pass ? 1 : 0);
    out << buf;
  }
  out.flush();
  if (!out) throw std::ios_base::failure("write to audit output failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hypergraph orientability thresholds, simulations and audits"};
  app.set_config("--config", "", "File of 'key = value' lines; command-line flags win");
  app.require_subcommand(1, 1);

  Options o;
  auto* k_opt = app.add_option("--k", o.k, "Edge size")->capture_default_str();
  auto* l_opt = app.add_option("--l", o.ell, "Capacity per vertex")->capture_default_str();
  app.add_option("--c", o.c, "Edge densities (space or comma separated)")->delimiter(',');
  auto* cmin_opt = app.add_option("--c-min", o.c_min, "First grid density");
  auto* cmax_opt = app.add_option("--c-max", o.c_max, "Last grid density");
  app.add_option("--c-step", o.c_step, "Grid step")->capture_default_str();
  app.add_option("--n", o.n, "Vertex count")->capture_default_str();
  app.add_option("--trials", o.trials, "Trials per density")->capture_default_str();
  app.add_option("--seed", o.seed, "Base seed")->capture_default_str();
  app.add_option("--model", o.model, "uniform | binomial | poisson-cloning")->capture_default_str();
  app.add_option("--out", o.out, "Output CSV path (default stdout)");
  app.add_option("--tol", o.tol, "Tolerance reported by estimate")->capture_default_str();
  app.add_flag("--timing", o.timing, "Record wall-clock elapsed_ms (breaks byte-identical reruns)");
  app.add_option("--threads", o.threads, "Worker threads for scan and estimate")->capture_default_str();
  app.add_option("--beta-step", o.beta_step, "Audit grid step in beta and q")->capture_default_str();

  auto* threshold = app.add_subcommand("threshold", "xi*, c*, and the core-emergence threshold");
  auto* predict = app.add_subcommand("predict-core", "Predicted (ell+1)-core size at density c");
  auto* scan = app.add_subcommand("scan", "Monte Carlo orientability over a c grid, CSV records");
  auto* estimate = app.add_subcommand("estimate", "Locate the 0.5 crossing of the orientable fraction");
  auto* orient_cmd = app.add_subcommand("orient", "Orient a hypergraph file");
  orient_cmd->add_option("file", o.file, "Hypergraph text file")->required();
  auto* audit = app.add_subcommand("audit", "Evaluate the analytic bounds on grids, CSV output");
  for (auto* sub : {threshold, predict, scan, estimate, orient_cmd, audit}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const bool have_range = cmin_opt->count() > 0 && cmax_opt->count() > 0;
  try {
    if (*threshold) return cmd_threshold(o);
    if (*predict) return cmd_predict_core(o);
    if (*scan) return cmd_scan(o, have_range);
    if (*estimate) return cmd_estimate(o, have_range);
    if (*orient_cmd) return cmd_orient(o);
    if (*audit) return cmd_audit(o, k_opt->count() > 0 || l_opt->count() > 0);
  } catch (const std::ios_base::failure& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    // Malformed hypergraph files land here.
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kExitIo;
  }
  return kExitUsage;
}
