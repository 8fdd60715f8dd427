#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "horient/hypergraph.hpp"
#include "horient/rng.hpp"

namespace horient {

enum class Model { uniform, binomial, poisson_cloning };

/// "uniform", "binomial" or "poisson-cloning"; throws std::invalid_argument otherwise.
Model parse_model(const std::string& name);
std::string model_name(Model m);

struct ExperimentSpec {
  int k = 3;
  int ell = 2;
  Model model = Model::uniform;
  int n = 1000;
  std::vector<double> c_grid;
  int trials = 10;
  std::uint64_t seed = 1;
  bool timing = false;  // when false elapsed_ms is written as 0 so reruns are byte-identical
  int threads = 1;
};

/// Throws std::invalid_argument on an invalid spec (grid empty, unsorted or nonpositive,
/// trials < 1, n < k, bad k / ell).
void validate(const ExperimentSpec& s);

/// c_min, c_min + step, ... up to c_max (inclusive within step/1000), computed by index.
std::vector<double> make_grid(double c_min, double c_max, double step);

/// Instance at density c: m = floor(c n) for the uniform model, p = c k / C(n-1, k-1)
/// for the binomial and Poisson cloning models.
Hypergraph generate_instance(const ExperimentSpec& s, double c, const Seed& seed);

/// Stream index of trial t at grid position i.
inline std::uint64_t trial_stream(std::size_t c_index, int trial) {
  return (static_cast<std::uint64_t>(c_index) << 32) | static_cast<std::uint32_t>(trial);
}

struct TrialRecord {
  int k = 0;
  int ell = 0;
  Model model = Model::uniform;
  int n = 0;
  double c = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;  // mixed 64-bit seed of (base seed, stream)
  bool orientable = false;
  long long core_n = 0;
  long long core_m = 0;
  long long elapsed_ms = 0;
};

TrialRecord run_trial(const ExperimentSpec& s, std::size_t c_index, int trial);

std::string csv_header();
std::string csv_line(const TrialRecord& r);

/// Wilson score interval at 95%.
std::pair<double, double> wilson_interval(long successes, long trials);

struct ScanSummary {
  double c = 0.0;
  int trials = 0;
  int orientable = 0;
  double fraction = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double mean_core_frac = 0.0;  // mean core_n / n
  double mean_core_density = 0.0;  // mean core_m / core_n over trials with a core
};

struct ScanResult {
  std::vector<TrialRecord> records;
  std::vector<ScanSummary> summaries;
};

/// Runs every (c, trial). If csv is given, the header and then each record in (c, trial)
/// order are written and flushed as soon as that prefix is complete.
ScanResult run_scan(const ExperimentSpec& s, std::ostream* csv = nullptr);

std::vector<ScanSummary> summarize(const ExperimentSpec& s, const std::vector<TrialRecord>& records);

/// First grid interval where the fraction drops from >= 0.5 to < 0.5, linearly interpolated.
std::optional<double> estimate_crossing(const std::vector<ScanSummary>& summaries);

}  // namespace horient
