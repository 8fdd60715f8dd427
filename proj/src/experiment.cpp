#include "horient/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "horient/core_orient.hpp"
#include "horient/hypergraph_gen.hpp"
#include "horient/threshold_solver.hpp"

namespace horient {

Model parse_model(const std::string& name) {
  if (name == "uniform") return Model::uniform;
  if (name == "binomial") return Model::binomial;
  if (name == "poisson-cloning") return Model::poisson_cloning;
  throw std::invalid_argument("unknown model '" + name + "'");
}

std::string model_name(Model m) {
  switch (m) {
    case Model::uniform:
      return "uniform";
    case Model::binomial:
      return "binomial";
    case Model::poisson_cloning:
      return "poisson-cloning";
  }
  return "?";
}

void validate(const ExperimentSpec& s) {
  validate(OrientParams{s.k, s.ell});
  if (s.n < s.k) throw std::invalid_argument("n must be >= k");
  if (s.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (s.threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (s.c_grid.empty()) throw std::invalid_argument("empty c grid");
  for (std::size_t i = 0; i < s.c_grid.size(); ++i) {
    if (!(s.c_grid[i] > 0.0) || !std::isfinite(s.c_grid[i])) throw std::invalid_argument("c values must be positive");
    if (i > 0 && !(s.c_grid[i] > s.c_grid[i - 1])) throw std::invalid_argument("c grid must be strictly ascending");
  }
}

std::vector<double> make_grid(double c_min, double c_max, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("c-step must be positive");
  if (!(c_max >= c_min)) throw std::invalid_argument("c-max must be >= c-min");
  std::vector<double> grid;
  for (long i = 0;; ++i) {
    const double c = c_min + static_cast<double>(i) * step;
    if (c > c_max + step * 1e-3) break;
    grid.push_back(c);
  }
  return grid;
}

Hypergraph generate_instance(const ExperimentSpec& s, double c, const Seed& seed) {
  if (s.model == Model::uniform) {
    const auto m = static_cast<std::uint64_t>(std::floor(c * s.n));
    return gen_uniform(s.n, m, s.k, seed);
  }
  const double denom = static_cast<double>(
      binomial_coefficient(static_cast<std::uint64_t>(s.n - 1), static_cast<std::uint64_t>(s.k - 1)));
  const double p = c * s.k / denom;
  if (p > 1.0) throw std::invalid_argument("edge probability c k / C(n-1, k-1) exceeds 1");
  return s.model == Model::binomial ? gen_binomial(s.n, p, s.k, seed) : gen_poisson_cloning(s.n, p, s.k, seed);
}

TrialRecord run_trial(const ExperimentSpec& s, std::size_t c_index, int trial) {
  const auto start = std::chrono::steady_clock::now();
  const Seed seed{s.seed, trial_stream(c_index, trial)};
  const double c = s.c_grid.at(c_index);
  const Hypergraph h = generate_instance(s, c, seed);
  const CoreReport core = peel_core(h, s.ell);
  const OrientResult o = orient_via_core(h, s.ell);

  TrialRecord r;
  r.k = s.k;
  r.ell = s.ell;
  r.model = s.model;
  r.n = s.n;
  r.c = c;
  r.trial = trial;
  r.seed = mix_seed(seed);
  r.orientable = o.orientable;
  r.core_n = static_cast<long long>(core.vertices.size());
  r.core_m = static_cast<long long>(core.edge_indices.size());

  // A core denser than ell rules out an orientation, and an orientation caps the core at ell.
  const bool dense_core = r.core_m > static_cast<long long>(s.ell) * r.core_n;
  if (dense_core && r.orientable) throw std::logic_error("orientable instance with a core denser than ell");
  if (r.core_n > 0 && static_cast<long long>(s.k) * r.core_m < static_cast<long long>(s.ell + 1) * r.core_n) {
    throw std::logic_error("core average degree below ell + 1");
  }
  if (s.timing) {
    r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

std::string csv_header() { return "k,ell,model,n,c,trial,seed,orientable,core_n,core_m,elapsed_ms"; }

std::string csv_line(const TrialRecord& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%d,%d,%s,%d,%.10g,%d,%llu,%d,%lld,%lld,%lld", r.k, r.ell, model_name(r.model).c_str(),
                r.n, r.c, r.trial, static_cast<unsigned long long>(r.seed), r.orientable ? 1 : 0, r.core_n, r.core_m,
                r.elapsed_ms);
  return buf;
}

std::pair<double, double> wilson_interval(long successes, long trials) {
  if (trials <= 0) throw std::invalid_argument("wilson_interval: trials must be positive");
  const double z = 1.959963984540054;
  const double nn = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / nn;
  const double denom = 1.0 + z * z / nn;
  const double centre = (phat + z * z / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / nn + z * z / (4.0 * nn * nn)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::vector<ScanSummary> summarize(const ExperimentSpec& s, const std::vector<TrialRecord>& records) {
  std::vector<ScanSummary> out;
  for (std::size_t i = 0; i < s.c_grid.size(); ++i) {
    ScanSummary sum;
    sum.c = s.c_grid[i];
    double frac_total = 0.0;
    double density_total = 0.0;
    int with_core = 0;
    for (const auto& r : records) {
      if (r.c != sum.c) continue;
      ++sum.trials;
      sum.orientable += r.orientable ? 1 : 0;
      frac_total += static_cast<double>(r.core_n) / r.n;
      if (r.core_n > 0) {
        density_total += static_cast<double>(r.core_m) / static_cast<double>(r.core_n);
        ++with_core;
      }
    }
    if (sum.trials > 0) {
      sum.fraction = static_cast<double>(sum.orientable) / sum.trials;
      std::tie(sum.lo, sum.hi) = wilson_interval(sum.orientable, sum.trials);
      sum.mean_core_frac = frac_total / sum.trials;
    }
    if (with_core > 0) sum.mean_core_density = density_total / with_core;
    out.push_back(sum);
  }
  return out;
}

ScanResult run_scan(const ExperimentSpec& s, std::ostream* csv) {
  validate(s);
  const std::size_t per_c = static_cast<std::size_t>(s.trials);
  const std::size_t total = s.c_grid.size() * per_c;
  std::vector<TrialRecord> records(total);
  std::vector<char> done(total, 0);

  auto emit = [&](const std::string& line) {
    if (!csv) return;
    *csv << line << '\n';
    csv->flush();
    if (!*csv) throw std::ios_base::failure("write to CSV output failed");
  };
  emit(csv_header());

  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(s.threads), total);
  if (workers <= 1) {
    for (std::size_t i = 0; i < total; ++i) {
      records[i] = run_trial(s, i / per_c, static_cast<int>(i % per_c));
      emit(csv_line(records[i]));
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::condition_variable cv;
    std::exception_ptr failure;
    auto work = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= total) return;
        try {
          TrialRecord r = run_trial(s, i / per_c, static_cast<int>(i % per_c));
          std::lock_guard lock(mu);
          records[i] = r;
          done[i] = 1;
        } catch (...) {
          std::lock_guard lock(mu);
          if (!failure) failure = std::current_exception();
          next.store(total);
        }
        cv.notify_all();
      }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    std::exception_ptr write_failure;
    // Write in (c, trial) order whatever the completion order.
    for (std::size_t i = 0; i < total; ++i) {
      std::unique_lock lock(mu);
      cv.wait(lock, [&] { return done[i] || failure; });
      if (failure) break;
      const std::string line = csv_line(records[i]);
      lock.unlock();
      try {
        emit(line);
      } catch (...) {
        write_failure = std::current_exception();
        next.store(total);
        break;
      }
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    if (write_failure) std::rethrow_exception(write_failure);
  }

  ScanResult result;
  result.summaries = summarize(s, records);
  result.records = std::move(records);
  return result;
}

std::optional<double> estimate_crossing(const std::vector<ScanSummary>& summaries) {
  for (std::size_t i = 0; i + 1 < summaries.size(); ++i) {
    const double f0 = summaries[i].fraction;
    const double f1 = summaries[i + 1].fraction;
    if (f0 >= 0.5 && f1 < 0.5) {
      const double c0 = summaries[i].c;
      const double c1 = summaries[i + 1].c;
      return c0 + (f0 - 0.5) / (f0 - f1) * (c1 - c0);
    }
  }
  return std::nullopt;
}

}  // namespace horient
