#include "horient/numeric_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace horient {
namespace {

constexpr double kTailStop = 1e-20;

void check_poisson_param(double x, const char* who) {
  if (!(x >= 0.0) || x > kMaxPoissonParam) {
    throw std::domain_error(std::string(who) + ": Poisson parameter " + std::to_string(x) +
                            " outside [0, 500]");
  }
}

void check_params(const TruncPoisParams& p, const char* who) {
  if (!(p.lambda > 0.0) || p.lambda > kMaxPoissonParam) {
    throw std::domain_error(std::string(who) + ": lambda must lie in (0, 500]");
  }
  if (p.ell < 1) throw std::domain_error(std::string(who) + ": ell must be >= 1");
}

// ln Pr[Po(x) = j] for x > 0.
double log_poisson_pmf(double x, int j) {
  return -x + j * std::log(x) - std::lgamma(static_cast<double>(j) + 1.0);
}

// sum_{i>=0} x^i / ((y+1)...(y+i)), i.e. Q(x, y) / Pr[Po(x) = y]. Converges
// geometrically once the running index passes x.
double tail_over_pmf(double x, int y) {
  double sum = 1.0;
  double term = 1.0;
  for (long i = 1;; ++i) {
    term *= x / static_cast<double>(y + i);
    sum += term;
    if (term < kTailStop * sum && static_cast<double>(y + i) > x) break;
  }
  return sum;
}

}  // namespace

double tail_pmf_ratio(double x, int y) {
  check_poisson_param(x, "tail_pmf_ratio");
  if (y < 0 || y > kMaxTailCutoff) throw std::domain_error("tail_pmf_ratio: cutoff out of range");
  return tail_over_pmf(x, y);
}

double log_q_tail(double x, int y) {
  check_poisson_param(x, "log_q_tail");
  if (!(x > 0.0)) throw std::domain_error("log_q_tail: x must be positive");
  if (y < 1 || y > kMaxTailCutoff) throw std::domain_error("log_q_tail: cutoff out of range");
  if (static_cast<double>(y) > x) return log_poisson_pmf(x, y) + std::log(tail_over_pmf(x, y));
  return std::log(q_tail(x, y));
}

double poisson_pmf(double x, int j) {
  check_poisson_param(x, "poisson_pmf");
  if (j < 0) return 0.0;
  if (x == 0.0) return j == 0 ? 1.0 : 0.0;
  if (j <= 2000) {
    double term = std::exp(-x);
    for (int i = 1; i <= j; ++i) term *= x / i;
    return term;
  }
  return std::exp(log_poisson_pmf(x, j));
}

double q_tail(double x, int y) {
  check_poisson_param(x, "q_tail");
  if (y < 1 || y > kMaxTailCutoff) {
    throw std::domain_error("q_tail: cutoff " + std::to_string(y) + " outside [1, 10^6]");
  }
  if (x == 0.0) return 0.0;
  if (static_cast<double>(y) > x) {
    // Upper tail directly: no cancellation, terms decay geometrically.
    const double first = poisson_pmf(x, y);
    if (first == 0.0) return 0.0;
    return first * tail_over_pmf(x, y);
  }
  // Here Pr[Po(x) < y] is at most about one half.
  double term = std::exp(-x);
  double lower = 0.0;
  for (int j = 0; j < y; ++j) {
    lower += term;
    term *= x / (j + 1);
  }
  return 1.0 - lower;
}

double trunc_pois_mean(double x, int ell) {
  check_poisson_param(x, "trunc_pois_mean");
  if (ell < 1) throw std::domain_error("trunc_pois_mean: ell must be >= 1");
  if (x == 0.0) return static_cast<double>(ell + 1);
  // x Q(x,ell)/Q(x,ell+1) = x + x Pr[Po=ell]/Q(x,ell+1), and the second ratio is
  // 1 / sum_{i>=1} x^i/((ell+1)...(ell+i)).
  const double s = tail_over_pmf(x, ell) - 1.0;
  return x + x / s;
}

double trunc_pois_mean(const TruncPoisParams& p) {
  check_params(p, "trunc_pois_mean");
  return trunc_pois_mean(p.lambda, p.ell);
}

double solve_tilt(double z, const TruncPoisParams& p) {
  if (p.ell < 1) throw std::domain_error("solve_tilt: ell must be >= 1");
  const double floor_z = static_cast<double>(p.ell + 1);
  if (!(z > floor_z)) {
    throw std::domain_error("solve_tilt: z must exceed ell + 1");
  }
  if (z > trunc_pois_mean(kMaxPoissonParam, p.ell)) {
    throw std::domain_error("solve_tilt: z beyond the kernel's parameter cap");
  }

  double lo = 1e-9;
  while (trunc_pois_mean(lo, p.ell) >= z) {
    lo /= 16.0;
    if (lo < 1e-300) throw std::domain_error("solve_tilt: z too close to ell + 1");
  }
  double hi = std::min(std::max(z, 1.0), kMaxPoissonParam);
  while (trunc_pois_mean(hi, p.ell) <= z) hi = std::min(2.0 * hi, kMaxPoissonParam);

  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (trunc_pois_mean(mid, p.ell) < z) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double rate_fn_boundary(const TruncPoisParams& p) {
  check_params(p, "rate_fn_boundary");
  const int s = p.ell + 1;
  return std::lgamma(static_cast<double>(s) + 1.0) - s * std::log(p.lambda) + p.lambda +
         log_q_tail(p.lambda, s);
}

RateFnPoint rate_fn(double z, const TruncPoisParams& p) {
  check_params(p, "rate_fn");
  const double floor_z = static_cast<double>(p.ell + 1);
  if (!(z >= floor_z)) throw std::domain_error("rate_fn: z must be >= ell + 1");
  if (z == floor_z) return {z, 0.0, rate_fn_boundary(p)};

  const double t = solve_tilt(z, p);
  const int s = p.ell + 1;
  const double value = z * (std::log(t) - std::log(p.lambda)) - t + p.lambda - log_q_tail(t, s) +
                       log_q_tail(p.lambda, s);
  return {z, t, value};
}

double entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("entropy: argument outside [0, 1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log(x) - (1.0 - x) * std::log1p(-x);
}

}  // namespace horient
