#include "horient/threshold_solver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "horient/numeric_kernel.hpp"

namespace horient {
namespace {

constexpr long kMaxFixedPointSteps = 1'000'000;

// ln F(x) = ln x - (k-1) ln Q(x, ell).
double log_core_map(const OrientParams& p, double x) {
  return std::log(x) - (p.k - 1) * log_q_tail(x, p.ell);
}

// Sign of F'(x): Q(x,ell) - (k-1) x Pr[Po(x)=ell-1] has the sign of
// tail_pmf_ratio(x, ell) - ell (k-1), which is increasing in x.
double core_map_slope_sign(const OrientParams& p, double x) {
  return tail_pmf_ratio(x, p.ell) - static_cast<double>(p.ell) * (p.k - 1);
}

}  // namespace

void validate(const OrientParams& p) {
  if (p.k < 3) throw std::invalid_argument("k must be >= 3, got " + std::to_string(p.k));
  if (p.ell < 2) throw std::invalid_argument("ell must be >= 2, got " + std::to_string(p.ell));
  if (p.k * p.ell > 500) throw std::invalid_argument("k*ell must be <= 500");
}

double solve_xi_star(const OrientParams& p, int& iterations, double& residual) {
  validate(p);
  const double target = static_cast<double>(p.k) * p.ell;
  double lo = 1e-9;
  double hi = target;
  while (trunc_pois_mean(hi, p.ell) <= target) hi *= 2.0;

  iterations = 0;
  while (iterations < 400) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    ++iterations;
    if (trunc_pois_mean(mid, p.ell) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // Pick whichever endpoint has the smaller defect.
  const double r_lo = std::abs(trunc_pois_mean(lo, p.ell) - target);
  const double r_hi = std::abs(trunc_pois_mean(hi, p.ell) - target);
  const double xi = r_lo <= r_hi ? lo : hi;
  residual = std::min(r_lo, r_hi);
  if (residual > 1e-10 * target) {
    throw std::runtime_error("solve_xi_star: residual above tolerance");
  }
  return xi;
}

double solve_xi_star(const OrientParams& p) {
  int iterations = 0;
  double residual = 0.0;
  return solve_xi_star(p, iterations, residual);
}

double core_map(const OrientParams& p, double x) {
  return std::exp(log_core_map(p, x));
}

double lambda_core_threshold(const OrientParams& p, double& argmin) {
  validate(p);
  // Golden-section on ln F over (0, k ell]; the minimiser lies below xi* < k ell.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 1e-6;
  double b = static_cast<double>(p.k) * p.ell;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = log_core_map(p, c);
  double fd = log_core_map(p, d);
  while (b - a > 1e-6 * b) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = log_core_map(p, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = log_core_map(p, d);
    }
  }

  // Refine on the first-order condition, which is monotone.
  double lo = a;
  double hi = b;
  while (core_map_slope_sign(p, lo) > 0.0) lo *= 0.5;
  while (core_map_slope_sign(p, hi) < 0.0) hi *= 2.0;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (core_map_slope_sign(p, mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  argmin = 0.5 * (lo + hi);
  return core_map(p, argmin);
}

double lambda_core_threshold(const OrientParams& p) {
  double argmin = 0.0;
  return lambda_core_threshold(p, argmin);
}

double xi_gap(const OrientParams& p, double xi) {
  validate(p);
  return xi / (tail_pmf_ratio(xi, p.ell) - 1.0);
}

ThresholdResult c_star(const OrientParams& p) {
  ThresholdResult r;
  r.xi_star = solve_xi_star(p, r.iterations, r.residual_xi);
  r.gap = xi_gap(p, r.xi_star);
  r.c_star = r.xi_star / (p.k * std::pow(q_tail(r.xi_star, p.ell), p.k - 1));
  r.lambda_core = lambda_core_threshold(p, r.lambda_argmin);
  return r;
}

CorePrediction core_prediction(const OrientParams& p, double c) {
  validate(p);
  if (!(c > 0.0)) throw std::invalid_argument("core_prediction: c must be positive");
  const double ck = c * p.k;
  if (ck > kMaxPoissonParam) throw std::invalid_argument("core_prediction: c*k exceeds 500");

  CorePrediction out;
  double argmin = 0.0;
  const double lambda = lambda_core_threshold(p, argmin);
  if (ck <= lambda + 1e-12) return out;

  auto step = [&](double x) { return std::pow(q_tail(x * ck, p.ell), p.k - 1); };

  // Monotone iteration from 1 towards the largest fixed point.
  double x = 1.0;
  long n = 0;
  for (; n < kMaxFixedPointSteps; ++n) {
    const double next = step(x);
    if (next > x * (1.0 + 1e-15)) {
      throw std::logic_error("core_prediction: fixed-point iteration is not monotone");
    }
    const bool done = x - next <= 1e-15;
    x = next;
    if (done) break;
  }
  out.iterations = n;

  // Polish on the increasing branch of F: F(xi) = ck with xi in [argmin, x ck].
  double lo = argmin;
  double hi = std::max(x * ck, argmin);
  while (core_map(p, hi) < ck) hi *= 1.0 + 1e-9;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (core_map(p, mid) < ck) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double xi = 0.5 * (lo + hi);

  out.exists = true;
  out.xi = xi;
  out.x_bar = xi / ck;
  out.residual = std::abs(out.x_bar - step(out.x_bar));
  const double probe = out.x_bar + 1e-6;
  out.verified_largest = probe > 1.0 || step(probe) < probe;
  const double q_ell = q_tail(xi, p.ell);
  const double q_next = q_tail(xi, p.ell + 1);
  out.n_frac = q_next;
  out.density = xi * q_ell / (p.k * q_next);
  out.m_per_n = out.n_frac * out.density;
  return out;
}

}  // namespace horient
