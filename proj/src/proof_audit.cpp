#include "horient/proof_audit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "horient/numeric_kernel.hpp"

namespace horient {
namespace {

constexpr double kWindowSlack = 1e-12;

double kl(const OrientParams& p) { return static_cast<double>(p.k) * p.ell; }
double log_2k_minus_1(int k) { return std::log(std::ldexp(1.0, k) - 1.0); }

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}
std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::vector<double> beta_values(const AuditGrid& g) {
  if (!(g.beta_step > 0.0) || !(g.q_step > 0.0)) throw std::invalid_argument("audit grid steps must be positive");
  std::vector<double> out;
  for (long i = 0;; ++i) {
    const double b = g.beta_min + static_cast<double>(i) * g.beta_step;
    if (b > g.beta_max + 1e-12) break;
    out.push_back(std::min(b, g.beta_max));
  }
  return out;
}

std::string grid_text(const AuditGrid& g) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "beta=[%g,%g] step %g; q step %g", g.beta_min, g.beta_max, g.beta_step, g.q_step);
  return buf;
}

// Tracks the largest value seen and the first point where `ok` failed.
struct Tracker {
  AuditReport r;
  bool any = false;

  Tracker(std::string claim, const OrientParams& p, std::string grid, double bound) {
    r.claim = std::move(claim);
    r.k = p.k;
    r.ell = p.ell;
    r.grid = std::move(grid);
    r.bound = bound;
  }
  void add(double value, bool ok, const std::string& point) {
    ++r.points;
    if (!any || value > r.value) {
      r.value = value;
      if (!r.first_violation) r.point = point;
      any = true;
    }
    if (!ok && !r.first_violation) {
      r.first_violation = point;
      r.point = point;
    }
  }
  AuditReport done() {
    r.pass = any && !r.first_violation;
    return r;
  }
};

AuditReport single(std::string claim, const OrientParams& p, double value, double bound, bool pass,
                   std::string point = "-") {
  AuditReport r;
  r.claim = std::move(claim);
  r.k = p.k;
  r.ell = p.ell;
  r.grid = "single point";
  r.point = std::move(point);
  r.value = value;
  r.bound = bound;
  r.points = 1;
  r.pass = pass;
  if (!pass) r.first_violation = r.point;
  return r;
}

}  // namespace

double q_max(const OrientParams& p, double beta) { return 1.0 - (p.ell + 1) * (1.0 - beta) / kl(p); }

bool in_window(const OrientParams& p, double beta, double q) {
  if (!(beta >= 0.6 && beta < 1.0)) return false;
  return q >= beta - kWindowSlack && q <= q_max(p, beta) + kWindowSlack;
}

double f_value(const OrientParams& p, double beta, double q) {
  return f_value(p, solve_xi_star(p), beta, q);
}

double f_value(const OrientParams& p, double xi_star, double beta, double q) {
  validate(p);
  if (!in_window(p, beta, q)) {
    throw std::domain_error(fmt("f_value: (beta, q) = (%.17g, %.17g) outside the admissible window", beta, q));
  }
  q = std::clamp(q, beta, q_max(p, beta));
  const TruncPoisParams tp{xi_star, p.ell};
  const double z = kl(p) * (1.0 - q) / (1.0 - beta);
  const double floor_z = p.ell + 1.0;
  const double rate = z <= floor_z * (1.0 + 1e-13) ? rate_fn_boundary(tp) : rate_fn(z, tp).value;
  return (p.ell + 1) * entropy(beta) + p.ell * (1.0 - beta) * log_2k_minus_1(p.k) - kl(p) * entropy(q) -
         (1.0 - beta) * rate;
}

double f_diagonal(const OrientParams& p, double beta) {
  return -(kl(p) - p.ell - 1) * entropy(beta) + p.ell * (1.0 - beta) * log_2k_minus_1(p.k);
}

double df_dq(const OrientParams& p, double xi_star, double beta, double q) {
  if (!in_window(p, beta, q) || q >= q_max(p, beta)) throw std::domain_error("df_dq: q outside the open window");
  const double z = kl(p) * (1.0 - q) / (1.0 - beta);
  const double hq = solve_tilt(z, {xi_star, p.ell});
  return kl(p) * (-std::log((1.0 - q) / q) + std::log(hq / xi_star));
}

double critical_q(const OrientParams& p, double xi_star, double beta) {
  validate(p);
  if (!(beta >= 0.6 && beta < 1.0)) throw std::domain_error("critical_q: beta outside [0.6, 1)");
  const TruncPoisParams tp{xi_star, p.ell};
  // g(q) = T_{z(q)} - xi*(1-q)/q is positive at q = beta and tends to a negative limit at q_max.
  auto g = [&](double q) {
    const double z = kl(p) * (1.0 - q) / (1.0 - beta);
    return solve_tilt(z, tp) - xi_star * (1.0 - q) / q;
  };
  double lo = beta;
  double hi = q_max(p, beta);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double f_critical_closed(const OrientParams& p, double xi_star, double beta, double q0) {
  const double L = kl(p);
  return (p.ell + 1) * entropy(beta) + L * std::log(q0) +
         p.ell * (1.0 - beta) * (log_2k_minus_1(p.k) + std::log((1.0 - q0) / q0)) +
         (1.0 - beta) * std::log((1.0 - beta) * xi_gap(p, xi_star) / (L * q0 - xi_star * (1.0 - beta)));
}

double h_value(const OrientParams& p, double beta) { return h_value(p, solve_xi_star(p), beta); }

double h_value(const OrientParams& p, double xi_star, double beta) {
  validate(p);
  if (!(beta >= 0.6 && beta <= 1.0)) throw std::domain_error("h_value: beta outside [0.6, 1]");
  const double L = kl(p);
  const double s = 1.0 - beta;
  const double inner_den = L - (1.0 + p.ell + xi_star) * s;
  if (!(inner_den > 0.0)) throw std::domain_error("h_value: nonpositive denominator");
  const double first = -(p.ell + 1) * beta * std::log(beta);
  const double middle =
      s * (p.ell * (log_2k_minus_1(p.k) + std::log((p.ell + 1.0) / (L - (p.ell + 1) * s))) +
           std::log(xi_gap(p, xi_star) / inner_den));
  const double last = L * std::log1p(-(p.ell + 1) * s / L);
  return first + middle + last;
}

double e_kl(const OrientParams& p) { return e_kl(p, solve_xi_star(p)); }

double e_kl(const OrientParams& p, double xi) {
  const double gap = xi_gap(p, xi);
  return 1.0 / xi - gap / xi + gap / (xi * p.k);
}

double first_moment_exponent(int k, int ell, double u) {
  if (k < 1 || ell < 1) throw std::domain_error("first_moment_exponent: k and ell must be positive");
  if (!(u > 0.0 && u <= 0.6)) throw std::domain_error("first_moment_exponent: u outside (0, 0.6]");
  return (ell + 1) * entropy(u) + static_cast<double>(k) * ell * u * std::log(u);
}

double t_kl(const OrientParams& p) {
  const double L = kl(p);
  const double tail = -std::expm1(-std::pow(L - p.ell + 0.64, 2) / (2.0 * L - 0.72));
  return std::pow(1.0 - 0.36 / L, p.ell) / tail;
}

namespace {

double deficit(const OrientParams& p, double prefactor_exponent) {
  const double L = kl(p);
  const double tail = -std::expm1(-std::pow(L - p.ell + 0.64, 2) / (2.0 * L - 0.72));
  const double log_term =
      -prefactor_exponent + std::log(L) + p.ell * std::log(L - 0.36) - std::lgamma(p.ell + 1.0);
  return std::exp(log_term) / tail;
}

}  // namespace

double xi_lower_deficit_stated(const OrientParams& p) { return deficit(p, kl(p)); }

double xi_lower_deficit_derived(const OrientParams& p) { return deficit(p, kl(p) - 0.36); }

double xi_lower_deficit_t(const OrientParams& p) {
  const double L = kl(p);
  return t_kl(p) * std::exp(-L + (p.ell + 1) * std::log(L) - std::lgamma(p.ell + 1.0));
}

double xi_lower_bound_stated(const OrientParams& p) { return kl(p) - xi_lower_deficit_stated(p); }

double xi_lower_bound_derived(const OrientParams& p) { return kl(p) - xi_lower_deficit_derived(p); }

bool gap_019_claimed(const OrientParams& p) { return (p.k == 3 && p.ell >= 4) || p.k >= 4; }

std::vector<AuditReport> xi_bounds_audit(const OrientParams& p) {
  validate(p);
  const double xi = solve_xi_star(p);
  const double gap = xi_gap(p, xi);
  // Gap rows report value = k ell - xi*.
  std::vector<AuditReport> out;
  out.push_back(single("xi_below_kl", p, gap, 0.0, gap > 0.0));
  out.push_back(single("gap_036", p, gap, 0.36, gap < 0.36));
  if (gap_019_claimed(p)) out.push_back(single("gap_019", p, gap, 0.19, gap < 0.19));
  const double e = e_kl(p, xi);
  out.push_back(single("ekl_077", p, e * xi, 0.77, e * xi > 0.77));
  out.push_back(single("ekl_positive", p, e, 0.0, e > 0.0));

  // A lower bound xi* > k ell - D holds iff k ell - xi* < D; bound = D.
  out.push_back(single("xi_lower_stated", p, gap, xi_lower_deficit_stated(p), gap < xi_lower_deficit_stated(p)));
  out.push_back(single("xi_lower_t", p, gap, xi_lower_deficit_t(p), gap < xi_lower_deficit_t(p)));
  auto derived = single("xi_lower_derived", p, gap, xi_lower_deficit_derived(p), gap < xi_lower_deficit_derived(p));
  derived.informational = true;
  out.push_back(derived);
  return out;
}

AuditReport f_grid_audit(const OrientParams& p, const AuditGrid& g) {
  validate(p);
  const double xi = solve_xi_star(p);
  Tracker t("f_grid_max", p, grid_text(g), 0.0);
  for (double beta : beta_values(g)) {
    const double top = q_max(p, beta);
    auto visit = [&](double q) {
      const double v = f_value(p, xi, beta, q);
      t.add(v, v < 0.0, fmt("beta=%.6g q=%.6g", beta, q));
    };
    for (long j = 0;; ++j) {
      const double q = beta + static_cast<double>(j) * g.q_step;
      if (q >= top) break;
      visit(q);
    }
    visit(top);
  }
  return t.done();
}

AuditReport f_diagonal_audit(const OrientParams& p, const AuditGrid& g) {
  validate(p);
  const double xi = solve_xi_star(p);
  Tracker t("f_diagonal_closed_form", p, grid_text(g), 1e-9);
  for (double beta : beta_values(g)) {
    const double d = std::abs(f_value(p, xi, beta, beta) - f_diagonal(p, beta));
    t.add(d, d <= 1e-9, fmt("beta=%.6g", beta));
  }
  return t.done();
}

AuditReport h_grid_audit(const OrientParams& p, const AuditGrid& g) {
  validate(p);
  const double xi = solve_xi_star(p);
  Tracker t("h_negative", p, grid_text(g), 0.0);
  for (double beta : beta_values(g)) {
    const double v = h_value(p, xi, beta);
    t.add(v, v < 0.0, fmt("beta=%.6g", beta));
  }
  return t.done();
}

AuditReport f_qmax_audit(const OrientParams& p, const AuditGrid& g) {
  validate(p);
  const double xi = solve_xi_star(p);
  Tracker t("f_qmax_negative", p, grid_text(g), 0.0);
  for (double beta : beta_values(g)) {
    const double v = f_value(p, xi, beta, q_max(p, beta));
    t.add(v, v < 0.0, fmt("beta=%.6g", beta));
  }
  return t.done();
}

AuditReport f_critical_audit(const OrientParams& p, const AuditGrid& g) {
  validate(p);
  const double xi = solve_xi_star(p);
  Tracker t("f_critical_closed_form", p, grid_text(g), 1e-8);
  for (double beta : beta_values(g)) {
    const double q0 = critical_q(p, xi, beta);
    const double d = std::abs(f_value(p, xi, beta, q0) - f_critical_closed(p, xi, beta, q0));
    t.add(d, d <= 1e-8, fmt("beta=%.6g q0=%.9g", beta, q0));
  }
  return t.done();
}

AuditReport df_dq_audit(const OrientParams& p, const AuditGrid& g) {
  validate(p);
  const double xi = solve_xi_star(p);
  Tracker t("df_dq_closed_form", p, grid_text(g) + "; 5 interior q per beta", 1e-6);
  for (double beta : beta_values(g)) {
    const double width = q_max(p, beta) - beta;
    if (width < 1e-3) continue;
    // f''' grows like width^-3 near q_max, so the step scales with the window.
    const double h = 1e-5 * width;
    for (int j = 1; j <= 5; ++j) {
      const double q = beta + width * (0.1 + 0.8 * (j - 1) / 4.0);
      const double fd = (f_value(p, xi, beta, q + h) - f_value(p, xi, beta, q - h)) / (2.0 * h);
      const double d = std::abs(fd - df_dq(p, xi, beta, q));
      t.add(d, d <= 1e-6, fmt("beta=%.6g q=%.6g", beta, q));
    }
  }
  return t.done();
}

AuditReport h_slope_audit(const OrientParams& p) {
  validate(p);
  const double xi = solve_xi_star(p);
  Tracker t("h_slope_negative", p, "eps=0.01..0.30 step 0.01", 0.0);
  for (int i = 1; i <= 30; ++i) {
    const double eps = 0.01 * i;
    const double v = h_value(p, xi, 1.0 - eps) / eps;
    t.add(v, v < 0.0, fmt("eps=%.2f", eps));
  }
  return t.done();
}

std::vector<AuditReport> window_constant_audit(const OrientParams& p, const AuditGrid& g) {
  validate(p);
  Tracker t("q_minus_beta_04", p, grid_text(g), 0.4);
  for (double beta : beta_values(g)) {
    const double v = q_max(p, beta) - beta;
    t.add(v, v < 0.4, fmt("beta=%.6g", beta));
  }
  const double c = entropy(0.99) - log_2k_minus_1(p.k) / p.k + 0.52;
  return {t.done(), single("entropy_099_margin", p, c, -0.072, c < -0.072)};
}

AuditReport f_06_audit(const OrientParams& p) {
  const double v = f_value(p, 0.6, 0.6);
  return single("f_06_06", p, v, -0.24, v < -0.24, "beta=0.6 q=0.6");
}

std::optional<AuditReport> first_moment_audit(const OrientParams& p) {
  double bound = 0.0;
  if (p.k == 4 && p.ell == 2) {
    bound = -0.44;
  } else if (p.k == 3 && p.ell == 3) {
    bound = -0.04;
  } else {
    return std::nullopt;
  }
  const double v = first_moment_exponent(p.k, p.ell, 0.6);
  return single("first_moment_06", p, v, bound, v <= bound, "u=0.6");
}

std::vector<AuditReport> full_audit(const OrientParams& p, const AuditGrid& g) {
  std::vector<AuditReport> out = xi_bounds_audit(p);
  out.push_back(f_grid_audit(p, g));
  out.push_back(f_diagonal_audit(p, g));
  out.push_back(h_grid_audit(p, g));
  out.push_back(f_qmax_audit(p, g));
  out.push_back(f_critical_audit(p, g));
  out.push_back(df_dq_audit(p, g));
  out.push_back(h_slope_audit(p));
  for (auto& r : window_constant_audit(p, g)) out.push_back(std::move(r));
  if (p.k == 3 && p.ell == 2) out.push_back(f_06_audit(p));
  if (auto r = first_moment_audit(p)) out.push_back(*r);
  return out;
}

}  // namespace horient
