#pragma once

// Scalar special functions around the Poisson upper tail and its
// (ell+1)-truncated variant. Every function here is pure.

namespace horient {

/// Largest Poisson parameter accepted by the kernel.
inline constexpr double kMaxPoissonParam = 500.0;
/// Largest tail cutoff accepted by q_tail.
inline constexpr int kMaxTailCutoff = 1'000'000;

/// Poisson(lambda) conditioned on being at least ell + 1.
struct TruncPoisParams {
  double lambda = 0.0;
  int ell = 1;
};

struct RateFnPoint {
  double z = 0.0;
  double t_z = 0.0;  // tilt solving z = T Q(T,ell) / Q(T,ell+1)
  double value = 0.0;
};

/// Q(x, y) = Pr[Po(x) >= y] = 1 - e^{-x} sum_{j<y} x^j / j!.
///
/// Throws std::domain_error unless 0 <= x <= 500 and 1 <= y <= 10^6.
double q_tail(double x, int y);

/// Pr[Po(x) = j].
double poisson_pmf(double x, int j);

/// Q(x, y) / Pr[Po(x) = y] = sum_{i>=0} x^i / ((y+1)...(y+i)); increasing in x.
double tail_pmf_ratio(double x, int y);

/// ln Q(x, y) for x > 0, safe where Q itself would underflow.
double log_q_tail(double x, int y);

/// g(x) = x Q(x, ell) / Q(x, ell + 1), the mean of the (ell+1)-truncated
/// Poisson with parameter x. Strictly increasing, tends to ell + 1 as x -> 0.
double trunc_pois_mean(double x, int ell);
double trunc_pois_mean(const TruncPoisParams& p);

/// Unique T > 0 with trunc_pois_mean(T, ell) = z. Requires z > ell + 1.
double solve_tilt(double z, const TruncPoisParams& p);

/// Large-deviation rate function of the truncated Poisson sum at z > ell+1.
/// z == ell + 1 is routed to rate_fn_boundary.
RateFnPoint rate_fn(double z, const TruncPoisParams& p);

/// I(ell+1) = ln (ell+1)! - (ell+1) ln lambda + lambda + ln Q(lambda, ell+1),
/// which is -ln Pr[X = ell + 1] for the truncated variable X.
double rate_fn_boundary(const TruncPoisParams& p);

/// Natural-log binary entropy; 0 at the endpoints.
double entropy(double x);

}  // namespace horient
