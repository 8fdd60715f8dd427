#pragma once

#include <cstdint>

namespace horient {

/// Edge size k >= 3 and capacity ell >= 2.
struct OrientParams {
  int k = 3;
  int ell = 2;
};

/// Throws std::invalid_argument unless k >= 3, ell >= 2 and k*ell <= 500
/// (xi* sits just below k*ell and the kernel caps Poisson parameters at 500).
void validate(const OrientParams& p);

struct ThresholdResult {
  double xi_star = 0.0;
  double c_star = 0.0;
  double residual_xi = 0.0;  // |xi Q(xi,ell)/Q(xi,ell+1) - k ell|
  double gap = 0.0;          // k ell - xi*, see xi_gap
  double lambda_core = 0.0;  // min_x x / Q(x,ell)^{k-1}
  double lambda_argmin = 0.0;
  int iterations = 0;        // bisection steps spent on xi_star
};

/// Predicted (ell+1)-core of the random hypergraph at edge density c.
struct CorePrediction {
  bool exists = false;
  double xi = 0.0;      // x_bar * c * k
  double x_bar = 0.0;   // largest root of x = Q(x c k, ell)^{k-1}
  double n_frac = 0.0;  // core vertices per vertex
  double m_per_n = 0.0; // core edges per vertex
  double density = 0.0; // core edges per core vertex
  double residual = 0.0;
  long iterations = 0;
  bool verified_largest = false;
};

double solve_xi_star(const OrientParams& p);
/// Same, also reporting the iteration count and residual.
double solve_xi_star(const OrientParams& p, int& iterations, double& residual);

/// k ell - xi evaluated as xi Pr[Po(xi)=ell] / Q(xi,ell+1), which equals k ell - xi at
/// the root and stays accurate once xi* rounds to k ell (large k ell).
double xi_gap(const OrientParams& p, double xi);

ThresholdResult c_star(const OrientParams& p);

/// Core-emergence threshold lambda_{k,ell+1} and its minimiser.
double lambda_core_threshold(const OrientParams& p);
double lambda_core_threshold(const OrientParams& p, double& argmin);

/// F(x) = x / Q(x, ell)^{k-1}.
double core_map(const OrientParams& p, double x);

CorePrediction core_prediction(const OrientParams& p, double c);

}  // namespace horient
