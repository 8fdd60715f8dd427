#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "horient/numeric_kernel.hpp"
#include "oracle_values.hpp"

using namespace horient;
using doctest::Approx;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("q_tail basic values") {
  CHECK(q_tail(0.0, 3) == 0.0);
  for (double x : {0.0, 0.1, 1.0, 7.5, 40.0}) CHECK(rel(q_tail(x, 1) + std::exp(-x), 1.0) < 1e-15);
  CHECK(rel(q_tail(6.0, 3), oracle::q_6_3) < 1e-14);
  CHECK(rel(q_tail(6.0, 3), 1.0 - 25.0 * std::exp(-6.0)) < 1e-14);
}

TEST_CASE("q_tail deep tails keep relative accuracy") {
  // Q(1, 30) is dominated by its first term 1/(e 30!).
  const double first = std::exp(-1.0 - std::lgamma(31.0));
  CHECK(rel(q_tail(1.0, 30), first * (1.0 + 1.0 / 31 + 1.0 / (31.0 * 32) + 1.0 / (31.0 * 32 * 33))) < 1e-6);
  // Near 1e-8 where 1 - lower sum would cancel.
  const double q = q_tail(2.0, 14);
  double direct = 0.0, term = std::exp(-2.0);
  for (int j = 1; j <= 60; ++j) {
    term *= 2.0 / j;
    if (j >= 14) direct += term;
  }
  CHECK(rel(q, direct) < 1e-14);
}

TEST_CASE("q_tail domain errors") {
  CHECK_THROWS_AS(q_tail(-1.0, 2), std::domain_error);
  CHECK_THROWS_AS(q_tail(1.0, 0), std::domain_error);
  CHECK_THROWS_AS(q_tail(500.5, 2), std::domain_error);
  CHECK_THROWS_AS(q_tail(1.0, 1'000'001), std::domain_error);
  CHECK_NOTHROW(q_tail(500.0, 1'000'000));
}

TEST_CASE("q_tail monotone in x and y") {
  for (int y = 1; y <= 30; y += 3) {
    double prev = 0.0;
    for (double x = 0.05; x <= 60.0; x += 0.37) {
      const double q = q_tail(x, y);
      CHECK(q > 0.0);
      CHECK(q <= 1.0);
      CHECK(q >= prev);
      prev = q;
    }
  }
  for (double x : {0.5, 3.0, 12.0}) {
    for (int y = 1; y < 20; ++y) CHECK(q_tail(x, y + 1) < q_tail(x, y));
  }
}

TEST_CASE("truncated Poisson mean") {
  CHECK(trunc_pois_mean(1e-8, 2) == Approx(3.0).epsilon(1e-6));
  CHECK(rel(trunc_pois_mean(6.0, 2), oracle::trunc_mean_6_2) < 1e-14);
  CHECK(trunc_pois_mean(5.0, 2) < trunc_pois_mean(6.0, 2));
  CHECK(rel(trunc_pois_mean(TruncPoisParams{6.0, 2}), 6.0 * q_tail(6.0, 2) / q_tail(6.0, 3)) < 1e-13);
  CHECK_THROWS_AS(trunc_pois_mean(TruncPoisParams{0.0, 2}), std::domain_error);
  CHECK_THROWS_AS(trunc_pois_mean(TruncPoisParams{1.0, 0}), std::domain_error);
}

TEST_CASE("g(x) = x Q(x,ell)/Q(x,ell+1) is increasing") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> ux(1e-3, 500.0);
  for (int ell = 1; ell <= 50; ++ell) {
    double prev = 0.0;
    for (double x = 0.01; x <= 500.0; x *= 1.07) {
      const double g = trunc_pois_mean(x, ell);
      CHECK(g > ell + 1.0);
      CHECK(g > prev);
      prev = g;
    }
    for (int i = 0; i < 20; ++i) {
      double a = ux(gen), b = ux(gen);
      if (a > b) std::swap(a, b);
      if (b - a < 1e-9) continue;
      CHECK(trunc_pois_mean(a, ell) < trunc_pois_mean(b, ell));
    }
  }
}

TEST_CASE("solve_tilt") {
  for (double lam : {0.3, 2.0, 6.0, 25.0}) {
    const TruncPoisParams p{lam, 2};
    CHECK(rel(solve_tilt(trunc_pois_mean(lam, 2), p), lam) < 1e-12);
  }
  const TruncPoisParams p{6.0, 2};
  CHECK(rel(solve_tilt(6.0, p), oracle::xi_3_2) < 1e-12);
  const double t = solve_tilt(3.001, p);
  CHECK(t > 0.0);
  CHECK(t < 0.01);
  for (double z : {3.001, 3.5, 6.0, 20.0, 100.0}) {
    const double tz = solve_tilt(z, p);
    CHECK(std::abs(trunc_pois_mean(tz, 2) - z) <= 1e-12 * z);
  }
  CHECK_THROWS_AS(solve_tilt(3.0, p), std::domain_error);
  CHECK_THROWS_AS(solve_tilt(2.0, p), std::domain_error);
}

TEST_CASE("rate function values") {
  const TruncPoisParams p{6.0, 2};
  CHECK(rel(rate_fn_boundary(p), oracle::rate_boundary_6_2) < 1e-13);
  CHECK(rel(rate_fn(4.0, p).value, oracle::rate_6_2_at_4) < 1e-11);
  CHECK(std::abs(rate_fn(trunc_pois_mean(6.0, 2), p).value) < 1e-9);
  CHECK(rate_fn(3.0, p).value == rate_fn_boundary(p));
  CHECK_THROWS_AS(rate_fn(2.99, p), std::domain_error);

  const double i4 = rate_fn(4.0, p).value, i5 = rate_fn(5.0, p).value, i6 = rate_fn(6.0, p).value;
  CHECK(i4 > 0.0);
  CHECK(i5 <= 0.5 * (i4 + i6));
  // Limit from above.
  CHECK(std::abs(rate_fn(3.0 + 1e-6, p).value - rate_fn_boundary(p)) < 1e-4);
}

TEST_CASE("boundary rate is minus log of the truncated pmf at ell+1") {
  for (double lam = 2.0; lam <= 20.0; lam += 1.0) {
    for (int ell = 2; ell <= 6; ++ell) {
      const double pmf = poisson_pmf(lam, ell + 1) / q_tail(lam, ell + 1);
      CHECK(std::abs(std::exp(-rate_fn_boundary({lam, ell})) - pmf) < 1e-12);
    }
  }
}

TEST_CASE("rate function is nonnegative, convex, with derivative ln T_z - ln Lambda") {
  for (double lam : {2.0, 6.0, 13.0}) {
    for (int ell : {2, 4}) {
      const TruncPoisParams p{lam, ell};
      const double mu = trunc_pois_mean(lam, ell);
      const double lo = ell + 1.0 + 0.05;
      const double hi = mu + 5.0;
      const double step = (hi - lo) / 60.0;
      double prev2 = rate_fn(lo, p).value, prev1 = rate_fn(lo + step, p).value;
      for (double z = lo + 2 * step; z <= hi; z += step) {
        const double cur = rate_fn(z, p).value;
        CHECK(cur >= -1e-12);
        CHECK(cur - 2 * prev1 + prev2 >= -1e-8);
        prev2 = prev1;
        prev1 = cur;
        const double h = 1e-5;
        const double fd = (rate_fn(z + h, p).value - rate_fn(z - h, p).value) / (2 * h);
        CHECK(std::abs(fd - (std::log(solve_tilt(z, p)) - std::log(lam))) < 1e-6);
      }
    }
  }
}

TEST_CASE("rate function matches the exact lower tail of a sum at growing s") {
  // Pr[X_1 + ... + X_s <= s z] by convolving the truncated pmf; -ln(.)/s -> I(z).
  const double lam = 6.0;
  const int ell = 2;
  const double z = 4.0;
  const double target = rate_fn(z, {lam, ell}).value;
  std::vector<double> pmf(80, 0.0);
  const double qt = q_tail(lam, ell + 1);
  for (int j = ell + 1; j < 80; ++j) pmf[j] = poisson_pmf(lam, j) / qt;

  auto decay = [&](int s) {
    const int cap = static_cast<int>(s * z);
    std::vector<double> dist(cap + 1, 0.0);
    dist[0] = 1.0;
    for (int i = 0; i < s; ++i) {
      std::vector<double> next(cap + 1, 0.0);
      for (int a = 0; a <= cap; ++a) {
        if (dist[a] == 0.0) continue;
        for (int j = ell + 1; a + j <= cap && j < 80; ++j) next[a + j] += dist[a] * pmf[j];
      }
      dist.swap(next);
    }
    double total = 0.0;
    for (double v : dist) total += v;
    return -std::log(total) / s;
  };
  const double d50 = decay(50);
  const double d200 = decay(200);
  CHECK(std::abs(d50 - target) < 0.1);
  CHECK(std::abs(d200 - target) < std::abs(d50 - target));
}

TEST_CASE("entropy") {
  CHECK(entropy(0.5) == Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(entropy(0.0) == 0.0);
  CHECK(entropy(1.0) == 0.0);
  CHECK(rel(entropy(0.6), oracle::entropy_06) < 1e-14);
  CHECK(entropy(0.6) > 0.6);
  CHECK_THROWS_AS(entropy(-0.1), std::domain_error);
  CHECK_THROWS_AS(entropy(1.1), std::domain_error);
}
