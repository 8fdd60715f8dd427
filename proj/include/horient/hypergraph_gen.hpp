#pragma once

#include <cstdint>
#include <vector>

#include "horient/hypergraph.hpp"
#include "horient/numeric_kernel.hpp"
#include "horient/rng.hpp"

namespace horient {

/// C(n, k) exactly. Throws std::overflow_error if it does not fit in 63 bits.
std::uint64_t binomial_coefficient(std::uint64_t n, std::uint64_t k);

/// m distinct k-subsets of [0, n), uniform over simple hypergraphs with m edges.
/// Each edge is stored sorted.
Hypergraph gen_uniform(int n, std::uint64_t m, int k, const Seed& seed);

/// Each k-subset independently with probability p (edge count ~ Binomial(C(n,k), p)).
Hypergraph gen_binomial(int n, double p, int k, const Seed& seed);

/// Configuration model: degrees[v] clones of v, shuffled, grouped into k-blocks.
/// A trailing remainder of fewer than k clones is dropped and counted in
/// discarded_clones. Edges may contain repeated vertices.
Hypergraph gen_cloning(const std::vector<int>& degrees, int k, const Seed& seed);

/// i.i.d. Poisson(p C(n-1, k-1)) degrees fed to gen_cloning.
Hypergraph gen_poisson_cloning(int n, double p, int k, const Seed& seed);

/// Draws from Poisson(lambda) conditioned on >= ell + 1.
std::vector<int> sample_trunc_pois(const TruncPoisParams& p, std::size_t count, const Seed& seed);

/// Building blocks, exposed for tests.
std::uint64_t sample_binomial(std::uint64_t trials, double p, Rng& rng);
int sample_poisson(double lambda, Rng& rng);

}  // namespace horient
