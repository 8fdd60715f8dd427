#include "horient/hypergraph_gen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace horient {
namespace {

constexpr long kMaxConsecutiveRejections = 1'000'000;
constexpr std::uint64_t kDenseRankLimit = 1u << 22;
constexpr double kMaxExpectedEdges = 1e8;

void check_edge_size(int n, int k) {
  if (k < 3) throw std::invalid_argument("edge size k must be >= 3");
  if (n < k) throw std::invalid_argument("need n >= k");
}

// Exact set of sorted k-subsets. Packs an edge into one word when n^k < 2^64.
class EdgeSet {
 public:
  EdgeSet(int n, int k) : n_(n) {
    const double bits = k * std::log2(static_cast<double>(std::max(n, 2)));
    packed_ = bits < 63.0;
  }
  void reserve(std::size_t m) {
    if (packed_) {
      words_.reserve(m);
    } else {
      strings_.reserve(m);
    }
  }
  // False if already present.
  bool insert(const int* e, int k) {
    if (packed_) {
      std::uint64_t key = 0;
      for (int i = 0; i < k; ++i) key = key * static_cast<std::uint64_t>(n_) + static_cast<std::uint64_t>(e[i]);
      return words_.insert(key).second;
    }
    return strings_.emplace(reinterpret_cast<const char*>(e), sizeof(int) * k).second;
  }

 private:
  int n_;
  bool packed_;
  std::unordered_set<std::uint64_t> words_;
  std::unordered_set<std::string> strings_;
};

// Floyd's algorithm: k distinct values from [0, n), written sorted to out.
void floyd_subset(int n, int k, Rng& rng, int* out) {
  int filled = 0;
  for (int j = n - k; j < n; ++j) {
    const int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(j) + 1));
    const bool seen = std::find(out, out + filled, t) != out + filled;
    out[filled++] = seen ? j : t;
  }
  std::sort(out, out + k);
}

// k-subset of colex rank r, written sorted.
void unrank_colex(std::uint64_t r, int n, int k, int* out) {
  int c = n - 1;
  for (int i = k; i >= 1; --i) {
    while (binomial_coefficient(static_cast<std::uint64_t>(c), static_cast<std::uint64_t>(i)) > r) --c;
    out[i - 1] = c;
    r -= binomial_coefficient(static_cast<std::uint64_t>(c), static_cast<std::uint64_t>(i));
    --c;
  }
}

// C(n,k) saturated at UINT64_MAX instead of throwing.
std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) {
  try {
    return binomial_coefficient(n, k);
  } catch (const std::overflow_error&) {
    return UINT64_MAX;
  }
}

void fill_uniform(Hypergraph& h, std::uint64_t m, Rng& rng) {
  const int n = h.n;
  const int k = h.k;
  const std::uint64_t total = binomial_saturating(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
  if (m > total) throw std::invalid_argument("m exceeds C(n, k)");
  h.ids.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(k), 0);
  if (m == 0) return;

  if (total <= kDenseRankLimit && 2 * m > total) {
    // Dense: distinct ranks by Floyd's algorithm over [0, C(n,k)), then unrank.
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(static_cast<std::size_t>(m));
    std::size_t e = 0;
    for (std::uint64_t j = total - m; j < total; ++j) {
      const std::uint64_t t = rng.below(j + 1);
      const std::uint64_t r = chosen.insert(t).second ? t : j;
      if (r == j) chosen.insert(j);
      unrank_colex(r, n, k, h.ids.data() + e * static_cast<std::size_t>(k));
      ++e;
    }
    return;
  }

  EdgeSet seen(n, k);
  seen.reserve(static_cast<std::size_t>(m));
  long rejections = 0;
  for (std::size_t e = 0; e < m;) {
    int* slot = h.ids.data() + e * static_cast<std::size_t>(k);
    floyd_subset(n, k, rng, slot);
    if (seen.insert(slot, k)) {
      ++e;
      rejections = 0;
    } else if (++rejections >= kMaxConsecutiveRejections) {
      throw std::runtime_error("gen_uniform: too many consecutive duplicate edges");
    }
  }
}

}  // namespace

std::uint64_t binomial_coefficient(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // acc * (n - k + i) / i stays integral at every step.
    acc = acc * (n - k + i) / i;
    if (acc > static_cast<unsigned __int128>(INT64_MAX)) {
      throw std::overflow_error("binomial coefficient exceeds 63 bits");
    }
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t sample_binomial(std::uint64_t trials, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial p outside [0, 1]");
  if (trials == 0 || p == 0.0) return 0;
  if (p == 1.0) return trials;
  if (p > 0.5) return trials - sample_binomial(trials, 1.0 - p, rng);

  const double mean = static_cast<double>(trials) * p;
  if (mean < 30.0) {
    // Inversion, walking the pmf upward from 0.
    double f = std::exp(static_cast<double>(trials) * std::log1p(-p));
    const double odds = p / (1.0 - p);
    double u = rng.uniform();
    std::uint64_t i = 0;
    while (u > f && i < trials) {
      u -= f;
      f *= static_cast<double>(trials - i) / static_cast<double>(i + 1) * odds;
      ++i;
      if (f == 0.0) break;
    }
    return i;
  }

  // Geometric skipping: gaps between successes are Geometric(p).
  const double log_q = std::log1p(-p);
  const double limit = static_cast<double>(trials);
  double pos = -1.0;
  std::uint64_t count = 0;
  for (;;) {
    pos += 1.0 + std::floor(std::log(rng.uniform_pos()) / log_q);
    if (pos >= limit) break;
    ++count;
  }
  return count;
}

int sample_poisson(double lambda, Rng& rng) {
  if (!(lambda >= 0.0) || lambda > kMaxPoissonParam) {
    throw std::invalid_argument("Poisson parameter outside [0, 500]");
  }
  if (lambda == 0.0) return 0;
  double f = std::exp(-lambda);
  double u = rng.uniform();
  int i = 0;
  const int guard = static_cast<int>(lambda + 60.0 * std::sqrt(lambda) + 100.0);
  while (u > f && i < guard) {
    u -= f;
    ++i;
    f *= lambda / i;
  }
  return i;
}

Hypergraph gen_uniform(int n, std::uint64_t m, int k, const Seed& seed) {
  check_edge_size(n, k);
  Hypergraph h;
  h.n = n;
  h.k = k;
  h.simple = true;
  Rng rng(seed);
  fill_uniform(h, m, rng);
  return h;
}

Hypergraph gen_binomial(int n, double p, int k, const Seed& seed) {
  check_edge_size(n, k);
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  const std::uint64_t total = binomial_coefficient(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
  if (p * static_cast<double>(total) > kMaxExpectedEdges) {
    throw std::invalid_argument("expected edge count above 10^8");
  }
  Hypergraph h;
  h.n = n;
  h.k = k;
  h.simple = true;
  Rng rng(seed);
  const std::uint64_t m = sample_binomial(total, p, rng);
  fill_uniform(h, m, rng);
  return h;
}

Hypergraph gen_cloning(const std::vector<int>& degrees, int k, const Seed& seed) {
  if (k < 3) throw std::invalid_argument("edge size k must be >= 3");
  if (degrees.size() > static_cast<std::size_t>(INT32_MAX)) throw std::invalid_argument("too many vertices");
  std::size_t clones = 0;
  for (int d : degrees) {
    if (d < 0) throw std::invalid_argument("negative degree");
    clones += static_cast<std::size_t>(d);
  }

  Hypergraph h;
  h.n = static_cast<int>(degrees.size());
  h.k = k;
  h.simple = false;
  h.ids.reserve(clones);
  for (std::size_t v = 0; v < degrees.size(); ++v) h.ids.insert(h.ids.end(), degrees[v], static_cast<int>(v));

  Rng rng(seed);
  for (std::size_t i = clones; i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(h.ids[i - 1], h.ids[j]);
  }
  const std::size_t rest = clones % static_cast<std::size_t>(k);
  h.ids.resize(clones - rest);
  h.discarded_clones = static_cast<long>(rest);
  for (std::size_t e = 0; e < h.m(); ++e) {
    auto* first = h.ids.data() + e * static_cast<std::size_t>(k);
    std::sort(first, first + k);
  }
  return h;
}

Hypergraph gen_poisson_cloning(int n, double p, int k, const Seed& seed) {
  check_edge_size(n, k);
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  const std::uint64_t total = binomial_coefficient(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
  if (p * static_cast<double>(total) > kMaxExpectedEdges) {
    throw std::invalid_argument("expected edge count above 10^8");
  }
  const double lambda =
      p * static_cast<double>(binomial_coefficient(static_cast<std::uint64_t>(n - 1), static_cast<std::uint64_t>(k - 1)));
  // Degrees and the clone shuffle use separate streams of the same seed.
  Rng rng(seed);
  std::vector<int> degrees(static_cast<std::size_t>(n));
  for (auto& d : degrees) d = sample_poisson(lambda, rng);
  Seed shuffle_seed{rng.next(), seed.stream};
  return gen_cloning(degrees, k, shuffle_seed);
}

std::vector<int> sample_trunc_pois(const TruncPoisParams& p, std::size_t count, const Seed& seed) {
  if (!(p.lambda > 0.0) || p.lambda > kMaxPoissonParam) {
    throw std::invalid_argument("sample_trunc_pois: lambda must lie in (0, 500]");
  }
  if (p.ell < 1) throw std::invalid_argument("sample_trunc_pois: ell must be >= 1");
  const int floor_value = p.ell + 1;
  const double accept = q_tail(p.lambda, floor_value);
  std::vector<int> out;
  out.reserve(count);
  Rng rng(seed);

  if (accept >= 1e-3) {
    while (out.size() < count) {
      const int x = sample_poisson(p.lambda, rng);
      if (x >= floor_value) out.push_back(x);
    }
    return out;
  }

  // Rejection would be too slow; invert the truncated pmf directly.
  // Pr[X = j | X >= ell+1] = pmf(j) / Q with ratios lambda / j.
  const double f0 = 1.0 / tail_pmf_ratio(p.lambda, floor_value);
  const int guard = floor_value + static_cast<int>(p.lambda + 60.0 * std::sqrt(p.lambda) + 100.0);
  while (out.size() < count) {
    double u = rng.uniform();
    double f = f0;
    int j = floor_value;
    while (u > f && j < guard) {
      u -= f;
      ++j;
      f *= p.lambda / j;
    }
    out.push_back(j);
  }
  return out;
}

}  // namespace horient
