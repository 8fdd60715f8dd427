#include "horient/core_orient.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace horient {

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (d == 0) throw std::domain_error("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

std::string Rational::str() const { return std::to_string(num) + "/" + std::to_string(den); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const __int128 lhs = static_cast<__int128>(a.num) * b.den;
  const __int128 rhs = static_cast<__int128>(b.num) * a.den;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

namespace {

void check_ell(int ell) {
  if (ell < 1) throw std::invalid_argument("ell must be >= 1");
}

// Compressed incidence lists. With distinct = false every occurrence is listed.
struct Incidence {
  std::vector<std::size_t> start;
  std::vector<std::size_t> edge;

  Incidence(const Hypergraph& h, bool distinct) {
    const std::size_t m = h.m();
    start.assign(static_cast<std::size_t>(h.n) + 1, 0);
    auto visit = [&](auto&& fn) {
      for (std::size_t e = 0; e < m; ++e) {
        auto ed = h.edge(e);
        for (int i = 0; i < h.k; ++i) {
          if (distinct && std::find(ed.begin(), ed.begin() + i, ed[i]) != ed.begin() + i) continue;
          fn(e, ed[i]);
        }
      }
    };
    visit([&](std::size_t, int v) { ++start[static_cast<std::size_t>(v) + 1]; });
    std::partial_sum(start.begin(), start.end(), start.begin());
    edge.resize(start.back());
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    visit([&](std::size_t e, int v) { edge[fill[static_cast<std::size_t>(v)]++] = e; });
  }
};

// Distinct members of every edge, flattened.
struct EdgeLinks {
  std::vector<std::size_t> start;
  std::vector<int> vertex;

  explicit EdgeLinks(const Hypergraph& h) {
    const std::size_t m = h.m();
    start.reserve(m + 1);
    vertex.reserve(h.ids.size());
    start.push_back(0);
    for (std::size_t e = 0; e < m; ++e) {
      auto ed = h.edge(e);
      for (int i = 0; i < h.k; ++i) {
        if (std::find(ed.begin(), ed.begin() + i, ed[i]) == ed.begin() + i) vertex.push_back(ed[i]);
      }
      start.push_back(vertex.size());
    }
  }
};

constexpr int kUnreached = std::numeric_limits<int>::max();
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Capacitated Hopcroft-Karp. slot[v*ell + s] for s < load[v] holds the edges on v.
class Matcher {
 public:
  Matcher(const Hypergraph& h, int ell)
      : ell_(static_cast<std::size_t>(ell)),
        links_(h),
        m_(h.m()),
        match_(m_, -1),
        load_(static_cast<std::size_t>(h.n), 0),
        slot_(static_cast<std::size_t>(h.n) * ell_, kNone),
        dist_(m_, kUnreached),
        cv_(m_, 0),
        cs_(m_, 0) {}

  std::size_t run() {
    std::size_t matched = greedy();
    while (matched < m_ && bfs()) {
      std::fill(cv_.begin(), cv_.end(), 0);
      std::fill(cs_.begin(), cs_.end(), 0);
      for (std::size_t e = 0; e < m_; ++e) {
        if (match_[e] < 0 && dist_[e] == 0 && augment(e)) ++matched;
      }
    }
    return matched;
  }

  const std::vector<int>& assignment() const { return match_; }

  // Edges reachable from unmatched edges along alternating paths, and their vertices.
  HallWitness witness() const {
    std::vector<char> seen_edge(m_, 0);
    std::vector<char> seen_vertex(load_.size(), 0);
    std::deque<std::size_t> queue;
    for (std::size_t e = 0; e < m_; ++e) {
      if (match_[e] < 0) {
        seen_edge[e] = 1;
        queue.push_back(e);
      }
    }
    HallWitness w;
    while (!queue.empty()) {
      const std::size_t e = queue.front();
      queue.pop_front();
      w.edges.push_back(e);
      for (std::size_t i = links_.start[e]; i < links_.start[e + 1]; ++i) {
        const auto v = static_cast<std::size_t>(links_.vertex[i]);
        if (seen_vertex[v]) continue;
        seen_vertex[v] = 1;
        w.vertices.push_back(static_cast<int>(v));
        for (std::size_t s = 0; s < load_[v]; ++s) {
          const std::size_t e2 = slot_[v * ell_ + s];
          if (!seen_edge[e2]) {
            seen_edge[e2] = 1;
            queue.push_back(e2);
          }
        }
      }
    }
    std::sort(w.edges.begin(), w.edges.end());
    std::sort(w.vertices.begin(), w.vertices.end());
    return w;
  }

 private:
  void place(std::size_t e, int v) {
    const auto vi = static_cast<std::size_t>(v);
    slot_[vi * ell_ + load_[vi]++] = e;
    match_[e] = v;
  }

  std::size_t greedy() {
    std::size_t matched = 0;
    for (std::size_t e = 0; e < m_; ++e) {
      for (std::size_t i = links_.start[e]; i < links_.start[e + 1]; ++i) {
        const int v = links_.vertex[i];
        if (load_[static_cast<std::size_t>(v)] < ell_) {
          place(e, v);
          ++matched;
          break;
        }
      }
    }
    return matched;
  }

  // Layers of edges from the free ones; true if a vertex with spare capacity is reachable.
  bool bfs() {
    std::deque<std::size_t> queue;
    for (std::size_t e = 0; e < m_; ++e) {
      if (match_[e] < 0) {
        dist_[e] = 0;
        queue.push_back(e);
      } else {
        dist_[e] = kUnreached;
      }
    }
    free_depth_ = kUnreached;
    while (!queue.empty()) {
      const std::size_t e = queue.front();
      queue.pop_front();
      if (dist_[e] + 1 > free_depth_) continue;
      for (std::size_t i = links_.start[e]; i < links_.start[e + 1]; ++i) {
        const auto v = static_cast<std::size_t>(links_.vertex[i]);
        if (load_[v] < ell_) {
          free_depth_ = std::min(free_depth_, dist_[e] + 1);
          continue;
        }
        for (std::size_t s = 0; s < ell_; ++s) {
          const std::size_t e2 = slot_[v * ell_ + s];
          if (dist_[e2] == kUnreached) {
            dist_[e2] = dist_[e] + 1;
            queue.push_back(e2);
          }
        }
      }
    }
    return free_depth_ != kUnreached;
  }

  // Iterative layered DFS from a free edge; shifts edges along the path on success.
  bool augment(std::size_t root) {
    stack_.clear();
    stack_.push_back(root);
    while (!stack_.empty()) {
      const std::size_t e = stack_.back();
      bool descended = false;
      while (!descended && links_.start[e] + cv_[e] < links_.start[e + 1]) {
        const auto v = static_cast<std::size_t>(links_.vertex[links_.start[e] + cv_[e]]);
        if (load_[v] < ell_) {
          if (dist_[e] + 1 == free_depth_) {
            unwind(static_cast<int>(v));
            return true;
          }
        } else {
          while (cs_[e] < ell_) {
            const std::size_t e2 = slot_[v * ell_ + cs_[e]];
            if (dist_[e2] == dist_[e] + 1) {
              stack_.push_back(e2);
              descended = true;
              break;
            }
            ++cs_[e];
          }
          if (descended) break;
        }
        cs_[e] = 0;
        ++cv_[e];
      }
      if (descended) continue;
      dist_[e] = kUnreached;
      stack_.pop_back();
      if (!stack_.empty()) ++cs_[stack_.back()];
    }
    return false;
  }

  // Last edge on the stack takes the free slot on v; each earlier edge takes the slot
  // its successor vacated.
  void unwind(int free_vertex) {
    place(stack_.back(), free_vertex);
    for (std::size_t i = stack_.size() - 1; i-- > 0;) {
      const std::size_t parent = stack_[i];
      const int v = links_.vertex[links_.start[parent] + cv_[parent]];
      slot_[static_cast<std::size_t>(v) * ell_ + cs_[parent]] = parent;
      match_[parent] = v;
    }
  }

  std::size_t ell_;
  EdgeLinks links_;
  std::size_t m_;
  std::vector<int> match_;
  std::vector<std::size_t> load_;
  std::vector<std::size_t> slot_;
  std::vector<int> dist_;
  std::vector<std::size_t> cv_;
  std::vector<std::size_t> cs_;
  std::vector<std::size_t> stack_;
  int free_depth_ = kUnreached;
};

}  // namespace

CoreReport peel_core(const Hypergraph& h, int ell, PeelTrace* trace) {
  check_ell(ell);
  check_hypergraph(h);
  const std::size_t n = static_cast<std::size_t>(h.n);
  const std::size_t m = h.m();
  Incidence inc(h, false);

  std::vector<long long> degree(n);
  for (std::size_t v = 0; v < n; ++v) degree[v] = static_cast<long long>(inc.start[v + 1] - inc.start[v]);
  std::vector<char> removed(n, 0), queued(n, 0), edge_gone(m, 0);
  std::vector<int> removed_by(m, -1);
  std::vector<int> order;

  std::deque<int> queue;
  for (std::size_t v = 0; v < n; ++v) {
    if (degree[v] <= ell) {
      queued[v] = 1;
      queue.push_back(static_cast<int>(v));
    }
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    removed[static_cast<std::size_t>(v)] = 1;
    order.push_back(v);
    for (std::size_t i = inc.start[static_cast<std::size_t>(v)]; i < inc.start[static_cast<std::size_t>(v) + 1]; ++i) {
      const std::size_t e = inc.edge[i];
      if (edge_gone[e]) continue;
      edge_gone[e] = 1;
      removed_by[e] = v;
      for (int u : h.edge(e)) {
        const auto ui = static_cast<std::size_t>(u);
        if (--degree[ui] <= ell && !queued[ui]) {
          queued[ui] = 1;
          queue.push_back(u);
        }
      }
    }
  }

  CoreReport r;
  for (std::size_t v = 0; v < n; ++v) {
    if (!removed[v]) {
      r.vertices.push_back(static_cast<int>(v));
      r.degrees.push_back(static_cast<int>(degree[v]));
    }
  }
  for (std::size_t e = 0; e < m; ++e) {
    if (!edge_gone[e]) r.edge_indices.push_back(e);
  }
  r.density = r.vertices.empty() ? Rational(0, 1)
                                 : Rational(static_cast<long long>(r.edge_indices.size()),
                                            static_cast<long long>(r.vertices.size()));
  if (trace) {
    trace->order = std::move(order);
    trace->removed_by = std::move(removed_by);
  }
  return r;
}

OrientResult orient(const Hypergraph& h, int ell) {
  check_ell(ell);
  check_hypergraph(h);
  Matcher matcher(h, ell);
  OrientResult r;
  r.matched = matcher.run();
  r.orientable = r.matched == h.m();
  if (r.orientable) {
    r.assignment = matcher.assignment();
    if (!is_valid_orientation(h, ell, r.assignment)) {
      throw std::logic_error("orient: matching produced an invalid orientation");
    }
  } else {
    r.witness = matcher.witness();
    if (!is_valid_hall_witness(h, ell, r.witness)) {
      throw std::logic_error("orient: Hall witness fails its inequality");
    }
  }
  return r;
}

OrientResult orient_via_core(const Hypergraph& h, int ell) {
  check_ell(ell);
  PeelTrace trace;
  const CoreReport core = peel_core(h, ell, &trace);

  Hypergraph sub;
  sub.n = h.n;
  sub.k = h.k;
  sub.ids.reserve(core.edge_indices.size() * static_cast<std::size_t>(h.k));
  for (std::size_t e : core.edge_indices) {
    auto ed = h.edge(e);
    sub.ids.insert(sub.ids.end(), ed.begin(), ed.end());
  }
  OrientResult inner = orient(sub, ell);
  if (!inner.orientable) {
    // A core Hall violator is one for the whole graph; translate edge indices back.
    for (auto& e : inner.witness.edges) e = core.edge_indices[e];
    inner.matched += h.m() - core.edge_indices.size();
    return inner;
  }

  OrientResult r;
  r.assignment.assign(h.m(), -1);
  for (std::size_t i = 0; i < core.edge_indices.size(); ++i) {
    r.assignment[core.edge_indices[i]] = inner.assignment[i];
  }
  // Each peeled vertex had degree <= ell when it went and takes only the edges it removed.
  for (std::size_t e = 0; e < h.m(); ++e) {
    if (trace.removed_by[e] >= 0) r.assignment[e] = trace.removed_by[e];
  }
  if (!is_valid_orientation(h, ell, r.assignment)) return orient(h, ell);
  r.orientable = true;
  r.matched = h.m();
  return r;
}

bool is_valid_orientation(const Hypergraph& h, int ell, const std::vector<int>& assignment) {
  if (assignment.size() != h.m()) return false;
  std::vector<int> load(static_cast<std::size_t>(h.n), 0);
  for (std::size_t e = 0; e < h.m(); ++e) {
    const int v = assignment[e];
    auto ed = h.edge(e);
    if (std::find(ed.begin(), ed.end(), v) == ed.end()) return false;
    if (++load[static_cast<std::size_t>(v)] > ell) return false;
  }
  return true;
}

bool is_valid_hall_witness(const Hypergraph& h, int ell, const HallWitness& w) {
  if (w.edges.empty()) return false;
  std::vector<char> in_set(static_cast<std::size_t>(h.n), 0);
  for (int v : w.vertices) {
    if (v < 0 || v >= h.n) return false;
    in_set[static_cast<std::size_t>(v)] = 1;
  }
  std::vector<char> touched(static_cast<std::size_t>(h.n), 0);
  long long touched_count = 0;
  for (std::size_t e : w.edges) {
    if (e >= h.m()) return false;
    for (int v : h.edge(e)) {
      if (!in_set[static_cast<std::size_t>(v)]) return false;
      if (!touched[static_cast<std::size_t>(v)]) {
        touched[static_cast<std::size_t>(v)] = 1;
        ++touched_count;
      }
    }
  }
  return static_cast<long long>(w.edges.size()) > static_cast<long long>(ell) * touched_count;
}

long long edges_inside(const Hypergraph& h, const std::vector<int>& vertices) {
  std::vector<char> in_set(static_cast<std::size_t>(h.n), 0);
  for (int v : vertices) in_set.at(static_cast<std::size_t>(v)) = 1;
  long long count = 0;
  for (std::size_t e = 0; e < h.m(); ++e) {
    auto ed = h.edge(e);
    if (std::all_of(ed.begin(), ed.end(), [&](int v) { return in_set[static_cast<std::size_t>(v)]; })) ++count;
  }
  return count;
}

std::optional<DenseWitness> densest_subset_exact(const Hypergraph& h, int ell) {
  check_ell(ell);
  check_hypergraph(h);
  if (h.n > kMaxExactVertices) throw std::length_error("densest_subset_exact: n above 24");
  const std::size_t full = std::size_t{1} << h.n;

  // count[U] = edges whose vertex set is exactly U, then summed over subsets.
  std::vector<std::int32_t> count(full, 0);
  for (std::size_t e = 0; e < h.m(); ++e) {
    std::size_t mask = 0;
    for (int v : h.edge(e)) mask |= std::size_t{1} << v;
    ++count[mask];
  }
  for (int b = 0; b < h.n; ++b) {
    const std::size_t bit = std::size_t{1} << b;
    for (std::size_t U = 0; U < full; ++U) {
      if (U & bit) count[U] += count[U ^ bit];
    }
  }

  std::size_t best = 0;
  bool found = false;
  Rational best_density;
  for (std::size_t U = 1; U < full; ++U) {
    const long long size = std::popcount(U);
    const long long edges = count[U];
    if (edges < static_cast<long long>(ell) * size) continue;
    const Rational d(edges, size);
    bool better = !found;
    if (found) {
      const auto cmp = d <=> best_density;
      if (cmp > 0) {
        better = true;
      } else if (cmp == 0) {
        const int best_size = std::popcount(best);
        if (size < best_size) {
          better = true;
        } else if (size == best_size) {
          // The set holding the lowest differing id is lexicographically smaller.
          const std::size_t diff = U ^ best;
          better = (U & diff & (~diff + 1)) != 0;
        }
      }
    }
    if (better) {
      best = U;
      best_density = d;
      found = true;
    }
  }
  if (!found) return std::nullopt;

  DenseWitness w;
  for (int v = 0; v < h.n; ++v) {
    if (best & (std::size_t{1} << v)) w.vertices.push_back(v);
  }
  w.edge_count = count[best];
  w.density = best_density;
  w.theta = w.edge_count - static_cast<long long>(ell) * static_cast<long long>(w.vertices.size());
  return w;
}

MaximalDenseCheck maximal_dense_check(const Hypergraph& h, const std::vector<int>& U, int ell) {
  check_ell(ell);
  check_hypergraph(h);
  if (U.empty()) throw std::invalid_argument("maximal_dense_check: U must be nonempty");
  std::vector<char> in_set(static_cast<std::size_t>(h.n), 0);
  for (int v : U) {
    if (v < 0 || v >= h.n) throw std::invalid_argument("maximal_dense_check: vertex out of range");
    if (in_set[static_cast<std::size_t>(v)]) throw std::invalid_argument("maximal_dense_check: repeated vertex");
    in_set[static_cast<std::size_t>(v)] = 1;
  }
  const long long v_u = static_cast<long long>(U.size());
  const long long L = ell;

  // For each outside vertex w, the number of edges inside U + w that contain w.
  std::vector<long long> into(static_cast<std::size_t>(h.n), 0);
  long long e_u = 0;
  for (std::size_t e = 0; e < h.m(); ++e) {
    int outside = -1;
    bool ok = true;
    for (int v : h.edge(e)) {
      if (in_set[static_cast<std::size_t>(v)]) continue;
      if (outside >= 0 && outside != v) {
        ok = false;
        break;
      }
      outside = v;
    }
    if (!ok) continue;
    if (outside < 0) {
      ++e_u;
    } else {
      ++into[static_cast<std::size_t>(outside)];
    }
  }

  MaximalDenseCheck r;
  r.theta = e_u - L * v_u;
  r.dense = e_u >= L * v_u;
  if (!r.dense) return r;
  r.maximal = true;
  for (int w = 0; w < h.n; ++w) {
    if (!in_set[static_cast<std::size_t>(w)] && e_u + into[static_cast<std::size_t>(w)] >= L * (v_u + 1)) {
      r.maximal = false;
      break;
    }
  }
  r.conclusions_apply = r.maximal && static_cast<long long>(h.m()) < L * static_cast<long long>(h.n);
  if (!r.conclusions_apply) return r;

  if (r.theta < 0 || r.theta >= L) {
    r.conclusions_hold = false;
    r.violation = "theta = " + std::to_string(r.theta) + " outside [0, ell)";
    return r;
  }
  for (int w = 0; w < h.n; ++w) {
    if (in_set[static_cast<std::size_t>(w)]) continue;
    if (into[static_cast<std::size_t>(w)] >= L - r.theta) {
      r.conclusions_hold = false;
      r.violation = "vertex " + std::to_string(w) + " has degree " +
                    std::to_string(into[static_cast<std::size_t>(w)]) + " into U, not below ell - theta";
      return r;
    }
  }
  return r;
}

}  // namespace horient
