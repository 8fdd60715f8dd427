#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "horient/hypergraph.hpp"

namespace horient {

/// Exact non-negative fraction num/den, den > 0, kept in lowest terms.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d);
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);
};

struct CoreReport {
  std::vector<int> vertices;              // sorted
  std::vector<std::size_t> edge_indices;  // sorted; edges with every entry in the core
  std::vector<int> degrees;               // parallel to vertices, occurrences counted
  Rational density;                       // |edge_indices| / |vertices|, 0/1 when empty
};

/// Peeling history: vertices in deletion order, and for each edge the vertex whose
/// deletion removed it (-1 for core edges).
struct PeelTrace {
  std::vector<int> order;
  std::vector<int> removed_by;
};

/// (ell+1)-core by FIFO deletion of vertices with degree <= ell. A vertex appearing t
/// times in an edge gets t from that edge.
CoreReport peel_core(const Hypergraph& h, int ell, PeelTrace* trace = nullptr);

/// Edge set I with |I| > ell * |vertices|, where vertices are all ids touched by I.
struct HallWitness {
  std::vector<std::size_t> edges;  // sorted
  std::vector<int> vertices;       // sorted
};

struct OrientResult {
  bool orientable = false;
  std::vector<int> assignment;  // per edge, valid iff orientable
  HallWitness witness;          // valid iff !orientable
  std::size_t matched = 0;      // size of a maximum assignment
};

/// Exact ell-orientation via capacitated Hopcroft-Karp (edges left, vertices of
/// capacity ell right, one link per distinct (edge, vertex) pair).
OrientResult orient(const Hypergraph& h, int ell);

/// Orients the core exactly, then hands every peeled edge to the vertex that peeled it.
/// Falls back to orient() on the whole graph if the combined assignment fails validation.
OrientResult orient_via_core(const Hypergraph& h, int ell);

/// Each edge assigned to one of its members and no vertex over capacity.
bool is_valid_orientation(const Hypergraph& h, int ell, const std::vector<int>& assignment);

/// |witness.edges| > ell * |witness.vertices| and every witness edge lies in witness.vertices.
bool is_valid_hall_witness(const Hypergraph& h, int ell, const HallWitness& w);

struct DenseWitness {
  std::vector<int> vertices;  // sorted
  long long edge_count = 0;   // edges fully inside
  Rational density;
  long long theta = 0;        // edge_count - ell * |vertices|
};

/// Number of edges with every entry in `vertices`.
long long edges_inside(const Hypergraph& h, const std::vector<int>& vertices);

constexpr int kMaxExactVertices = 24;

/// Densest vertex subset with density >= ell, by enumerating all subsets (n <= 24).
/// Ties: smaller set, then lexicographically smaller sorted id list.
/// Throws std::length_error for larger n.
std::optional<DenseWitness> densest_subset_exact(const Hypergraph& h, int ell);

struct MaximalDenseCheck {
  bool dense = false;
  bool maximal = false;          // dense and no one-vertex extension is dense
  long long theta = 0;           // e_U - ell * |U|
  bool conclusions_apply = false;  // maximal and ambient density < ell
  bool conclusions_hold = true;
  std::string violation;         // empty unless conclusions_hold is false
};

MaximalDenseCheck maximal_dense_check(const Hypergraph& h, const std::vector<int>& U, int ell);

}  // namespace horient
