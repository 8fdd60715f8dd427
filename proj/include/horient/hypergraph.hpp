#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace horient {

/// k-uniform hypergraph on vertices [0, n). Edges are stored flat, k ids per edge.
struct Hypergraph {
  int n = 0;
  int k = 0;
  std::vector<int> ids;
  // Model provenance: true for the simple models. Cloning output may repeat
  // entries within an edge and repeat edges, and is flagged false.
  bool simple = true;
  long discarded_clones = 0;

  std::size_t m() const { return k == 0 ? 0 : ids.size() / static_cast<std::size_t>(k); }
  std::span<const int> edge(std::size_t e) const {
    return {ids.data() + e * static_cast<std::size_t>(k), static_cast<std::size_t>(k)};
  }
};

/// Distinct entries per edge and no repeated edge.
bool is_simple(const Hypergraph& h);

/// Throws std::invalid_argument if an edge has an id outside [0, n) or ids.size() is not a
/// multiple of k.
void check_hypergraph(const Hypergraph& h);

/// Text format: "n m k", then m lines of k space-separated ids. '#' starts a comment.
void write_hypergraph(std::ostream& out, const Hypergraph& h);
std::string to_text(const Hypergraph& h);

/// Parses the text format; edges are kept in file order and `simple` is computed from the
/// content. Throws std::runtime_error with a line number on malformed input.
Hypergraph read_hypergraph(std::istream& in);
Hypergraph read_hypergraph_file(const std::string& path);
Hypergraph parse_hypergraph(const std::string& text);

}  // namespace horient
