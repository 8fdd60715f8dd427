#include "horient/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace horient {

bool is_simple(const Hypergraph& h) {
  const std::size_t m = h.m();
  std::vector<std::vector<int>> sorted;
  sorted.reserve(m);
  for (std::size_t e = 0; e < m; ++e) {
    auto ed = h.edge(e);
    std::vector<int> v(ed.begin(), ed.end());
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) return false;
    sorted.push_back(std::move(v));
  }
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

void check_hypergraph(const Hypergraph& h) {
  if (h.n < 0) throw std::invalid_argument("hypergraph: negative vertex count");
  if (h.k <= 0) {
    if (!h.ids.empty()) throw std::invalid_argument("hypergraph: edges present with k <= 0");
    return;
  }
  if (h.ids.size() % static_cast<std::size_t>(h.k) != 0) {
    throw std::invalid_argument("hypergraph: id count is not a multiple of k");
  }
  for (int v : h.ids) {
    if (v < 0 || v >= h.n) throw std::invalid_argument("hypergraph: vertex id out of range");
  }
}

void write_hypergraph(std::ostream& out, const Hypergraph& h) {
  out << h.n << ' ' << h.m() << ' ' << h.k << '\n';
  const std::size_t m = h.m();
  for (std::size_t e = 0; e < m; ++e) {
    auto ed = h.edge(e);
    for (int i = 0; i < h.k; ++i) {
      if (i) out << ' ';
      out << ed[i];
    }
    out << '\n';
  }
}

std::string to_text(const Hypergraph& h) {
  std::ostringstream os;
  write_hypergraph(os, h);
  return os.str();
}

namespace {

[[noreturn]] void parse_error(long line, const std::string& what) {
  throw std::runtime_error("hypergraph line " + std::to_string(line) + ": " + what);
}

// Next line with content after comment stripping; false at EOF.
bool next_content_line(std::istream& in, std::string& line, long& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

Hypergraph read_hypergraph(std::istream& in) {
  std::string line;
  long lineno = 0;
  if (!next_content_line(in, line, lineno)) parse_error(lineno, "missing header");

  long long n = 0, m = 0, k = 0;
  {
    std::istringstream hs(line);
    std::string extra;
    if (!(hs >> n >> m >> k) || (hs >> extra)) parse_error(lineno, "header must be 'n m k'");
  }
  if (n < 0 || n > 2'000'000'000LL) parse_error(lineno, "bad vertex count");
  if (m < 0 || k < 1 || k > 1'000'000) parse_error(lineno, "bad edge count or edge size");

  Hypergraph h;
  h.n = static_cast<int>(n);
  h.k = static_cast<int>(k);
  h.ids.reserve(static_cast<std::size_t>(std::min<long long>(m * k, 1LL << 26)));
  for (long long e = 0; e < m; ++e) {
    if (!next_content_line(in, line, lineno)) parse_error(lineno, "fewer edges than declared");
    std::istringstream es(line);
    long long v = 0;
    long long count = 0;
    while (es >> v) {
      if (v < 0 || v >= n) parse_error(lineno, "vertex id out of range");
      h.ids.push_back(static_cast<int>(v));
      ++count;
    }
    if (!es.eof()) parse_error(lineno, "non-integer token");
    if (count != k) parse_error(lineno, "edge does not have exactly k entries");
  }
  if (next_content_line(in, line, lineno)) parse_error(lineno, "more edges than declared");
  h.simple = is_simple(h);
  return h;
}

Hypergraph read_hypergraph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  return read_hypergraph(in);
}

Hypergraph parse_hypergraph(const std::string& text) {
  std::istringstream in(text);
  return read_hypergraph(in);
}

}  // namespace horient
