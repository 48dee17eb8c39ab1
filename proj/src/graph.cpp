#include "mti/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace mti {

namespace {

std::string describe(GraphError::Reason reason, Edge e) {
  std::ostringstream os;
  switch (reason) {
    case GraphError::Reason::SelfLoop: os << "self-loop"; break;
    case GraphError::Reason::OutOfRange: os << "endpoint out of range"; break;
    case GraphError::Reason::Duplicate: os << "duplicate edge"; break;
  }
  os << " (" << e.u << ", " << e.v << ")";
  return os.str();
}

}  // namespace

GraphError::GraphError(Reason reason, Edge offending)
    : std::invalid_argument(describe(reason, offending)),
      reason_(reason),
      offending_(offending) {}

Graph::Graph(std::size_t n, std::vector<Edge> edges)
    : edges_(std::move(edges)), degrees_(n, 0) {
  for (const auto& e : edges_) {
    ++degrees_[e.u];
    ++degrees_[e.v];
  }
}

Graph Graph::build(std::size_t n, std::span<const Edge> edges) {
  if (n > std::numeric_limits<VertexId>::max())
    throw std::length_error("vertex count exceeds 32-bit id range");

  struct Tagged {
    Edge canonical;
    Edge original;
  };
  std::vector<Tagged> tagged;
  tagged.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) throw GraphError(GraphError::Reason::OutOfRange, e);
    if (e.u == e.v) throw GraphError(GraphError::Reason::SelfLoop, e);
    tagged.push_back({e.u < e.v ? e : Edge{e.v, e.u}, e});
  }
  std::stable_sort(tagged.begin(), tagged.end(),
                   [](const Tagged& a, const Tagged& b) { return a.canonical < b.canonical; });

  std::vector<Edge> canonical;
  canonical.reserve(tagged.size());
  for (std::size_t i = 0; i < tagged.size(); ++i) {
    if (i > 0 && tagged[i].canonical == tagged[i - 1].canonical)
      throw GraphError(GraphError::Reason::Duplicate, tagged[i].original);
    canonical.push_back(tagged[i].canonical);
  }
  return Graph(n, std::move(canonical));
}

Graph Graph::from_sorted(std::size_t n, std::vector<Edge> edges) {
  if (n > std::numeric_limits<VertexId>::max())
    throw std::length_error("vertex count exceeds 32-bit id range");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge e = edges[i];
    if (e.u >= n || e.v >= n) throw GraphError(GraphError::Reason::OutOfRange, e);
    if (e.u == e.v) throw GraphError(GraphError::Reason::SelfLoop, e);
    if (e.u > e.v) return build(n, edges);
    if (i > 0 && !(edges[i - 1] < e)) {
      if (edges[i - 1] == e) throw GraphError(GraphError::Reason::Duplicate, e);
      return build(n, edges);
    }
  }
  return Graph(n, std::move(edges));
}

DegreeSummary degree_summary(const Graph& g) {
  DegreeSummary s;
  const auto degrees = g.degrees();
  if (degrees.empty()) return s;
  const auto [lo, hi] = std::minmax_element(degrees.begin(), degrees.end());
  s.min_degree = *lo;
  s.max_degree = *hi;
  s.mean_degree_empirical =
      2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(degrees.size());
  s.isolated_count = static_cast<std::size_t>(std::count(degrees.begin(), degrees.end(), 0u));
  return s;
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v)
    edges.push_back({static_cast<VertexId>(v - 1), static_cast<VertexId>(v)});
  return Graph::build(n, edges);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("a simple cycle needs n >= 3");
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < n; ++v)
    edges.push_back({static_cast<VertexId>(v), static_cast<VertexId>((v + 1) % n)});
  return Graph::build(n, edges);
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v)});
  return Graph::from_sorted(n, std::move(edges));
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_content_line(in, line, lineno)) throw ParseError(1, "missing 'n m' header");

  std::istringstream header(line);
  long long n = -1, m = -1;
  std::string rest;
  if (!(header >> n >> m) || (header >> rest) || n < 0 || m < 0)
    throw ParseError(lineno, "malformed header, expected 'n m'");

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  while (next_content_line(in, line, lineno)) {
    std::istringstream row(line);
    long long u = -1, v = -1;
    if (!(row >> u >> v) || (row >> rest) || u < 0 || v < 0)
      throw ParseError(lineno, "malformed edge, expected 'u v'");
    if (static_cast<long long>(edges.size()) == m)
      throw ParseError(lineno, "more edges than the header declares (" + std::to_string(m) + ")");
    if (u > std::numeric_limits<VertexId>::max() || v > std::numeric_limits<VertexId>::max())
      throw ParseError(lineno, "vertex id exceeds 32-bit range");
    edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v)});
  }
  if (static_cast<long long>(edges.size()) != m)
    throw ParseError(lineno, "header declares " + std::to_string(m) + " edges, found " +
                                 std::to_string(edges.size()));
  return Graph::build(static_cast<std::size_t>(n), edges);
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_edge_list_file(const std::string& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_edge_list(out, g);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace mti
