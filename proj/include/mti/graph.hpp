#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mti {

using VertexId = std::uint32_t;
using Degree = std::uint32_t;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Raised when an edge list does not describe a simple graph. Carries the
/// offending pair as given by the caller.
class GraphError : public std::invalid_argument {
 public:
  enum class Reason { SelfLoop, OutOfRange, Duplicate };

  GraphError(Reason reason, Edge offending);

  Reason reason() const noexcept { return reason_; }
  Edge offending() const noexcept { return offending_; }

 private:
  Reason reason_;
  Edge offending_;
};

/// Immutable simple undirected graph. Edges are stored with u < v in
/// ascending lexicographic order; every accumulation over edges in this
/// library walks them in that order.
class Graph {
 public:
  Graph() = default;

  /// Canonicalizes (u < v), sorts, and validates. Throws GraphError on a
  /// self-loop, an endpoint >= n, or a pair that repeats after
  /// canonicalization.
  static Graph build(std::size_t n, std::span<const Edge> edges);

  /// Fast path for generators that emit canonical, strictly ascending edges.
  /// Verified in O(m); input that is not in that order is handed to build().
  static Graph from_sorted(std::size_t n, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return degrees_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Degree> degrees() const noexcept { return degrees_; }
  Degree degree(VertexId v) const { return degrees_.at(v); }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  Graph(std::size_t n, std::vector<Edge> edges);

  std::vector<Edge> edges_;
  std::vector<Degree> degrees_;
};

struct DegreeSummary {
  Degree min_degree = 0;
  Degree max_degree = 0;
  double mean_degree_empirical = 0.0;  // 2m/n, 0 for n == 0
  std::size_t isolated_count = 0;
};

DegreeSummary degree_summary(const Graph& g);

Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);  // n >= 3
Graph complete_graph(std::size_t n);

// Edge-list text format: "n m" header, then m lines "u v".

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list_file(const std::string& path, const Graph& g);

}  // namespace mti
