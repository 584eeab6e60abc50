#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sbmr {

/// One undirected edge, stored with u < v. mult > 1 only in multigraphs.
struct Edge {
  int u = 0;
  int v = 0;
  std::int64_t mult = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected graph (or multigraph) over vertices 0..vertex_count-1.
/// Edges are kept sorted lexicographically with unique pairs, so two graphs
/// are equal iff their representations are equal.
class Graph {
 public:
  Graph() = default;
  Graph(int vertex_count, bool simple)
      : vertex_count_(vertex_count), simple_(simple) {}

  int vertex_count() const { return vertex_count_; }
  bool simple() const { return simple_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Number of edges counting multiplicity.
  std::int64_t edge_count() const;
  /// Number of distinct endpoint pairs.
  std::int64_t pair_count() const { return static_cast<std::int64_t>(edges_.size()); }

  std::int64_t multiplicity(int u, int v) const;
  bool has_edge(int u, int v) const { return multiplicity(u, v) > 0; }

  /// Adds mult to the pair's multiplicity (clamped to 1 for simple graphs).
  void add_edge(int u, int v, std::int64_t mult = 1);
  /// Removes one unit of multiplicity; the pair must be present.
  void remove_one(int u, int v);

  /// Re-establishes sorted-unique form after bulk edits.
  void normalize();

  /// Neighbor lists: adjacency()[u] = {(v, mult), ...}, both directions.
  std::vector<std::vector<std::pair<int, std::int64_t>>> adjacency() const;

  /// Degrees counting multiplicity.
  std::vector<std::int64_t> degrees() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int vertex_count_ = 0;
  bool simple_ = true;
  std::vector<Edge> edges_;
};

/// Caps every multiplicity at 1 and marks the result simple.
Graph flatten_to_simple(const Graph& g);

/// Distinct pairs present in exactly one of the two graphs (multiplicity
/// ignored beyond presence). Both graphs must share a vertex set.
std::vector<std::pair<int, int>> symmetric_difference(const Graph& a, const Graph& b);

/// Edge-list text format: first line "N E simple|multi", then one
/// "u v [mult]" line per distinct pair, 0-indexed, LF endings.
void write_graph(std::ostream& out, const Graph& g);
Graph read_graph(std::istream& in);
void write_graph_file(const std::string& path, const Graph& g);
Graph read_graph_file(const std::string& path);

}  // namespace sbmr
