#include "sbmr/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sbmr/errors.hpp"

namespace sbmr {

namespace {
std::pair<int, int> ordered(int u, int v) {
  return u < v ? std::pair{u, v} : std::pair{v, u};
}
}  // namespace

std::int64_t Graph::edge_count() const {
  return std::accumulate(edges_.begin(), edges_.end(), std::int64_t{0},
                         [](std::int64_t acc, const Edge& e) { return acc + e.mult; });
}

std::int64_t Graph::multiplicity(int u, int v) const {
  auto [a, b] = ordered(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{a, b},
                             [](const Edge& e, const std::pair<int, int>& p) {
                               return std::pair{e.u, e.v} < p;
                             });
  if (it == edges_.end() || it->u != a || it->v != b) return 0;
  return it->mult;
}

void Graph::add_edge(int u, int v, std::int64_t mult) {
  if (u == v) throw std::invalid_argument("self-loops are not allowed");
  if (u < 0 || v < 0 || u >= vertex_count_ || v >= vertex_count_)
    throw std::invalid_argument("edge endpoint out of range");
  auto [a, b] = ordered(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{a, b},
                             [](const Edge& e, const std::pair<int, int>& p) {
                               return std::pair{e.u, e.v} < p;
                             });
  if (it != edges_.end() && it->u == a && it->v == b) {
    it->mult = simple_ ? 1 : it->mult + mult;
  } else {
    edges_.insert(it, Edge{a, b, simple_ ? 1 : mult});
  }
}

void Graph::remove_one(int u, int v) {
  auto [a, b] = ordered(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{a, b},
                             [](const Edge& e, const std::pair<int, int>& p) {
                               return std::pair{e.u, e.v} < p;
                             });
  if (it == edges_.end() || it->u != a || it->v != b)
    throw std::invalid_argument("remove_one: edge not present");
  if (--it->mult == 0) edges_.erase(it);
}

void Graph::normalize() {
  std::sort(edges_.begin(), edges_.end(), [](const Edge& x, const Edge& y) {
    return std::pair{x.u, x.v} < std::pair{y.u, y.v};
  });
  std::vector<Edge> merged;
  merged.reserve(edges_.size());
  for (const Edge& e : edges_) {
    if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v) {
      merged.back().mult += e.mult;
    } else {
      merged.push_back(e);
    }
  }
  if (simple_)
    for (Edge& e : merged) e.mult = 1;
  edges_ = std::move(merged);
}

std::vector<std::vector<std::pair<int, std::int64_t>>> Graph::adjacency() const {
  std::vector<std::vector<std::pair<int, std::int64_t>>> adj(vertex_count_);
  for (const Edge& e : edges_) {
    adj[e.u].emplace_back(e.v, e.mult);
    adj[e.v].emplace_back(e.u, e.mult);
  }
  return adj;
}

std::vector<std::int64_t> Graph::degrees() const {
  std::vector<std::int64_t> deg(vertex_count_, 0);
  for (const Edge& e : edges_) {
    deg[e.u] += e.mult;
    deg[e.v] += e.mult;
  }
  return deg;
}

Graph flatten_to_simple(const Graph& g) {
  Graph out(g.vertex_count(), true);
  for (const Edge& e : g.edges()) out.add_edge(e.u, e.v);
  return out;
}

std::vector<std::pair<int, int>> symmetric_difference(const Graph& a, const Graph& b) {
  if (a.vertex_count() != b.vertex_count())
    throw std::invalid_argument("symmetric_difference: vertex sets differ");
  std::vector<std::pair<int, int>> diff;
  auto ia = a.edges().begin(), ib = b.edges().begin();
  while (ia != a.edges().end() || ib != b.edges().end()) {
    if (ib == b.edges().end() ||
        (ia != a.edges().end() && std::pair{ia->u, ia->v} < std::pair{ib->u, ib->v})) {
      diff.emplace_back(ia->u, ia->v);
      ++ia;
    } else if (ia == a.edges().end() ||
               std::pair{ib->u, ib->v} < std::pair{ia->u, ia->v}) {
      diff.emplace_back(ib->u, ib->v);
      ++ib;
    } else {
      ++ia;
      ++ib;
    }
  }
  return diff;
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.pair_count() << ' '
      << (g.simple() ? "simple" : "multi") << '\n';
  for (const Edge& e : g.edges()) {
    out << e.u << ' ' << e.v;
    if (!g.simple()) out << ' ' << e.mult;
    out << '\n';
  }
}

Graph read_graph(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty graph file", 1);
  std::istringstream header(line);
  int n = 0;
  std::int64_t entries = 0;
  std::string mode;
  if (!(header >> n >> entries >> mode) || (mode != "simple" && mode != "multi"))
    throw ParseError("bad graph header, expected 'N E simple|multi'", 1);
  Graph g(n, mode == "simple");
  for (std::int64_t i = 0; i < entries; ++i) {
    if (!std::getline(in, line)) throw ParseError("unexpected end of edge list", i + 2);
    std::istringstream row(line);
    int u = 0, v = 0;
    std::int64_t mult = 1;
    if (!(row >> u >> v)) throw ParseError("bad edge line", i + 2);
    row >> mult;
    if (u == v || u < 0 || v < 0 || u >= n || v >= n || mult < 1)
      throw ParseError("invalid edge", i + 2);
    g.add_edge(u, v, mult);
  }
  g.normalize();
  return g;
}

void write_graph_file(const std::string& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_graph(out, g);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return read_graph(in);
}

}  // namespace sbmr
