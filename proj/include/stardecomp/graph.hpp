#pragma once

// d-regular graphs: configuration-model multigraphs (half-edge pairings),
// simple graphs, subset edge counts and the text file format.
//
// Vertices are 0-based in memory and 1-based in files. In a MultiGraph a loop
// is one edge that adds 2 to its vertex's degree; it counts as an edge inside
// every U containing its vertex.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace stardecomp {

struct Edge {
  int u = 0;
  int v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Pairing of the N*d half-edges; half-edge h belongs to vertex h / d.
class MultiGraph {
 public:
  MultiGraph(int N, int d, std::vector<std::pair<int, int>> pairing);

  int num_vertices() const noexcept { return N_; }
  int degree() const noexcept { return d_; }
  const std::vector<std::pair<int, int>>& pairing() const noexcept { return pairing_; }
  int vertex_of(int half_edge) const noexcept { return half_edge / d_; }

  /// Vertex-level edges (loops as u == v), one per pair, in pairing order.
  std::vector<Edge> edges() const;
  bool is_simple() const;
  std::int64_t loop_count() const;

 private:
  int N_;
  int d_;
  std::vector<std::pair<int, int>> pairing_;
};

/// Simple d-regular graph with edges stored as u < v, sorted
/// lexicographically. Edge ids are positions in that order.
class SimpleGraph {
 public:
  /// Throws RegularityError for loops, parallel edges, out-of-range ids or a
  /// vertex whose degree differs from d.
  SimpleGraph(int N, int d, std::vector<Edge> edges);
  static SimpleGraph from_multigraph(const MultiGraph& g);

  int num_vertices() const noexcept { return N_; }
  int degree() const noexcept { return d_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(int id) const { return edges_.at(static_cast<std::size_t>(id)); }
  /// Ids of edges incident to v, ascending.
  std::span<const int> incident(int v) const;
  int other_end(int edge_id, int v) const;
  bool adjacent(int u, int v) const;

  friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) {
    return a.N_ == b.N_ && a.d_ == b.d_ && a.edges_ == b.edges_;
  }

 private:
  int N_;
  int d_;
  std::vector<Edge> edges_;
  std::vector<int> incident_offsets_;
  std::vector<int> incident_;
};

/// Sorted set of distinct vertex ids in [0, N).
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(int N, std::vector<int> members);
  static VertexSet all(int N);
  static VertexSet from_mask(int N, std::uint64_t mask);

  int universe() const noexcept { return N_; }
  const std::vector<int>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  double density() const noexcept {
    return N_ == 0 ? 0.0 : static_cast<double>(members_.size()) / N_;
  }
  bool contains(int v) const;
  std::vector<bool> indicator() const;
  VertexSet complement() const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  int N_ = 0;
  std::vector<int> members_;
};

/// Uniform perfect matching of the Nd half-edges. Throws DivisibilityError
/// when Nd is odd.
MultiGraph gen_configuration(int N, int d, std::uint64_t seed);

struct SimpleSample {
  SimpleGraph graph;
  std::int64_t attempts = 0;
};

/// First simple outcome of gen_configuration over sub-seeds derived from
/// `seed`; exactly uniform over simple d-regular graphs. Throws
/// ExhaustionError after max_tries.
SimpleSample reject_to_simple(int N, int d, std::uint64_t seed, std::int64_t max_tries = 10000);

/// Steger-Wormald pairing: repeatedly pair two random unmatched half-edges
/// that create neither a loop nor a parallel edge; restarts when stuck.
/// Asymptotically uniform; `attempts` counts restarts + 1.
SimpleSample steger_wormald(int N, int d, std::uint64_t seed, std::int64_t max_tries = 10000);

enum class SamplerMode { automatic, rejection, steger_wormald };

/// automatic uses rejection when exp(-(d^2-1)/4) >= 1e-3, else Steger-Wormald.
SimpleSample sample_simple(int N, int d, std::uint64_t seed, SamplerMode mode = SamplerMode::automatic,
                           std::int64_t max_tries = 10000);

std::int64_t edges_within(const MultiGraph& g, const VertexSet& U);
std::int64_t edges_within(const SimpleGraph& g, const VertexSet& U);
/// Edges with exactly one endpoint in U.
std::int64_t edges_between(const MultiGraph& g, const VertexSet& U);
std::int64_t edges_between(const SimpleGraph& g, const VertexSet& U);

/// Visits every perfect matching of the Nd half-edges exactly once, as a
/// pairing with the smaller half-edge first and pairs ordered by it.
/// Throws SizeError when Nd > 12.
void for_each_pairing(int N, int d, const std::function<void(const MultiGraph&)>& visit);
/// (n-1)!! for even n.
std::int64_t count_matchings(std::int64_t n);

/// Text format: "N d" header, then one "u v" edge per line (1-based, u < v);
/// '#' starts a comment.
SimpleGraph parse_graph(std::istream& in);
SimpleGraph read_graph(const std::string& path);
void write_graph(std::ostream& out, const SimpleGraph& g);
void write_graph(const std::string& path, const SimpleGraph& g);

/// One 1-based vertex id per whitespace-separated token ('#' comments).
VertexSet parse_vertex_set(std::istream& in, int N);

}  // namespace stardecomp
