#pragma once

#include <cstdint>
#include <vector>

namespace stardecomp {

/// Dinic's blocking-flow max flow. Arcs are explored in insertion order, so
/// results are deterministic for a fixed construction order.
class MaxFlow {
 public:
  explicit MaxFlow(int num_nodes);

  /// Returns the arc id.
  int add_arc(int from, int to, std::int64_t capacity);
  std::int64_t solve(int source, int sink);

  std::int64_t flow(int arc) const;
  /// Nodes reachable from `source` in the residual graph after solve().
  std::vector<bool> residual_reachable(int source) const;

 private:
  struct Arc {
    int to;
    int rev;
    std::int64_t capacity;
  };

  bool build_levels(int source, int sink);
  std::int64_t push(int v, int sink, std::int64_t limit);

  std::vector<std::vector<Arc>> adj_;
  std::vector<std::pair<int, int>> arc_index_;  // arc id -> (node, position)
  std::vector<std::int64_t> original_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
};

}  // namespace stardecomp
