#include "stardecomp/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "stardecomp/error.hpp"

namespace stardecomp {

MaxFlow::MaxFlow(int num_nodes) : adj_(static_cast<std::size_t>(num_nodes)) {
  if (num_nodes < 2) throw DomainError("MaxFlow: need at least two nodes");
}

int MaxFlow::add_arc(int from, int to, std::int64_t capacity) {
  if (capacity < 0) throw DomainError("MaxFlow: negative capacity");
  if (from == to) throw DomainError("MaxFlow: self-loop arc");
  auto& out = adj_.at(static_cast<std::size_t>(from));
  auto& in = adj_.at(static_cast<std::size_t>(to));
  out.push_back({to, static_cast<int>(in.size()), capacity});
  in.push_back({from, static_cast<int>(out.size()) - 1, 0});
  arc_index_.emplace_back(from, static_cast<int>(out.size()) - 1);
  original_.push_back(capacity);
  return static_cast<int>(arc_index_.size()) - 1;
}

bool MaxFlow::build_levels(int source, int sink) {
  level_.assign(adj_.size(), -1);
  std::queue<int> queue;
  level_[static_cast<std::size_t>(source)] = 0;
  queue.push(source);
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop();
    for (const Arc& a : adj_[static_cast<std::size_t>(v)]) {
      if (a.capacity > 0 && level_[static_cast<std::size_t>(a.to)] < 0) {
        level_[static_cast<std::size_t>(a.to)] = level_[static_cast<std::size_t>(v)] + 1;
        queue.push(a.to);
      }
    }
  }
  return level_[static_cast<std::size_t>(sink)] >= 0;
}

std::int64_t MaxFlow::push(int v, int sink, std::int64_t limit) {
  if (v == sink) return limit;
  auto& arcs = adj_[static_cast<std::size_t>(v)];
  for (std::size_t& i = cursor_[static_cast<std::size_t>(v)]; i < arcs.size(); ++i) {
    Arc& a = arcs[i];
    if (a.capacity <= 0 || level_[static_cast<std::size_t>(a.to)] != level_[static_cast<std::size_t>(v)] + 1) continue;
    const std::int64_t pushed = push(a.to, sink, std::min(limit, a.capacity));
    if (pushed > 0) {
      a.capacity -= pushed;
      adj_[static_cast<std::size_t>(a.to)][static_cast<std::size_t>(a.rev)].capacity += pushed;
      return pushed;
    }
  }
  return 0;
}

std::int64_t MaxFlow::solve(int source, int sink) {
  if (source == sink) throw DomainError("MaxFlow: source equals sink");
  std::int64_t total = 0;
  while (build_levels(source, sink)) {
    cursor_.assign(adj_.size(), 0);
    while (const std::int64_t pushed = push(source, sink, std::numeric_limits<std::int64_t>::max())) {
      total += pushed;
    }
  }
  return total;
}

std::int64_t MaxFlow::flow(int arc) const {
  const auto& [node, pos] = arc_index_.at(static_cast<std::size_t>(arc));
  return original_[static_cast<std::size_t>(arc)] -
         adj_[static_cast<std::size_t>(node)][static_cast<std::size_t>(pos)].capacity;
}

std::vector<bool> MaxFlow::residual_reachable(int source) const {
  std::vector<bool> seen(adj_.size(), false);
  std::queue<int> queue;
  seen[static_cast<std::size_t>(source)] = true;
  queue.push(source);
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop();
    for (const Arc& a : adj_[static_cast<std::size_t>(v)]) {
      if (a.capacity > 0 && !seen[static_cast<std::size_t>(a.to)]) {
        seen[static_cast<std::size_t>(a.to)] = true;
        queue.push(a.to);
      }
    }
  }
  return seen;
}

}  // namespace stardecomp
