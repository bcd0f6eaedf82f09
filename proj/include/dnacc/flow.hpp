#pragma once

// Dinic's max-flow on small integer-capacity networks.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace dnacc {

class FlowNetwork {
 public:
  using Capacity = std::int64_t;

  explicit FlowNetwork(std::size_t nodes) : adj_(nodes), level_(nodes), cursor_(nodes) {}

  /// Adds a directed edge and returns its id (usable with flow_on()).
  std::size_t add_edge(std::size_t from, std::size_t to, Capacity cap) {
    if (from >= adj_.size() || to >= adj_.size()) throw std::out_of_range("flow edge endpoint out of range");
    if (cap < 0) throw std::invalid_argument("negative capacity");
    const std::size_t id = edges_.size();
    edges_.push_back({to, cap});
    adj_[from].push_back(id);
    edges_.push_back({from, 0});
    adj_[to].push_back(id + 1);
    return id;
  }

  [[nodiscard]] Capacity flow_on(std::size_t edge_id) const { return edges_[edge_id ^ 1].cap; }

  [[nodiscard]] std::size_t node_count() const noexcept { return adj_.size(); }

  Capacity max_flow(std::size_t source, std::size_t sink) {
    Capacity total = 0;
    while (build_levels(source, sink)) {
      std::fill(cursor_.begin(), cursor_.end(), 0);
      while (Capacity pushed = augment(source, sink, std::numeric_limits<Capacity>::max())) total += pushed;
    }
    return total;
  }

 private:
  struct Edge {
    std::size_t to;
    Capacity cap;
  };

  bool build_levels(std::size_t source, std::size_t sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> frontier;
    level_[source] = 0;
    frontier.push(source);
    while (!frontier.empty()) {
      const auto u = frontier.front();
      frontier.pop();
      for (auto id : adj_[u]) {
        const auto& e = edges_[id];
        if (e.cap > 0 && level_[e.to] < 0) {
          level_[e.to] = level_[u] + 1;
          frontier.push(e.to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  Capacity augment(std::size_t u, std::size_t sink, Capacity limit) {
    if (u == sink) return limit;
    for (auto& i = cursor_[u]; i < adj_[u].size(); ++i) {
      const auto id = adj_[u][i];
      auto& e = edges_[id];
      if (e.cap <= 0 || level_[e.to] != level_[u] + 1) continue;
      if (Capacity got = augment(e.to, sink, std::min(limit, e.cap)); got > 0) {
        e.cap -= got;
        edges_[id ^ 1].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
};

}  // namespace dnacc
