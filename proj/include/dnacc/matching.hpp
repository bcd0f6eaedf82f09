#pragma once

// Bipartite matching engine.
//
//  * perfect_matching_or_violator: Hopcroft-Karp maximum matching. When the
//    matching is not left-perfect, the left vertices reachable by alternating
//    paths from unmatched left vertices form a Hall violator Y, and the right
//    vertices reached are exactly N(Y); |Y| - |N(Y)| equals the number of
//    unmatched left vertices.
//  * exists_bijection_within: perfect matching on the graph whose edges join
//    strands x in Z1 and y in Z2 with d_{H,L}(x, y) <= bound.
//  * bottleneck_bijection: min over bijections of the max Hamming distance,
//    by binary search over the distinct pairwise distances with a
//    perfect-matching test at each threshold.
//  * assignment_feasible: ball membership as a flow problem.
//
//      source -> value v           capacity mult(v)
//      v -> exact slot of s        capacity K        if v == s
//      v -> noisy slot of s        capacity K        if (0,0) < d_{H,L}(v,s) <= (e_i,e_d)
//      exact slot of s -> s        capacity K
//      noisy slot of s -> s        capacity floor(tau K)
//      s -> sink                   capacity K
//
//    A valid grouping (K reads per strand, each within (e_i,e_d), at most
//    floor(tau K) of them different from the strand) routes one unit per read
//    and saturates every strand edge, so the max flow is M K. Conversely an
//    integral flow of value M K sends exactly K units into each strand; the
//    units arriving through the noisy slot are reads different from the
//    strand, at most floor(tau K) of them, and those through the exact slot
//    are copies of the strand itself. Splitting each value's flow across the
//    strands it feeds gives a valid grouping.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dnacc/bits.hpp"
#include "dnacc/error.hpp"
#include "dnacc/flow.hpp"
#include "dnacc/model.hpp"
#include "dnacc/params.hpp"
#include "dnacc/strand.hpp"

namespace dnacc {

/// bijection[i] = j maps left element i to right element j.
using Bijection = std::vector<std::size_t>;

class BipartiteGraph {
 public:
  BipartiteGraph(std::size_t left_size, std::size_t right_size)
      : right_size_(right_size), adj_(left_size) {}

  BipartiteGraph(std::size_t left_size, std::size_t right_size, std::vector<std::vector<std::size_t>> adjacency)
      : BipartiteGraph(left_size, right_size) {
    if (adjacency.size() != left_size) throw std::invalid_argument("adjacency row count differs from left_size");
    for (std::size_t u = 0; u < left_size; ++u) {
      for (auto v : adjacency[u]) add_edge(u, v);
    }
  }

  void add_edge(std::size_t u, std::size_t v) {
    if (u >= adj_.size() || v >= right_size_) throw std::out_of_range("edge endpoint out of range");
    auto& row = adj_[u];
    auto pos = std::lower_bound(row.begin(), row.end(), v);
    if (pos != row.end() && *pos == v) throw std::invalid_argument("parallel edge");
    row.insert(pos, v);
  }

  [[nodiscard]] bool has_edge(std::size_t u, std::size_t v) const {
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
  }

  [[nodiscard]] std::size_t left_size() const noexcept { return adj_.size(); }
  [[nodiscard]] std::size_t right_size() const noexcept { return right_size_; }
  [[nodiscard]] const std::vector<std::size_t>& neighbors(std::size_t u) const { return adj_[u]; }

  /// N(Y), sorted.
  [[nodiscard]] std::vector<std::size_t> neighborhood(std::span<const std::size_t> ys) const {
    std::vector<std::size_t> out;
    for (auto y : ys) out.insert(out.end(), adj_[y].begin(), adj_[y].end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  std::size_t right_size_;
  std::vector<std::vector<std::size_t>> adj_;
};

struct PerfectMatching {
  Bijection mate;  // mate[left] = right
};

/// A left set Y with |Y| > |N(Y)|. Re-checked against the graph on construction.
class HallViolator {
 public:
  HallViolator(const BipartiteGraph& g, std::vector<std::size_t> ys, std::vector<std::size_t> ns)
      : ys_(std::move(ys)), ns_(std::move(ns)) {
    std::sort(ys_.begin(), ys_.end());
    std::sort(ns_.begin(), ns_.end());
    if (g.neighborhood(ys_) != ns_) throw std::logic_error("Hall violator: N does not equal N(Y)");
    if (ys_.size() <= ns_.size()) throw std::logic_error("Hall violator: |Y| <= |N(Y)|");
  }

  [[nodiscard]] const std::vector<std::size_t>& left() const noexcept { return ys_; }
  [[nodiscard]] const std::vector<std::size_t>& neighborhood() const noexcept { return ns_; }

 private:
  std::vector<std::size_t> ys_;
  std::vector<std::size_t> ns_;
};

using MatchingResult = std::variant<PerfectMatching, HallViolator>;

inline constexpr std::size_t unmatched = static_cast<std::size_t>(-1);

struct MaximumMatching {
  std::vector<std::size_t> mate_left;   // unmatched where free
  std::vector<std::size_t> mate_right;  // unmatched where free
  std::size_t size = 0;
};

/// Hopcroft-Karp. Deterministic: neighbors are scanned in ascending order.
inline MaximumMatching maximum_matching(const BipartiteGraph& g) {
  const std::size_t n = g.left_size();
  MaximumMatching m{std::vector<std::size_t>(n, unmatched), std::vector<std::size_t>(g.right_size(), unmatched), 0};
  constexpr std::size_t inf = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(n);
  std::vector<std::size_t> queue;

  auto bfs = [&] {
    queue.clear();
    bool found_free = false;
    for (std::size_t u = 0; u < n; ++u) {
      dist[u] = m.mate_left[u] == unmatched ? 0 : inf;
      if (dist[u] == 0) queue.push_back(u);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const auto u = queue[head];
      for (auto v : g.neighbors(u)) {
        const auto w = m.mate_right[v];
        if (w == unmatched) {
          found_free = true;
        } else if (dist[w] == inf) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return found_free;
  };

  std::vector<std::size_t> cursor(n);
  auto dfs = [&](auto&& self, std::size_t u) -> bool {
    for (auto& i = cursor[u]; i < g.neighbors(u).size(); ++i) {
      const auto v = g.neighbors(u)[i];
      const auto w = m.mate_right[v];
      if (w == unmatched || (dist[w] == dist[u] + 1 && self(self, w))) {
        m.mate_left[u] = v;
        m.mate_right[v] = u;
        ++i;
        return true;
      }
    }
    dist[u] = inf;
    return false;
  };

  while (bfs()) {
    std::fill(cursor.begin(), cursor.end(), 0);
    for (std::size_t u = 0; u < n; ++u) {
      if (m.mate_left[u] == unmatched && dfs(dfs, u)) ++m.size;
    }
  }
  return m;
}

inline MatchingResult perfect_matching_or_violator(const BipartiteGraph& g) {
  const auto m = maximum_matching(g);
  if (m.size == g.left_size()) return PerfectMatching{m.mate_left};

  std::vector<char> seen_left(g.left_size(), 0);
  std::vector<char> seen_right(g.right_size(), 0);
  std::vector<std::size_t> stack;
  for (std::size_t u = 0; u < g.left_size(); ++u) {
    if (m.mate_left[u] == unmatched) {
      seen_left[u] = 1;
      stack.push_back(u);
    }
  }
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    for (auto v : g.neighbors(u)) {
      if (seen_right[v]) continue;
      seen_right[v] = 1;
      // v is matched: otherwise the matching would not be maximum.
      const auto w = m.mate_right[v];
      if (!seen_left[w]) {
        seen_left[w] = 1;
        stack.push_back(w);
      }
    }
  }
  std::vector<std::size_t> ys;
  std::vector<std::size_t> ns;
  for (std::size_t u = 0; u < g.left_size(); ++u) {
    if (seen_left[u]) ys.push_back(u);
  }
  for (std::size_t v = 0; v < g.right_size(); ++v) {
    if (seen_right[v]) ns.push_back(v);
  }
  return HallViolator(g, std::move(ys), std::move(ns));
}

inline bool has_perfect_matching(const BipartiteGraph& g) {
  return maximum_matching(g).size == g.left_size();
}

namespace detail {

inline void require_same_message_shape(const Message& a, const Message& b) {
  require_same_shape(a.shape(), b.shape());
  if (a.size() != b.size()) throw Error(ErrorCode::ShapeMismatch, "messages have different M");
}

/// Lexicographically smallest perfect matching of the left set onto the
/// right set using only pairs accepted by `admissible`, or empty.
template <class Admissible>
std::optional<Bijection> lex_smallest_perfect_matching(std::size_t n, Admissible&& admissible) {
  auto feasible = [&](const std::vector<std::size_t>& fixed, const std::vector<char>& used) {
    const std::size_t rest = n - fixed.size();
    BipartiteGraph g(rest, n);
    for (std::size_t i = 0; i < rest; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!used[j] && admissible(fixed.size() + i, j)) g.add_edge(i, j);
      }
    }
    return has_perfect_matching(g);
  };

  std::vector<std::size_t> fixed;
  std::vector<char> used(n, 0);
  if (!feasible(fixed, used)) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i) {
    bool placed = false;
    for (std::size_t j = 0; j < n && !placed; ++j) {
      if (used[j] || !admissible(i, j)) continue;
      fixed.push_back(j);
      used[j] = 1;
      if (feasible(fixed, used)) {
        placed = true;
      } else {
        fixed.pop_back();
        used[j] = 0;
      }
    }
    if (!placed) throw std::logic_error("lex_smallest_perfect_matching: lost feasibility");
  }
  return fixed;
}

}  // namespace detail

/// Edge (i, j) iff d_{H,L}(Z1[i], Z2[j]) <= bound.
inline BipartiteGraph threshold_graph(const Message& z1, const Message& z2, PairDistance bound) {
  detail::require_same_message_shape(z1, z2);
  BipartiteGraph g(z1.size(), z2.size());
  for (std::size_t i = 0; i < z1.size(); ++i) {
    for (std::size_t j = 0; j < z2.size(); ++j) {
      if (leq(split_distance(z1[i].bits(), z2[j].bits(), z1.shape()), bound)) g.add_edge(i, j);
    }
  }
  return g;
}

/// A bijection pi: Z1 -> Z2 with d_{H,L}(x, pi(x)) <= bound for every x, or
/// the Hall violator proving none exists.
inline MatchingResult bijection_or_violator(const Message& z1, const Message& z2, PairDistance bound) {
  return perfect_matching_or_violator(threshold_graph(z1, z2, bound));
}

inline std::optional<Bijection> exists_bijection_within(const Message& z1, const Message& z2, PairDistance bound) {
  auto result = bijection_or_violator(z1, z2, bound);
  if (auto* pm = std::get_if<PerfectMatching>(&result)) return std::move(pm->mate);
  return std::nullopt;
}

struct Bottleneck {
  int value = 0;
  Bijection bijection;
};

/// min over bijections left -> right of max Hamming distance, with the
/// lexicographically smallest bijection achieving it.
inline Bottleneck bottleneck_bijection(std::span<const bits::Word> left, std::span<const bits::Word> right) {
  if (left.size() != right.size()) {
    throw Error(ErrorCode::SizeMismatch, "bottleneck sides differ: " + std::to_string(left.size()) + " vs " +
                                             std::to_string(right.size()));
  }
  const std::size_t n = left.size();
  if (n == 0) return {};

  std::vector<int> thresholds;
  thresholds.reserve(n * n);
  for (auto a : left) {
    for (auto b : right) thresholds.push_back(bits::hamming(a, b));
  }
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  auto feasible_at = [&](int t) {
    BipartiteGraph g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (bits::hamming(left[i], right[j]) <= t) g.add_edge(i, j);
      }
    }
    return has_perfect_matching(g);
  };

  // The largest threshold is always feasible (complete graph).
  std::size_t lo = 0;
  std::size_t hi = thresholds.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (feasible_at(thresholds[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const int value = thresholds[lo];
  auto bij = detail::lex_smallest_perfect_matching(
      n, [&](std::size_t i, std::size_t j) { return bits::hamming(left[i], right[j]) <= value; });
  return {value, std::move(*bij)};
}

/// Whether `pool` lies in the error ball of `z`: the reads split into M
/// groups of K, group j within (e_i, e_d) of strand j with at most
/// floor(tau K) reads different from strand j.
inline bool assignment_feasible(const ReadPool& pool, const Message& z, const SystemParams& params) {
  require_same_shape(pool.shape(), z.shape());
  require_same_shape(z.shape(), params.shape());
  const auto M = z.size();
  if (M != static_cast<std::size_t>(params.M)) throw Error(ErrorCode::ParamMismatch, "message size differs from M");
  const auto K = static_cast<FlowNetwork::Capacity>(params.K);
  if (pool.size() != M * static_cast<std::size_t>(params.K)) {
    throw Error(ErrorCode::WrongPoolSize, "pool has " + std::to_string(pool.size()) + " reads, expected M*K=" +
                                              std::to_string(M * static_cast<std::size_t>(params.K)));
  }
  const PairDistance bound{params.ei, params.ed};
  const auto& counts = pool.counts();
  const std::size_t V = counts.size();
  // Node layout: source, values, exact slots, noisy slots, strands, sink.
  const std::size_t source = 0;
  const std::size_t value0 = 1;
  const std::size_t exact0 = value0 + V;
  const std::size_t noisy0 = exact0 + M;
  const std::size_t strand0 = noisy0 + M;
  const std::size_t sink = strand0 + M;
  FlowNetwork net(sink + 1);

  std::size_t vi = 0;
  for (const auto& [value, mult] : counts) {
    net.add_edge(source, value0 + vi, static_cast<FlowNetwork::Capacity>(mult));
    for (std::size_t j = 0; j < M; ++j) {
      const auto s = z[j].bits();
      if (value == s) {
        net.add_edge(value0 + vi, exact0 + j, K);
      } else if (leq(split_distance(value, s, z.shape()), bound)) {
        net.add_edge(value0 + vi, noisy0 + j, K);
      }
    }
    ++vi;
  }
  for (std::size_t j = 0; j < M; ++j) {
    net.add_edge(exact0 + j, strand0 + j, K);
    net.add_edge(noisy0 + j, strand0 + j, params.budget());
    net.add_edge(strand0 + j, sink, K);
  }
  return net.max_flow(source, sink) == static_cast<FlowNetwork::Capacity>(M) * K;
}

}  // namespace dnacc
