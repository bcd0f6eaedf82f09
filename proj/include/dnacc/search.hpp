#pragma once

// Code search: a code is a clique in the graph joining messages whose balls
// are provably disjoint. Unknown verdicts leave the edge out, so every clique
// is a certified DNA-correcting code.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dnacc/codec.hpp"
#include "dnacc/error.hpp"
#include "dnacc/model.hpp"
#include "dnacc/params.hpp"

namespace dnacc {

enum class Strategy { Greedy, Exact };

inline std::string to_string(Strategy s) { return s == Strategy::Greedy ? "greedy" : "exact"; }

/// Which part of X_{M,L,l} to search.
struct Restriction {
  enum class Kind { None, Radius, DistinctData };
  Kind kind = Kind::None;
  PairDistance radius;  // Kind::Radius only

  static Restriction none() { return {}; }
  static Restriction within(int r1, int r2) { return {Kind::Radius, {r1, r2}}; }
  static Restriction distinct_data() { return {Kind::DistinctData, {}}; }

  [[nodiscard]] std::string to_string() const {
    switch (kind) {
      case Kind::None: return "none";
      case Kind::Radius: return std::to_string(radius.idx) + "," + std::to_string(radius.dat);
      case Kind::DistinctData: return "distinct-data";
    }
    return "?";
  }
};

/// Undirected simple graph on n vertices, adjacency matrix.
class SimpleGraph {
 public:
  explicit SimpleGraph(std::size_t n = 0) : n_(n), adj_(n * n, 0) {}

  void add_edge(std::size_t a, std::size_t b) {
    if (a >= n_ || b >= n_) throw std::out_of_range("vertex out of range");
    if (a == b) throw std::invalid_argument("self loop");
    adj_[a * n_ + b] = adj_[b * n_ + a] = 1;
  }

  [[nodiscard]] bool adjacent(std::size_t a, std::size_t b) const { return adj_[a * n_ + b] != 0; }
  [[nodiscard]] std::size_t size() const noexcept { return n_; }

  [[nodiscard]] std::size_t degree(std::size_t a) const {
    return static_cast<std::size_t>(std::count(adj_.begin() + static_cast<std::ptrdiff_t>(a * n_),
                                               adj_.begin() + static_cast<std::ptrdiff_t>((a + 1) * n_), 1));
  }

  [[nodiscard]] std::size_t edge_count() const {
    return static_cast<std::size_t>(std::count(adj_.begin(), adj_.end(), 1)) / 2;
  }

  [[nodiscard]] bool is_clique(const std::vector<std::size_t>& vs) const {
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        if (!adjacent(vs[i], vs[j])) return false;
      }
    }
    return true;
  }

 private:
  std::size_t n_;
  std::vector<char> adj_;
};

struct CompatibilityGraph {
  SystemParams params;
  Restriction restriction;
  std::uint64_t space_size = 0;  // |X_{M,L,l}| before restriction
  std::vector<Message> vertices;
  SimpleGraph graph;
};

inline CompatibilityGraph build_graph(const SystemParams& params, Restriction restriction = {},
                                      std::uint64_t cap = default_space_cap) {
  params.validate();
  std::optional<PairDistance> radius;
  if (restriction.kind == Restriction::Kind::Radius) radius = restriction.radius;
  CompatibilityGraph g{params, restriction, space_size(params.M, params.shape()),
                       enumerate_space(params, radius, cap), SimpleGraph{}};
  if (restriction.kind == Restriction::Kind::DistinctData) {
    std::erase_if(g.vertices, [](const Message& z) { return !has_distinct_data(z); });
  }
  g.graph = SimpleGraph(g.vertices.size());
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < g.vertices.size(); ++j) {
      if (balls_intersect(g.vertices[i], g.vertices[j], params).kind == Intersection::Kind::No) g.graph.add_edge(i, j);
    }
  }
  return g;
}

inline constexpr std::size_t exact_clique_limit = 64;

/// Greedy: scan vertices in order, keep each one adjacent to everything kept.
/// Exact: branch and bound over 64-bit vertex masks, vertices ordered by
/// descending degree. Returned vertex lists are ascending.
inline std::vector<std::size_t> max_clique(const SimpleGraph& g, Strategy strategy) {
  const std::size_t n = g.size();
  if (strategy == Strategy::Greedy) {
    std::vector<std::size_t> clique;
    for (std::size_t v = 0; v < n; ++v) {
      if (std::all_of(clique.begin(), clique.end(), [&](std::size_t u) { return g.adjacent(u, v); })) {
        clique.push_back(v);
      }
    }
    return clique;
  }
  if (n > exact_clique_limit) {
    throw Error(ErrorCode::TooLargeForExact,
                "exact clique search supports at most 64 vertices, graph has " + std::to_string(n));
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return g.degree(a) > g.degree(b); });
  std::vector<std::uint64_t> nbr(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && g.adjacent(order[i], order[j])) nbr[i] |= std::uint64_t{1} << j;
    }
  }

  std::uint64_t best = 0;
  auto expand = [&](auto&& self, std::uint64_t current, std::uint64_t candidates) -> void {
    if (candidates == 0) {
      if (std::popcount(current) > std::popcount(best)) best = current;
      return;
    }
    while (candidates != 0) {
      if (std::popcount(current) + std::popcount(candidates) <= std::popcount(best)) return;
      const int v = std::countr_zero(candidates);
      const std::uint64_t bit = std::uint64_t{1} << v;
      self(self, current | bit, candidates & nbr[static_cast<std::size_t>(v)]);
      candidates &= ~bit;
    }
  };
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  expand(expand, 0, all);

  std::vector<std::size_t> clique;
  for (std::size_t i = 0; i < n; ++i) {
    if ((best >> i) & 1U) clique.push_back(order[i]);
  }
  std::sort(clique.begin(), clique.end());
  return clique;
}

/// A DNA-correcting code from the graph; re-verified before returning.
inline std::vector<Message> max_code(const CompatibilityGraph& g, Strategy strategy) {
  std::vector<Message> code;
  for (auto v : max_clique(g.graph, strategy)) code.push_back(g.vertices[v]);
  if (is_dna_correcting(code, g.params).kind != Verdict::Kind::Correcting) {
    throw std::logic_error("max_code: clique failed re-verification");
  }
  return code;
}

}  // namespace dnacc
