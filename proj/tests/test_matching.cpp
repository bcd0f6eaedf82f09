#include <gtest/gtest.h>

#include <random>
#include <variant>
#include <vector>

#include "dnacc/matching.hpp"
#include "oracles.hpp"

namespace dnacc {
namespace {

using testing::msg;

BipartiteGraph graph_from_mask(std::size_t nl, std::size_t nr, std::uint64_t mask) {
  BipartiteGraph g(nl, nr);
  for (std::size_t u = 0; u < nl; ++u) {
    for (std::size_t v = 0; v < nr; ++v) {
      if ((mask >> (u * nr + v)) & 1U) g.add_edge(u, v);
    }
  }
  return g;
}

TEST(PerfectMatching, Identity) {
  const BipartiteGraph g(3, 3, {{0}, {1}, {2}});
  const auto r = perfect_matching_or_violator(g);
  ASSERT_TRUE(std::holds_alternative<PerfectMatching>(r));
  EXPECT_EQ(std::get<PerfectMatching>(r).mate, (Bijection{0, 1, 2}));
}

TEST(PerfectMatching, Pigeonhole) {
  const BipartiteGraph g(2, 2, {{0}, {0}});
  const auto r = perfect_matching_or_violator(g);
  ASSERT_TRUE(std::holds_alternative<HallViolator>(r));
  const auto& v = std::get<HallViolator>(r);
  EXPECT_EQ(v.left(), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(v.neighborhood(), (std::vector<std::size_t>{0}));
}

TEST(PerfectMatching, ForcedAssignment) {
  // a ~ {0,1}, b ~ {0}: a->0 strands b, so the only matching is a->1, b->0.
  const BipartiteGraph g(2, 2, {{0, 1}, {0}});
  const auto r = perfect_matching_or_violator(g);
  ASSERT_TRUE(std::holds_alternative<PerfectMatching>(r));
  EXPECT_EQ(std::get<PerfectMatching>(r).mate, (Bijection{1, 0}));
}

TEST(BipartiteGraph, RejectsBadEdges) {
  BipartiteGraph g(2, 2);
  g.add_edge(0, 1);
  EXPECT_THROW(g.add_edge(0, 1), std::invalid_argument);
  EXPECT_THROW(g.add_edge(2, 0), std::out_of_range);
  EXPECT_THROW(g.add_edge(0, 2), std::out_of_range);
}

TEST(HallViolator, RejectsFakeWitness) {
  const BipartiteGraph g(2, 2, {{0}, {1}});
  EXPECT_THROW(HallViolator(g, {0, 1}, {0, 1}), std::logic_error);
  EXPECT_THROW(HallViolator(g, {0}, {}), std::logic_error);
}

TEST(PerfectMatching, AgreesWithExhaustiveSearchOnAllSmallGraphs) {
  for (std::size_t nl = 1; nl <= 4; ++nl) {
    for (std::size_t nr = nl; nr <= 4; ++nr) {
      const std::uint64_t graphs = std::uint64_t{1} << (nl * nr);
      for (std::uint64_t mask = 0; mask < graphs; ++mask) {
        const auto g = graph_from_mask(nl, nr, mask);
        const auto r = perfect_matching_or_violator(g);
        const bool perfect = std::holds_alternative<PerfectMatching>(r);
        ASSERT_EQ(perfect, testing::brute_has_left_perfect(g)) << "mask " << mask;
        if (perfect) {
          const auto& mate = std::get<PerfectMatching>(r).mate;
          std::vector<char> used(nr, 0);
          for (std::size_t u = 0; u < nl; ++u) {
            ASSERT_TRUE(g.has_edge(u, mate[u]));
            ASSERT_FALSE(used[mate[u]]);
            used[mate[u]] = 1;
          }
        } else {
          const auto& v = std::get<HallViolator>(r);
          // Deficiency of the alternating-path witness equals the matching deficiency.
          ASSERT_EQ(v.left().size() - v.neighborhood().size(), nl - testing::brute_max_matching_size(g));
        }
      }
    }
  }
}

TEST(HallViolator, AddingAnEscapingEdgeInvalidatesTheWitness) {
  std::mt19937_64 rng(1);
  int checked = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 2 + rng() % 5;
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        if (rng() % 4 == 0) adj[u].push_back(v);
      }
    }
    const BipartiteGraph g(n, n, adj);
    const auto r = perfect_matching_or_violator(g);
    if (!std::holds_alternative<HallViolator>(r)) continue;
    const auto& hv = std::get<HallViolator>(r);
    for (auto y : hv.left()) {
      for (std::size_t v = 0; v < n; ++v) {
        if (std::binary_search(hv.neighborhood().begin(), hv.neighborhood().end(), v)) continue;
        auto adj2 = adj;
        adj2[y].push_back(v);
        const BipartiteGraph g2(n, n, adj2);
        EXPECT_THROW(HallViolator(g2, hv.left(), hv.neighborhood()), std::logic_error);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(ExistsBijectionWithin, Examples) {
  const auto z = msg({"001", "010"}, 2);
  EXPECT_EQ(exists_bijection_within(z, z, {0, 0}), (Bijection{0, 1}));
  // (00,1)->(10,1) and (01,0)->(11,0) cost (1,0) each; the crossed pairing costs data 1.
  const auto a = msg({"001", "010"}, 2);
  const auto b = msg({"101", "110"}, 2);
  EXPECT_TRUE(testing::brute_bijection_within(a, b, {2, 0}));
  EXPECT_EQ(exists_bijection_within(a, b, {2, 0}), (Bijection{0, 1}));
  EXPECT_FALSE(exists_bijection_within(msg({"000"}, 2), msg({"111"}, 2), {1, 1}));
  EXPECT_THROW(exists_bijection_within(msg({"000"}, 2), msg({"000"}, 1), {1, 1}), Error);
}

TEST(ExistsBijectionWithin, AgreesWithBruteForceAndIsMonotoneInTheBound) {
  std::mt19937_64 rng(9);
  const auto all = enumerate_space(testing::params(3, 5, 3, 1, Rational(1, 1), 0, 0));
  for (int trial = 0; trial < 2000; ++trial) {
    const auto& a = all[rng() % all.size()];
    const auto& b = all[rng() % all.size()];
    for (int bi = 0; bi <= 3; ++bi) {
      for (int bd = 0; bd <= 2; ++bd) {
        const bool here = exists_bijection_within(a, b, {bi, bd}).has_value();
        ASSERT_EQ(here, testing::brute_bijection_within(a, b, {bi, bd}));
        if (here) {
          EXPECT_TRUE(exists_bijection_within(a, b, {bi + 1, bd}).has_value());
          EXPECT_TRUE(exists_bijection_within(a, b, {bi, bd + 1}).has_value());
        }
      }
    }
  }
}

TEST(Bottleneck, Examples) {
  const std::vector<bits::Word> same{0b00, 0b01};
  EXPECT_EQ(bottleneck_bijection(same, same).value, 0);
  EXPECT_EQ(bottleneck_bijection(same, same).bijection, (Bijection{0, 1}));
  const std::vector<bits::Word> left{0b00, 0b01};
  const std::vector<bits::Word> right{0b11, 0b01};
  EXPECT_EQ(testing::brute_bottleneck(left, right), 1);
  const auto r = bottleneck_bijection(left, right);
  EXPECT_EQ(r.value, 1);
  EXPECT_EQ(r.bijection, (Bijection{1, 0}));  // 00->01, 01->11
  EXPECT_EQ(bottleneck_bijection(std::vector<bits::Word>{0}, std::vector<bits::Word>{1}).value, 1);
  try {
    bottleneck_bijection(left, std::vector<bits::Word>{0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SizeMismatch);
  }
}

// Lexicographically first permutation achieving the brute-force optimum.
Bijection brute_lex_first_optimal(const std::vector<bits::Word>& a, const std::vector<bits::Word>& b, int value) {
  Bijection found;
  testing::any_permutation(a.size(), [&](const std::vector<std::size_t>& perm) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (bits::hamming(a[i], b[perm[i]]) > value) return false;
    }
    found = perm;
    return true;
  });
  return found;
}

TEST(Bottleneck, ExhaustiveOverSmallSets) {
  // All pairs of k-subsets of 3-bit words, k <= 4.
  std::vector<std::vector<bits::Word>> subsets[5];
  for (unsigned mask = 0; mask < 256; ++mask) {
    std::vector<bits::Word> s;
    for (bits::Word w = 0; w < 8; ++w) {
      if ((mask >> w) & 1U) s.push_back(w);
    }
    if (s.size() >= 1 && s.size() <= 4) subsets[s.size()].push_back(s);
  }
  for (std::size_t k = 1; k <= 4; ++k) {
    for (const auto& a : subsets[k]) {
      for (const auto& b : subsets[k]) {
        const auto r = bottleneck_bijection(a, b);
        const int expected = testing::brute_bottleneck(a, b);
        ASSERT_EQ(r.value, expected);
        ASSERT_EQ(r.bijection, brute_lex_first_optimal(a, b, expected));
      }
    }
  }
}

TEST(Bottleneck, RandomSixBySix) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    std::vector<bits::Word> a, b;
    for (std::size_t i = 0; i < n; ++i) {
      a.push_back(rng() & 0xff);
      b.push_back(rng() & 0xff);
    }
    EXPECT_EQ(bottleneck_bijection(a, b).value, testing::brute_bottleneck(a, b));
  }
}

TEST(Bottleneck, NonIncreasingWhenOneSideMovesTowardsTheOptimalPartner) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    std::vector<bits::Word> a, b;
    for (std::size_t i = 0; i < n; ++i) {
      a.push_back(rng() & 0x3f);
      b.push_back(rng() & 0x3f);
    }
    const auto before = bottleneck_bijection(a, b);
    // Clear one differing bit between a[i] and its partner: that pair gets closer,
    // so the previous bijection costs no more and the optimum cannot rise.
    const std::size_t i = rng() % n;
    const auto diff = a[i] ^ b[before.bijection[i]];
    if (diff == 0) continue;
    a[i] ^= diff & (~diff + 1);
    EXPECT_LE(bottleneck_bijection(a, b).value, before.value);
  }
}

SystemParams p_small(int M, int K, int budget_num, int ei, int ed) {
  return testing::params(M, 2, 1, K, Rational(budget_num, K), ei, ed);
}

TEST(AssignmentFeasible, Examples) {
  const auto z = msg({"00"}, 1);
  auto pool = [](std::vector<bits::Word> reads) {
    ReadPool p(Shape{2, 1});
    for (auto r : reads) p.add(r);
    return p;
  };
  const auto both = p_small(1, 2, 2, 1, 0);
  EXPECT_TRUE(testing::brute_in_ball({0b00, 0b10}, z, both));
  EXPECT_TRUE(assignment_feasible(pool({0b00, 0b10}), z, both));
  EXPECT_FALSE(testing::brute_in_ball({0b00, 0b01}, z, both));
  EXPECT_FALSE(assignment_feasible(pool({0b00, 0b01}), z, both));
  const auto one = p_small(1, 2, 1, 1, 0);
  EXPECT_FALSE(testing::brute_in_ball({0b10, 0b10}, z, one));
  EXPECT_FALSE(assignment_feasible(pool({0b10, 0b10}), z, one));
  try {
    assignment_feasible(pool({0b00}), z, both);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WrongPoolSize);
  }
}

TEST(AssignmentFeasible, AgreesWithExhaustivePartitionSearch) {
  for (auto [M, L, l] : {std::tuple{1, 2, 1}, std::tuple{2, 2, 1}, std::tuple{2, 3, 2}, std::tuple{1, 3, 1}}) {
    for (int K = 1; M * K <= 4; ++K) {
      for (int b = 0; b <= K; ++b) {
        for (int ei = 0; ei <= l; ++ei) {
          for (int ed = 0; ed <= L - l; ++ed) {
            const auto p = testing::params(M, L, l, K, b == 0 ? Rational(1, 2 * K) : Rational(b, K), ei, ed);
            ASSERT_EQ(p.budget(), b);
            for (const auto& z : enumerate_space(p)) {
              testing::any_multiset(L, static_cast<std::size_t>(M * K), [&](const std::vector<bits::Word>& reads) {
                ReadPool pool(p.shape());
                for (auto r : reads) pool.add(r);
                EXPECT_EQ(assignment_feasible(pool, z, p), testing::brute_in_ball(reads, z, p));
                return false;
              });
            }
          }
        }
      }
    }
  }
}

}  // namespace
}  // namespace dnacc
