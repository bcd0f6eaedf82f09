#pragma once

// The (tau, e_i, e_d)_K storage channel: seeded sampling from an error ball,
// ball membership, and the exhaustive ball-intersection oracle.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dnacc/bits.hpp"
#include "dnacc/error.hpp"
#include "dnacc/matching.hpp"
#include "dnacc/model.hpp"
#include "dnacc/params.hpp"
#include "dnacc/random.hpp"
#include "dnacc/strand.hpp"

namespace dnacc {

/// Chooses, for the K copies of one strand, which bit positions to flip.
/// Positions are string positions 0..L-1; the index field is [0, l).
class NoisePolicy {
 public:
  virtual ~NoisePolicy() = default;
  [[nodiscard]] virtual std::string_view name() const = 0;
  [[nodiscard]] virtual std::vector<std::vector<int>> corrupt(Rng& rng, const SystemParams& params) const = 0;
};

/// Corrupt-count uniform on {0..floor(tau K)}, corrupted copies chosen
/// uniformly, index/data flip weights uniform on {0..e_i} / {0..e_d}.
class UniformNoise final : public NoisePolicy {
 public:
  [[nodiscard]] std::string_view name() const override { return "uniform"; }

  [[nodiscard]] std::vector<std::vector<int>> corrupt(Rng& rng, const SystemParams& p) const override {
    std::vector<std::vector<int>> flips(static_cast<std::size_t>(p.K));
    const int corrupted = uniform_int(rng, 0, p.budget());
    for (int copy : sample_distinct(rng, p.K, corrupted)) {
      const int wi = uniform_int(rng, 0, p.ei);
      const int wd = uniform_int(rng, 0, p.ed);
      auto& f = flips[static_cast<std::size_t>(copy)];
      for (int pos : sample_distinct(rng, p.l, wi)) f.push_back(pos);
      for (int pos : sample_distinct(rng, p.L - p.l, wd)) f.push_back(p.l + pos);
      std::sort(f.begin(), f.end());
    }
    return flips;
  }
};

/// Always corrupts exactly floor(tau K) copies with exactly e_i index and
/// e_d data flips: samples from the boundary of the ball.
class MaxNoise final : public NoisePolicy {
 public:
  [[nodiscard]] std::string_view name() const override { return "max"; }

  [[nodiscard]] std::vector<std::vector<int>> corrupt(Rng& rng, const SystemParams& p) const override {
    std::vector<std::vector<int>> flips(static_cast<std::size_t>(p.K));
    for (int copy : sample_distinct(rng, p.K, p.budget())) {
      auto& f = flips[static_cast<std::size_t>(copy)];
      for (int pos : sample_distinct(rng, p.l, p.ei)) f.push_back(pos);
      for (int pos : sample_distinct(rng, p.L - p.l, p.ed)) f.push_back(p.l + pos);
      std::sort(f.begin(), f.end());
    }
    return flips;
  }
};

inline std::unique_ptr<NoisePolicy> make_noise_policy(std::string_view name) {
  if (name == "uniform") return std::make_unique<UniformNoise>();
  if (name == "max") return std::make_unique<MaxNoise>();
  throw Error(ErrorCode::InvalidParams, "unknown noise policy '" + std::string(name) + "'");
}

struct ReadProvenance {
  std::size_t source = 0;  // strand position in the canonical message
  std::vector<int> flips;  // ascending string positions
};

struct ChannelSample {
  ReadPool pool;
  std::vector<Strand> reads;  // emission order: K copies of strand 0, then strand 1, ...
  std::vector<ReadProvenance> provenance;
  std::uint64_t seed = 0;
  std::string rng;
  std::string noise;
};

inline void require_params_match(const Message& z, const SystemParams& params) {
  require_same_shape(z.shape(), params.shape());
  if (z.size() != static_cast<std::size_t>(params.M)) {
    throw Error(ErrorCode::ParamMismatch, "message has " + std::to_string(z.size()) + " strands, params say M=" +
                                              std::to_string(params.M));
  }
}

inline bool in_ball(const ReadPool& pool, const Message& z, const SystemParams& params) {
  require_params_match(z, params);
  return assignment_feasible(pool, z, params);
}

/// Draws an output of the channel on input `z`. Deterministic in (seed, policy).
inline ChannelSample sample_ball(const Message& z, const SystemParams& params, std::uint64_t seed,
                                 const NoisePolicy& noise = UniformNoise{}) {
  params.validate();
  require_params_match(z, params);
  Rng rng(seed);
  ChannelSample out;
  out.pool = ReadPool(z.shape());
  out.seed = seed;
  out.rng = std::string(rng_algorithm);
  out.noise = std::string(noise.name());

  for (std::size_t j = 0; j < z.size(); ++j) {
    const auto flips = noise.corrupt(rng, params);
    if (flips.size() != static_cast<std::size_t>(params.K)) throw std::logic_error("noise policy: wrong copy count");
    int corrupted = 0;
    for (const auto& f : flips) {
      const auto in_index = std::count_if(f.begin(), f.end(), [&](int p) { return p < params.l; });
      const bool sorted_unique = std::adjacent_find(f.begin(), f.end(), std::greater_equal<>()) == f.end();
      if (!sorted_unique || (!f.empty() && (f.front() < 0 || f.back() >= params.L)) || in_index > params.ei ||
          static_cast<int>(f.size()) - in_index > params.ed) {
        throw std::logic_error("noise policy: flips outside the (e_i, e_d) support");
      }
      corrupted += !f.empty();
      bits::Word w = z[j].bits();
      for (int pos : f) w = bits::flip(w, params.L, pos);
      const Strand read(w, z.shape());
      out.reads.push_back(read);
      out.pool.add(read);
      out.provenance.push_back({j, f});
    }
    if (corrupted > params.budget()) throw std::logic_error("noise policy: more than floor(tau K) corrupted copies");
  }
  if (!assignment_feasible(out.pool, z, params)) throw std::logic_error("sample_ball: sample left the error ball");
  return out;
}

namespace detail {

/// All words within (e_i, e_d) of `center` in the split metric.
inline std::vector<bits::Word> split_neighborhood(bits::Word center, Shape shape, int ei, int ed) {
  std::vector<bits::Word> index_masks{0};
  std::vector<bits::Word> data_masks{0};
  auto grow = [](std::vector<bits::Word>& masks, int offset, int width, int radius) {
    // masks of weight <= radius over bits [offset, offset+width), built by weight layers
    std::vector<bits::Word> layer{0};
    for (int w = 1; w <= radius; ++w) {
      std::vector<bits::Word> next;
      for (auto m : layer) {
        const int top = m == 0 ? offset - 1 : (63 - std::countl_zero(m));
        for (int b = top + 1; b < offset + width; ++b) next.push_back(m | (bits::Word{1} << b));
      }
      masks.insert(masks.end(), next.begin(), next.end());
      layer = std::move(next);
    }
  };
  grow(data_masks, 0, shape.data_len(), ed);
  grow(index_masks, shape.data_len(), shape.index_len, ei);
  std::vector<bits::Word> out;
  out.reserve(index_masks.size() * data_masks.size());
  for (auto im : index_masks) {
    for (auto dm : data_masks) out.push_back(center ^ im ^ dm);
  }
  return out;
}

}  // namespace detail

/// Ground truth for B(Z1) and B(Z2) intersecting, by enumerating candidate
/// pools. A read shared by both balls lies within (e_i, e_d) of some strand of
/// Z1 and of some strand of Z2, and each strand must occur at least
/// K - floor(tau K) times; both facts only discard pools that cannot be in
/// both balls. Every remaining multiset is tested with in_ball against both.
inline bool oracle_balls_intersect(const Message& z1, const Message& z2, const SystemParams& params,
                                   std::uint64_t cap = default_space_cap) {
  params.validate();
  require_params_match(z1, params);
  require_params_match(z2, params);
  const Shape shape = params.shape();
  const std::size_t total = static_cast<std::size_t>(params.M) * static_cast<std::size_t>(params.K);
  const std::size_t exact_copies = static_cast<std::size_t>(params.K - params.budget());

  auto reach = [&](const Message& z) {
    std::set<bits::Word> out;
    for (const auto& s : z.strands()) {
      for (auto w : detail::split_neighborhood(s.bits(), shape, params.ei, params.ed)) out.insert(w);
    }
    return out;
  };
  const auto reach1 = reach(z1);
  const auto reach2 = reach(z2);
  std::vector<bits::Word> universe;
  std::set_intersection(reach1.begin(), reach1.end(), reach2.begin(), reach2.end(), std::back_inserter(universe));

  ReadPool base(shape);
  std::set<bits::Word> mandatory;
  for (const auto& s : z1.strands()) mandatory.insert(s.bits());
  for (const auto& s : z2.strands()) mandatory.insert(s.bits());
  if (exact_copies > 0) {
    for (auto w : mandatory) {
      if (!std::binary_search(universe.begin(), universe.end(), w)) return false;
      base.add(w, exact_copies);
    }
  }
  if (base.size() > total) return false;
  const std::size_t free = total - base.size();
  if (universe.empty()) return free == 0 && in_ball(base, z1, params) && in_ball(base, z2, params);

  const auto candidates = bits::binomial(universe.size() + free - 1, free);
  if (candidates > cap) throw SpaceTooLargeError(candidates, cap, "oracle candidate pools");

  std::vector<std::size_t> extra(universe.size(), 0);
  auto search = [&](auto&& self, std::size_t pos, std::size_t left) -> bool {
    if (pos + 1 == universe.size()) {
      extra[pos] = left;
      ReadPool pool = base;
      for (std::size_t i = 0; i < universe.size(); ++i) pool.add(universe[i], extra[i]);
      return assignment_feasible(pool, z1, params) && assignment_feasible(pool, z2, params);
    }
    for (std::size_t take = 0; take <= left; ++take) {
      extra[pos] = take;
      if (self(self, pos + 1, left - take)) return true;
    }
    return false;
  };
  return search(search, 0, free);
}

}  // namespace dnacc
