#pragma once

#include <cassert>
#include <compare>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dnacc/error.hpp"
#include "dnacc/matching.hpp"
#include "dnacc/model.hpp"
#include "dnacc/strand.hpp"

namespace dnacc {

/// DNA-distance value: a non-negative integer or infinity. Finite(k) < Infinite.
class DnaDistance {
 public:
  static constexpr DnaDistance finite(int k) noexcept { return DnaDistance(k); }
  static constexpr DnaDistance infinite() noexcept { return DnaDistance(); }

  [[nodiscard]] constexpr bool is_finite() const noexcept { return value_ >= 0; }
  [[nodiscard]] int value() const {
    if (!is_finite()) throw std::logic_error("DnaDistance: value() of infinite distance");
    return value_;
  }

  [[nodiscard]] std::string to_string() const { return is_finite() ? std::to_string(value_) : "inf"; }

  friend constexpr bool operator==(DnaDistance, DnaDistance) = default;
  friend constexpr std::strong_ordering operator<=>(DnaDistance a, DnaDistance b) noexcept {
    if (a.is_finite() != b.is_finite()) return a.is_finite() ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.value_ <=> b.value_;
  }

  /// D <= r for an integer radius r.
  [[nodiscard]] constexpr bool at_most(int r) const noexcept { return is_finite() && value_ <= r; }

 private:
  constexpr DnaDistance() = default;
  constexpr explicit DnaDistance(int k) : value_(k) {}
  int value_ = -1;
};

inline std::ostream& operator<<(std::ostream& os, DnaDistance d) { return os << d.to_string(); }

struct DnaDistanceWitness {
  DnaDistance distance = DnaDistance::infinite();
  /// Present iff the distance is finite: strand i of Z1 maps to strand
  /// bijection[i] of Z2, data fields preserved, index distance <= distance.
  std::optional<Bijection> bijection;
};

/// D(Z1, Z2) with the bijection obtained by gluing the per-data-value
/// bottleneck bijections.
inline DnaDistanceWitness dna_distance_witness(const Message& z1, const Message& z2) {
  detail::require_same_message_shape(z1, z2);
  if (data_field_multiset(z1) != data_field_multiset(z2)) return {};

  Bijection glued(z1.size(), unmatched);
  int worst = 0;
  for (auto u : data_field_set(z1)) {
    std::vector<std::size_t> from;
    std::vector<std::size_t> to;
    for (std::size_t i = 0; i < z1.size(); ++i) {
      if (z1[i].data() == u) from.push_back(i);
    }
    for (std::size_t j = 0; j < z2.size(); ++j) {
      if (z2[j].data() == u) to.push_back(j);
    }
    assert(from.size() == to.size() && "equal data multisets give equal group sizes");
    const auto left = index_group(u, z1);
    const auto right = index_group(u, z2);
    const auto bn = bottleneck_bijection(left, right);
    worst = std::max(worst, bn.value);
    for (std::size_t k = 0; k < from.size(); ++k) glued[from[k]] = to[bn.bijection[k]];
  }
  return {DnaDistance::finite(worst), std::move(glued)};
}

inline DnaDistance dna_distance(const Message& z1, const Message& z2) { return dna_distance_witness(z1, z2).distance; }

struct MinDistance {
  DnaDistance distance = DnaDistance::infinite();
  std::size_t first = 0;   // argmin pair, positions in the input code
  std::size_t second = 1;
};

/// D(C): min over unordered pairs, first minimizing pair in (i, j) order.
inline MinDistance min_dna_distance(std::span<const Message> code) {
  if (code.size() < 2) throw Error(ErrorCode::TooFewCodewords, "minimum distance needs at least two codewords");
  for (std::size_t i = 0; i < code.size(); ++i) {
    for (std::size_t j = i + 1; j < code.size(); ++j) {
      if (code[i] == code[j]) {
        throw Error(ErrorCode::DuplicateCodeword,
                    "codewords " + std::to_string(i) + " and " + std::to_string(j) + " are equal");
      }
    }
  }
  MinDistance best;
  bool have = false;
  for (std::size_t i = 0; i < code.size(); ++i) {
    for (std::size_t j = i + 1; j < code.size(); ++j) {
      const auto d = dna_distance(code[i], code[j]);
      if (!have || d < best.distance) {
        best = {d, i, j};
        have = true;
      }
    }
  }
  return best;
}

}  // namespace dnacc
