#pragma once

// Portable sampling helpers. std::mt19937_64's output sequence is fixed by the
// standard; the standard distributions are not, so bounded draws are done here
// by rejection to keep samples identical across standard libraries.

#include <cstdint>
#include <numeric>
#include <random>
#include <string_view>
#include <vector>

namespace dnacc {

using Rng = std::mt19937_64;

inline constexpr std::string_view rng_algorithm = "mt19937_64";

/// Uniform on [0, n). n must be positive.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  std::uint64_t x = rng();
  while (x < threshold) x = rng();
  return x % n;
}

/// Uniform on [lo, hi].
inline int uniform_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo) + 1));
}

/// `count` distinct values from [0, n), uniformly, in draw order.
inline std::vector<int> sample_distinct(Rng& rng, int n, int count) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < count; ++i) {
    const auto j = static_cast<std::size_t>(i) + uniform_below(rng, static_cast<std::uint64_t>(n - i));
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
  }
  pool.resize(static_cast<std::size_t>(count));
  return pool;
}

}  // namespace dnacc
