#pragma once

// Packed bit-vector helpers. A length-n vector lives in the low n bits of a
// 64-bit word, most significant of those first, so numeric order on words of
// equal length is lexicographic order on their binary strings.

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace dnacc::bits {

using Word = std::uint64_t;

inline constexpr int max_width = 64;

constexpr Word mask(int width) noexcept {
  return width >= 64 ? ~Word{0} : (Word{1} << width) - 1;
}

constexpr int weight(Word w) noexcept { return std::popcount(w); }

constexpr int hamming(Word a, Word b) noexcept { return std::popcount(a ^ b); }

constexpr bool fits(Word w, int width) noexcept { return (w & ~mask(width)) == 0; }

/// Flips the bit at string position `pos` (0 = leftmost) of a width-bit word.
constexpr Word flip(Word w, int width, int pos) noexcept {
  return w ^ (Word{1} << (width - 1 - pos));
}

inline std::string to_string(Word w, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i) {
    if ((w >> (width - 1 - i)) & 1U) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

/// Parses a string over {0,1}; empty result on any other character or when
/// the string is longer than 64.
inline std::optional<Word> parse(std::string_view s) {
  if (s.empty() || s.size() > static_cast<std::size_t>(max_width)) return std::nullopt;
  Word w = 0;
  for (char c : s) {
    if (c != '0' && c != '1') return std::nullopt;
    w = (w << 1) | static_cast<Word>(c == '1');
  }
  return w;
}

/// Saturating multiply/add on unsigned 64-bit counts.
constexpr std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) noexcept {
  if (a == 0 || b == 0) return 0;
  if (a > UINT64_MAX / b) return UINT64_MAX;
  return a * b;
}

/// Binomial coefficient, saturating at UINT64_MAX.
constexpr std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(acc);
}

/// 2^e, saturating.
constexpr std::uint64_t sat_pow2(std::uint64_t e) noexcept {
  return e >= 64 ? UINT64_MAX : (std::uint64_t{1} << e);
}

}  // namespace dnacc::bits
