#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "dnacc/bits.hpp"
#include "dnacc/error.hpp"

namespace dnacc {

/// Exact non-negative fraction num/den in lowest terms.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den) {
    if (den <= 0 || num < 0) {
      throw Error(ErrorCode::InvalidParams, "fraction must have non-negative numerator and positive denominator");
    }
    const auto g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
  }

  /// Accepts "p/q" or the literal "1". Decimal forms are rejected so that
  /// floor(tau * K) never depends on rounding.
  static Rational parse(std::string_view text) {
    if (text == "1") return Rational(1, 1);
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
      throw Error(ErrorCode::Parse, "tau must be written as p/q or 1, got '" + std::string(text) + "'");
    }
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  }

  [[nodiscard]] constexpr std::int64_t num() const noexcept { return num_; }
  [[nodiscard]] constexpr std::int64_t den() const noexcept { return den_; }

  /// floor(this * k) in exact integer arithmetic.
  [[nodiscard]] constexpr std::int64_t floor_times(std::int64_t k) const noexcept {
    return static_cast<std::int64_t>(static_cast<__int128>(num_) * k / den_);
  }

  [[nodiscard]] std::string to_string() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend constexpr bool operator==(const Rational&, const Rational&) = default;

 private:
  static std::int64_t parse_int(std::string_view s) {
    if (s.empty() || s.size() > 18) throw Error(ErrorCode::Parse, "bad integer in fraction '" + std::string(s) + "'");
    std::int64_t v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw Error(ErrorCode::Parse, "bad integer in fraction '" + std::string(s) + "'");
      v = v * 10 + (c - '0');
    }
    return v;
  }

  std::int64_t num_ = 1;
  std::int64_t den_ = 1;
};

/// Strand geometry: total length and index-field length.
struct Shape {
  int length = 0;
  int index_len = 0;

  [[nodiscard]] constexpr int data_len() const noexcept { return length - index_len; }
  [[nodiscard]] constexpr bool valid() const noexcept {
    return index_len > 0 && index_len < length && length <= bits::max_width;
  }
  friend constexpr bool operator==(const Shape&, const Shape&) = default;
};

/// Channel and message-space parameters (M, L, l, K, tau, e_i, e_d).
struct SystemParams {
  int M = 1;
  int L = 2;
  int l = 1;
  int K = 1;
  Rational tau{1, 1};
  int ei = 0;
  int ed = 0;

  [[nodiscard]] constexpr Shape shape() const noexcept { return {L, l}; }

  /// floor(tau K): the number of copies of a strand allowed to differ from it.
  [[nodiscard]] constexpr int budget() const noexcept { return static_cast<int>(tau.floor_times(K)); }

  /// Throws InvalidParams unless every range constraint holds.
  void validate() const {
    auto fail = [](const std::string& why) { throw Error(ErrorCode::InvalidParams, why); };
    if (L < 2 || L > bits::max_width) fail("L must be in [2, 64], got " + std::to_string(L));
    if (l <= 0 || l >= L) fail("l must satisfy 0 < l < L, got l=" + std::to_string(l));
    if (M < 1) fail("M must be positive");
    if (l < 63 && static_cast<std::uint64_t>(M) > (std::uint64_t{1} << l)) {
      fail("M=" + std::to_string(M) + " exceeds 2^l=" + std::to_string(std::uint64_t{1} << l));
    }
    if (K < 1) fail("K must be positive");
    if (tau.num() == 0 || tau.num() > tau.den()) fail("tau must lie in (0, 1], got " + tau.to_string());
    if (ei < 0 || ei > l) fail("e_i must lie in [0, l]");
    if (ed < 0 || ed > L - l) fail("e_d must lie in [0, L-l]");
  }

  [[nodiscard]] std::string to_string() const {
    return "M=" + std::to_string(M) + ",L=" + std::to_string(L) + ",l=" + std::to_string(l) +
           ",K=" + std::to_string(K) + ",tau=" + tau.to_string() + ",ei=" + std::to_string(ei) +
           ",ed=" + std::to_string(ed);
  }

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const SystemParams& p) { return os << p.to_string(); }

}  // namespace dnacc
