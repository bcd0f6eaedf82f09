#pragma once

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include "dnacc/bits.hpp"
#include "dnacc/error.hpp"
#include "dnacc/params.hpp"

namespace dnacc {

/// A length-L binary vector viewed as (index field, data field).
class Strand {
 public:
  constexpr Strand() = default;

  Strand(bits::Word value, Shape shape) : bits_(value), shape_(shape) {
    if (!shape.valid()) throw Error(ErrorCode::InvalidParams, "invalid strand shape");
    if (!bits::fits(value, shape.length)) {
      throw Error(ErrorCode::WrongLength, "value does not fit in " + std::to_string(shape.length) + " bits");
    }
  }

  static Strand from_fields(bits::Word index, bits::Word data, Shape shape) {
    return Strand((index << shape.data_len()) | data, shape);
  }

  static Strand parse(std::string_view text, Shape shape) {
    if (static_cast<int>(text.size()) != shape.length) {
      throw Error(ErrorCode::WrongLength, "strand '" + std::string(text) + "' has length " +
                                              std::to_string(text.size()) + ", expected " +
                                              std::to_string(shape.length));
    }
    const auto w = bits::parse(text);
    if (!w) throw Error(ErrorCode::Parse, "strand '" + std::string(text) + "' is not a binary string");
    return Strand(*w, shape);
  }

  [[nodiscard]] constexpr bits::Word bits() const noexcept { return bits_; }
  [[nodiscard]] constexpr Shape shape() const noexcept { return shape_; }
  [[nodiscard]] constexpr bits::Word index() const noexcept { return bits_ >> shape_.data_len(); }
  [[nodiscard]] constexpr bits::Word data() const noexcept { return bits_ & bits::mask(shape_.data_len()); }

  [[nodiscard]] std::string to_string() const { return bits::to_string(bits_, shape_.length); }

  friend constexpr bool operator==(const Strand& a, const Strand& b) noexcept {
    return a.bits_ == b.bits_ && a.shape_ == b.shape_;
  }
  friend constexpr std::strong_ordering operator<=>(const Strand& a, const Strand& b) noexcept {
    if (auto c = a.shape_.length <=> b.shape_.length; c != 0) return c;
    if (auto c = a.shape_.index_len <=> b.shape_.index_len; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  bits::Word bits_ = 0;
  Shape shape_{};
};

inline std::ostream& operator<<(std::ostream& os, const Strand& s) { return os << s.to_string(); }

/// (index distance, data distance) under the componentwise partial order.
struct PairDistance {
  int idx = 0;
  int dat = 0;

  friend constexpr bool operator==(const PairDistance&, const PairDistance&) = default;

  friend constexpr PairDistance operator+(PairDistance a, PairDistance b) noexcept {
    return {a.idx + b.idx, a.dat + b.dat};
  }
};

/// a <= b in both coordinates. Not a total order: (1,0) and (0,1) are incomparable.
constexpr bool leq(PairDistance a, PairDistance b) noexcept { return a.idx <= b.idx && a.dat <= b.dat; }

inline std::ostream& operator<<(std::ostream& os, PairDistance d) {
  return os << '(' << d.idx << ',' << d.dat << ')';
}

inline void require_same_shape(Shape a, Shape b) {
  if (!(a == b)) throw Error(ErrorCode::ShapeMismatch, "strands/messages have different (L, l)");
}

/// d_{H,L}: Hamming distances of the index fields and of the data fields.
inline PairDistance split_distance(const Strand& x, const Strand& y) {
  require_same_shape(x.shape(), y.shape());
  return {bits::hamming(x.index(), y.index()), bits::hamming(x.data(), y.data())};
}

/// Raw-word variant for callers that have already checked shapes.
constexpr PairDistance split_distance(bits::Word x, bits::Word y, Shape shape) noexcept {
  const bits::Word diff = x ^ y;
  return {bits::weight(diff >> shape.data_len()), bits::weight(diff & bits::mask(shape.data_len()))};
}

}  // namespace dnacc
