#pragma once

// Message space X_{M,L,l}: messages, read pools, field extraction, restricted
// subspaces and exhaustive enumeration of small spaces.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dnacc/bits.hpp"
#include "dnacc/error.hpp"
#include "dnacc/params.hpp"
#include "dnacc/strand.hpp"

namespace dnacc {

/// A set of M strands with pairwise-distinct index fields, stored in
/// ascending (lexicographic) order. Only constructible through validation.
class Message {
 public:
  Message() = default;

  /// Validates raw words as an element of X_{M,L,l}.
  static Message make(std::span<const bits::Word> raw, int M, Shape shape) {
    if (!shape.valid()) throw Error(ErrorCode::InvalidParams, "invalid shape");
    for (auto w : raw) {
      if (!bits::fits(w, shape.length)) {
        throw Error(ErrorCode::WrongLength, "value does not fit in L=" + std::to_string(shape.length) + " bits");
      }
    }
    std::vector<bits::Word> sorted(raw.begin(), raw.end());
    std::sort(sorted.begin(), sorted.end());
    if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
      throw Error(ErrorCode::DuplicateStrand, "strand " + bits::to_string(*dup, shape.length) + " appears twice");
    }
    if (static_cast<int>(sorted.size()) != M) {
      throw Error(ErrorCode::WrongCount,
                  "expected " + std::to_string(M) + " strands, got " + std::to_string(sorted.size()));
    }
    // Sorted by full word means sorted by index first, so equal indices are adjacent.
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      if ((sorted[i - 1] >> shape.data_len()) == (sorted[i] >> shape.data_len())) {
        throw Error(ErrorCode::DuplicateIndex, "strands " + bits::to_string(sorted[i - 1], shape.length) + " and " +
                                                   bits::to_string(sorted[i], shape.length) +
                                                   " share index field " +
                                                   bits::to_string(sorted[i] >> shape.data_len(), shape.index_len));
      }
    }
    Message m;
    m.shape_ = shape;
    m.strands_.reserve(sorted.size());
    for (auto w : sorted) m.strands_.emplace_back(w, shape);
    return m;
  }

  static Message make(std::span<const Strand> raw, int M, Shape shape) {
    std::vector<bits::Word> words;
    words.reserve(raw.size());
    for (const auto& s : raw) {
      require_same_shape(s.shape(), shape);
      words.push_back(s.bits());
    }
    return make(words, M, shape);
  }

  [[nodiscard]] const std::vector<Strand>& strands() const noexcept { return strands_; }
  [[nodiscard]] std::size_t size() const noexcept { return strands_.size(); }
  [[nodiscard]] Shape shape() const noexcept { return shape_; }
  [[nodiscard]] const Strand& operator[](std::size_t i) const { return strands_[i]; }

  [[nodiscard]] std::string to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < strands_.size(); ++i) {
      if (i) out += ',';
      out += strands_[i].to_string();
    }
    return out + "}";
  }

  friend bool operator==(const Message&, const Message&) = default;
  friend auto operator<=>(const Message& a, const Message& b) {
    return std::lexicographical_compare_three_way(a.strands_.begin(), a.strands_.end(), b.strands_.begin(),
                                                  b.strands_.end());
  }

 private:
  std::vector<Strand> strands_;
  Shape shape_{};
};

/// Validates binary strings as a message of `params`.
inline Message validate_message(std::span<const std::string> raw, const SystemParams& params) {
  std::vector<bits::Word> words;
  words.reserve(raw.size());
  for (const auto& text : raw) words.push_back(Strand::parse(text, params.shape()).bits());
  return Message::make(words, params.M, params.shape());
}

inline Message validate_message(std::span<const bits::Word> raw, const SystemParams& params) {
  return Message::make(raw, params.M, params.shape());
}

/// MS(Z): the data fields of Z in ascending order, with repeats.
inline std::vector<bits::Word> data_field_multiset(const Message& z) {
  std::vector<bits::Word> out;
  out.reserve(z.size());
  for (const auto& s : z.strands()) out.push_back(s.data());
  std::sort(out.begin(), out.end());
  return out;
}

/// S(Z): the distinct data fields of Z in ascending order.
inline std::vector<bits::Word> data_field_set(const Message& z) {
  auto out = data_field_multiset(z);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// I(u, Z): index fields of the strands of Z whose data field is u, ascending.
inline std::vector<bits::Word> index_group(bits::Word u, const Message& z) {
  if (!bits::fits(u, z.shape().data_len())) {
    throw Error(ErrorCode::WrongLength, "data value wider than L-l");
  }
  std::vector<bits::Word> out;
  for (const auto& s : z.strands()) {
    if (s.data() == u) out.push_back(s.index());
  }
  return out;
}

/// Membership in the restricted space: no two distinct strands x, y of Z have
/// d_{H,L}(x, y) <= (r1, r2).
inline bool in_restricted_space(const Message& z, int r1, int r2) {
  const PairDistance bound{r1, r2};
  const auto& s = z.strands();
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (leq(split_distance(s[i].bits(), s[j].bits(), z.shape()), bound)) return false;
    }
  }
  return true;
}

/// |S(Z)| = M, i.e. membership in the distinct-data space.
inline bool has_distinct_data(const Message& z) { return data_field_set(z).size() == z.size(); }

/// Multiset of reads, kept as value -> multiplicity.
class ReadPool {
 public:
  ReadPool() = default;
  explicit ReadPool(Shape shape) : shape_(shape) {}

  static ReadPool from_reads(std::span<const Strand> reads, Shape shape) {
    ReadPool pool(shape);
    for (const auto& r : reads) pool.add(r);
    return pool;
  }

  void add(const Strand& read, std::size_t multiplicity = 1) {
    require_same_shape(read.shape(), shape_);
    add(read.bits(), multiplicity);
  }

  void add(bits::Word read, std::size_t multiplicity = 1) {
    if (!bits::fits(read, shape_.length)) throw Error(ErrorCode::WrongLength, "read wider than L");
    if (multiplicity == 0) return;
    counts_[read] += multiplicity;
    total_ += multiplicity;
  }

  [[nodiscard]] Shape shape() const noexcept { return shape_; }
  [[nodiscard]] std::size_t size() const noexcept { return total_; }
  [[nodiscard]] const std::map<bits::Word, std::size_t>& counts() const noexcept { return counts_; }

  [[nodiscard]] std::size_t count(bits::Word read) const {
    auto it = counts_.find(read);
    return it == counts_.end() ? 0 : it->second;
  }

  /// Reads in ascending order, repeated by multiplicity.
  [[nodiscard]] std::vector<Strand> expanded() const {
    std::vector<Strand> out;
    out.reserve(total_);
    for (const auto& [w, n] : counts_) out.insert(out.end(), n, Strand(w, shape_));
    return out;
  }

  friend bool operator==(const ReadPool&, const ReadPool&) = default;

 private:
  Shape shape_{};
  std::map<bits::Word, std::size_t> counts_;
  std::size_t total_ = 0;
};

inline constexpr std::uint64_t default_space_cap = 10'000'000;

/// |X_{M,L,l}| = C(2^l, M) 2^{M(L-l)}, saturating at UINT64_MAX.
inline std::uint64_t space_size(int M, Shape shape) {
  return bits::sat_mul(bits::binomial(bits::sat_pow2(static_cast<std::uint64_t>(shape.index_len)),
                                      static_cast<std::uint64_t>(M)),
                       bits::sat_pow2(static_cast<std::uint64_t>(M) * static_cast<std::uint64_t>(shape.data_len())));
}

/// Single-consumer stream over X_{M,L,l} in ascending message order,
/// optionally filtered to the restricted space for `restrict`.
class MessageStream {
 public:
  MessageStream(int M, Shape shape, std::optional<PairDistance> restrict = std::nullopt,
                std::uint64_t cap = default_space_cap)
      : M_(M), shape_(shape), restrict_(restrict) {
    SystemParams probe;
    probe.M = M;
    probe.L = shape.length;
    probe.l = shape.index_len;
    probe.validate();
    const auto count = space_size(M, shape);
    if (count > cap) throw SpaceTooLargeError(count, cap, "message space");
    words_.resize(static_cast<std::size_t>(M));
    for (int j = 0; j < M; ++j) words_[static_cast<std::size_t>(j)] = static_cast<bits::Word>(j) << shape.data_len();
  }

  std::optional<Message> next() {
    while (!done_) {
      auto candidate = current();
      advance();
      if (!restrict_ || in_restricted_space(candidate, restrict_->idx, restrict_->dat)) return candidate;
    }
    return std::nullopt;
  }

 private:
  [[nodiscard]] Message current() const { return Message::make(words_, M_, shape_); }

  // Lexicographic successor among sequences of words with strictly increasing index fields.
  void advance() {
    const int dlen = shape_.data_len();
    const bits::Word index_count = bits::Word{1} << shape_.index_len;
    for (int k = M_ - 1; k >= 0; --k) {
      const bits::Word next = words_[static_cast<std::size_t>(k)] + 1;
      const bits::Word max_index = index_count - static_cast<bits::Word>(M_ - k);
      if ((next >> dlen) <= max_index) {
        words_[static_cast<std::size_t>(k)] = next;
        for (int j = k + 1; j < M_; ++j) {
          words_[static_cast<std::size_t>(j)] = ((words_[static_cast<std::size_t>(j - 1)] >> dlen) + 1) << dlen;
        }
        return;
      }
    }
    done_ = true;
  }

  int M_;
  Shape shape_;
  std::optional<PairDistance> restrict_;
  std::vector<bits::Word> words_;
  bool done_ = false;
};

/// Materializes the whole (optionally restricted) space.
inline std::vector<Message> enumerate_space(const SystemParams& params,
                                            std::optional<PairDistance> restrict = std::nullopt,
                                            std::uint64_t cap = default_space_cap) {
  MessageStream stream(params.M, params.shape(), restrict, cap);
  std::vector<Message> out;
  while (auto m = stream.next()) out.push_back(std::move(*m));
  return out;
}

}  // namespace dnacc
