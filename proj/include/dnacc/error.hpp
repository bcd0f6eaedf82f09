#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dnacc {

enum class ErrorCode {
  InvalidParams,
  Parse,
  WrongCount,
  WrongLength,
  DuplicateIndex,
  DuplicateStrand,
  ShapeMismatch,
  SizeMismatch,
  ParamMismatch,
  TooFewCodewords,
  DuplicateCodeword,
  WrongPoolSize,
  EdNonZero,
  SpaceTooLarge,
  TooLargeForExact,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::WrongCount: return "WrongCount";
    case ErrorCode::WrongLength: return "WrongLength";
    case ErrorCode::DuplicateIndex: return "DuplicateIndex";
    case ErrorCode::DuplicateStrand: return "DuplicateStrand";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::ParamMismatch: return "ParamMismatch";
    case ErrorCode::TooFewCodewords: return "TooFewCodewords";
    case ErrorCode::DuplicateCodeword: return "DuplicateCodeword";
    case ErrorCode::WrongPoolSize: return "WrongPoolSize";
    case ErrorCode::EdNonZero: return "EdNonZero";
    case ErrorCode::SpaceTooLarge: return "SpaceTooLarge";
    case ErrorCode::TooLargeForExact: return "TooLargeForExact";
  }
  return "Unknown";
}

/// Every failure raised by the library. `code()` identifies the category;
/// resource-cap failures (SpaceTooLarge, TooLargeForExact) are distinguished
/// from validation failures by `is_resource_limit()`.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

  [[nodiscard]] bool is_resource_limit() const noexcept {
    return code_ == ErrorCode::SpaceTooLarge || code_ == ErrorCode::TooLargeForExact;
  }

 private:
  ErrorCode code_;
};

/// Raised when an enumeration would exceed its cap. `count()` saturates at
/// UINT64_MAX, in which case `saturated()` is true.
class SpaceTooLargeError : public Error {
 public:
  SpaceTooLargeError(std::uint64_t count, std::uint64_t cap, std::string_view what)
      : Error(ErrorCode::SpaceTooLarge,
              std::string(what) + " count " +
                  (count == UINT64_MAX ? std::string(">= 2^64") : std::to_string(count)) +
                  " exceeds cap " + std::to_string(cap)),
        count_(count),
        cap_(cap) {}

  [[nodiscard]] std::uint64_t count() const noexcept { return count_; }
  [[nodiscard]] std::uint64_t cap() const noexcept { return cap_; }
  [[nodiscard]] bool saturated() const noexcept { return count_ == UINT64_MAX; }

 private:
  std::uint64_t count_;
  std::uint64_t cap_;
};

}  // namespace dnacc
