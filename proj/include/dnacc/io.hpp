#pragma once

// Text formats shared by the CLI.
//
//   # comment
//   %params M=2,L=3,l=2,K=2,tau=1/2,ei=1,ed=0
//   000
//   010
//
//   100
//   110
//
// One strand per line. A message file holds one block; a code file holds
// several blocks separated by blank lines; a pool file lists one read per
// line with repeats for multiplicity (blank lines are ignored). The header is
// optional and any subset of keys may appear.

#include <cstddef>
#include <fstream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dnacc/error.hpp"
#include "dnacc/model.hpp"
#include "dnacc/params.hpp"
#include "dnacc/strand.hpp"

namespace dnacc::io {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline int parse_count(std::string_view key, std::string_view value) {
  if (value.empty() || value.size() > 9) throw Error(ErrorCode::Parse, "bad value for " + std::string(key));
  int v = 0;
  for (char c : value) {
    if (c < '0' || c > '9') {
      throw Error(ErrorCode::Parse, "bad value for " + std::string(key) + ": '" + std::string(value) + "'");
    }
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace detail

/// Parameters as read from a header or flag; absent keys stay empty.
struct PartialParams {
  std::optional<int> M, L, l, K, ei, ed;
  std::optional<Rational> tau;

  /// "M=2,L=3,l=2,K=2,tau=1/2,ei=1,ed=0", any subset, any order.
  static PartialParams parse(std::string_view text) {
    PartialParams p;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto comma = text.find(',', pos);
      const auto item = detail::trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
      pos = comma == std::string_view::npos ? text.size() + 1 : comma + 1;
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) throw Error(ErrorCode::Parse, "expected key=value, got '" + std::string(item) + "'");
      const auto key = detail::trim(item.substr(0, eq));
      const auto value = detail::trim(item.substr(eq + 1));
      if (key == "M") p.M = detail::parse_count(key, value);
      else if (key == "L") p.L = detail::parse_count(key, value);
      else if (key == "l") p.l = detail::parse_count(key, value);
      else if (key == "K") p.K = detail::parse_count(key, value);
      else if (key == "ei") p.ei = detail::parse_count(key, value);
      else if (key == "ed") p.ed = detail::parse_count(key, value);
      else if (key == "tau") p.tau = Rational::parse(value);
      else throw Error(ErrorCode::Parse, "unknown parameter '" + std::string(key) + "'");
    }
    return p;
  }

  /// Keys present in `other` replace ours.
  void override_with(const PartialParams& other) {
    if (other.M) M = other.M;
    if (other.L) L = other.L;
    if (other.l) l = other.l;
    if (other.K) K = other.K;
    if (other.ei) ei = other.ei;
    if (other.ed) ed = other.ed;
    if (other.tau) tau = other.tau;
  }

  /// Keys present in both must agree; keys present in one are taken.
  void merge_consistent(const PartialParams& other, std::string_view what) {
    auto merge = [&](auto& mine, const auto& theirs, const char* key) {
      if (!theirs) return;
      if (mine && !(*mine == *theirs)) {
        throw Error(ErrorCode::ParamMismatch, std::string(what) + ": conflicting values for " + key);
      }
      mine = theirs;
    };
    merge(M, other.M, "M");
    merge(L, other.L, "L");
    merge(l, other.l, "l");
    merge(K, other.K, "K");
    merge(ei, other.ei, "ei");
    merge(ed, other.ed, "ed");
    merge(tau, other.tau, "tau");
  }

  [[nodiscard]] SystemParams complete() const {
    auto need = [](const auto& v, const char* key) {
      if (!v) throw Error(ErrorCode::InvalidParams, std::string("missing parameter ") + key);
      return *v;
    };
    SystemParams p;
    p.M = need(M, "M");
    p.L = need(L, "L");
    p.l = need(l, "l");
    p.K = need(K, "K");
    p.tau = need(tau, "tau");
    p.ei = need(ei, "ei");
    p.ed = need(ed, "ed");
    p.validate();
    return p;
  }
};

struct Line {
  std::string text;
  std::size_t number = 0;
};

/// A parsed text file: header and blank-line separated blocks of strand lines.
struct TextFile {
  std::string name;
  PartialParams header;
  std::vector<std::vector<Line>> blocks;

  [[nodiscard]] std::string where(const Line& line) const { return name + ":" + std::to_string(line.number); }
};

inline TextFile parse_text(std::string_view content, std::string name) {
  TextFile file{std::move(name), {}, {}};
  bool in_block = false;
  bool seen_header = false;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    const auto nl = content.find('\n', pos);
    const auto raw = content.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? content.size() : nl + 1;
    ++number;
    const auto line = detail::trim(raw);
    if (line.empty()) {
      in_block = false;
      continue;
    }
    if (line.front() == '#') continue;
    const std::string at = file.name + ":" + std::to_string(number);
    if (line.starts_with("%params")) {
      if (seen_header) throw Error(ErrorCode::Parse, at + ": second %params header");
      seen_header = true;
      try {
        file.header = PartialParams::parse(line.substr(7));
      } catch (const Error& e) {
        throw Error(e.code(), at + ": " + e.what());
      }
      continue;
    }
    if (line.find_first_not_of("01") != std::string_view::npos) {
      throw Error(ErrorCode::Parse, at + ": expected a binary string, got '" + std::string(line) + "'");
    }
    if (!in_block) {
      file.blocks.emplace_back();
      in_block = true;
    }
    file.blocks.back().push_back({std::string(line), number});
  }
  return file;
}

inline TextFile read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

/// Strand length of the first strand line, if any.
inline std::optional<int> first_length(const TextFile& file) {
  for (const auto& block : file.blocks) {
    if (!block.empty()) return static_cast<int>(block.front().text.size());
  }
  return std::nullopt;
}

inline Message block_to_message(const TextFile& file, const std::vector<Line>& block, int M, Shape shape) {
  std::vector<bits::Word> words;
  for (const auto& line : block) {
    try {
      words.push_back(Strand::parse(line.text, shape).bits());
    } catch (const Error& e) {
      throw Error(e.code(), file.where(line) + ": " + e.what());
    }
  }
  try {
    return Message::make(words, M, shape);
  } catch (const Error& e) {
    throw Error(e.code(), file.where(block.front()) + ": " + e.what());
  }
}

inline Message to_message(const TextFile& file, int M, Shape shape) {
  if (file.blocks.size() != 1) {
    throw Error(ErrorCode::Parse, file.name + ": expected exactly one message, found " + std::to_string(file.blocks.size()));
  }
  return block_to_message(file, file.blocks.front(), M, shape);
}

inline std::vector<Message> to_code(const TextFile& file, int M, Shape shape) {
  std::vector<Message> code;
  for (const auto& block : file.blocks) code.push_back(block_to_message(file, block, M, shape));
  return code;
}

inline ReadPool to_pool(const TextFile& file, Shape shape) {
  ReadPool pool(shape);
  for (const auto& block : file.blocks) {
    for (const auto& line : block) {
      try {
        pool.add(Strand::parse(line.text, shape));
      } catch (const Error& e) {
        throw Error(e.code(), file.where(line) + ": " + e.what());
      }
    }
  }
  return pool;
}

inline void write_header(std::ostream& os, const SystemParams& p) { os << "%params " << p.to_string() << '\n'; }

inline void write_message(std::ostream& os, const Message& z) {
  for (const auto& s : z.strands()) os << s.to_string() << '\n';
}

inline void write_code(std::ostream& os, const SystemParams& p, std::span<const Message> code) {
  write_header(os, p);
  for (std::size_t i = 0; i < code.size(); ++i) {
    os << '\n';
    write_message(os, code[i]);
  }
}

}  // namespace dnacc::io
