#pragma once

// Decision procedures for ball intersection and DNA-correcting codes.
//
// Regimes by b = floor(tau K):
//   TauOne   b = K        intersect  <=>  bijection within (2e_i, 2e_d)
//   HighTau  K/2 <= b < K
//            bijection within (e_i, e_d)           =>  intersect
//            both messages in Xbar^(2e_i,2e_d)     :   <=> holds
//            both in Xbar^(e_i,e_d), b(2M-1) < MK  :   <=> holds
//            otherwise the converse is open        ->  Unknown
//   LowTau   b < K/2      no analytic criterion    ->  Unknown
//
// The restricted-space theorem is sometimes quoted with floor(tau M) in the
// second hypothesis; the lemma it rests on uses floor(tau K), which is what
// is implemented here.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dnacc/error.hpp"
#include "dnacc/matching.hpp"
#include "dnacc/metrics.hpp"
#include "dnacc/model.hpp"
#include "dnacc/params.hpp"
#include "dnacc/strand.hpp"

namespace dnacc {

enum class Regime { TauOne, HighTau, LowTau };

inline std::string to_string(Regime r) {
  switch (r) {
    case Regime::TauOne: return "TauOne";
    case Regime::HighTau: return "HighTau";
    case Regime::LowTau: return "LowTau";
  }
  return "?";
}

struct RegimeTag {
  Regime primary = Regime::TauOne;
  bool restricted2e = false;        // HighTau only: messages in Xbar^(2e_i,2e_d)
  bool restricted1e_bound = false;  // HighTau only: b(2M-1) < MK and messages in Xbar^(e_i,e_d)

  [[nodiscard]] std::string to_string() const {
    std::string s = dnacc::to_string(primary);
    if (restricted2e) s += "+restricted2e";
    if (restricted1e_bound) s += "+restricted1e_bound";
    return s;
  }
  friend bool operator==(const RegimeTag&, const RegimeTag&) = default;
};

inline Regime classify_regime(const SystemParams& p) {
  const int b = p.budget();
  if (b == p.K) return Regime::TauOne;
  if (2 * b >= p.K) return Regime::HighTau;
  return Regime::LowTau;
}

/// floor(tau K) < MK / (2M - 1), exactly.
inline bool below_matching_bound(const SystemParams& p) {
  return static_cast<long long>(p.budget()) * (2LL * p.M - 1) < static_cast<long long>(p.M) * p.K;
}

/// Primary regime plus the restricted-space flags that hold for every message in `messages`.
inline RegimeTag regime_for(const SystemParams& p, std::span<const Message> messages) {
  RegimeTag tag{classify_regime(p)};
  if (tag.primary != Regime::HighTau) return tag;
  tag.restricted2e = std::all_of(messages.begin(), messages.end(),
                                 [&](const Message& z) { return in_restricted_space(z, 2 * p.ei, 2 * p.ed); });
  tag.restricted1e_bound =
      below_matching_bound(p) && std::all_of(messages.begin(), messages.end(), [&](const Message& z) {
        return in_restricted_space(z, p.ei, p.ed);
      });
  return tag;
}

struct Intersection {
  enum class Kind { Yes, No, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<Bijection> bijection;  // Yes: strand i of Z1 -> strand bijection[i] of Z2
  PairDistance bound;                  // bound the bijection was tested against
  std::string reason;                  // Unknown only
  RegimeTag regime;
};

inline std::string to_string(Intersection::Kind k) {
  switch (k) {
    case Intersection::Kind::Yes: return "YES";
    case Intersection::Kind::No: return "NO";
    case Intersection::Kind::Unknown: return "UNKNOWN";
  }
  return "?";
}

inline constexpr std::string_view reason_unrestricted = "necessity unproved outside restricted spaces";
inline constexpr std::string_view reason_low_tau = "regime not characterized; use oracle";

namespace detail {

inline void check_pair_params(const Message& z1, const Message& z2, const SystemParams& p) {
  p.validate();
  for (const Message* z : {&z1, &z2}) {
    require_same_shape(z->shape(), p.shape());
    if (z->size() != static_cast<std::size_t>(p.M)) {
      throw Error(ErrorCode::ParamMismatch, "message " + z->to_string() + " does not have M=" + std::to_string(p.M) +
                                                " strands");
    }
  }
}

}  // namespace detail

/// Decides whether the error balls of Z1 and Z2 meet, as far as the regime allows.
inline Intersection balls_intersect(const Message& z1, const Message& z2, const SystemParams& p) {
  detail::check_pair_params(z1, z2, p);
  const std::vector<Message> pair{z1, z2};
  Intersection out;
  out.regime = regime_for(p, pair);

  switch (out.regime.primary) {
    case Regime::TauOne: {
      out.bound = {2 * p.ei, 2 * p.ed};
      out.bijection = exists_bijection_within(z1, z2, out.bound);
      out.kind = out.bijection ? Intersection::Kind::Yes : Intersection::Kind::No;
      return out;
    }
    case Regime::HighTau: {
      out.bound = {p.ei, p.ed};
      out.bijection = exists_bijection_within(z1, z2, out.bound);
      if (out.bijection) {
        out.kind = Intersection::Kind::Yes;
      } else if (out.regime.restricted2e || out.regime.restricted1e_bound) {
        out.kind = Intersection::Kind::No;
      } else {
        out.kind = Intersection::Kind::Unknown;
        out.reason = reason_unrestricted;
      }
      return out;
    }
    case Regime::LowTau:
      out.kind = Intersection::Kind::Unknown;
      out.reason = reason_low_tau;
      return out;
  }
  return out;
}

struct Verdict {
  enum class Kind { Correcting, NotCorrecting, Indeterminate };
  Kind kind = Kind::Correcting;
  RegimeTag regime;
  // NotCorrecting witness: two codewords and pi with d_{H,L}(x, pi(x)) <= witness_bound.
  std::optional<std::pair<Message, Message>> witness;
  std::optional<Bijection> bijection;
  PairDistance witness_bound;
  std::string reason;  // Indeterminate only
};

inline std::string to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Correcting: return "CORRECTING";
    case Verdict::Kind::NotCorrecting: return "NOT_CORRECTING";
    case Verdict::Kind::Indeterminate: return "INDETERMINATE";
  }
  return "?";
}

namespace detail {

/// Validates a code against `p` and returns it in ascending order.
inline std::vector<Message> canonical_code(std::span<const Message> code, const SystemParams& p) {
  p.validate();
  for (const auto& z : code) {
    if (!(z.shape() == p.shape()) || z.size() != static_cast<std::size_t>(p.M)) {
      throw Error(ErrorCode::ParamMismatch, "codeword " + z.to_string() + " does not match " + p.to_string());
    }
  }
  std::vector<Message> sorted(code.begin(), code.end());
  std::sort(sorted.begin(), sorted.end());
  if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
    throw Error(ErrorCode::DuplicateCodeword, "codeword " + dup->to_string() + " appears twice");
  }
  return sorted;
}

}  // namespace detail

/// Pairwise ball-intersection check over the code. Pairs are visited in
/// ascending order, so the NotCorrecting witness is the first intersecting pair.
inline Verdict is_dna_correcting(std::span<const Message> code, const SystemParams& p) {
  const auto sorted = detail::canonical_code(code, p);
  Verdict v;
  v.regime = regime_for(p, sorted);
  std::optional<std::string> unknown;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      auto r = balls_intersect(sorted[i], sorted[j], p);
      if (r.kind == Intersection::Kind::Yes) {
        v.kind = Verdict::Kind::NotCorrecting;
        v.witness = std::make_pair(sorted[i], sorted[j]);
        v.bijection = std::move(r.bijection);
        v.witness_bound = r.bound;
        return v;
      }
      if (r.kind == Intersection::Kind::Unknown && !unknown) {
        unknown = sorted[i].to_string() + " vs " + sorted[j].to_string() + ": " + r.reason;
      }
    }
  }
  if (unknown) {
    v.kind = Verdict::Kind::Indeterminate;
    v.reason = *unknown;
  }
  return v;
}

/// The e_d = 0 criteria through the minimum DNA-distance:
///   TauOne                         correcting <=> D(C) > 2 e_i
///   HighTau, all data distinct     correcting <=> D(C) > e_i
///   HighTau otherwise              D(C) <= e_i => not correcting
inline Verdict is_dna_correcting_ed0(std::span<const Message> code, const SystemParams& p) {
  if (p.ed != 0) throw Error(ErrorCode::EdNonZero, "criterion requires e_d = 0, got " + std::to_string(p.ed));
  const auto sorted = detail::canonical_code(code, p);
  Verdict v;
  v.regime = regime_for(p, sorted);
  if (v.regime.primary == Regime::LowTau) {
    v.kind = Verdict::Kind::Indeterminate;
    v.reason = std::string(reason_low_tau);
    return v;
  }
  if (sorted.size() < 2) return v;

  const auto best = min_dna_distance(sorted);
  const int radius = v.regime.primary == Regime::TauOne ? 2 * p.ei : p.ei;
  if (best.distance.at_most(radius)) {
    const auto& a = sorted[best.first];
    const auto& b = sorted[best.second];
    v.kind = Verdict::Kind::NotCorrecting;
    v.witness = std::make_pair(a, b);
    v.bijection = dna_distance_witness(a, b).bijection;
    v.witness_bound = {radius, 0};
    return v;
  }
  const bool decisive = v.regime.primary == Regime::TauOne ||
                        std::all_of(sorted.begin(), sorted.end(), [](const Message& z) { return has_distinct_data(z); });
  if (!decisive) {
    v.kind = Verdict::Kind::Indeterminate;
    v.reason = "D(C) = " + best.distance.to_string() + " > e_i but some codeword repeats a data field";
  }
  return v;
}

}  // namespace dnacc
