#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qemac/errors.hpp"

namespace qemac {

/// Factors a prime power: d = p^r. Returns false if d is not a prime power.
bool prime_power(std::uint32_t d, std::uint32_t* p_out = nullptr, std::uint32_t* r_out = nullptr);

/// A sum-computation problem over an erasure channel: S data-servers plus an
/// auxiliary Server 0 (never replicated onto, never erased), K streams with
/// replica sets W(k) in [1..S], and T erasure patterns E(t) in [1..S]. One
/// pattern may be empty (the no-erasure case).
struct QemacInstance {
  std::uint32_t d = 2;  // base field size, a prime power
  int servers = 0;      // S
  bool helper = true;
  std::vector<std::vector<int>> streams;   // W(k), sorted 1-based server ids
  std::vector<std::vector<int>> erasures;  // E(t), sorted, possibly empty
  std::optional<std::pair<int, int>> symmetric;  // (alpha, beta) when built that way

  int stream_count() const { return static_cast<int>(streams.size()); }
  int pattern_count() const { return static_cast<int>(erasures.size()); }

  void validate() const;  // throws errc::infeasible_parameters on bad data
};

/// Symmetric family: K = C(S, alpha) streams over all alpha-subsets in
/// lexicographic order, T = C(S, beta) erasure sets (beta = 0 gives the
/// single empty pattern). Requires S >= alpha > beta >= 0 and d a prime power.
QemacInstance build_symmetric_instance(std::uint32_t d, int S, int alpha, int beta);

/// All m-subsets of {1..n} in lexicographic order.
std::vector<std::vector<int>> subsets_lex(int n, int m);

}  // namespace qemac
