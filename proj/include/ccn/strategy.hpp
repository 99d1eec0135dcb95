#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "ccn/boolean.hpp"
#include "ccn/rational.hpp"
#include "ccn/task.hpp"

namespace ccn {

// Deterministic one-bit-per-Alice strategy for the two-sender game, stored
// as four function indices: two encodings and one decoding per value of
// Bob's first bit. Bob's output is decode_{y0}(c1, c2) XOR y1; xoring the
// known payload bit y1 is always optimal, so this convention loses nothing.
struct StrategyCC2 {
  int encode1 = 0;
  int encode2 = 0;
  int decode0 = 0;
  int decode1 = 0;

  friend bool operator==(const StrategyCC2&, const StrategyCC2&) = default;
};

// n-sender strategy: one two-bit encoding per Alice plus a full decoding
// truth table over the n received bits for each value of Bob's first bit.
struct GeneralStrategy {
  std::vector<TwoBitBoolean> encodings;
  std::array<std::vector<std::uint8_t>, 2> decode;  // decode[y0][message], 2^n entries each

  int n() const { return static_cast<int>(encodings.size()); }
};

inline constexpr std::size_t kWitnessCap = 1024;

struct SearchReportCC2 {
  Rational optimum;
  std::vector<StrategyCC2> optimal;  // capped at kWitnessCap, enumeration order
  std::uint64_t optimal_count = 0;   // total strategies attaining the optimum
  std::uint64_t examined = 0;
};

struct SearchReportGeneral {
  Rational optimum;
  std::vector<GeneralStrategy> optimal;  // capped at kWitnessCap, enumeration order
  std::uint64_t optimal_count = 0;
  std::uint64_t examined = 0;
};

// Exact success fraction of a two-sender strategy over the 32-instance
// ensemble.
Rational strategy_success(const StrategyCC2& s);

// Exact success fraction of an n-sender strategy over the given ensemble.
Rational strategy_success(const GeneralStrategy& s, const InstanceEnsemble& ensemble);

// Examines every strategy tuple (16^4, or 8*8*16^2 with the even-encoding
// restriction) and reports the exact maximum with witnesses.
SearchReportCC2 exhaustive_search_cc2(bool restrict_even);

// Majority completion: for each (message, y0) bucket the decoding bit that
// agrees with the target (xor Bob's payload bit) on the most instances,
// ties toward 0. Exactly optimal among deterministic decodings.
std::pair<GeneralStrategy, Rational> optimal_decoding(const InstanceEnsemble& ensemble,
                                                      const std::vector<TwoBitBoolean>& encodings);
std::pair<GeneralStrategy, Rational> optimal_decoding(int n,
                                                      const std::vector<TwoBitBoolean>& encodings);

// Analytic fast path for the same completion, valid for even encodings:
// scores a tuple from per-first-bit-tuple counts without touching the
// message buckets. Pinned parties' encodings are irrelevant and ignored.
Rational majority_success_even(const InstanceEnsemble& ensemble,
                               const std::vector<TwoBitBoolean>& encodings);

// Maximum success over all even-class encoding tuples (8^n) with
// majority-optimal decodings. `threads` only partitions the tuple space;
// results are identical for any thread count.
SearchReportGeneral classical_optimum(int n, int threads = 1);

// Same search over an arbitrary (possibly pinned) ensemble.
SearchReportGeneral classical_optimum_on(const InstanceEnsemble& ensemble, int threads = 1);

// Success of the cheap classical protocol where every Alice but one sends
// her full string and the remaining one sends only her payload bit; Bob
// recovers the missing first bit from the promise. Equals 1 exactly.
Rational mixed_protocol_success(int n, int short_channel_party = 0);

}  // namespace ccn
