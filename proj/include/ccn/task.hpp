#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ccn/rational.hpp"

namespace ccn {

// One party's two-bit input string. The first bit enters the promise
// condition (and selects the measurement basis on the quantum side); the
// second bit is the payload that enters the target XOR.
struct TwoBitString {
  int first_bit = 0;
  int second_bit = 0;

  friend bool operator==(const TwoBitString&, const TwoBitString&) = default;
};

// One assignment of all parties' inputs for the n-sender game: n Alice
// strings plus Bob's string. Valid instances satisfy the promise that the
// sum of all first bits is even.
struct TaskInstance {
  std::vector<TwoBitString> alice;
  TwoBitString bob;

  int n() const { return static_cast<int>(alice.size()); }
};

// Bit-packed instance used by inner loops; alice bit i lives in bit i.
struct PackedInstance {
  std::uint32_t alice_first = 0;
  std::uint32_t alice_second = 0;
  int bob_first = 0;
  int bob_second = 0;
};

// 1 iff r is odd.
inline int parity_indicator(std::uint64_t r) { return static_cast<int>(r & 1u); }

// True iff the sum of all first bits is even. Throws std::invalid_argument
// on malformed candidates (fewer than two Alices or non-bit fields).
bool promise_holds(const TaskInstance& inst);

// Target bit: XOR of all second bits with the parity indicator of half the
// first-bit sum. Throws std::domain_error when the promise is violated.
int target_function(const TaskInstance& inst);

int target_function(const PackedInstance& inst);

// The uniform ensemble of promise-satisfying instances. Instances are never
// materialized in bulk: the ensemble knows its size and decodes any instance
// from its index, so enumeration splits deterministically across workers.
// Sub-ensembles pin selected Alice strings and renormalize uniformly.
class InstanceEnsemble {
 public:
  struct Pin {
    int party = 0;  // zero-based Alice index
    TwoBitString value;
  };

  int n() const { return n_; }
  std::uint64_t size() const { return std::uint64_t{1} << (2 * free_.size() + 1); }
  Rational weight() const { return Rational(1, static_cast<std::int64_t>(size())); }
  const std::vector<Pin>& pins() const { return pins_; }

  TaskInstance instance(std::uint64_t index) const;
  PackedInstance packed(std::uint64_t index) const;

  template <typename F>
  void for_each_packed(F&& f) const {
    const std::uint64_t count = size();
    for (std::uint64_t i = 0; i < count; ++i) f(packed(i));
  }

  // Half-open index range of chunk `chunk_index` out of `chunk_count`.
  std::pair<std::uint64_t, std::uint64_t> chunk_range(std::uint64_t chunk_index,
                                                      std::uint64_t chunk_count) const;

 private:
  friend InstanceEnsemble enumerate_instances(int n);
  friend InstanceEnsemble restrict_to_subtask(const InstanceEnsemble&, const std::vector<Pin>&);

  int n_ = 0;
  std::vector<Pin> pins_;   // sorted by party
  std::vector<int> free_;   // ascending, complements pins_
};

// Every promise-satisfying instance exactly once, uniform weight 2^-(2n+1).
// Enumeration is capped at n = 12 so index arithmetic stays cheap; throws
// std::out_of_range beyond the cap.
InstanceEnsemble enumerate_instances(int n);

// Sub-ensemble with the named Alice strings pinned; weights stay uniform.
// Indices must be distinct, in range, and the values bit-valued.
InstanceEnsemble restrict_to_subtask(const InstanceEnsemble& ensemble,
                                     const std::vector<InstanceEnsemble::Pin>& pins);

}  // namespace ccn
