#include "ccn/task.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace ccn {

namespace {

bool is_bit(int v) { return v == 0 || v == 1; }

void check_bits(const TaskInstance& inst) {
  if (inst.n() < 2) throw std::invalid_argument("TaskInstance: need at least two Alices");
  for (const auto& s : inst.alice) {
    if (!is_bit(s.first_bit) || !is_bit(s.second_bit))
      throw std::invalid_argument("TaskInstance: non-bit Alice field");
  }
  if (!is_bit(inst.bob.first_bit) || !is_bit(inst.bob.second_bit))
    throw std::invalid_argument("TaskInstance: non-bit Bob field");
}

constexpr int kEnumerationCap = 12;

}  // namespace

bool promise_holds(const TaskInstance& inst) {
  check_bits(inst);
  int sum = inst.bob.first_bit;
  for (const auto& s : inst.alice) sum += s.first_bit;
  return sum % 2 == 0;
}

int target_function(const TaskInstance& inst) {
  if (!promise_holds(inst)) throw std::domain_error("target_function: promise violated");
  int first_sum = inst.bob.first_bit;
  int second_xor = inst.bob.second_bit;
  for (const auto& s : inst.alice) {
    first_sum += s.first_bit;
    second_xor ^= s.second_bit;
  }
  return second_xor ^ parity_indicator(static_cast<std::uint64_t>(first_sum) / 2);
}

int target_function(const PackedInstance& inst) {
  const int first_sum = std::popcount(inst.alice_first) + inst.bob_first;
  const int second_xor = (std::popcount(inst.alice_second) + inst.bob_second) & 1;
  return second_xor ^ parity_indicator(static_cast<std::uint64_t>(first_sum) / 2);
}

PackedInstance InstanceEnsemble::packed(std::uint64_t index) const {
  const std::size_t f = free_.size();
  PackedInstance out;
  for (const Pin& pin : pins_) {
    out.alice_first |= static_cast<std::uint32_t>(pin.value.first_bit) << pin.party;
    out.alice_second |= static_cast<std::uint32_t>(pin.value.second_bit) << pin.party;
  }
  for (std::size_t j = 0; j < f; ++j) {
    out.alice_first |= static_cast<std::uint32_t>((index >> j) & 1u) << free_[j];
    out.alice_second |= static_cast<std::uint32_t>((index >> (f + j)) & 1u) << free_[j];
  }
  out.bob_second = static_cast<int>((index >> (2 * f)) & 1u);
  out.bob_first = std::popcount(out.alice_first) & 1;  // promise fixes Bob's first bit
  return out;
}

TaskInstance InstanceEnsemble::instance(std::uint64_t index) const {
  if (index >= size()) throw std::out_of_range("InstanceEnsemble: index out of range");
  const PackedInstance p = packed(index);
  TaskInstance out;
  out.alice.resize(n_);
  for (int i = 0; i < n_; ++i) {
    out.alice[i].first_bit = static_cast<int>((p.alice_first >> i) & 1u);
    out.alice[i].second_bit = static_cast<int>((p.alice_second >> i) & 1u);
  }
  out.bob.first_bit = p.bob_first;
  out.bob.second_bit = p.bob_second;
  return out;
}

std::pair<std::uint64_t, std::uint64_t> InstanceEnsemble::chunk_range(
    std::uint64_t chunk_index, std::uint64_t chunk_count) const {
  if (chunk_count == 0 || chunk_index >= chunk_count)
    throw std::invalid_argument("InstanceEnsemble: bad chunk request");
  const std::uint64_t total = size();
  const std::uint64_t base = total / chunk_count;
  const std::uint64_t extra = total % chunk_count;
  const std::uint64_t begin = chunk_index * base + std::min(chunk_index, extra);
  const std::uint64_t len = base + (chunk_index < extra ? 1 : 0);
  return {begin, begin + len};
}

InstanceEnsemble enumerate_instances(int n) {
  if (n < 2 || n > kEnumerationCap)
    throw std::out_of_range("enumerate_instances: n must be in [2, " +
                            std::to_string(kEnumerationCap) + "]");
  InstanceEnsemble ens;
  ens.n_ = n;
  ens.free_.resize(n);
  for (int i = 0; i < n; ++i) ens.free_[i] = i;
  return ens;
}

InstanceEnsemble restrict_to_subtask(const InstanceEnsemble& ensemble,
                                     const std::vector<InstanceEnsemble::Pin>& pins) {
  InstanceEnsemble out = ensemble;
  for (const auto& pin : pins) {
    if (pin.party < 0 || pin.party >= ensemble.n())
      throw std::invalid_argument("restrict_to_subtask: party index out of range");
    if (pin.value.first_bit != (pin.value.first_bit & 1) ||
        pin.value.second_bit != (pin.value.second_bit & 1))
      throw std::invalid_argument("restrict_to_subtask: pinned value must be bits");
    if (std::find(out.free_.begin(), out.free_.end(), pin.party) == out.free_.end())
      throw std::invalid_argument("restrict_to_subtask: party pinned twice");
    out.free_.erase(std::remove(out.free_.begin(), out.free_.end(), pin.party), out.free_.end());
    out.pins_.push_back(pin);
  }
  std::sort(out.pins_.begin(), out.pins_.end(),
            [](const auto& a, const auto& b) { return a.party < b.party; });
  // Bob's first bit absorbs any parity the pins impose, so the sub-ensemble
  // cannot be empty; size() >= 2 always holds here.
  return out;
}

}  // namespace ccn
