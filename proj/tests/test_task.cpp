#include <doctest.h>

#include <bit>
#include <set>
#include <stdexcept>
#include <tuple>

#include "ccn/task.hpp"

using namespace ccn;

namespace {

TaskInstance make_instance(std::vector<std::pair<int, int>> alice, int y0, int y1) {
  TaskInstance inst;
  for (auto [a, b] : alice) inst.alice.push_back({a, b});
  inst.bob = {y0, y1};
  return inst;
}

}  // namespace

TEST_CASE("parity indicator flags odd integers") {
  CHECK(parity_indicator(0) == 0);
  CHECK(parity_indicator(1) == 1);
  CHECK(parity_indicator(4) == 0);
  CHECK(parity_indicator(7) == 1);
}

TEST_CASE("promise holds iff the first-bit sum is even") {
  CHECK(promise_holds(make_instance({{0, 0}, {0, 0}}, 0, 0)));
  CHECK_FALSE(promise_holds(make_instance({{1, 0}, {0, 0}}, 0, 0)));
  CHECK(promise_holds(make_instance({{1, 0}, {1, 0}, {1, 0}}, 1, 0)));
}

TEST_CASE("promise check rejects malformed candidates") {
  CHECK_THROWS_AS(promise_holds(make_instance({{0, 0}}, 0, 0)), std::invalid_argument);
  CHECK_THROWS_AS(promise_holds(make_instance({{2, 0}, {0, 0}}, 0, 0)), std::invalid_argument);
  CHECK_THROWS_AS(promise_holds(make_instance({{0, 0}, {0, -1}}, 0, 0)), std::invalid_argument);
}

TEST_CASE("target function evaluates the defining formula") {
  // all-zero instance: half-sum parity 0, no payload bits set
  CHECK(target_function(make_instance({{0, 0}, {0, 0}}, 0, 0)) == 0);
  // x1=11, x2=10, y=01: first-bit sum 2, half-parity 1, payload XOR 1^0^1
  CHECK(target_function(make_instance({{1, 1}, {1, 0}}, 0, 1)) == 1);
  // x1=10, x2=10, x3=00, y=00: first-bit sum 2, half-parity 1, payloads 0
  CHECK(target_function(make_instance({{1, 0}, {1, 0}, {0, 0}}, 0, 0)) == 1);
  CHECK_THROWS_AS(target_function(make_instance({{1, 0}, {0, 0}}, 0, 0)), std::domain_error);
}

TEST_CASE("target function flips with Bob's payload bit") {
  const InstanceEnsemble ens = enumerate_instances(3);
  for (std::uint64_t i = 0; i < ens.size(); ++i) {
    TaskInstance inst = ens.instance(i);
    const int f = target_function(inst);
    inst.bob.second_bit ^= 1;
    CHECK(target_function(inst) == (f ^ 1));
  }
}

TEST_CASE("ensemble enumerates each promise instance exactly once") {
  for (int n = 2; n <= 8; ++n) {
    const InstanceEnsemble ens = enumerate_instances(n);
    std::uint64_t counted = 0;
    ens.for_each_packed([&](const PackedInstance& p) {
      ++counted;
      CHECK(((std::popcount(p.alice_first) + p.bob_first) & 1) == 0);
    });
    CHECK(counted == (std::uint64_t{1} << (2 * n + 1)));
    CHECK(ens.size() == counted);
  }
  CHECK(enumerate_instances(2).size() == 32);
  CHECK(enumerate_instances(3).size() == 128);

  // distinctness, spot-checked where the full set fits comfortably
  const InstanceEnsemble ens = enumerate_instances(4);
  std::set<std::tuple<std::uint32_t, std::uint32_t, int, int>> seen;
  ens.for_each_packed([&](const PackedInstance& p) {
    seen.insert({p.alice_first, p.alice_second, p.bob_first, p.bob_second});
  });
  CHECK(seen.size() == ens.size());
}

TEST_CASE("ensemble weights are uniform and sum to one") {
  for (int n : {2, 3, 5}) {
    const InstanceEnsemble ens = enumerate_instances(n);
    CHECK(ens.weight() * Rational(static_cast<std::int64_t>(ens.size())) == Rational(1));
  }
}

TEST_CASE("every valid instance passes the promise") {
  const InstanceEnsemble ens = enumerate_instances(2);
  for (std::uint64_t i = 0; i < ens.size(); ++i) CHECK(promise_holds(ens.instance(i)));
}

TEST_CASE("target function is balanced on the ensemble") {
  for (int n = 2; n <= 6; ++n) {
    const InstanceEnsemble ens = enumerate_instances(n);
    std::uint64_t ones = 0;
    ens.for_each_packed([&](const PackedInstance& p) { ones += target_function(p); });
    CHECK(ones == ens.size() / 2);
  }
}

TEST_CASE("enumeration cap is enforced") {
  CHECK_THROWS_AS(enumerate_instances(1), std::out_of_range);
  CHECK_THROWS_AS(enumerate_instances(13), std::out_of_range);
}

TEST_CASE("pinning trailing Alices to 00 reduces the target to two senders") {
  for (int n : {3, 4, 5}) {
    const InstanceEnsemble full = enumerate_instances(n);
    std::vector<InstanceEnsemble::Pin> pins;
    for (int j = 2; j < n; ++j) pins.push_back({j, {0, 0}});
    const InstanceEnsemble sub = restrict_to_subtask(full, pins);
    CHECK(sub.size() == 32);
    for (std::uint64_t i = 0; i < sub.size(); ++i) {
      const TaskInstance inst = sub.instance(i);
      TaskInstance two;
      two.alice = {inst.alice[0], inst.alice[1]};
      two.bob = inst.bob;
      CHECK(target_function(inst) == target_function(two));
    }
  }
}

TEST_CASE("empty pin list is the identity restriction") {
  const InstanceEnsemble ens = enumerate_instances(2);
  const InstanceEnsemble same = restrict_to_subtask(ens, {});
  CHECK(same.size() == ens.size());
  for (std::uint64_t i = 0; i < ens.size(); ++i)
    CHECK(target_function(same.instance(i)) == target_function(ens.instance(i)));
}

TEST_CASE("pinning two of four Alices leaves 32 instances") {
  const InstanceEnsemble sub =
      restrict_to_subtask(enumerate_instances(4), {{2, {0, 0}}, {3, {0, 0}}});
  CHECK(sub.size() == 32);
  for (std::uint64_t i = 0; i < sub.size(); ++i) {
    const TaskInstance inst = sub.instance(i);
    CHECK(inst.alice[2] == TwoBitString{0, 0});
    CHECK(inst.alice[3] == TwoBitString{0, 0});
    CHECK(promise_holds(inst));
  }
}

TEST_CASE("restriction rejects bad pins") {
  const InstanceEnsemble ens = enumerate_instances(3);
  CHECK_THROWS_AS(restrict_to_subtask(ens, {{3, {0, 0}}}), std::invalid_argument);
  CHECK_THROWS_AS(restrict_to_subtask(ens, {{1, {0, 2}}}), std::invalid_argument);
  CHECK_THROWS_AS(restrict_to_subtask(ens, {{1, {0, 0}}, {1, {1, 0}}}), std::invalid_argument);
}

TEST_CASE("chunked splitting covers the index space exactly") {
  const InstanceEnsemble ens = enumerate_instances(3);
  std::uint64_t covered = 0;
  std::uint64_t expected_begin = 0;
  for (int c = 0; c < 5; ++c) {
    const auto [begin, end] = ens.chunk_range(c, 5);
    CHECK(begin == expected_begin);
    covered += end - begin;
    expected_begin = end;
  }
  CHECK(covered == ens.size());
}
