#include "ccn/strategy.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <stdexcept>
#include <thread>

namespace ccn {

namespace {

constexpr int kMaxSearchParties = 6;

void check_search_n(int n) {
  if (n < 2 || n > kMaxSearchParties)
    throw std::out_of_range("strategy search: n must be in [2, 6]");
}

std::uint32_t message_bits(const std::vector<TwoBitBoolean>& encodings, const PackedInstance& p) {
  std::uint32_t c = 0;
  for (std::size_t i = 0; i < encodings.size(); ++i) {
    const std::uint32_t in = ((p.alice_first >> i) & 1u) << 1 | ((p.alice_second >> i) & 1u);
    c |= static_cast<std::uint32_t>(kEvalTable[encodings[i].index()][in]) << i;
  }
  return c;
}

// Maximum majority-decoding success count for one even encoding tuple,
// in units of (first bits, payload bits) pairs, denominator 2^(2f) with
// f free parties.
//
// For an even encoding, party i's message is b_i(u) XOR a_i(u)*v with
// a_i(u) = coef_v ^ coef_uv*u and b_i(u) = coef_u*u. For a fixed first-bit
// tuple either every free party reveals its payload bit (the target parity
// is then a function of the message parity alone, and the tuple floods all
// message keys uniformly) or at least one payload bit stays hidden and the
// bucket contributions are exactly balanced, adding a constant to both
// sides of every majority. Hence only the per-(y0, parity-offset) tuple
// counts matter.
struct FastTupleScore {
  std::int64_t success_count = 0;
  std::int64_t denominator = 0;
};

FastTupleScore score_even_tuple(const InstanceEnsemble& ens,
                                const std::vector<TwoBitBoolean>& free_encodings) {
  const int f = static_cast<int>(free_encodings.size());
  std::uint32_t mask_v = 0, mask_uv = 0, mask_u = 0;
  for (int i = 0; i < f; ++i) {
    mask_v |= static_cast<std::uint32_t>(free_encodings[i].coef_v()) << i;
    mask_uv |= static_cast<std::uint32_t>(free_encodings[i].coef_uv()) << i;
    mask_u |= static_cast<std::uint32_t>(free_encodings[i].coef_u()) << i;
  }

  std::uint32_t pinned_first = 0;
  int pinned_payload_parity = 0;
  for (const auto& pin : ens.pins()) {
    pinned_first |= static_cast<std::uint32_t>(pin.value.first_bit) << pin.party;
    pinned_payload_parity ^= pin.value.second_bit;
  }

  const std::uint32_t full = (1u << f) - 1u;
  std::int64_t tuple_count[2][2] = {{0, 0}, {0, 0}};  // [y0][parity offset]
  std::int64_t hidden_tuples = 0;
  for (std::uint32_t tf = 0; tf <= full; ++tf) {
    const std::uint32_t reveal = mask_v ^ (mask_uv & tf);
    if (reveal != full) {
      ++hidden_tuples;
      continue;
    }
    const int first_sum = std::popcount(pinned_first) + std::popcount(tf);
    const int y0 = first_sum & 1;
    const int half_parity = ((first_sum + y0) >> 1) & 1;
    const int offsets = std::popcount(mask_u & tf) & 1;
    ++tuple_count[y0][offsets ^ pinned_payload_parity ^ half_parity];
  }

  FastTupleScore out;
  const std::int64_t hidden_half = f > 0 ? (std::int64_t{1} << (f - 1)) : 0;
  out.success_count = hidden_tuples * hidden_half +
                      (std::int64_t{1} << f) * (std::max(tuple_count[0][0], tuple_count[0][1]) +
                                                std::max(tuple_count[1][0], tuple_count[1][1]));
  out.denominator = std::int64_t{1} << (2 * f);
  return out;
}

std::vector<int> free_parties(const InstanceEnsemble& ens) {
  std::vector<int> free;
  std::vector<bool> pinned(ens.n(), false);
  for (const auto& pin : ens.pins()) pinned[pin.party] = true;
  for (int i = 0; i < ens.n(); ++i)
    if (!pinned[i]) free.push_back(i);
  return free;
}

std::vector<TwoBitBoolean> expand_tuple(const InstanceEnsemble& ens, const std::vector<int>& free,
                                        std::uint64_t tuple_index) {
  std::vector<TwoBitBoolean> encodings(ens.n(), TwoBitBoolean(0));
  std::uint64_t rest = tuple_index;
  for (int party : free) {
    encodings[party] = TwoBitBoolean(kEvenIndices[rest % 8]);
    rest /= 8;
  }
  return encodings;
}

}  // namespace

Rational strategy_success(const StrategyCC2& s) {
  const InstanceEnsemble ens = enumerate_instances(2);
  const auto& e1 = kEvalTable[s.encode1];
  const auto& e2 = kEvalTable[s.encode2];
  std::int64_t hits = 0;
  ens.for_each_packed([&](const PackedInstance& p) {
    const int c1 = e1[(p.alice_first & 1u) << 1 | (p.alice_second & 1u)];
    const int c2 = e2[((p.alice_first >> 1) & 1u) << 1 | ((p.alice_second >> 1) & 1u)];
    const int d = p.bob_first ? s.decode1 : s.decode0;
    const int b = kEvalTable[d][(c1 << 1) | c2] ^ p.bob_second;
    hits += (b == target_function(p));
  });
  return Rational(hits, static_cast<std::int64_t>(ens.size()));
}

Rational strategy_success(const GeneralStrategy& s, const InstanceEnsemble& ensemble) {
  if (s.n() != ensemble.n())
    throw std::invalid_argument("strategy_success: strategy/ensemble size mismatch");
  std::int64_t hits = 0;
  ensemble.for_each_packed([&](const PackedInstance& p) {
    const std::uint32_t c = message_bits(s.encodings, p);
    const int b = s.decode[p.bob_first][c] ^ p.bob_second;
    hits += (b == target_function(p));
  });
  return Rational(hits, static_cast<std::int64_t>(ensemble.size()));
}

SearchReportCC2 exhaustive_search_cc2(bool restrict_even) {
  const InstanceEnsemble ens = enumerate_instances(2);

  // Per encoding pair, bucket the 32 instances by (y0, message pair) and
  // the bit the decoding must produce; every decoding pair is then scored
  // from the eight bucket counts.
  struct Inst {
    int a1, a2, y0, need;
  };
  std::vector<Inst> inst;
  inst.reserve(ens.size());
  ens.for_each_packed([&](const PackedInstance& p) {
    inst.push_back({static_cast<int>((p.alice_first & 1u) << 1 | (p.alice_second & 1u)),
                    static_cast<int>(((p.alice_first >> 1) & 1u) << 1 | ((p.alice_second >> 1) & 1u)),
                    p.bob_first, target_function(p) ^ p.bob_second});
  });

  const std::array<int, 16> all = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
  const std::vector<int> enc(restrict_even ? std::vector<int>(kEvenIndices.begin(), kEvenIndices.end())
                                           : std::vector<int>(all.begin(), all.end()));

  SearchReportCC2 report;
  std::int64_t best = -1;
  for (int e1 : enc) {
    for (int e2 : enc) {
      std::int64_t cnt[2][4][2] = {};
      for (const Inst& q : inst) {
        const int c1 = kEvalTable[e1][q.a1];
        const int c2 = kEvalTable[e2][q.a2];
        ++cnt[q.y0][(c1 << 1) | c2][q.need];
      }
      for (int d0 = 0; d0 < 16; ++d0) {
        std::int64_t s0 = 0;
        for (int c = 0; c < 4; ++c) s0 += cnt[0][c][kEvalTable[d0][c]];
        for (int d1 = 0; d1 < 16; ++d1) {
          std::int64_t s = s0;
          for (int c = 0; c < 4; ++c) s += cnt[1][c][kEvalTable[d1][c]];
          ++report.examined;
          if (s > best) {
            best = s;
            report.optimal.clear();
            report.optimal_count = 0;
          }
          if (s == best) {
            ++report.optimal_count;
            if (report.optimal.size() < kWitnessCap)
              report.optimal.push_back({e1, e2, d0, d1});
          }
        }
      }
    }
  }
  report.optimum = Rational(best, static_cast<std::int64_t>(ens.size()));
  return report;
}

std::pair<GeneralStrategy, Rational> optimal_decoding(const InstanceEnsemble& ensemble,
                                                      const std::vector<TwoBitBoolean>& encodings) {
  const int n = ensemble.n();
  check_search_n(n);
  if (static_cast<int>(encodings.size()) != n)
    throw std::invalid_argument("optimal_decoding: one encoding per Alice required");

  const std::size_t messages = std::size_t{1} << n;
  std::vector<std::array<std::int64_t, 2>> cnt[2];
  cnt[0].assign(messages, {0, 0});
  cnt[1].assign(messages, {0, 0});
  ensemble.for_each_packed([&](const PackedInstance& p) {
    const std::uint32_t c = message_bits(encodings, p);
    ++cnt[p.bob_first][c][target_function(p) ^ p.bob_second];
  });

  GeneralStrategy strat;
  strat.encodings = encodings;
  std::int64_t hits = 0;
  for (int y0 = 0; y0 < 2; ++y0) {
    strat.decode[y0].resize(messages);
    for (std::size_t c = 0; c < messages; ++c) {
      const auto& bucket = cnt[y0][c];
      strat.decode[y0][c] = bucket[1] > bucket[0] ? 1 : 0;  // ties toward 0
      hits += std::max(bucket[0], bucket[1]);
    }
  }
  return {std::move(strat), Rational(hits, static_cast<std::int64_t>(ensemble.size()))};
}

std::pair<GeneralStrategy, Rational> optimal_decoding(int n,
                                                      const std::vector<TwoBitBoolean>& encodings) {
  return optimal_decoding(enumerate_instances(n), encodings);
}

Rational majority_success_even(const InstanceEnsemble& ensemble,
                               const std::vector<TwoBitBoolean>& encodings) {
  check_search_n(ensemble.n());
  if (static_cast<int>(encodings.size()) != ensemble.n())
    throw std::invalid_argument("majority_success_even: one encoding per Alice required");
  std::vector<TwoBitBoolean> frees;
  for (int party : free_parties(ensemble)) {
    if (!encodings[party].is_even())
      throw std::invalid_argument("majority_success_even: encodings must be even-class");
    frees.push_back(encodings[party]);
  }
  const FastTupleScore sc = score_even_tuple(ensemble, frees);
  return Rational(sc.success_count, sc.denominator);
}

SearchReportGeneral classical_optimum_on(const InstanceEnsemble& ensemble, int threads) {
  check_search_n(ensemble.n());
  if (threads < 1) throw std::invalid_argument("classical_optimum: threads must be >= 1");

  const std::vector<int> free = free_parties(ensemble);
  const int f = static_cast<int>(free.size());
  std::uint64_t tuple_total = 1;
  for (int i = 0; i < f; ++i) tuple_total *= 8;

  struct Partial {
    std::int64_t best = -1;
    std::vector<std::uint64_t> winners;  // tuple indices, capped
    std::uint64_t winner_count = 0;
  };

  std::vector<Partial> parts(static_cast<std::size_t>(threads));
  auto run_range = [&](std::uint64_t begin, std::uint64_t end, Partial& out) {
    std::vector<TwoBitBoolean> frees(f, TwoBitBoolean(0));
    for (std::uint64_t t = begin; t < end; ++t) {
      std::uint64_t rest = t;
      for (int i = 0; i < f; ++i) {
        frees[i] = TwoBitBoolean(kEvenIndices[rest % 8]);
        rest /= 8;
      }
      const FastTupleScore sc = score_even_tuple(ensemble, frees);
      if (sc.success_count > out.best) {
        out.best = sc.success_count;
        out.winners.clear();
        out.winner_count = 0;
      }
      if (sc.success_count == out.best) {
        ++out.winner_count;
        if (out.winners.size() < kWitnessCap) out.winners.push_back(t);
      }
    }
  };

  if (threads == 1) {
    run_range(0, tuple_total, parts[0]);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (tuple_total + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      const std::uint64_t begin = std::min<std::uint64_t>(w * chunk, tuple_total);
      const std::uint64_t end = std::min<std::uint64_t>(begin + chunk, tuple_total);
      pool.emplace_back(run_range, begin, end, std::ref(parts[w]));
    }
    for (auto& th : pool) th.join();
  }

  // Ordered merge keeps witness lists identical for any thread count.
  Partial merged;
  for (const Partial& part : parts) {
    if (part.best > merged.best) {
      merged.best = part.best;
      merged.winners.clear();
      merged.winner_count = 0;
    }
    if (part.best == merged.best && part.best >= 0) {
      merged.winner_count += part.winner_count;
      for (std::uint64_t t : part.winners) {
        if (merged.winners.size() >= kWitnessCap) break;
        merged.winners.push_back(t);
      }
    }
  }

  SearchReportGeneral report;
  report.examined = tuple_total;
  report.optimal_count = merged.winner_count;
  const std::int64_t denominator = std::int64_t{1} << (2 * f);
  report.optimum = Rational(merged.best, denominator);
  report.optimal.reserve(merged.winners.size());
  for (std::uint64_t t : merged.winners) {
    auto [strat, success] = optimal_decoding(ensemble, expand_tuple(ensemble, free, t));
    report.optimal.push_back(std::move(strat));
    if (success != report.optimum)
      throw std::logic_error("classical_optimum: fast and literal scores disagree");
  }
  return report;
}

SearchReportGeneral classical_optimum(int n, int threads) {
  return classical_optimum_on(enumerate_instances(n), threads);
}

Rational mixed_protocol_success(int n, int short_channel_party) {
  if (n < 2 || n > 8) throw std::out_of_range("mixed_protocol_success: n must be in [2, 8]");
  if (short_channel_party < 0 || short_channel_party >= n)
    throw std::invalid_argument("mixed_protocol_success: bad party index");

  const InstanceEnsemble ens = enumerate_instances(n);
  std::int64_t hits = 0;
  ens.for_each_packed([&](const PackedInstance& p) {
    // Bob sees every string except the short party's first bit and
    // recovers it from the promise: all first bits sum to an even number.
    const std::uint32_t known_first = p.alice_first & ~(1u << short_channel_party);
    const int recovered = (std::popcount(known_first) + p.bob_first) & 1;
    PackedInstance seen = p;
    seen.alice_first = known_first | (static_cast<std::uint32_t>(recovered) << short_channel_party);
    hits += (target_function(seen) == target_function(p));
  });
  return Rational(hits, static_cast<std::int64_t>(ens.size()));
}

}  // namespace ccn
