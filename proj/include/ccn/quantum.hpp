#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "ccn/task.hpp"

namespace ccn {

using Complex = std::complex<double>;

enum class PauliBasis : std::uint8_t { X, Y };
enum class GhzSign : std::uint8_t { Plus, Minus };

// Per-qubit X/Y basis choices. Qubit i of K-1 is Alice i, qubit K-1 is Bob;
// a party measures X when its first bit is 0 and Y when it is 1, so the
// Y-count equals the first-bit sum.
class MeasurementSetting {
 public:
  explicit MeasurementSetting(std::vector<PauliBasis> bases) : bases_(std::move(bases)) {}

  // Y-basis qubits are the set bits of `y_mask`.
  static MeasurementSetting from_mask(int qubit_count, std::uint32_t y_mask);
  static MeasurementSetting from_instance(const PackedInstance& inst, int n);

  int qubit_count() const { return static_cast<int>(bases_.size()); }
  PauliBasis basis(int qubit) const { return bases_[qubit]; }
  int y_count() const;
  std::uint32_t y_mask() const;
  std::string str() const;  // e.g. "XXY"

 private:
  std::vector<PauliBasis> bases_;
};

// Normalized statevector over K qubits; amplitude index bit i is qubit i.
class PureState {
 public:
  PureState(int qubit_count, std::vector<Complex> amplitudes);

  int qubit_count() const { return qubit_count_; }
  const std::vector<Complex>& amplitudes() const { return amp_; }
  Complex amplitude(std::uint64_t index) const { return amp_[index]; }

 private:
  int qubit_count_;
  std::vector<Complex> amp_;
};

// White-noise GHZ mixture (1-p)|G><G| + p (I/2)^K, kept symbolic: all
// statistics are convex blends of the pure-state and uniform distributions.
struct NoisyGHZ {
  NoisyGHZ(int qubit_count, double noise);

  int qubit_count;
  double noise;
};

// Exact joint outcome probabilities; outcome bit 0 means eigenvalue +1.
class OutcomeDistribution {
 public:
  OutcomeDistribution(int qubit_count, std::vector<double> probabilities);

  int qubit_count() const { return qubit_count_; }
  const std::vector<double>& probabilities() const { return prob_; }
  double probability(std::uint64_t outcome) const { return prob_[outcome]; }

  // Total mass of outcomes whose bit-XOR equals `parity`.
  double parity_mass(int parity) const;

 private:
  int qubit_count_;
  std::vector<double> prob_;
};

// (|0...0> +/- |1...1>)/sqrt(2); statevector cap K <= 20.
PureState ghz_state(int qubit_count, GhzSign sign = GhzSign::Plus);

// Image of the state under the tensor product of the chosen Paulis.
PureState apply_pauli_string(const PureState& state, const MeasurementSetting& setting);

// Brute-force oracle: rank-1 eigenprojectors applied per qubit. Cap K <= 12.
OutcomeDistribution joint_distribution_oracle(const PureState& state,
                                              const MeasurementSetting& setting);
OutcomeDistribution joint_distribution_oracle(const NoisyGHZ& state,
                                              const MeasurementSetting& setting);

// Closed form for the noisy GHZ state: with k Y-measurements,
//   P(o) = 2^-K * [1 + (1-p) * (-1)^xor(o) * c(k)],
// where c(k) = (-1)^(k/2) for even k and 0 for odd k.
OutcomeDistribution joint_distribution_analytic(int qubit_count, double noise,
                                                const MeasurementSetting& setting);

// Ensemble-average success of the entanglement protocol on the noisy GHZ
// state; equals (2-p)/2. Supported for 2 <= n <= 16.
double run_protocol_exact(int n, double noise);

struct SampledResult {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::uint64_t error_events = 0;
};

// Seeded Monte-Carlo run: instances drawn uniformly from the promise
// ensemble, outcomes from the analytic distribution. Identical seeds give
// bit-identical results.
SampledResult run_protocol_sampled(int n, double noise, std::uint64_t shots, std::uint64_t seed);

// One row per measurement setting: the GHZ image under the Pauli string is
// +/- the GHZ state for even Y-count (phase (-1)^(k/2)) and +/-i times the
// minus-sign GHZ state for odd Y-count (phase (-1)^((k+1)/2) i).
struct GhzPropertyRow {
  std::uint32_t setting_mask = 0;
  int y_count = 0;
  bool on_minus_state = false;
  Complex measured_phase;
  Complex expected_phase;
  double deviation = 0.0;
  bool ok = false;
};

struct GhzPropertyReport {
  int qubit_count = 0;
  std::vector<GhzPropertyRow> rows;
  bool all_match = false;
  double max_deviation = 0.0;
};

GhzPropertyReport ghz_property_report(int qubit_count);

}  // namespace ccn
