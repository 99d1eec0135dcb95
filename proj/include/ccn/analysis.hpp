#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ccn/rational.hpp"
#include "ccn/strategy.hpp"

namespace ccn {

// Classical success bracket for the n-sender game: the Mermin-game lower
// bound against the 3/4 upper bound; tight for n = 2, 3.
struct BoundsRecord {
  int n = 0;
  Rational lower;
  Rational upper;
  bool tight = false;
};

enum class EntanglementClass { GenuinelyEntangled, IntermediateBiseparable, FullySeparable };

std::string entanglement_class_name(EntanglementClass c);

// One point of the noise analysis.
struct SweepRow {
  int n = 0;
  double p = 0.0;
  double quantum_success = 0.0;
  Rational classical_upper;                   // 3/4
  bool advantage = false;                     // quantum_success > classical_upper
  std::optional<bool> advantage_vs_search;    // against the searched optimum, n <= 6
  EntanglementClass entanglement_class = EntanglementClass::GenuinelyEntangled;
};

// One cell of the 8x8 even-encoding optimum grid: majority-optimal
// decodings and the exact success for that encoding pair.
struct SuccessGridCell {
  int encode1 = 0;
  int encode2 = 0;
  int decode0 = 0;
  int decode1 = 0;
  Rational success;
  bool highlight = false;  // success == 3/4
};

struct SuccessGridReport {
  // Rows/columns in the canonical presentation order of the even class.
  std::array<int, 8> order{};
  std::array<std::array<SuccessGridCell, 8>, 8> cells{};
  bool matches_reference = false;
};

// Classical lower bound inherited from the (n+1)-player Mermin parity game:
// 1/2 + 2^-ceil((n+1)/2).
Rational mermin_lower_bound(int n);

// Diagnostic variant 1/2 + 1/ceil(2^((n+1)/2)); disagrees with the adopted
// bound for odd n+1 (it exceeds 3/4 at n = 2) and is exposed only for
// inspection.
Rational mermin_lower_bound_printed(int n);

BoundsRecord classical_bounds(int n);

// (2-p)/2.
double quantum_success(int n, double noise);

// Noise level where the quantum curve meets the 3/4 bound: 1/2 for all n.
double advantage_threshold(int n);

// Noise thresholds of the white-noise GHZ family: fully separable iff
// p >= 2^n/(2^n+1); genuinely multipartite entangled iff p < 2^n/(2^(n+1)-1).
struct SeparabilityThresholds {
  Rational full_sep;
  Rational genuine;
};

SeparabilityThresholds separability_thresholds(int n);

EntanglementClass classify_noise(int n, double p);

// One SweepRow per grid value; the searched-optimum flag is filled for
// n <= 6. Grid values must lie in [0,1].
std::vector<SweepRow> noise_sweep(int n, const std::vector<double>& p_grid);

// Majority-optimal decodings for all 64 even encoding pairs of the
// two-sender game, checked cell-by-cell against the built-in reference
// values {1/2, 5/8, 3/4}.
SuccessGridReport cc2_success_grid();

// Reference success value for an even encoding pair.
Rational cc2_reference_success(int encode1, int encode2);

}  // namespace ccn
