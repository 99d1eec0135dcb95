#include "ccn/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "ccn/boolean.hpp"

namespace ccn {

namespace {

void check_n(int n) {
  if (n < 2) throw std::out_of_range("analysis: n must be >= 2");
}

// Presentation order of the even encodings: constant-ish pair first, then
// the payload-revealing pair, then the conjunction-like rest.
constexpr std::array<int, 8> kGridOrder = {0, 8, 4, 12, 14, 2, 6, 10};

}  // namespace

std::string entanglement_class_name(EntanglementClass c) {
  switch (c) {
    case EntanglementClass::GenuinelyEntangled:
      return "genuinely entangled";
    case EntanglementClass::IntermediateBiseparable:
      return "intermediate/biseparable";
    case EntanglementClass::FullySeparable:
      return "fully separable";
  }
  return "unknown";
}

Rational mermin_lower_bound(int n) {
  check_n(n);
  const int exponent = (n + 2) / 2;  // ceil((n+1)/2)
  if (exponent > 60) return Rational(1, 2);
  return Rational(1, 2) + Rational(1, std::int64_t{1} << exponent);
}

Rational mermin_lower_bound_printed(int n) {
  check_n(n);
  const double value = std::pow(2.0, (n + 1) / 2.0);
  const std::int64_t den = static_cast<std::int64_t>(std::ceil(value - 1e-9));
  return Rational(1, 2) + Rational(1, den);
}

BoundsRecord classical_bounds(int n) {
  BoundsRecord rec;
  rec.n = n;
  rec.lower = mermin_lower_bound(n);
  rec.upper = Rational(3, 4);
  rec.tight = rec.lower == rec.upper;
  return rec;
}

double quantum_success(int n, double noise) {
  check_n(n);
  if (!(noise >= 0.0 && noise <= 1.0))
    throw std::invalid_argument("quantum_success: noise not in [0,1]");
  return (2.0 - noise) / 2.0;
}

double advantage_threshold(int n) {
  check_n(n);
  // (2-p)/2 = 3/4 at p = 1/2, independent of n.
  return 0.5;
}

SeparabilityThresholds separability_thresholds(int n) {
  check_n(n);
  if (n > 60) throw std::out_of_range("separability_thresholds: 2^n overflows the exact ratio");
  const std::int64_t pow2 = std::int64_t{1} << n;
  return {Rational(pow2, pow2 + 1), Rational(pow2, 2 * pow2 - 1)};
}

EntanglementClass classify_noise(int n, double p) {
  const SeparabilityThresholds t = separability_thresholds(n);
  if (p < t.genuine.to_double()) return EntanglementClass::GenuinelyEntangled;
  if (p < t.full_sep.to_double()) return EntanglementClass::IntermediateBiseparable;
  return EntanglementClass::FullySeparable;
}

std::vector<SweepRow> noise_sweep(int n, const std::vector<double>& p_grid) {
  check_n(n);
  for (double p : p_grid)
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("noise_sweep: grid value not in [0,1]");

  std::optional<Rational> searched;
  if (n <= 6) searched = classical_optimum(n).optimum;

  std::vector<SweepRow> rows;
  rows.reserve(p_grid.size());
  const Rational upper(3, 4);
  for (double p : p_grid) {
    SweepRow row;
    row.n = n;
    row.p = p;
    row.quantum_success = quantum_success(n, p);
    row.classical_upper = upper;
    row.advantage = row.quantum_success > upper.to_double();
    if (searched) row.advantage_vs_search = row.quantum_success > searched->to_double();
    row.entanglement_class = classify_noise(n, p);
    rows.push_back(row);
  }
  return rows;
}

Rational cc2_reference_success(int encode1, int encode2) {
  auto kind = [](int m) {
    if (m == 0 || m == 8) return 0;   // message carries no payload information
    if (m == 4 || m == 12) return 1;  // payload enters linearly for both first bits
    return 2;                         // payload visible for only one first-bit value
  };
  if (encode1 % 2 != 0 || encode2 % 2 != 0 || encode1 < 0 || encode1 > 14 || encode2 < 0 ||
      encode2 > 14)
    throw std::invalid_argument("cc2_reference_success: expected even encoding indices");
  const int k1 = kind(encode1);
  const int k2 = kind(encode2);
  if (k1 == 0 || k2 == 0) return Rational(1, 2);
  if (k1 == 1 || k2 == 1) return Rational(3, 4);
  return Rational(5, 8);
}

SuccessGridReport cc2_success_grid() {
  SuccessGridReport report;
  report.order = kGridOrder;
  report.matches_reference = true;
  for (std::size_t r = 0; r < 8; ++r) {
    for (std::size_t c = 0; c < 8; ++c) {
      const int e1 = kGridOrder[r];
      const int e2 = kGridOrder[c];
      const auto [strat, success] =
          optimal_decoding(2, {TwoBitBoolean(e1), TwoBitBoolean(e2)});
      SuccessGridCell cell;
      cell.encode1 = e1;
      cell.encode2 = e2;
      // Message index packs party-1's bit as bit 0 and party-2's as bit 1;
      // the function index wants rows in (c1, c2) = 00, 01, 10, 11 order.
      cell.decode0 = TwoBitBoolean::from_truth_table({strat.decode[0][0], strat.decode[0][2],
                                                      strat.decode[0][1], strat.decode[0][3]})
                         .index();
      cell.decode1 = TwoBitBoolean::from_truth_table({strat.decode[1][0], strat.decode[1][2],
                                                      strat.decode[1][1], strat.decode[1][3]})
                         .index();
      cell.success = success;
      cell.highlight = success == Rational(3, 4);
      if (success != cc2_reference_success(e1, e2)) report.matches_reference = false;
      report.cells[r][c] = cell;
    }
  }
  return report;
}

}  // namespace ccn
