#include "ccn/quantum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

namespace ccn {

namespace {

constexpr int kStatevectorCap = 20;
constexpr int kOracleCap = 12;
constexpr double kNormTolerance = 1e-12;

double kahan_sum(const std::vector<double>& values) {
  double sum = 0.0, carry = 0.0;
  for (double v : values) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

void check_dimensions(const PureState& state, const MeasurementSetting& setting) {
  if (setting.qubit_count() != state.qubit_count())
    throw std::invalid_argument("measurement setting does not match qubit count");
}

// Normalized +1/-1 eigenvectors of X and Y as (|0>, |1>) coefficients.
std::pair<Complex, Complex> eigenvector(PauliBasis basis, int outcome) {
  const double s = 1.0 / std::sqrt(2.0);
  if (basis == PauliBasis::X) return {Complex(s, 0), outcome ? Complex(-s, 0) : Complex(s, 0)};
  return {Complex(s, 0), outcome ? Complex(0, -s) : Complex(0, s)};
}

// c(k): XOR-parity correlator of the pure GHZ state under k Y-measurements.
double ghz_correlator(int y_count) {
  if (y_count % 2 != 0) return 0.0;
  return (y_count / 2) % 2 ? -1.0 : 1.0;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double canonical_unit(std::mt19937_64& rng) {
  // 53 uniform mantissa bits; deterministic across platforms.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

MeasurementSetting MeasurementSetting::from_mask(int qubit_count, std::uint32_t y_mask) {
  std::vector<PauliBasis> bases(qubit_count, PauliBasis::X);
  for (int q = 0; q < qubit_count; ++q)
    if ((y_mask >> q) & 1u) bases[q] = PauliBasis::Y;
  return MeasurementSetting(std::move(bases));
}

MeasurementSetting MeasurementSetting::from_instance(const PackedInstance& inst, int n) {
  std::uint32_t mask = inst.alice_first;
  if (inst.bob_first) mask |= 1u << n;
  return from_mask(n + 1, mask);
}

int MeasurementSetting::y_count() const {
  return static_cast<int>(std::count(bases_.begin(), bases_.end(), PauliBasis::Y));
}

std::uint32_t MeasurementSetting::y_mask() const {
  std::uint32_t mask = 0;
  for (std::size_t q = 0; q < bases_.size(); ++q)
    if (bases_[q] == PauliBasis::Y) mask |= 1u << q;
  return mask;
}

std::string MeasurementSetting::str() const {
  std::string out;
  out.reserve(bases_.size());
  for (PauliBasis b : bases_) out.push_back(b == PauliBasis::X ? 'X' : 'Y');
  return out;
}

PureState::PureState(int qubit_count, std::vector<Complex> amplitudes)
    : qubit_count_(qubit_count), amp_(std::move(amplitudes)) {
  if (qubit_count_ < 1 || qubit_count_ > kStatevectorCap)
    throw std::out_of_range("PureState: qubit count out of range");
  if (amp_.size() != (std::size_t{1} << qubit_count_))
    throw std::invalid_argument("PureState: amplitude count mismatch");
  std::vector<double> sq(amp_.size());
  for (std::size_t i = 0; i < amp_.size(); ++i) sq[i] = std::norm(amp_[i]);
  if (std::abs(kahan_sum(sq) - 1.0) > kNormTolerance)
    throw std::invalid_argument("PureState: not normalized");
}

NoisyGHZ::NoisyGHZ(int qubit_count_in, double noise_in)
    : qubit_count(qubit_count_in), noise(noise_in) {
  if (qubit_count < 1 || qubit_count > kStatevectorCap)
    throw std::out_of_range("NoisyGHZ: qubit count out of range");
  if (!(noise >= 0.0 && noise <= 1.0)) throw std::invalid_argument("NoisyGHZ: noise not in [0,1]");
}

OutcomeDistribution::OutcomeDistribution(int qubit_count, std::vector<double> probabilities)
    : qubit_count_(qubit_count), prob_(std::move(probabilities)) {
  if (prob_.size() != (std::size_t{1} << qubit_count_))
    throw std::invalid_argument("OutcomeDistribution: size mismatch");
  for (double p : prob_)
    if (p < -kNormTolerance) throw std::invalid_argument("OutcomeDistribution: negative mass");
  if (std::abs(kahan_sum(prob_) - 1.0) > kNormTolerance)
    throw std::invalid_argument("OutcomeDistribution: not normalized");
}

double OutcomeDistribution::parity_mass(int parity) const {
  std::vector<double> terms;
  terms.reserve(prob_.size() / 2);
  for (std::size_t o = 0; o < prob_.size(); ++o)
    if ((std::popcount(o) & 1) == parity) terms.push_back(prob_[o]);
  return kahan_sum(terms);
}

PureState ghz_state(int qubit_count, GhzSign sign) {
  if (qubit_count < 1 || qubit_count > kStatevectorCap)
    throw std::out_of_range("ghz_state: qubit count out of range");
  std::vector<Complex> amp(std::size_t{1} << qubit_count, Complex(0, 0));
  const double s = 1.0 / std::sqrt(2.0);
  amp.front() = Complex(s, 0);
  amp.back() = sign == GhzSign::Plus ? Complex(s, 0) : Complex(-s, 0);
  return PureState(qubit_count, std::move(amp));
}

PureState apply_pauli_string(const PureState& state, const MeasurementSetting& setting) {
  check_dimensions(state, setting);
  std::vector<Complex> amp = state.amplitudes();
  const std::size_t dim = amp.size();
  for (int q = 0; q < state.qubit_count(); ++q) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < dim; ++i) {
      if (i & bit) continue;
      Complex& a0 = amp[i];
      Complex& a1 = amp[i | bit];
      if (setting.basis(q) == PauliBasis::X) {
        std::swap(a0, a1);
      } else {
        // Y|0> = i|1>, Y|1> = -i|0>
        const Complex t0 = a0;
        a0 = Complex(0, -1) * a1;
        a1 = Complex(0, 1) * t0;
      }
    }
  }
  return PureState(state.qubit_count(), std::move(amp));
}

OutcomeDistribution joint_distribution_oracle(const PureState& state,
                                              const MeasurementSetting& setting) {
  check_dimensions(state, setting);
  const int K = state.qubit_count();
  if (K > kOracleCap) throw std::out_of_range("joint_distribution_oracle: qubit cap exceeded");
  const std::size_t dim = std::size_t{1} << K;
  std::vector<double> probs(dim, 0.0);
  std::vector<Complex> work;
  for (std::size_t o = 0; o < dim; ++o) {
    work = state.amplitudes();
    for (int q = 0; q < K; ++q) {
      const auto [a0, a1] = eigenvector(setting.basis(q), static_cast<int>((o >> q) & 1u));
      const std::size_t bit = std::size_t{1} << q;
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & bit) continue;
        const Complex inner = std::conj(a0) * work[i] + std::conj(a1) * work[i | bit];
        work[i] = a0 * inner;
        work[i | bit] = a1 * inner;
      }
    }
    std::vector<double> sq(dim);
    for (std::size_t i = 0; i < dim; ++i) sq[i] = std::norm(work[i]);
    probs[o] = kahan_sum(sq);
  }
  return OutcomeDistribution(K, std::move(probs));
}

OutcomeDistribution joint_distribution_oracle(const NoisyGHZ& state,
                                              const MeasurementSetting& setting) {
  const OutcomeDistribution pure =
      joint_distribution_oracle(ghz_state(state.qubit_count), setting);
  const double uniform = 1.0 / static_cast<double>(std::size_t{1} << state.qubit_count);
  std::vector<double> probs(pure.probabilities());
  for (double& p : probs) p = (1.0 - state.noise) * p + state.noise * uniform;
  return OutcomeDistribution(state.qubit_count, std::move(probs));
}

OutcomeDistribution joint_distribution_analytic(int qubit_count, double noise,
                                                const MeasurementSetting& setting) {
  if (qubit_count < 1) throw std::out_of_range("joint_distribution_analytic: bad qubit count");
  if (setting.qubit_count() != qubit_count)
    throw std::invalid_argument("joint_distribution_analytic: setting size mismatch");
  if (!(noise >= 0.0 && noise <= 1.0))
    throw std::invalid_argument("joint_distribution_analytic: noise not in [0,1]");
  const double c = ghz_correlator(setting.y_count());
  const std::size_t dim = std::size_t{1} << qubit_count;
  const double base = 1.0 / static_cast<double>(dim);
  std::vector<double> probs(dim);
  for (std::size_t o = 0; o < dim; ++o) {
    const double sign = (std::popcount(o) & 1) ? -1.0 : 1.0;
    probs[o] = base * (1.0 + (1.0 - noise) * sign * c);
  }
  return OutcomeDistribution(qubit_count, std::move(probs));
}

double run_protocol_exact(int n, double noise) {
  if (n < 2 || n > 16) throw std::out_of_range("run_protocol_exact: n must be in [2, 16]");
  if (!(noise >= 0.0 && noise <= 1.0))
    throw std::invalid_argument("run_protocol_exact: noise not in [0,1]");
  const int K = n + 1;
  // The promise makes the Y-count even; instances with the same Y-count k
  // share the same conditional success, so the ensemble average reduces to
  // binomial weights over k. C(K,k) counts the even-weight first-bit
  // tuples, 2^n their total.
  const double denom = std::pow(2.0, n);
  double success = 0.0;
  for (int k = 0; k <= K; k += 2) {
    const MeasurementSetting setting = MeasurementSetting::from_mask(K, (1u << k) - 1u);
    const OutcomeDistribution dist = joint_distribution_analytic(K, noise, setting);
    const int target = parity_indicator(static_cast<std::uint64_t>(k) / 2);
    success += binomial(K, k) / denom * dist.parity_mass(target);
  }
  return success;
}

SampledResult run_protocol_sampled(int n, double noise, std::uint64_t shots, std::uint64_t seed) {
  if (n < 2 || n > 16) throw std::out_of_range("run_protocol_sampled: n must be in [2, 16]");
  if (!(noise >= 0.0 && noise <= 1.0))
    throw std::invalid_argument("run_protocol_sampled: noise not in [0,1]");
  if (shots < 1) throw std::invalid_argument("run_protocol_sampled: shots must be >= 1");

  const int K = n + 1;
  // Even-parity outcome mass of the analytic distribution, per Y-count.
  std::vector<double> even_mass(K + 1, -1.0);
  for (int k = 0; k <= K; k += 2) {
    const MeasurementSetting setting = MeasurementSetting::from_mask(K, (1u << k) - 1u);
    even_mass[k] = joint_distribution_analytic(K, noise, setting).parity_mass(0);
  }

  std::mt19937_64 rng(seed);
  std::uint64_t hits = 0;
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    const std::uint64_t r = rng();
    PackedInstance inst;
    inst.alice_first = static_cast<std::uint32_t>(r & ((1u << n) - 1u));
    inst.alice_second = static_cast<std::uint32_t>((r >> n) & ((1u << n) - 1u));
    inst.bob_second = static_cast<int>((r >> (2 * n)) & 1u);
    inst.bob_first = std::popcount(inst.alice_first) & 1;
    const int k = std::popcount(inst.alice_first) + inst.bob_first;

    // Outcome sampled from the analytic distribution: the parity class by
    // its mass, then uniform within the class.
    const int parity = canonical_unit(rng) < even_mass[k] ? 0 : 1;
    const std::uint64_t partial = rng() & ((std::uint64_t{1} << (K - 1)) - 1u);
    const int fix = (std::popcount(partial) & 1) ^ parity;
    const std::uint64_t outcome = partial | (static_cast<std::uint64_t>(fix) << (K - 1));

    // Bob's output: XOR of all communicated bits, his payload bit, and his
    // own outcome; equals outcome-parity xor payload-parity.
    const int payload_parity = (std::popcount(inst.alice_second) + inst.bob_second) & 1;
    const int b = (std::popcount(outcome) & 1) ^ payload_parity;
    hits += (b == target_function(inst));
  }

  SampledResult out;
  out.shots = shots;
  out.seed = seed;
  out.error_events = shots - hits;
  out.mean = static_cast<double>(hits) / static_cast<double>(shots);
  out.std_error = std::sqrt(out.mean * (1.0 - out.mean) / static_cast<double>(shots));
  return out;
}

GhzPropertyReport ghz_property_report(int qubit_count) {
  if (qubit_count < 1 || qubit_count > kOracleCap)
    throw std::out_of_range("ghz_property_report: qubit cap exceeded");
  constexpr double kPhaseTolerance = 1e-10;
  const PureState plus = ghz_state(qubit_count, GhzSign::Plus);
  const PureState minus = ghz_state(qubit_count, GhzSign::Minus);

  GhzPropertyReport report;
  report.qubit_count = qubit_count;
  report.all_match = true;
  const std::size_t last = (std::size_t{1} << qubit_count) - 1;
  for (std::uint32_t mask = 0; mask <= last; ++mask) {
    const MeasurementSetting setting = MeasurementSetting::from_mask(qubit_count, mask);
    const PureState image = apply_pauli_string(plus, setting);
    const int k = setting.y_count();

    GhzPropertyRow row;
    row.setting_mask = mask;
    row.y_count = k;
    row.on_minus_state = (k % 2 != 0);
    if (k % 2 == 0) {
      row.expected_phase = Complex((k / 2) % 2 ? -1.0 : 1.0, 0.0);
    } else {
      row.expected_phase = Complex(0.0, ((k + 1) / 2) % 2 ? -1.0 : 1.0);
    }

    const PureState& ref = row.on_minus_state ? minus : plus;
    const Complex overlap = std::conj(ref.amplitude(0)) * image.amplitude(0) +
                            std::conj(ref.amplitude(last)) * image.amplitude(last);
    // Residual support off the reference ray, by explicit subtraction: the
    // shortcut sqrt(1 - |overlap|^2) would lose half the precision.
    std::vector<double> leftover(image.amplitudes().size());
    for (std::size_t i = 0; i < leftover.size(); ++i)
      leftover[i] = std::norm(image.amplitude(i) - overlap * ref.amplitude(i));
    const double residual = std::sqrt(kahan_sum(leftover));
    row.measured_phase = overlap;
    row.deviation = std::max(std::abs(overlap - row.expected_phase), residual);
    row.ok = row.deviation <= kPhaseTolerance;
    report.all_match = report.all_match && row.ok;
    report.max_deviation = std::max(report.max_deviation, row.deviation);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace ccn
