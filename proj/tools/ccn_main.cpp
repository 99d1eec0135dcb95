// Command-line front end: reproducible experiments over the n-sender
// communication game with machine-readable output (pretty | json | csv).
// Exit codes: 0 success, 1 validation error, 2 invariant mismatch.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccn/analysis.hpp"
#include "ccn/quantum.hpp"
#include "ccn/strategy.hpp"
#include "ccn/task.hpp"

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;
constexpr int kExitValidation = 1;
constexpr int kExitMismatch = 2;

// Shortest round-tripping decimal form, locale-independent.
std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fmt(const ccn::Rational& r) { return r.str() + " (" + fmt(r.to_double()) + ")"; }

json rational_json(const ccn::Rational& r) {
  return json{{"fraction", r.str()}, {"value", r.to_double()}};
}

struct OutputSink {
  std::string format = "pretty";
  std::string path;  // empty = stdout

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
  }
};

void add_common_flags(CLI::App* cmd, OutputSink& sink, int& threads) {
  cmd->add_option("--format", sink.format, "Output format")
      ->check(CLI::IsMember({"pretty", "json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--output", sink.path, "Write the report to a file instead of stdout");
  cmd->add_option("--threads", threads, "Worker threads for searches (never changes results)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int steps = 0;

  std::vector<double> values() const {
    std::vector<double> v;
    v.reserve(steps);
    if (steps == 1) {
      v.push_back(start);
      return v;
    }
    for (int i = 0; i < steps; ++i)
      v.push_back(start + (static_cast<double>(i) * (stop - start)) / (steps - 1));
    return v;
  }
};

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  std::istringstream in(text);
  std::string a, b, c;
  if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, c))
    throw std::invalid_argument("grid spec must be start:stop:steps");
  std::size_t used = 0;
  try {
    g.start = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument("");
    g.stop = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument("");
    g.steps = std::stoi(c, &used);
    if (used != c.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("grid spec must be start:stop:steps with numeric fields");
  }
  if (g.steps < 1) throw std::invalid_argument("grid needs at least one step");
  if (!(g.start >= 0.0 && g.stop <= 1.0 && g.start <= g.stop))
    throw std::invalid_argument("grid must satisfy 0 <= start <= stop <= 1");
  if (g.steps == 1 && g.start != g.stop)
    throw std::invalid_argument("single-step grid requires start == stop");
  return g;
}

// ---------------------------------------------------------------- quantum

int cmd_quantum(int n, double p, std::uint64_t shots, std::uint64_t seed,
                const OutputSink& sink) {
  const double exact = ccn::run_protocol_exact(n, p);
  std::optional<ccn::SampledResult> sampled;
  if (shots > 0) sampled = ccn::run_protocol_sampled(n, p, shots, seed);

  std::string text;
  if (sink.format == "json") {
    json j{{"schema_version", kSchemaVersion}, {"command", "quantum"},
           {"n", n},                           {"p", p},
           {"exact_success", exact},           {"sampled", nullptr}};
    if (sampled)
      j["sampled"] = json{{"shots", sampled->shots},
                          {"seed", sampled->seed},
                          {"mean", sampled->mean},
                          {"std_error", sampled->std_error},
                          {"error_events", sampled->error_events}};
    text = j.dump(2) + "\n";
  } else if (sink.format == "csv") {
    std::ostringstream out;
    out << "n,p,exact_success,shots,seed,sampled_mean,sampled_std_error,error_events\n";
    out << n << ',' << fmt(p) << ',' << fmt(exact) << ',';
    if (sampled)
      out << sampled->shots << ',' << sampled->seed << ',' << fmt(sampled->mean) << ','
          << fmt(sampled->std_error) << ',' << sampled->error_events;
    else
      out << "0,,,,";
    out << '\n';
    text = out.str();
  } else {
    std::ostringstream out;
    out << "entanglement protocol  n=" << n << "  p=" << fmt(p) << "\n";
    out << "  exact success  " << fmt(exact) << "\n";
    if (sampled) {
      out << "  sampled        mean " << fmt(sampled->mean) << "  std error "
          << fmt(sampled->std_error) << "  (shots " << sampled->shots << ", seed "
          << sampled->seed << ", errors " << sampled->error_events << ")\n";
    }
    text = out.str();
  }
  sink.write(text);
  return 0;
}

// --------------------------------------------------------------- classical

json strategy_json(const ccn::GeneralStrategy& s) {
  json enc = json::array();
  for (const auto& e : s.encodings) enc.push_back(e.index());
  json dec = json::array();
  for (int y0 = 0; y0 < 2; ++y0) {
    json table = json::array();
    for (std::uint8_t bit : s.decode[y0]) table.push_back(static_cast<int>(bit));
    dec.push_back(table);
  }
  return json{{"encodings", enc}, {"decode", dec}};
}

int cmd_classical(int n, int threads, const OutputSink& sink) {
  const ccn::SearchReportGeneral even = ccn::classical_optimum(n, threads);
  std::optional<ccn::SearchReportCC2> full;
  std::optional<ccn::SearchReportCC2> restricted;
  if (n == 2) {
    full = ccn::exhaustive_search_cc2(false);
    restricted = ccn::exhaustive_search_cc2(true);
  }
  const ccn::BoundsRecord bounds = ccn::classical_bounds(n);
  const ccn::Rational best = full ? full->optimum : even.optimum;
  const bool perfect = best == ccn::Rational(1);

  std::string text;
  if (sink.format == "json") {
    json j{{"schema_version", kSchemaVersion},
           {"command", "classical"},
           {"n", n},
           {"optimum", rational_json(best)},
           {"perfect_strategy_exists", perfect},
           {"bounds",
            {{"lower", rational_json(bounds.lower)},
             {"upper", rational_json(bounds.upper)},
             {"tight", bounds.tight}}}};
    json ev{{"optimum", rational_json(even.optimum)},
            {"examined", even.examined},
            {"optimal_count", even.optimal_count},
            {"witnesses", json::array()}};
    for (const auto& s : even.optimal) ev["witnesses"].push_back(strategy_json(s));
    j["even_majority_search"] = ev;
    j["full_search"] = nullptr;
    j["even_restricted_search"] = nullptr;
    if (full) {
      auto cc2_json = [](const ccn::SearchReportCC2& r) {
        json w = json::array();
        for (const auto& s : r.optimal)
          w.push_back(json{{"encode1", s.encode1},
                           {"encode2", s.encode2},
                           {"decode0", s.decode0},
                           {"decode1", s.decode1}});
        return json{{"optimum", rational_json(r.optimum)},
                    {"examined", r.examined},
                    {"optimal_count", r.optimal_count},
                    {"witnesses", w}};
      };
      j["full_search"] = cc2_json(*full);
      j["even_restricted_search"] = cc2_json(*restricted);
    }
    text = j.dump(2) + "\n";
  } else if (sink.format == "csv") {
    std::ostringstream out;
    out << "n,search,optimum_fraction,optimum,examined,optimal_count\n";
    if (full) {
      out << n << ",full," << full->optimum.str() << ',' << fmt(full->optimum.to_double()) << ','
          << full->examined << ',' << full->optimal_count << '\n';
      out << n << ",even_restricted," << restricted->optimum.str() << ','
          << fmt(restricted->optimum.to_double()) << ',' << restricted->examined << ','
          << restricted->optimal_count << '\n';
    }
    out << n << ",even_majority," << even.optimum.str() << ',' << fmt(even.optimum.to_double())
        << ',' << even.examined << ',' << even.optimal_count << '\n';
    text = out.str();
  } else {
    std::ostringstream out;
    out << "classical one-bit-per-sender search  n=" << n << "\n";
    if (full) {
      out << "  full search       optimum " << fmt(full->optimum) << "  examined "
          << full->examined << "  optimal " << full->optimal_count << "\n";
      out << "  even restricted   optimum " << fmt(restricted->optimum) << "  examined "
          << restricted->examined << "  optimal " << restricted->optimal_count << "\n";
    }
    out << "  even + majority   optimum " << fmt(even.optimum) << "  examined " << even.examined
        << "  optimal " << even.optimal_count << "\n";
    out << "  bounds            lower " << fmt(bounds.lower) << "  upper " << fmt(bounds.upper)
        << (bounds.tight ? "  (tight)" : "") << "\n";
    out << "  perfect strategy  " << (perfect ? "FOUND" : "none") << "\n";
    if (!even.optimal.empty()) {
      out << "  witness encodings";
      for (const auto& e : even.optimal.front().encodings) out << ' ' << e.index();
      out << "  (" << std::min<std::size_t>(even.optimal.size(), ccn::kWitnessCap)
          << " witnesses kept)\n";
    }
    text = out.str();
  }
  sink.write(text);
  return 0;
}

// ------------------------------------------------------------------ sweep

int cmd_sweep(int n, const GridSpec& grid, const OutputSink& sink) {
  const std::vector<ccn::SweepRow> rows = ccn::noise_sweep(n, grid.values());

  std::string text;
  if (sink.format == "json") {
    json j{{"schema_version", kSchemaVersion},
           {"command", "sweep"},
           {"n", n},
           {"grid", {{"start", grid.start}, {"stop", grid.stop}, {"steps", grid.steps}}},
           {"rows", json::array()}};
    for (const auto& row : rows) {
      json r{{"n", row.n},
             {"p", row.p},
             {"quantum_success", row.quantum_success},
             {"classical_upper", rational_json(row.classical_upper)},
             {"advantage", row.advantage},
             {"advantage_vs_search", nullptr},
             {"entanglement_class", ccn::entanglement_class_name(row.entanglement_class)}};
      if (row.advantage_vs_search) r["advantage_vs_search"] = *row.advantage_vs_search;
      j["rows"].push_back(r);
    }
    text = j.dump(2) + "\n";
  } else if (sink.format == "csv") {
    std::ostringstream out;
    out << "n,p,quantum_success,classical_upper,advantage,entanglement_class\n";
    for (const auto& row : rows) {
      out << row.n << ',' << fmt(row.p) << ',' << fmt(row.quantum_success) << ','
          << fmt(row.classical_upper.to_double()) << ',' << (row.advantage ? "true" : "false")
          << ',' << ccn::entanglement_class_name(row.entanglement_class) << '\n';
    }
    text = out.str();
  } else {
    std::ostringstream out;
    out << "noise sweep  n=" << n << "\n";
    out << "  p        quantum  advantage  class\n";
    for (const auto& row : rows) {
      out << "  " << fmt(row.p) << "  " << fmt(row.quantum_success) << "  "
          << (row.advantage ? "yes" : "no ") << "  "
          << ccn::entanglement_class_name(row.entanglement_class) << "\n";
    }
    text = out.str();
  }
  sink.write(text);
  return 0;
}

// ----------------------------------------------------------------- table1

int cmd_table1(const OutputSink& sink) {
  const ccn::SuccessGridReport report = ccn::cc2_success_grid();

  std::string text;
  if (sink.format == "json") {
    json j{{"schema_version", kSchemaVersion},
           {"command", "table1"},
           {"order", report.order},
           {"matches_reference", report.matches_reference},
           {"cells", json::array()}};
    for (const auto& row : report.cells)
      for (const auto& cell : row)
        j["cells"].push_back(json{{"encode1", cell.encode1},
                                  {"encode2", cell.encode2},
                                  {"decode0", cell.decode0},
                                  {"decode1", cell.decode1},
                                  {"success", rational_json(cell.success)},
                                  {"highlight", cell.highlight}});
    text = j.dump(2) + "\n";
  } else if (sink.format == "csv") {
    std::ostringstream out;
    out << "encode1,encode2,decode0,decode1,success,highlight\n";
    for (const auto& row : report.cells)
      for (const auto& cell : row)
        out << cell.encode1 << ',' << cell.encode2 << ',' << cell.decode0 << ',' << cell.decode1
            << ',' << cell.success.str() << ',' << (cell.highlight ? "true" : "false") << '\n';
    text = out.str();
  } else {
    std::ostringstream out;
    out << "optimal success per even encoding pair (* marks 3/4)\n";
    out << "        ";
    for (int e2 : report.order) out << " E2=" << e2 << (e2 < 10 ? " " : "") << "       ";
    out << "\n";
    for (const auto& row : report.cells) {
      out << "  E1=" << row[0].encode1 << (row[0].encode1 < 10 ? " " : "");
      for (const auto& cell : row) {
        out << "  D" << cell.decode0 << ",D" << cell.decode1 << " " << cell.success.str()
            << (cell.highlight ? "*" : " ");
      }
      out << "\n";
    }
    out << (report.matches_reference ? "all 64 cells match the reference values\n"
                                     : "MISMATCH against reference values\n");
    text = out.str();
  }
  sink.write(text);
  return report.matches_reference ? 0 : kExitMismatch;
}

// ----------------------------------------------------------------- verify

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<CheckResult> run_verification(bool inject_fault) {
  std::vector<CheckResult> checks;
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    checks.push_back({name, pass, detail});
  };

  {
    bool ok = true;
    double worst = 0.0;
    for (int k = 2; k <= 6; ++k) {
      const auto rep = ccn::ghz_property_report(k);
      ok = ok && rep.all_match;
      worst = std::max(worst, rep.max_deviation);
    }
    add("ghz-phase-property", ok, "K=2..6 max deviation " + fmt(worst));
  }
  {
    double worst = 0.0;
    for (int k = 1; k <= 6; ++k) {
      for (double p : {0.0, 0.3, 1.0}) {
        const ccn::NoisyGHZ state(k, p);
        for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
          const auto setting = ccn::MeasurementSetting::from_mask(k, mask);
          const auto oracle = ccn::joint_distribution_oracle(state, setting);
          const auto analytic = ccn::joint_distribution_analytic(k, p, setting);
          for (std::size_t o = 0; o < oracle.probabilities().size(); ++o)
            worst = std::max(worst,
                             std::abs(oracle.probability(o) - analytic.probability(o)));
        }
      }
    }
    add("analytic-oracle-agreement", worst < 1e-10, "K<=6 max deviation " + fmt(worst));
  }
  {
    bool ok = true;
    for (int k = 2; k <= 6; ++k) {
      for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        const auto setting = ccn::MeasurementSetting::from_mask(k, mask);
        const auto dist = ccn::joint_distribution_analytic(k, 0.0, setting);
        const int ys = setting.y_count();
        if (ys % 2 == 0) {
          const int target = ccn::parity_indicator(static_cast<std::uint64_t>(ys) / 2);
          ok = ok && std::abs(dist.parity_mass(target) - 1.0) < 1e-12;
        } else {
          ok = ok && std::abs(dist.parity_mass(0) - 0.5) < 1e-12;
        }
      }
    }
    add("outcome-parity-law", ok, "noiseless XOR deterministic for even Y-count");
  }
  {
    double worst = 0.0;
    for (int n = 2; n <= 5; ++n) {
      const double base = ccn::run_protocol_exact(n, 0.0);
      for (double p : {0.0, 0.25, 0.5, 0.75, 1.0})
        worst = std::max(worst, std::abs(ccn::run_protocol_exact(n, p) -
                                         ((1.0 - p) * base + p * 0.5)));
    }
    add("noise-linearity", worst < 1e-12, "max deviation " + fmt(worst));
  }
  {
    bool ok = true;
    const ccn::Rational expected = inject_fault ? ccn::Rational(1, 2) : ccn::Rational(1);
    for (int n = 2; n <= 5; ++n) ok = ok && ccn::mixed_protocol_success(n) == expected;
    add(inject_fault ? "mixed-protocol-exact (fault injected)" : "mixed-protocol-exact", ok,
        "n=2..5 success 1");
  }
  {
    bool ok = true;
    for (int n = 3; n <= 5; ++n) {
      const auto full = ccn::enumerate_instances(n);
      std::vector<ccn::InstanceEnsemble::Pin> pins;
      for (int j = 2; j < n; ++j) pins.push_back({j, {0, 0}});
      const auto sub = ccn::restrict_to_subtask(full, pins);
      ok = ok && sub.size() == 32;
      const auto cc2 = ccn::enumerate_instances(2);
      for (std::uint64_t i = 0; ok && i < sub.size(); ++i) {
        const ccn::TaskInstance inst = sub.instance(i);
        ccn::TaskInstance two;
        two.alice = {inst.alice[0], inst.alice[1]};
        two.bob = inst.bob;
        ok = ok && ccn::target_function(inst) == ccn::target_function(two);
      }
    }
    add("subtask-reduction", ok, "pinned tails reproduce the two-sender target");
  }
  {
    bool ok = true;
    for (int n : {3, 4}) {
      const auto full = ccn::enumerate_instances(n);
      std::vector<ccn::InstanceEnsemble::Pin> pins;
      for (int j = 2; j < n; ++j) pins.push_back({j, {0, 0}});
      const auto report = ccn::classical_optimum_on(ccn::restrict_to_subtask(full, pins));
      ok = ok && report.optimum == ccn::Rational(3, 4);
    }
    add("pinned-subtask-optimum", ok, "1-bit channels capped at 3/4 on the pinned sub-task");
  }
  {
    const auto full = ccn::exhaustive_search_cc2(false);
    const auto even = ccn::exhaustive_search_cc2(true);
    const auto majority = ccn::classical_optimum(2);
    const bool ok = full.optimum == even.optimum && even.optimum == majority.optimum;
    add("cc2-search-reduction", ok,
        "full " + full.optimum.str() + ", even " + even.optimum.str() + ", majority " +
            majority.optimum.str());
  }
  {
    const auto s1 = ccn::run_protocol_sampled(2, 0.3, 20000, 12345);
    const auto s2 = ccn::run_protocol_sampled(2, 0.3, 20000, 12345);
    const double exact = ccn::run_protocol_exact(2, 0.3);
    const bool ok = s1.mean == s2.mean && std::abs(s1.mean - exact) <= 4.0 * s1.std_error;
    add("sampled-consistency", ok,
        "mean " + fmt(s1.mean) + " vs exact " + fmt(exact) + " (4-sigma band)");
  }
  return checks;
}

int cmd_verify(bool inject_fault, int ghz_k, const OutputSink& sink) {
  std::ostringstream out;
  json jout{{"schema_version", kSchemaVersion}, {"command", "verify"}};

  if (ghz_k > 0) {
    const auto rep = ccn::ghz_property_report(ghz_k);
    if (sink.format == "json") {
      json rows = json::array();
      for (const auto& row : rep.rows) {
        const auto setting = ccn::MeasurementSetting::from_mask(ghz_k, row.setting_mask);
        rows.push_back(json{{"setting", setting.str()},
                            {"y_count", row.y_count},
                            {"image", row.on_minus_state ? "minus" : "plus"},
                            {"phase_re", row.measured_phase.real()},
                            {"phase_im", row.measured_phase.imag()},
                            {"deviation", row.deviation},
                            {"ok", row.ok}});
      }
      jout["ghz_table"] = json{{"qubits", ghz_k}, {"rows", rows}};
    } else {
      out << "GHZ phase table  K=" << ghz_k << "\n";
      for (const auto& row : rep.rows) {
        const auto setting = ccn::MeasurementSetting::from_mask(ghz_k, row.setting_mask);
        out << "  " << setting.str() << "  Y-count " << row.y_count << "  image "
            << (row.on_minus_state ? "minus" : "plus ") << "  phase ("
            << fmt(row.measured_phase.real()) << ", " << fmt(row.measured_phase.imag()) << ")  "
            << (row.ok ? "ok" : "MISMATCH") << "\n";
      }
    }
  }

  const std::vector<CheckResult> checks = run_verification(inject_fault);
  bool all = true;
  for (const auto& c : checks) all = all && c.pass;

  std::string text;
  if (sink.format == "json") {
    jout["checks"] = json::array();
    for (const auto& c : checks)
      jout["checks"].push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    jout["all_pass"] = all;
    text = jout.dump(2) + "\n";
  } else if (sink.format == "csv") {
    std::ostringstream csv;
    csv << "check,status,detail\n";
    for (const auto& c : checks)
      csv << c.name << ',' << (c.pass ? "pass" : "fail") << ",\"" << c.detail << "\"\n";
    text = csv.str();
  } else {
    for (const auto& c : checks)
      out << (c.pass ? "[ok]   " : "[FAIL] ") << c.name << "  (" << c.detail << ")\n";
    out << (all ? "all checks passed\n" : "some checks FAILED\n");
    text = out.str();
  }
  sink.write(text);
  return all ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and strategy search for the n-sender parity-promise "
               "communication game"};
  app.require_subcommand(1);

  OutputSink sink;
  int threads = 1;

  int q_n = 2;
  double q_p = 0.0;
  std::uint64_t q_shots = 0;
  std::uint64_t q_seed = 1;
  CLI::App* quantum = app.add_subcommand("quantum", "Entanglement protocol success, exact and sampled");
  quantum->add_option("--n", q_n, "Number of senders")->required();
  quantum->add_option("--p", q_p, "White-noise weight in [0,1]")->required();
  quantum->add_option("--shots", q_shots, "Monte-Carlo shots (0 = exact only)");
  quantum->add_option("--seed", q_seed, "64-bit RNG seed")->capture_default_str();
  add_common_flags(quantum, sink, threads);

  int c_n = 2;
  CLI::App* classical = app.add_subcommand("classical", "Exhaustive classical strategy search");
  classical->add_option("--n", c_n, "Number of senders (2..6)")->required();
  add_common_flags(classical, sink, threads);

  int s_n = 2;
  std::string s_grid = "0:1:11";
  CLI::App* sweep = app.add_subcommand("sweep", "Noise sweep: quantum curve vs classical bound");
  sweep->add_option("--n", s_n, "Number of senders")->required();
  sweep->add_option("--p-grid", s_grid, "Grid start:stop:steps, inclusive endpoints")
      ->capture_default_str();
  add_common_flags(sweep, sink, threads);

  CLI::App* table1 = app.add_subcommand(
      "table1", "8x8 grid of optimal success for even encoding pairs, checked against reference");
  add_common_flags(table1, sink, threads);

  bool inject_fault = false;
  int ghz_k = 0;
  CLI::App* verify = app.add_subcommand("verify", "Run the library's invariant suite");
  verify->add_option("--ghz-k", ghz_k, "Also print the GHZ phase table for K qubits (1..12)");
  verify->add_flag("--inject-fault", inject_fault)->group("");  // harness self-test
  add_common_flags(verify, sink, threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (quantum->parsed()) return cmd_quantum(q_n, q_p, q_shots, q_seed, sink);
    if (classical->parsed()) return cmd_classical(c_n, threads, sink);
    if (sweep->parsed()) return cmd_sweep(s_n, parse_grid(s_grid), sink);
    if (table1->parsed()) return cmd_table1(sink);
    if (verify->parsed()) {
      if (ghz_k < 0 || ghz_k > 12) throw std::invalid_argument("--ghz-k must be in 1..12");
      return cmd_verify(inject_fault, ghz_k, sink);
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
