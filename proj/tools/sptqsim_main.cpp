// sptqsim: command-line front end for the single-photon two-qubit optical
// simulator. Subcommands: gates-verify, run, sweep, analyze, bench, plot.
// Exit codes: 0 success, 1 runtime/verification failure, 2 usage/parse error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sptq/benchdsl.hpp"
#include "sptq/csvio.hpp"
#include "sptq/deutsch.hpp"
#include "sptq/labsim.hpp"
#include "sptq/optics.hpp"
#include "sptq/svgplot.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

constexpr const char* kSeedEnvVar = "SPTQSIM_SEED";

std::string trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return std::string(s);
}

std::optional<double> parse_strict_double(const std::string& text) {
  if (text.empty()) return std::nullopt;
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

/// Radians, either as a decimal number or as a pi multiple: `pi`, `-pi`,
/// `0.5pi`, `2pi`. Proper phase points stay exactly representable this way.
std::optional<double> parse_phase(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.size() >= 2 && text.compare(text.size() - 2, 2, "pi") == 0) {
    const std::string prefix = trim(text.substr(0, text.size() - 2));
    if (prefix.empty() || prefix == "+") return std::numbers::pi;
    if (prefix == "-") return -std::numbers::pi;
    if (const auto mult = parse_strict_double(prefix)) {
      return *mult * std::numbers::pi;
    }
    return std::nullopt;
  }
  return parse_strict_double(text);
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv(kSeedEnvVar)) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return value;
    std::cerr << "warning: ignoring malformed " << kSeedEnvVar << "='" << env
              << "'\n";
  }
  return 42;
}

std::string describe(sptq::OracleKind kind) {
  using sptq::OracleKind;
  switch (kind) {
    case OracleKind::ConstantZero: return "constant: f(x) = 0";
    case OracleKind::ConstantOne: return "constant: f(x) = 1";
    case OracleKind::BalancedIdentity: return "balanced: f(x) = x";
    case OracleKind::BalancedInverse: return "balanced: f(x) = inv(x)";
  }
  return "?";
}

std::string gate_label(sptq::OracleKind kind) {
  using sptq::OracleKind;
  switch (kind) {
    case OracleKind::ConstantZero: return "I";
    case OracleKind::ConstantOne: return "NOT";
    case OracleKind::BalancedIdentity: return "CNOT";
    case OracleKind::BalancedInverse: return "Z-CNOT";
  }
  return "?";
}

std::string config_label(const sptq::SagnacConfig& cfg) {
  std::string out = "sagnac(pbs=";
  out += cfg.pbs_present ? "on" : "off";
  out += ", dp=";
  out += cfg.dp == sptq::DoveAngle::Plus45 ? "+45" : "-45";
  out += ")";
  return out;
}

std::string prob12(double p) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12f", p);
  return buf;
}

// ---------------------------------------------------------------------------
// gates-verify

struct CheckList {
  bool all_pass = true;
  int total = 0;

  void add(const std::string& name, bool pass, const std::string& detail = "") {
    ++total;
    all_pass = all_pass && pass;
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << name;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << "\n";
  }
};

int cmd_gates_verify(bool inject_dp_fault) {
  using namespace sptq;
  CheckList checks;

  int table_matches = 0;
  for (OracleKind kind : kAllOracleKinds) {
    SagnacConfig cfg = config_for(kind);
    if (inject_dp_fault && kind == OracleKind::BalancedIdentity) {
      cfg.dp = cfg.dp == DoveAngle::Plus45 ? DoveAngle::Minus45 : DoveAngle::Plus45;
    }
    const Unitary4 bench = sagnac_unitary(cfg);
    const Unitary4 ideal = oracle_unitary(kind);
    const double diff = max_abs_diff(bench, ideal);
    const bool exact = diff == 0.0 && is_permutation_matrix(bench);
    if (exact) ++table_matches;
    checks.add("oracle map " + std::string(oracle_name(kind)) + " (" +
                   gate_label(kind) + "): " + config_label(cfg) + " == U_f bit-exact",
               exact, exact ? "entries in {0,1}" : "mismatch, max |diff| = " +
                                                       std::to_string(diff));
  }

  for (OracleKind kind : kAllOracleKinds) {
    const Unitary4 u = oracle_unitary(kind);
    const bool involution =
        max_abs_diff(compose(u, u), Unitary4::identity()) == 0.0;
    checks.add("U_f(" + std::string(oracle_name(kind)) + ") is a permutation involution",
               is_permutation_matrix(u) && involution);
  }

  {
    constexpr double inv_sqrt2 = 0.7071067811865476;
    const Mat2 hadamard{{{Complex{inv_sqrt2, 0.0}, Complex{inv_sqrt2, 0.0}},
                         {Complex{inv_sqrt2, 0.0}, Complex{-inv_sqrt2, 0.0}}}};
    const double diff =
        max_abs_diff(hwp_unitary(WavePlateAngle{22.5}), tensor_lift(hadamard, {}));
    checks.add("hwp(22.5 deg) == Hadamard (x) I within 1e-12", diff <= 1e-12,
               "max |diff| = " + std::to_string(diff));
  }

  {
    bool ok = true;
    for (double theta : {0.0, 10.0, 22.5, 45.0, 67.5, 90.0, 133.7}) {
      const Unitary4 u = hwp_unitary(WavePlateAngle{theta});
      ok = ok &&
           max_abs_diff(compose(u, u), Unitary4::identity()) <= 1e-12;
      for (int r = 0; r < kDim && ok; ++r) {
        for (int c = 0; c < kDim && ok; ++c) {
          ok = std::abs(u.at(r, c).imag()) == 0.0 &&
               std::abs(u.at(r, c) - u.at(c, r)) == 0.0;
        }
      }
    }
    checks.add("hwp(theta) real, symmetric, involution across sampled angles", ok);
  }

  {
    const Mat2 pol_x{{{Complex{0.0, 0.0}, Complex{1.0, 0.0}},
                      {Complex{1.0, 0.0}, Complex{0.0, 0.0}}}};
    const Unitary4 flip = tensor_lift(pol_x, {});
    const Unitary4 conjugated =
        compose(flip, compose(oracle_unitary(OracleKind::BalancedIdentity), flip));
    const double diff =
        max_abs_diff(conjugated, oracle_unitary(OracleKind::BalancedInverse));
    checks.add("Z-CNOT == (X_pol (x) I) CNOT (X_pol (x) I) within 1e-12",
               diff <= 1e-12, "max |diff| = " + std::to_string(diff));
  }

  {
    bool ok = true;
    for (auto [a, b] : {std::pair{0.3, 1.1}, {std::numbers::pi, -2.5}, {5.0, 4.0}}) {
      ok = ok && max_abs_diff(compose(phase_shifter_unitary(a), phase_shifter_unitary(b)),
                              phase_shifter_unitary(a + b)) <= 1e-12;
    }
    checks.add("phase shifter additivity within 1e-12", ok);
  }

  std::cout << (checks.all_pass ? "all " : "FAILURES among ") << checks.total
            << " checks; oracle table equivalences " << table_matches << "/4\n";
  return checks.all_pass ? kExitOk : kExitRuntime;
}

// ---------------------------------------------------------------------------
// run

int cmd_run(sptq::OracleKind kind, double phi, bool use_sagnac, double tol,
            bool as_json) {
  using namespace sptq;
  QueryCounter counter;
  const GateSource source =
      use_sagnac ? GateSource{config_for(kind)} : GateSource{IdealOracle{}};
  const DeutschOutcome outcome = run_deutsch(kind, phi, source, &counter);
  const FunctionClass cls = classify(outcome, tol);
  const ClassicalResult classical = classical_evaluations(kind);

  if (as_json) {
    nlohmann::ordered_json j;
    j["oracle"] = std::string(oracle_name(kind));
    j["gate"] = gate_label(kind);
    j["source"] = use_sagnac ? "sagnac" : "ideal";
    j["phase_rad"] = outcome.phi;
    j["p_d1"] = outcome.probs.p_h;
    j["p_d2"] = outcome.probs.p_v;
    j["classification"] = std::string(class_name(cls));
    j["queries_quantum"] = counter.oracle_applications;
    j["queries_classical"] = classical.queries;
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }

  char phase_buf[32];
  std::snprintf(phase_buf, sizeof(phase_buf), "%.9g", outcome.phi);
  std::cout << "oracle:         " << oracle_name(kind) << "  (" << describe(kind)
            << ", U_f = " << gate_label(kind) << ")\n"
            << "gate source:    " << (use_sagnac ? "sagnac" : "ideal") << "\n"
            << "phase:          " << phase_buf << " rad\n"
            << "P(D1 | H):      " << prob12(outcome.probs.p_h) << "\n"
            << "P(D2 | V):      " << prob12(outcome.probs.p_v) << "\n"
            << "classification: " << class_name(cls) << "\n"
            << "queries:        quantum " << counter.oracle_applications
            << ", classical " << classical.queries << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

int cmd_sweep(sptq::OracleKind kind, const sptq::SweepConfig& cfg,
              const std::string& out_path) {
  const auto records = sptq::simulate_sweep(kind, cfg);
  sptq::write_file(out_path, sptq::sweep_to_csv(records));
  std::cout << "wrote " << records.size() << " records to " << out_path << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// analyze

int cmd_analyze(const std::string& in_path, sptq::SweepConfig cfg) {
  using namespace sptq;
  const auto records = sweep_from_csv(read_file(in_path));
  if (records.empty()) {
    throw CsvParseError("no data rows in '" + in_path + "'", 1);
  }

  double v_min = records.front().voltage;
  double v_max = records.front().voltage;
  for (const DetectionRecord& rec : records) {
    v_min = std::min(v_min, rec.voltage);
    v_max = std::max(v_max, rec.voltage);
  }
  cfg.v_start = v_min;
  cfg.v_end = v_max;

  std::cout << "records:       " << records.size() << "\n";
  char buf[160];
  std::snprintf(buf, sizeof(buf), "voltage range: %.9g .. %.9g V\n", v_min, v_max);
  std::cout << buf;

  std::uint64_t proper_c1 = 0;
  std::uint64_t proper_c2 = 0;
  const auto proper = proper_phase_voltages(cfg);
  std::cout << "proper phase points (phi = (2N+1)pi):\n";
  for (double v : proper) {
    const DetectionRecord* nearest = &records.front();
    for (const DetectionRecord& rec : records) {
      if (std::abs(rec.voltage - v) < std::abs(nearest->voltage - v)) nearest = &rec;
    }
    proper_c1 += nearest->counts_d1;
    proper_c2 += nearest->counts_d2;
    if (nearest->counts_d1 + nearest->counts_d2 == 0) {
      std::snprintf(buf, sizeof(buf),
                    "  v=%.4g V  nearest record v=%.4g V: eta undefined (0 counts)\n",
                    v, nearest->voltage);
      std::cout << buf;
      continue;
    }
    const ContrastReport report =
        contrast_ratio(nearest->counts_d1, nearest->counts_d2);
    std::snprintf(buf, sizeof(buf),
                  "  v=%.4g V  nearest record v=%.4g V: eta = %.6f +/- %.6f\n", v,
                  nearest->voltage, report.eta, report.eta_std);
    std::cout << buf;
  }
  if (proper.empty()) {
    std::cout << "  (none inside the voltage range)\n";
  } else if (proper_c1 + proper_c2 > 0) {
    const ContrastReport aggregate = contrast_ratio(proper_c1, proper_c2);
    std::snprintf(buf, sizeof(buf),
                  "aggregate eta: %.6f +/- %.6f over %zu proper points\n",
                  aggregate.eta, aggregate.eta_std, proper.size());
    std::cout << buf;
  }

  bool fitted = false;
  VisibilityFit fit;
  try {
    fit = fit_visibility(records, cfg);
    fitted = true;
  } catch (const std::invalid_argument& e) {
    std::cout << "fringe fit (D1): unavailable (" << e.what() << ")\n";
  }
  if (fitted) {
    if (fit.flat) {
      std::cout << "fringe fit (D1): flat signal (no resolvable fringe)\n";
    } else {
      std::snprintf(buf, sizeof(buf),
                    "fringe fit (D1): visibility = %.6f  mean level = %.6g\n", fit.nu,
                    fit.amplitude);
      std::cout << buf;
    }
  }

  FunctionClass cls = FunctionClass::Indeterminate;
  if (proper_c1 + proper_c2 > 0) {
    cls = classify_counts(proper_c1, proper_c2);
  }
  std::cout << "class decision: " << class_name(cls);
  if (cls == FunctionClass::Balanced) {
    std::cout << "  (D1 dominates at proper phases)";
  } else if (cls == FunctionClass::Constant) {
    std::cout << "  (D2 dominates at proper phases)";
  }
  std::cout << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bench

int cmd_bench(const std::string& file, const std::vector<std::string>& bind_args,
              const std::string& action) {
  using namespace sptq;
  std::map<std::string, double> bindings;
  for (const std::string& arg : bind_args) {
    const std::size_t eq = arg.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "error: --bind expects NAME=VALUE, got '" << arg << "'\n";
      return kExitUsage;
    }
    const auto value = parse_phase(arg.substr(eq + 1));
    if (!value) {
      std::cerr << "error: malformed --bind value in '" << arg << "'\n";
      return kExitUsage;
    }
    bindings[arg.substr(0, eq)] = *value;
  }

  const benchdsl::ParseResult parsed = benchdsl::parse(read_file(file));
  for (const benchdsl::ParseDiagnostic& d : parsed.diagnostics) {
    std::cerr << file << ":" << d.line << ":" << d.column << ": "
              << (d.severity == benchdsl::ParseDiagnostic::Severity::Error
                      ? "error"
                      : "warning")
              << ": " << d.message << "\n";
  }
  if (!parsed.ok()) return kExitUsage;

  benchdsl::CompiledBench compiled;
  try {
    compiled = benchdsl::compile(*parsed.program, bindings);
  } catch (const benchdsl::CompileError& e) {
    std::cerr << file << ": compile error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (action == "compile") {
    const Unitary4 total = compiled.composed();
    for (int r = 0; r < kDim; ++r) {
      std::string line;
      for (int c = 0; c < kDim; ++c) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "(%.12f, %.12f)", total.at(r, c).real(),
                      total.at(r, c).imag());
        line += buf;
        if (c + 1 < kDim) line += "  ";
      }
      std::cout << line << "\n";
    }
    return kExitOk;
  }

  const benchdsl::BenchRun result = compiled.run();
  std::cout << "P(D1 | H):      " << prob12(result.probs.p_h) << "\n"
            << "P(D2 | V):      " << prob12(result.probs.p_v) << "\n";
  for (int b = 0; b < kDim; ++b) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "amp[%d]:         (%.12f, %.12f)\n", b,
                  result.state.amps[static_cast<std::size_t>(b)].real(),
                  result.state.amps[static_cast<std::size_t>(b)].imag());
    std::cout << buf;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// plot

std::string sidecar_path(const std::string& out_path) {
  std::filesystem::path p(out_path);
  p.replace_extension(".dat");
  return p.string();
}

int cmd_plot(const std::string& in_path, const std::string& out_path,
             sptq::SweepConfig cfg, const std::string& title) {
  using namespace sptq;
  const auto records = sweep_from_csv(read_file(in_path));
  if (records.empty()) {
    throw CsvParseError("no data rows in '" + in_path + "'", 1);
  }
  double v_min = records.front().voltage;
  double v_max = records.front().voltage;
  for (const DetectionRecord& rec : records) {
    v_min = std::min(v_min, rec.voltage);
    v_max = std::max(v_max, rec.voltage);
  }
  cfg.v_start = v_min;
  cfg.v_end = v_max;

  const PlotResult plot = render_sweep_plot(records, cfg, title);
  write_file(out_path, plot.svg);
  const std::string sidecar = sidecar_path(out_path);
  write_file(sidecar, plot.sidecar);
  std::cout << "wrote " << out_path << " and " << sidecar << "\n";
  return kExitOk;
}

void add_calibration_flags(CLI::App* cmd, sptq::SweepConfig& cfg) {
  cmd->add_option("--volts-per-period", cfg.volts_per_period,
                  "volts per 2*pi of fringe phase");
  cmd->add_option("--phase-offset", cfg.phase_offset, "phase at v=0, radians");
  cmd->add_option("--drift-per-volt", cfg.drift_per_volt,
                  "linear coupling-efficiency loss per volt");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"single-photon two-qubit optical simulator"};
  app.require_subcommand(1);

  // gates-verify
  auto* verify_cmd =
      app.add_subcommand("gates-verify", "check the gate-table identities");
  bool inject_dp_fault = false;
  verify_cmd->add_flag("--inject-dp-fault", inject_dp_fault,
                       "negative control: flip the dove-prism sign for the CNOT row");

  // run
  auto* run_cmd = app.add_subcommand("run", "single algorithm run");
  std::string run_oracle;
  std::string run_phase;
  std::string run_source = "ideal";
  double run_tol = 1e-6;
  bool run_json = false;
  run_cmd->add_option("--oracle", run_oracle, "const0|const1|id|inv")->required();
  run_cmd->add_option("--phase", run_phase, "radians or pi multiple (pi, 0.5pi)")
      ->required();
  run_cmd->add_option("--source", run_source, "ideal|sagnac");
  run_cmd->add_option("--tol", run_tol, "classification tolerance");
  run_cmd->add_flag("--json", run_json, "machine-readable output");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "simulate a PZT voltage sweep");
  std::string sweep_oracle;
  std::string sweep_out;
  sptq::SweepConfig sweep_cfg;
  sweep_cfg.seed = default_seed();
  sweep_cmd->add_option("--oracle", sweep_oracle, "const0|const1|id|inv")->required();
  sweep_cmd->add_option("--out", sweep_out, "output CSV path")->required();
  sweep_cmd->add_option("--rate", sweep_cfg.rate, "photons per second");
  sweep_cmd->add_option("--integration-time", sweep_cfg.integration_time,
                        "seconds per point");
  sweep_cmd->add_option("--v-start", sweep_cfg.v_start, "volts");
  sweep_cmd->add_option("--v-end", sweep_cfg.v_end, "volts");
  sweep_cmd->add_option("--v-step", sweep_cfg.v_step, "volts");
  sweep_cmd->add_option("--visibility", sweep_cfg.visibility, "fringe visibility");
  sweep_cmd->add_option("--extinction", sweep_cfg.extinction,
                        "wrong-detector fraction");
  sweep_cmd->add_option("--background", sweep_cfg.background_prob,
                        "accidental-count fraction");
  sweep_cmd->add_option("--seed", sweep_cfg.seed,
                        "random seed (default from " + std::string(kSeedEnvVar) + ")");
  add_calibration_flags(sweep_cmd, sweep_cfg);

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "contrast and visibility report");
  std::string analyze_in;
  sptq::SweepConfig analyze_cfg;
  analyze_cmd->add_option("--in", analyze_in, "sweep CSV path")->required();
  add_calibration_flags(analyze_cmd, analyze_cfg);

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "compile or run a .bench file");
  std::string bench_file;
  std::vector<std::string> bench_binds;
  std::string bench_action;
  bench_cmd->add_option("--file", bench_file, "bench description file")->required();
  bench_cmd->add_option("--bind", bench_binds,
                        "NAME=VALUE symbol binding (VALUE may use pi forms)");
  bench_cmd->add_option("action", bench_action, "compile|run")
      ->required()
      ->check(CLI::IsMember({"compile", "run"}));

  // plot
  auto* plot_cmd = app.add_subcommand("plot", "render a sweep CSV as SVG");
  std::string plot_in;
  std::string plot_out;
  std::string plot_title = "PZT sweep";
  sptq::SweepConfig plot_cfg;
  plot_cmd->add_option("--in", plot_in, "sweep CSV path")->required();
  plot_cmd->add_option("--out", plot_out, "output SVG path")->required();
  plot_cmd->add_option("--title", plot_title, "plot title");
  add_calibration_flags(plot_cmd, plot_cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify_cmd->parsed()) {
      return cmd_gates_verify(inject_dp_fault);
    }
    if (run_cmd->parsed()) {
      const auto kind = sptq::oracle_from_name(run_oracle);
      if (!kind) {
        std::cerr << "error: unknown oracle '" << run_oracle
                  << "' (expected const0|const1|id|inv)\n";
        return kExitUsage;
      }
      const auto phi = parse_phase(run_phase);
      if (!phi) {
        std::cerr << "error: malformed phase '" << run_phase << "'\n";
        return kExitUsage;
      }
      if (run_source != "ideal" && run_source != "sagnac") {
        std::cerr << "error: --source must be ideal or sagnac\n";
        return kExitUsage;
      }
      return cmd_run(*kind, *phi, run_source == "sagnac", run_tol, run_json);
    }
    if (sweep_cmd->parsed()) {
      const auto kind = sptq::oracle_from_name(sweep_oracle);
      if (!kind) {
        std::cerr << "error: unknown oracle '" << sweep_oracle
                  << "' (expected const0|const1|id|inv)\n";
        return kExitUsage;
      }
      try {
        sweep_cfg.validate();
      } catch (const std::invalid_argument& e) {
        std::cerr << "error: invalid sweep config: " << e.what() << "\n";
        return kExitUsage;
      }
      return cmd_sweep(*kind, sweep_cfg, sweep_out);
    }
    if (analyze_cmd->parsed()) {
      return cmd_analyze(analyze_in, analyze_cfg);
    }
    if (bench_cmd->parsed()) {
      return cmd_bench(bench_file, bench_binds, bench_action);
    }
    if (plot_cmd->parsed()) {
      return cmd_plot(plot_in, plot_out, plot_cfg, plot_title);
    }
  } catch (const sptq::CsvParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
