// Python bindings exposing the main operations of the simulator.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sptq/benchdsl.hpp"
#include "sptq/csvio.hpp"
#include "sptq/deutsch.hpp"
#include "sptq/labsim.hpp"
#include "sptq/optics.hpp"
#include "sptq/qcore.hpp"
#include "sptq/svgplot.hpp"

namespace py = pybind11;
using namespace sptq;

namespace {

std::vector<std::vector<Complex>> unitary_entries(const Unitary4& u) {
  std::vector<std::vector<Complex>> rows(kDim, std::vector<Complex>(kDim));
  for (int r = 0; r < kDim; ++r) {
    for (int c = 0; c < kDim; ++c) {
      rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = u.at(r, c);
    }
  }
  return rows;
}

Unitary4 unitary_from_entries(const std::vector<std::vector<Complex>>& rows) {
  if (rows.size() != kDim) {
    throw std::invalid_argument("expected 4 rows");
  }
  Unitary4::Rows m;
  for (int r = 0; r < kDim; ++r) {
    if (rows[static_cast<std::size_t>(r)].size() != kDim) {
      throw std::invalid_argument("expected 4 columns per row");
    }
    for (int c = 0; c < kDim; ++c) {
      m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
          rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
  }
  return Unitary4(m);
}

std::optional<Mat2> mat2_from(const std::optional<std::vector<std::vector<Complex>>>& in) {
  if (!in) return std::nullopt;
  if (in->size() != 2 || (*in)[0].size() != 2 || (*in)[1].size() != 2) {
    throw std::invalid_argument("expected a 2x2 matrix");
  }
  Mat2 m;
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) m[r][c] = (*in)[r][c];
  }
  return m;
}

GateSource source_from(const std::optional<SagnacConfig>& cfg) {
  if (cfg) return GateSource{*cfg};
  return GateSource{IdealOracle{}};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "single-photon two-qubit optical simulator core";

  py::enum_<OracleKind>(m, "OracleKind")
      .value("ConstantZero", OracleKind::ConstantZero)
      .value("ConstantOne", OracleKind::ConstantOne)
      .value("BalancedIdentity", OracleKind::BalancedIdentity)
      .value("BalancedInverse", OracleKind::BalancedInverse);

  py::enum_<FunctionClass>(m, "FunctionClass")
      .value("Constant", FunctionClass::Constant)
      .value("Balanced", FunctionClass::Balanced)
      .value("Indeterminate", FunctionClass::Indeterminate);

  py::enum_<DoveAngle>(m, "DoveAngle")
      .value("Plus45", DoveAngle::Plus45)
      .value("Minus45", DoveAngle::Minus45);

  py::enum_<PrepMode>(m, "PrepMode")
      .value("Direct", PrepMode::Direct)
      .value("Composed", PrepMode::Composed);

  py::class_<SagnacConfig>(m, "SagnacConfig")
      .def(py::init<bool, DoveAngle>(), py::arg("pbs_present"), py::arg("dp"))
      .def_readwrite("pbs_present", &SagnacConfig::pbs_present)
      .def_readwrite("dp", &SagnacConfig::dp);

  py::class_<PolProbs>(m, "PolProbs")
      .def_readonly("p_v", &PolProbs::p_v)
      .def_readonly("p_h", &PolProbs::p_h)
      .def("__repr__", [](const PolProbs& p) {
        return "PolProbs(p_v=" + std::to_string(p.p_v) +
               ", p_h=" + std::to_string(p.p_h) + ")";
      });

  py::class_<StateVector>(m, "StateVector")
      .def(py::init([](const std::vector<Complex>& amps) {
             if (amps.size() != kDim) {
               throw std::invalid_argument("expected 4 amplitudes");
             }
             StateVector s;
             std::copy(amps.begin(), amps.end(), s.amps.begin());
             return s;
           }),
           py::arg("amps"))
      .def_static("basis", &StateVector::basis, py::arg("index"))
      .def_property_readonly("amps",
                             [](const StateVector& s) {
                               return std::vector<Complex>(s.amps.begin(),
                                                           s.amps.end());
                             })
      .def("norm", &StateVector::norm)
      .def("normalized", &StateVector::normalized);

  py::class_<Unitary4>(m, "Unitary4")
      .def(py::init(&unitary_from_entries), py::arg("rows"))
      .def_static("identity", &Unitary4::identity)
      .def_static("permutation",
                  [](const std::array<int, kDim>& targets) {
                    return Unitary4::permutation(targets);
                  },
                  py::arg("targets"))
      .def("rows", &unitary_entries);

  m.def("basis_index", &basis_index, py::arg("pol"), py::arg("spatial"));
  m.def("apply_unitary", &apply_unitary, py::arg("u"), py::arg("s"));
  m.def("compose", &compose, py::arg("u_last"), py::arg("u_first"));
  m.def("pol_marginal", &pol_marginal, py::arg("s"));
  m.def("overlap", &overlap, py::arg("a"), py::arg("b"));
  m.def(
      "tensor_lift",
      [](const std::optional<std::vector<std::vector<Complex>>>& pol,
         const std::optional<std::vector<std::vector<Complex>>>& spatial) {
        return tensor_lift(mat2_from(pol), mat2_from(spatial));
      },
      py::arg("pol_op") = std::nullopt, py::arg("spat_op") = std::nullopt);

  m.def("is_balanced", &is_balanced, py::arg("kind"));
  m.def("oracle_f", &oracle_f, py::arg("kind"), py::arg("x"));
  m.def("oracle_name", [](OracleKind k) { return std::string(oracle_name(k)); });
  m.def("oracle_from_name",
        [](const std::string& name) { return oracle_from_name(name); });
  m.def(
      "hwp_unitary",
      [](double degrees) { return hwp_unitary(WavePlateAngle{degrees}); },
      py::arg("theta_degrees"));
  m.def("phase_shifter_unitary", &phase_shifter_unitary, py::arg("phi"));
  m.def("beam_splitter_unitary", &beam_splitter_unitary);
  m.def("sagnac_unitary", &sagnac_unitary, py::arg("config"));
  m.def("oracle_unitary", &oracle_unitary, py::arg("kind"));
  m.def("config_for", &config_for, py::arg("kind"));

  py::class_<DeutschOutcome>(m, "DeutschOutcome")
      .def_readonly("output_state", &DeutschOutcome::output_state)
      .def_readonly("probs", &DeutschOutcome::probs)
      .def_readonly("phi", &DeutschOutcome::phi);

  py::class_<ClassicalResult>(m, "ClassicalResult")
      .def_readonly("cls", &ClassicalResult::cls)
      .def_readonly("queries", &ClassicalResult::queries);

  m.def("prepare_input", &prepare_input, py::arg("phi"),
        py::arg("mode") = PrepMode::Direct);
  m.def(
      "run_deutsch",
      [](OracleKind kind, double phi, const std::optional<SagnacConfig>& source) {
        return run_deutsch(kind, phi, source_from(source));
      },
      py::arg("kind"), py::arg("phi"), py::arg("source") = std::nullopt);
  m.def("classify", &classify, py::arg("outcome"), py::arg("tol") = 1e-6);
  m.def("classical_evaluations", &classical_evaluations, py::arg("kind"));
  m.def("class_name", [](FunctionClass c) { return std::string(class_name(c)); });

  py::class_<SweepConfig>(m, "SweepConfig")
      .def(py::init<>())
      .def_readwrite("rate", &SweepConfig::rate)
      .def_readwrite("integration_time", &SweepConfig::integration_time)
      .def_readwrite("v_start", &SweepConfig::v_start)
      .def_readwrite("v_end", &SweepConfig::v_end)
      .def_readwrite("v_step", &SweepConfig::v_step)
      .def_readwrite("volts_per_period", &SweepConfig::volts_per_period)
      .def_readwrite("phase_offset", &SweepConfig::phase_offset)
      .def_readwrite("visibility", &SweepConfig::visibility)
      .def_readwrite("extinction", &SweepConfig::extinction)
      .def_readwrite("drift_per_volt", &SweepConfig::drift_per_volt)
      .def_readwrite("background_prob", &SweepConfig::background_prob)
      .def_readwrite("seed", &SweepConfig::seed)
      .def("validate", &SweepConfig::validate)
      .def("grid_size", &SweepConfig::grid_size);

  py::class_<DetectionRecord>(m, "DetectionRecord")
      .def_readonly("voltage", &DetectionRecord::voltage)
      .def_readonly("phase", &DetectionRecord::phase)
      .def_readonly("counts_d1", &DetectionRecord::counts_d1)
      .def_readonly("counts_d2", &DetectionRecord::counts_d2)
      .def("__eq__", [](const DetectionRecord& a, const DetectionRecord& b) {
        return a == b;
      });

  py::class_<ContrastReport>(m, "ContrastReport")
      .def_readonly("eta", &ContrastReport::eta)
      .def_readonly("eta_std", &ContrastReport::eta_std)
      .def_readonly("n_points", &ContrastReport::n_points);

  py::class_<VisibilityFit>(m, "VisibilityFit")
      .def_readonly("nu", &VisibilityFit::nu)
      .def_readonly("amplitude", &VisibilityFit::amplitude)
      .def_readonly("delta", &VisibilityFit::delta)
      .def_readonly("flat", &VisibilityFit::flat);

  m.def("voltage_to_phase", &voltage_to_phase, py::arg("v"), py::arg("cfg"));
  m.def("coupling_efficiency", &coupling_efficiency, py::arg("v"), py::arg("cfg"));
  m.def("detection_probs", &detection_probs, py::arg("kind"), py::arg("phi"),
        py::arg("cfg"));
  m.def("expected_counts", &expected_counts, py::arg("kind"), py::arg("v"),
        py::arg("cfg"));
  m.def("simulate_sweep", &simulate_sweep, py::arg("kind"), py::arg("cfg"));
  m.def("contrast_ratio", &contrast_ratio, py::arg("c1"), py::arg("c2"));
  m.def("fit_visibility", &fit_visibility, py::arg("records"), py::arg("cfg"));
  m.def("proper_phase_voltages", &proper_phase_voltages, py::arg("cfg"));
  m.def("classify_counts", &classify_counts, py::arg("c1"), py::arg("c2"),
        py::arg("z_threshold") = 5.0);
  m.def("sweep_to_csv", &sweep_to_csv, py::arg("records"));
  m.def("sweep_from_csv",
        [](const std::string& text) { return sweep_from_csv(text); },
        py::arg("text"));

  // bench DSL
  py::class_<benchdsl::ParseDiagnostic>(m, "ParseDiagnostic")
      .def_readonly("line", &benchdsl::ParseDiagnostic::line)
      .def_readonly("column", &benchdsl::ParseDiagnostic::column)
      .def_readonly("message", &benchdsl::ParseDiagnostic::message)
      .def("__repr__", [](const benchdsl::ParseDiagnostic& d) {
        return std::to_string(d.line) + ":" + std::to_string(d.column) + ": " +
               d.message;
      });

  py::class_<benchdsl::BenchProgram>(m, "BenchProgram")
      .def_property_readonly("symbols",
                             [](const benchdsl::BenchProgram& p) { return p.symbols; })
      .def_property_readonly("size", [](const benchdsl::BenchProgram& p) {
        return p.elements.size();
      });

  py::class_<benchdsl::ParseResult>(m, "ParseResult")
      .def_readonly("program", &benchdsl::ParseResult::program)
      .def_readonly("diagnostics", &benchdsl::ParseResult::diagnostics)
      .def("ok", &benchdsl::ParseResult::ok);

  py::class_<benchdsl::BenchRun>(m, "BenchRun")
      .def_readonly("state", &benchdsl::BenchRun::state)
      .def_readonly("probs", &benchdsl::BenchRun::probs);

  py::class_<benchdsl::CompiledBench>(m, "CompiledBench")
      .def_readonly("initial", &benchdsl::CompiledBench::initial)
      .def("composed", &benchdsl::CompiledBench::composed)
      .def("run", &benchdsl::CompiledBench::run);

  m.def("parse_bench",
        [](const std::string& text) { return benchdsl::parse(text); },
        py::arg("text"));
  m.def("pretty_print_bench", &benchdsl::pretty_print, py::arg("program"));
  m.def("compile_bench", &benchdsl::compile, py::arg("program"),
        py::arg("bindings"));

  m.def(
      "render_sweep_plot",
      [](const std::vector<DetectionRecord>& records, const SweepConfig& cfg,
         const std::string& title) {
        const PlotResult plot = render_sweep_plot(records, cfg, title);
        return py::make_tuple(plot.svg, plot.sidecar);
      },
      py::arg("records"), py::arg("cfg"), py::arg("title") = "PZT sweep");

  py::register_exception<benchdsl::CompileError>(m, "CompileError");
  py::register_exception<CsvParseError>(m, "CsvParseError");
}
