#include "sptq/deutsch.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sptq {

std::string_view class_name(FunctionClass cls) {
  switch (cls) {
    case FunctionClass::Constant: return "Constant";
    case FunctionClass::Balanced: return "Balanced";
    case FunctionClass::Indeterminate: return "Indeterminate";
  }
  throw std::invalid_argument("unknown function class");
}

StateVector prepare_input(double phi, PrepMode mode) {
  if (!std::isfinite(phi)) {
    throw std::invalid_argument("phase must be finite");
  }
  if (mode == PrepMode::Direct) {
    const Complex e = std::polar(1.0, phi);
    StateVector s;
    s.amps = {Complex{0.5, 0.0}, 0.5 * e, Complex{0.5, 0.0}, 0.5 * e};
    return s;
  }
  StateVector s = StateVector::basis(basis_index(0, 0));  // |V,l>
  s = apply_unitary(beam_splitter_unitary(), s);
  s = apply_unitary(phase_shifter_unitary(phi), s);
  s = apply_unitary(hwp_unitary(WavePlateAngle{22.5}), s);
  return s;
}

DeutschOutcome run_deutsch(OracleKind kind, double phi, const GateSource& source,
                           QueryCounter* counter) {
  const Unitary4 ideal = oracle_unitary(kind);
  const Unitary4* gate = &ideal;
  Unitary4 sagnac = Unitary4::identity();
  if (const SagnacConfig* cfg = std::get_if<SagnacConfig>(&source)) {
    sagnac = sagnac_unitary(*cfg);
    if (max_abs_diff(sagnac, ideal) != 0.0) {
      throw std::invalid_argument("sagnac configuration does not realize oracle " +
                                  std::string(oracle_name(kind)));
    }
    gate = &sagnac;
  }

  DeutschOutcome out;
  out.phi = phi;
  StateVector s = prepare_input(phi, PrepMode::Direct);
  s = apply_unitary(*gate, s);
  if (counter != nullptr) ++counter->oracle_applications;
  s = apply_unitary(hwp_unitary(WavePlateAngle{22.5}), s);
  out.output_state = s;
  out.probs = pol_marginal(s);
  return out;
}

FunctionClass classify(const DeutschOutcome& outcome, double tol) {
  if (!(tol > 0.0) || !(tol < 0.5)) {
    throw std::invalid_argument("classification tolerance must lie in (0, 0.5)");
  }
  if (outcome.probs.p_h >= 1.0 - tol) return FunctionClass::Balanced;
  const double separation = (1.0 - std::cos(outcome.phi)) / 2.0;
  if (outcome.probs.p_v >= 1.0 - tol && separation >= tol) {
    return FunctionClass::Constant;
  }
  return FunctionClass::Indeterminate;
}

ClassicalResult classical_evaluations(OracleKind kind) {
  ClassicalResult result;
  auto f = [&](bool x) {
    ++result.queries;
    return oracle_f(kind, x);
  };
  const bool f0 = f(false);
  const bool f1 = f(true);
  result.cls = (f0 == f1) ? FunctionClass::Constant : FunctionClass::Balanced;
  return result;
}

}  // namespace sptq
