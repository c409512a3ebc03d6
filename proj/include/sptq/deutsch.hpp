#pragma once

// Deutsch's algorithm over the optical model: phase-parameterized input
// preparation, one oracle application, final polarization Hadamard, and
// the readout rule. D1 sits behind the transmitted (H) port of the
// analyzing PBS and fires for balanced functions; D2 sits behind the
// reflected (V) port and fires for constant functions. That convention is
// used everywhere in this project.

#include <variant>

#include "sptq/optics.hpp"
#include "sptq/qcore.hpp"

namespace sptq {

enum class FunctionClass { Constant, Balanced, Indeterminate };

std::string_view class_name(FunctionClass cls);

/// Direct writes the prepared amplitudes in closed form; Composed chains
/// the bench elements (50/50 split, phase shifter, HWP at 22.5 degrees).
/// The two agree up to a global phase and Composed exists as a
/// consistency check on the element models.
enum class PrepMode { Direct, Composed };

struct DeutschOutcome {
  StateVector output_state;
  PolProbs probs;  // p_h = P(D1 clicks), p_v = P(D2 clicks)
  double phi = 0.0;
};

/// Use the abstract gate matrix for the oracle.
struct IdealOracle {};

/// Either the abstract gate or a concrete Sagnac configuration; the two
/// must produce identical outcomes.
using GateSource = std::variant<IdealOracle, SagnacConfig>;

/// Counts oracle applications, for checking the one-query claim.
struct QueryCounter {
  int oracle_applications = 0;
};

/// (|V> + |H>)(|l> + e^{i phi}|r>)/2 — the state after HWP2.
StateVector prepare_input(double phi, PrepMode mode = PrepMode::Direct);

/// Runs the circuit: prepare, apply the oracle once, apply the final
/// Hadamard, read the polarization marginal. Throws std::invalid_argument
/// if a SagnacConfig source does not realize oracle_unitary(kind).
DeutschOutcome run_deutsch(OracleKind kind, double phi,
                           const GateSource& source = IdealOracle{},
                           QueryCounter* counter = nullptr);

/// Decision rule on an outcome. Balanced if p_h >= 1-tol. Constant if
/// p_v >= 1-tol and the phase actually discriminates the two classes:
/// near phi = 2N*pi the balanced and constant output distributions
/// coincide (both put everything on D2), so a D2-heavy outcome there is
/// Indeterminate. The distributions differ by (1-cos phi)/2 in total
/// variation, and the rule requires that to be at least tol.
/// Throws std::invalid_argument unless tol is in (0, 0.5).
FunctionClass classify(const DeutschOutcome& outcome, double tol = 1e-6);

struct ClassicalResult {
  FunctionClass cls = FunctionClass::Indeterminate;
  int queries = 0;
};

/// Two-query classical baseline: evaluates f(0) and f(1) from the truth
/// table and compares.
ClassicalResult classical_evaluations(OracleKind kind);

}  // namespace sptq
