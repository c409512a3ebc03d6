#pragma once

// Optical elements of the bench as 4x4 unitaries, and the map from a
// Sagnac-loop configuration (PBS inserted or removed, dove prism at
// +-45 degrees) to the four oracle gates.

#include <optional>
#include <string_view>

#include "sptq/qcore.hpp"

namespace sptq {

/// Fast-axis angle of a half-wave plate, in degrees (interpreted mod 180).
struct WavePlateAngle {
  double degrees = 0.0;
};

enum class DoveAngle { Plus45, Minus45 };

/// How the Sagnac loop is set up. All four combinations are valid and each
/// realizes exactly one oracle gate.
struct SagnacConfig {
  bool pbs_present = true;
  DoveAngle dp = DoveAngle::Plus45;
};

/// The four one-bit boolean functions, named by their truth table.
enum class OracleKind {
  ConstantZero,      // f(x) = 0       -> identity
  ConstantOne,       // f(x) = 1       -> NOT on the spatial qubit
  BalancedIdentity,  // f(x) = x       -> CNOT
  BalancedInverse,   // f(x) = inv(x)  -> Z-CNOT
};

bool is_balanced(OracleKind kind);
bool oracle_f(OracleKind kind, bool x);

/// CLI-facing short names: const0, const1, id, inv.
std::string_view oracle_name(OracleKind kind);
std::optional<OracleKind> oracle_from_name(std::string_view name);

constexpr std::array<OracleKind, 4> kAllOracleKinds = {
    OracleKind::ConstantZero, OracleKind::ConstantOne,
    OracleKind::BalancedIdentity, OracleKind::BalancedInverse};

/// Half-wave plate with fast axis at theta: Jones matrix
/// [[cos 2t, sin 2t], [sin 2t, -cos 2t]] on (V,H), identity on the spatial
/// factor. At 22.5 degrees this is exactly the polarization Hadamard.
Unitary4 hwp_unitary(WavePlateAngle theta);

/// Relative phase phi on the second spatial mode: diag(1, e^{i phi}),
/// identity on polarization. This is the PZT knob.
Unitary4 phase_shifter_unitary(double phi);

/// Fixed 50/50 beam splitter on the spatial modes,
/// (1/sqrt 2)[[1,1],[1,-1]], identity on polarization.
Unitary4 beam_splitter_unitary();

/// Net input->output map of the Sagnac loop, always a permutation:
///   (pbs on,  dp +45): CNOT        {0->0, 1->1, 2->3, 3->2}
///   (pbs on,  dp -45): Z-CNOT      {0->1, 1->0, 2->2, 3->3}
///   (pbs off, dp -45): identity
///   (pbs off, dp +45): spatial NOT {0->1, 1->0, 2->3, 3->2}
/// With the PBS removed the loop ignores polarization: at -45 the prism
/// returns l->u, r->d, and at +45 it swaps both modes (l->d, r->u), which
/// is what makes that configuration the NOT gate on the spatial qubit.
/// Counter-propagating paths share any phase disturbance, so the net map
/// carries no relative phase.
Unitary4 sagnac_unitary(const SagnacConfig& cfg);

/// The gate |x,y> -> |x, y (+) f(x)> for the given function.
Unitary4 oracle_unitary(OracleKind kind);

/// The unique loop configuration whose sagnac_unitary equals
/// oracle_unitary(kind) exactly.
SagnacConfig config_for(OracleKind kind);

}  // namespace sptq
