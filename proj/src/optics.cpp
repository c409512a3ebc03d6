#include "sptq/optics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sptq {

bool is_balanced(OracleKind kind) {
  return kind == OracleKind::BalancedIdentity || kind == OracleKind::BalancedInverse;
}

bool oracle_f(OracleKind kind, bool x) {
  switch (kind) {
    case OracleKind::ConstantZero: return false;
    case OracleKind::ConstantOne: return true;
    case OracleKind::BalancedIdentity: return x;
    case OracleKind::BalancedInverse: return !x;
  }
  throw std::invalid_argument("unknown oracle kind");
}

std::string_view oracle_name(OracleKind kind) {
  switch (kind) {
    case OracleKind::ConstantZero: return "const0";
    case OracleKind::ConstantOne: return "const1";
    case OracleKind::BalancedIdentity: return "id";
    case OracleKind::BalancedInverse: return "inv";
  }
  throw std::invalid_argument("unknown oracle kind");
}

std::optional<OracleKind> oracle_from_name(std::string_view name) {
  for (OracleKind kind : kAllOracleKinds) {
    if (oracle_name(kind) == name) return kind;
  }
  return std::nullopt;
}

Unitary4 hwp_unitary(WavePlateAngle theta) {
  if (!std::isfinite(theta.degrees)) {
    throw std::invalid_argument("wave-plate angle must be finite");
  }
  const double two_theta = 2.0 * theta.degrees * std::numbers::pi / 180.0;
  const double c = std::cos(two_theta);
  const double s = std::sin(two_theta);
  const Mat2 jones{{{Complex{c, 0.0}, Complex{s, 0.0}},
                    {Complex{s, 0.0}, Complex{-c, 0.0}}}};
  return tensor_lift(jones, std::nullopt);
}

Unitary4 phase_shifter_unitary(double phi) {
  if (!std::isfinite(phi)) {
    throw std::invalid_argument("phase must be finite");
  }
  const Mat2 shift{{{Complex{1.0, 0.0}, Complex{0.0, 0.0}},
                    {Complex{0.0, 0.0}, std::polar(1.0, phi)}}};
  return tensor_lift(std::nullopt, shift);
}

Unitary4 beam_splitter_unitary() {
  constexpr double kInvSqrt2 = 0.7071067811865476;
  const Mat2 splitter{{{Complex{kInvSqrt2, 0.0}, Complex{kInvSqrt2, 0.0}},
                       {Complex{kInvSqrt2, 0.0}, Complex{-kInvSqrt2, 0.0}}}};
  return tensor_lift(std::nullopt, splitter);
}

Unitary4 sagnac_unitary(const SagnacConfig& cfg) {
  if (cfg.pbs_present) {
    return cfg.dp == DoveAngle::Plus45
               ? Unitary4::permutation({0, 1, 3, 2})   // CNOT
               : Unitary4::permutation({1, 0, 2, 3});  // Z-CNOT
  }
  return cfg.dp == DoveAngle::Plus45
             ? Unitary4::permutation({1, 0, 3, 2})  // NOT on spatial qubit
             : Unitary4::identity();
}

Unitary4 oracle_unitary(OracleKind kind) {
  // |pol, spatial> -> |pol, spatial (+) f(pol)> with V=0, H=1.
  std::array<int, kDim> targets{};
  for (int pol = 0; pol < 2; ++pol) {
    const int flip = oracle_f(kind, pol != 0) ? 1 : 0;
    for (int spatial = 0; spatial < 2; ++spatial) {
      targets[static_cast<std::size_t>(basis_index(pol, spatial))] =
          basis_index(pol, spatial ^ flip);
    }
  }
  return Unitary4::permutation(targets);
}

SagnacConfig config_for(OracleKind kind) {
  switch (kind) {
    case OracleKind::ConstantZero: return {.pbs_present = false, .dp = DoveAngle::Minus45};
    case OracleKind::ConstantOne: return {.pbs_present = false, .dp = DoveAngle::Plus45};
    case OracleKind::BalancedIdentity: return {.pbs_present = true, .dp = DoveAngle::Plus45};
    case OracleKind::BalancedInverse: return {.pbs_present = true, .dp = DoveAngle::Minus45};
  }
  throw std::invalid_argument("unknown oracle kind");
}

}  // namespace sptq
