#pragma once

// Exact complex linear algebra on the 4-dimensional Hilbert space of a
// single photon carrying two qubits: polarization (V=0, H=1) and spatial
// mode (l/u=0, r/d=1). Basis index b = 2*pol + spatial. The l,r labels
// name the spatial modes on the input side of an element chain and u,d
// name them on the output side; both pairs map to the same indices, so
// the relabeling is bookkeeping only.

#include <array>
#include <complex>
#include <optional>

namespace sptq {

using Complex = std::complex<double>;

inline constexpr int kDim = 4;

// Algebraic identities hold to kUnitaryTol; input validation uses the
// looser kNormTol.
inline constexpr double kUnitaryTol = 1e-12;
inline constexpr double kNormTol = 1e-9;

constexpr int basis_index(int pol, int spatial) { return 2 * pol + spatial; }

/// Marginal polarization probabilities: p_v feeds detector D2, p_h feeds D1.
struct PolProbs {
  double p_v = 0.0;
  double p_h = 0.0;
};

struct StateVector {
  std::array<Complex, kDim> amps{};

  /// Basis state |b> for b in [0,4).
  static StateVector basis(int index);

  double norm() const;
  StateVector normalized() const;
  bool finite() const;
};

Complex inner_product(const StateVector& a, const StateVector& b);

/// |<a|b>|: equals 1 (up to rounding) iff the states agree up to a global
/// phase. Output states carry physically irrelevant +- signs, so state
/// comparisons go through this rather than elementwise equality.
double overlap(const StateVector& a, const StateVector& b);

using Mat2 = std::array<std::array<Complex, 2>, 2>;

/// A 4x4 unitary on the joint polarization/spatial space. Unitarity is
/// enforced at construction (m * m^dagger = I within kUnitaryTol).
class Unitary4 {
 public:
  using Rows = std::array<std::array<Complex, kDim>, kDim>;

  /// Throws std::invalid_argument if the matrix is not unitary or not finite.
  explicit Unitary4(const Rows& rows);

  static Unitary4 identity();

  /// Permutation matrix sending basis state j to basis state targets[j].
  /// Throws std::invalid_argument unless targets is a permutation of 0..3.
  static Unitary4 permutation(const std::array<int, kDim>& targets);

  const Complex& at(int row, int col) const { return m_[row * kDim + col]; }
  Rows rows() const;

 private:
  Unitary4() = default;
  std::array<Complex, kDim * kDim> m_{};
};

/// Largest elementwise |a - b|.
double max_abs_diff(const Unitary4& a, const Unitary4& b);

/// True iff every entry is exactly 0 or exactly 1 and the matrix is a
/// permutation. The Sagnac/oracle gates must satisfy this bit-exactly.
bool is_permutation_matrix(const Unitary4& u);

/// u * s. Throws std::invalid_argument on non-finite amplitudes.
StateVector apply_unitary(const Unitary4& u, const StateVector& s);

/// pol_op (x) spat_op in the basis ordering above; a missing factor means
/// identity. Throws std::invalid_argument if a given factor is not unitary.
Unitary4 tensor_lift(const std::optional<Mat2>& pol_op,
                     const std::optional<Mat2>& spat_op);

/// Matrix product u_last * u_first (u_first acts first).
Unitary4 compose(const Unitary4& u_last, const Unitary4& u_first);

/// Polarization marginal of a normalized state. Throws std::invalid_argument
/// if the norm deviates from 1 by more than kNormTol.
PolProbs pol_marginal(const StateVector& s);

}  // namespace sptq
