#include "sptq/qcore.hpp"

#include <cmath>
#include <stdexcept>

namespace sptq {

namespace {

bool finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace

StateVector StateVector::basis(int index) {
  if (index < 0 || index >= kDim) {
    throw std::invalid_argument("basis index out of range [0,4)");
  }
  StateVector s;
  s.amps[static_cast<std::size_t>(index)] = Complex{1.0, 0.0};
  return s;
}

double StateVector::norm() const {
  double n2 = 0.0;
  for (const Complex& a : amps) n2 += std::norm(a);
  return std::sqrt(n2);
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("cannot normalize a zero or non-finite state");
  }
  StateVector s = *this;
  for (Complex& a : s.amps) a /= n;
  return s;
}

bool StateVector::finite() const {
  for (const Complex& a : amps) {
    if (!sptq::finite(a)) return false;
  }
  return true;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  Complex acc{0.0, 0.0};
  for (int i = 0; i < kDim; ++i) {
    acc += std::conj(a.amps[static_cast<std::size_t>(i)]) *
           b.amps[static_cast<std::size_t>(i)];
  }
  return acc;
}

double overlap(const StateVector& a, const StateVector& b) {
  return std::abs(inner_product(a, b));
}

Unitary4::Unitary4(const Rows& rows) {
  for (int r = 0; r < kDim; ++r) {
    for (int c = 0; c < kDim; ++c) {
      const Complex& z = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      if (!finite(z)) {
        throw std::invalid_argument("unitary entries must be finite");
      }
      m_[static_cast<std::size_t>(r * kDim + c)] = z;
    }
  }
  // m * m^dagger = I elementwise within kUnitaryTol.
  for (int r = 0; r < kDim; ++r) {
    for (int c = 0; c < kDim; ++c) {
      Complex acc{0.0, 0.0};
      for (int k = 0; k < kDim; ++k) {
        acc += at(r, k) * std::conj(at(c, k));
      }
      const Complex expected = (r == c) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
      if (std::abs(acc - expected) > kUnitaryTol) {
        throw std::invalid_argument("matrix is not unitary within 1e-12");
      }
    }
  }
}

Unitary4 Unitary4::identity() {
  Unitary4 u;
  for (int i = 0; i < kDim; ++i) u.m_[static_cast<std::size_t>(i * kDim + i)] = 1.0;
  return u;
}

Unitary4 Unitary4::permutation(const std::array<int, kDim>& targets) {
  std::array<bool, kDim> seen{};
  for (int t : targets) {
    if (t < 0 || t >= kDim || seen[static_cast<std::size_t>(t)]) {
      throw std::invalid_argument("targets must be a permutation of 0..3");
    }
    seen[static_cast<std::size_t>(t)] = true;
  }
  Unitary4 u;
  for (int j = 0; j < kDim; ++j) {
    u.m_[static_cast<std::size_t>(targets[static_cast<std::size_t>(j)] * kDim + j)] = 1.0;
  }
  return u;
}

Unitary4::Rows Unitary4::rows() const {
  Rows out;
  for (int r = 0; r < kDim; ++r) {
    for (int c = 0; c < kDim; ++c) {
      out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = at(r, c);
    }
  }
  return out;
}

double max_abs_diff(const Unitary4& a, const Unitary4& b) {
  double worst = 0.0;
  for (int r = 0; r < kDim; ++r) {
    for (int c = 0; c < kDim; ++c) {
      worst = std::max(worst, std::abs(a.at(r, c) - b.at(r, c)));
    }
  }
  return worst;
}

bool is_permutation_matrix(const Unitary4& u) {
  for (int r = 0; r < kDim; ++r) {
    int ones = 0;
    for (int c = 0; c < kDim; ++c) {
      const Complex& z = u.at(r, c);
      if (z == Complex{1.0, 0.0}) {
        ++ones;
      } else if (z != Complex{0.0, 0.0}) {
        return false;
      }
    }
    if (ones != 1) return false;
  }
  return true;
}

StateVector apply_unitary(const Unitary4& u, const StateVector& s) {
  if (!s.finite()) {
    throw std::invalid_argument("state amplitudes must be finite");
  }
  StateVector out;
  for (int r = 0; r < kDim; ++r) {
    Complex acc{0.0, 0.0};
    for (int c = 0; c < kDim; ++c) {
      acc += u.at(r, c) * s.amps[static_cast<std::size_t>(c)];
    }
    out.amps[static_cast<std::size_t>(r)] = acc;
  }
  return out;
}

namespace {

void require_unitary_2x2(const Mat2& m, const char* which) {
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      Complex acc{0.0, 0.0};
      for (int k = 0; k < 2; ++k) {
        acc += m[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] *
               std::conj(m[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)]);
      }
      const Complex expected = (r == c) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
      if (!finite(acc) || std::abs(acc - expected) > kUnitaryTol) {
        throw std::invalid_argument(std::string(which) +
                                    " factor is not a 2x2 unitary within 1e-12");
      }
    }
  }
}

}  // namespace

Unitary4 tensor_lift(const std::optional<Mat2>& pol_op,
                     const std::optional<Mat2>& spat_op) {
  static const Mat2 kId2{{{Complex{1.0, 0.0}, Complex{0.0, 0.0}},
                          {Complex{0.0, 0.0}, Complex{1.0, 0.0}}}};
  const Mat2& pol = pol_op ? *pol_op : kId2;
  const Mat2& spat = spat_op ? *spat_op : kId2;
  if (pol_op) require_unitary_2x2(pol, "polarization");
  if (spat_op) require_unitary_2x2(spat, "spatial");

  Unitary4::Rows rows;
  for (int p = 0; p < 2; ++p) {
    for (int s = 0; s < 2; ++s) {
      for (int pp = 0; pp < 2; ++pp) {
        for (int ss = 0; ss < 2; ++ss) {
          rows[static_cast<std::size_t>(basis_index(p, s))]
              [static_cast<std::size_t>(basis_index(pp, ss))] =
                  pol[static_cast<std::size_t>(p)][static_cast<std::size_t>(pp)] *
                  spat[static_cast<std::size_t>(s)][static_cast<std::size_t>(ss)];
        }
      }
    }
  }
  return Unitary4(rows);
}

Unitary4 compose(const Unitary4& u_last, const Unitary4& u_first) {
  Unitary4::Rows rows;
  for (int r = 0; r < kDim; ++r) {
    for (int c = 0; c < kDim; ++c) {
      Complex acc{0.0, 0.0};
      for (int k = 0; k < kDim; ++k) {
        acc += u_last.at(r, k) * u_first.at(k, c);
      }
      rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = acc;
    }
  }
  return Unitary4(rows);
}

PolProbs pol_marginal(const StateVector& s) {
  if (!s.finite()) {
    throw std::invalid_argument("state amplitudes must be finite");
  }
  const double n = s.norm();
  if (std::abs(n - 1.0) > kNormTol) {
    throw std::invalid_argument("pol_marginal requires a normalized state");
  }
  PolProbs p;
  p.p_v = std::norm(s.amps[0]) + std::norm(s.amps[1]);
  p.p_h = std::norm(s.amps[2]) + std::norm(s.amps[3]);
  return p;
}

}  // namespace sptq
