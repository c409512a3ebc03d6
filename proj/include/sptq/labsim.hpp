#pragma once

// Counting-experiment layer on top of the analytic model: PZT voltage to
// phase calibration, visibility/extinction/drift imperfections, Poisson
// count sampling over a voltage sweep, and the analysis side (contrast
// ratio, sinusoid fit for the fringe visibility).

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sptq/deutsch.hpp"
#include "sptq/optics.hpp"
#include "sptq/rng.hpp"

namespace sptq {

/// All experiment knobs. Defaults reproduce the reference setup: a 150k
/// counts/s source integrated 1 s per point, a 0..34 V sweep in 1 V steps
/// with 17 V per fringe period (two periods across the sweep), and no
/// imperfections.
struct SweepConfig {
  double rate = 150000.0;         // photons per second reaching the analyzer
  double integration_time = 1.0;  // seconds per grid point
  double v_start = 0.0;           // volts
  double v_end = 34.0;            // volts
  double v_step = 1.0;            // volts
  double volts_per_period = 17.0; // one 2*pi fringe period per this many volts
  double phase_offset = 0.0;      // radians at v = 0
  double visibility = 1.0;        // fringe visibility nu in [0,1]
  double extinction = 0.0;        // wrong-detector fraction eps in [0,0.5]
  double drift_per_volt = 0.0;    // linear coupling-efficiency loss per volt
  double background_prob = 0.0;   // accidental-count fraction in [0,1)
  std::uint64_t seed = 42;

  /// Throws std::invalid_argument when any knob is outside its range.
  void validate() const;

  int grid_size() const;
  double grid_voltage(int index) const;
};

/// One sweep row. phase is voltage_to_phase(voltage) under the config
/// that produced the record.
struct DetectionRecord {
  double voltage = 0.0;
  double phase = 0.0;
  std::uint64_t counts_d1 = 0;
  std::uint64_t counts_d2 = 0;

  bool operator==(const DetectionRecord&) const = default;
};

struct ContrastReport {
  double eta = 0.0;
  double eta_std = 0.0;
  int n_points = 0;
};

struct VisibilityFit {
  double nu = 0.0;         // fitted visibility, clamped to [0,1]
  double amplitude = 0.0;  // fitted mean level a
  double delta = 0.0;      // fitted phase at v = 0
  bool flat = false;       // set when the counts carry no resolvable fringe
};

/// Linear calibration phi = 2*pi*v/volts_per_period + phase_offset.
double voltage_to_phase(double v, const SweepConfig& cfg);

/// Shared linear coupling efficiency g(v) = max(0, 1 - drift_per_volt*v).
double coupling_efficiency(double v, const SweepConfig& cfg);

/// Ideal probabilities degraded by the two scalar imperfections:
/// visibility mixes toward the phase-averaged distribution (0.5/0.5 for
/// balanced kinds, a no-op for constant kinds) and extinction swaps a
/// fraction eps between the detectors.
PolProbs detection_probs(OracleKind kind, double phi, const SweepConfig& cfg);

/// Noise-free mean counts (mu_d1, mu_d2) at voltage v.
std::pair<double, double> expected_counts(OracleKind kind, double v,
                                          const SweepConfig& cfg);

/// The per-point random stream, keyed by (seed, kind, point index).
CounterRng point_stream(const SweepConfig& cfg, OracleKind kind, int point_index);

/// One Poisson draw per detector at voltage v.
DetectionRecord sample_counts(OracleKind kind, double v, const SweepConfig& cfg,
                              CounterRng& stream);

/// One DetectionRecord per grid point. Deterministic for a fixed seed
/// regardless of evaluation order. Throws std::invalid_argument on an
/// invalid config.
std::vector<DetectionRecord> simulate_sweep(OracleKind kind, const SweepConfig& cfg);

/// eta = |c1-c2|/(c1+c2) with Poisson error propagation. Throws
/// std::domain_error when c1+c2 = 0.
ContrastReport contrast_ratio(std::uint64_t c1, std::uint64_t c2);

/// Least-squares fit of counts to a*g(v)*(1 - nu*cos(2*pi*v/volts_per_period
/// + delta)) with g fixed from cfg. The model is linear in
/// (a, a*nu*cos(delta), a*nu*sin(delta)), so the normal equations solve it
/// exactly. Requires at least 8 samples spanning at least one period.
VisibilityFit fit_visibility_series(std::span<const double> voltages,
                                    std::span<const double> counts,
                                    const SweepConfig& cfg);

/// fit_visibility_series over the D1 counts of a sweep.
VisibilityFit fit_visibility(const std::vector<DetectionRecord>& records,
                             const SweepConfig& cfg);

/// Voltages in [v_start, v_end] where the phase hits (2N+1)*pi — the
/// proper points at which one detection decides the function class.
std::vector<double> proper_phase_voltages(const SweepConfig& cfg);

/// Statistical class decision from raw counts: the imbalance must exceed
/// z_threshold standard deviations of shot noise to call a class.
FunctionClass classify_counts(std::uint64_t c1, std::uint64_t c2,
                              double z_threshold = 5.0);

}  // namespace sptq
