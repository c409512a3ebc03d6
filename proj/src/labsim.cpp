#include "sptq/labsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sptq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

// Solves a symmetric 3x3 system by Gaussian elimination with partial
// pivoting. Small enough that nothing fancier is warranted.
std::array<double, 3> solve3(std::array<std::array<double, 3>, 3> m,
                             std::array<double, 3> rhs) {
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    if (m[col][col] == 0.0) {
      throw std::invalid_argument("degenerate design matrix in visibility fit");
    }
    for (int r = col + 1; r < 3; ++r) {
      const double f = m[r][col] / m[col][col];
      for (int c = col; c < 3; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::array<double, 3> x{};
  for (int r = 2; r >= 0; --r) {
    double acc = rhs[r];
    for (int c = r + 1; c < 3; ++c) acc -= m[r][c] * x[c];
    x[r] = acc / m[r][r];
  }
  return x;
}

}  // namespace

void SweepConfig::validate() const {
  require(std::isfinite(rate) && rate >= 0.0, "rate must be >= 0");
  require(std::isfinite(integration_time) && integration_time >= 0.0,
          "integration_time must be >= 0");
  require(std::isfinite(v_start) && std::isfinite(v_end) && v_end >= v_start,
          "voltage range requires v_end >= v_start");
  require(std::isfinite(v_step) && v_step > 0.0, "v_step must be > 0");
  require(std::isfinite(volts_per_period) && volts_per_period > 0.0,
          "volts_per_period must be > 0");
  require(std::isfinite(phase_offset), "phase_offset must be finite");
  require(visibility >= 0.0 && visibility <= 1.0, "visibility must lie in [0,1]");
  require(extinction >= 0.0 && extinction <= 0.5, "extinction must lie in [0,0.5]");
  require(std::isfinite(drift_per_volt) && drift_per_volt >= 0.0,
          "drift_per_volt must be >= 0");
  require(background_prob >= 0.0 && background_prob < 1.0,
          "background_prob must lie in [0,1)");
}

int SweepConfig::grid_size() const {
  validate();
  return static_cast<int>(std::floor((v_end - v_start) / v_step + 1e-9)) + 1;
}

double SweepConfig::grid_voltage(int index) const {
  return v_start + v_step * index;
}

double voltage_to_phase(double v, const SweepConfig& cfg) {
  if (!std::isfinite(v)) throw std::invalid_argument("voltage must be finite");
  return kTwoPi * v / cfg.volts_per_period + cfg.phase_offset;
}

double coupling_efficiency(double v, const SweepConfig& cfg) {
  return std::max(0.0, 1.0 - cfg.drift_per_volt * v);
}

PolProbs detection_probs(OracleKind kind, double phi, const SweepConfig& cfg) {
  cfg.validate();
  PolProbs p = run_deutsch(kind, phi).probs;
  if (is_balanced(kind)) {
    // Mix toward the phase-averaged distribution; constant kinds are
    // phase-independent already, so visibility leaves them alone.
    const double nu = cfg.visibility;
    p.p_h = nu * p.p_h + (1.0 - nu) * 0.5;
    p.p_v = nu * p.p_v + (1.0 - nu) * 0.5;
  }
  const double eps = cfg.extinction;
  const double h = (1.0 - eps) * p.p_h + eps * p.p_v;
  const double v = (1.0 - eps) * p.p_v + eps * p.p_h;
  return {.p_v = v, .p_h = h};
}

std::pair<double, double> expected_counts(OracleKind kind, double v,
                                          const SweepConfig& cfg) {
  const PolProbs p = detection_probs(kind, voltage_to_phase(v, cfg), cfg);
  const double scale = cfg.rate * cfg.integration_time * coupling_efficiency(v, cfg) *
                       (1.0 + cfg.background_prob);
  return {scale * p.p_h, scale * p.p_v};
}

CounterRng point_stream(const SweepConfig& cfg, OracleKind kind, int point_index) {
  return CounterRng(cfg.seed, static_cast<std::uint64_t>(kind),
                    static_cast<std::uint64_t>(point_index));
}

DetectionRecord sample_counts(OracleKind kind, double v, const SweepConfig& cfg,
                              CounterRng& stream) {
  const auto [mu1, mu2] = expected_counts(kind, v, cfg);
  DetectionRecord rec;
  rec.voltage = v;
  rec.phase = voltage_to_phase(v, cfg);
  rec.counts_d1 = stream.next_poisson(mu1);
  rec.counts_d2 = stream.next_poisson(mu2);
  return rec;
}

std::vector<DetectionRecord> simulate_sweep(OracleKind kind, const SweepConfig& cfg) {
  const int n = cfg.grid_size();
  std::vector<DetectionRecord> records;
  records.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    CounterRng stream = point_stream(cfg, kind, i);
    records.push_back(sample_counts(kind, cfg.grid_voltage(i), cfg, stream));
  }
  return records;
}

ContrastReport contrast_ratio(std::uint64_t c1, std::uint64_t c2) {
  if (c1 + c2 == 0) {
    throw std::domain_error("contrast ratio undefined for zero total counts");
  }
  const double a = static_cast<double>(c1);
  const double b = static_cast<double>(c2);
  const double total = a + b;
  ContrastReport report;
  report.eta = std::abs(a - b) / total;
  report.eta_std = 2.0 * std::sqrt(a * b * total) / (total * total);
  report.n_points = 1;
  return report;
}

VisibilityFit fit_visibility_series(std::span<const double> voltages,
                                    std::span<const double> counts,
                                    const SweepConfig& cfg) {
  cfg.validate();
  require(voltages.size() == counts.size(), "voltage/count series length mismatch");

  // Normalize out the drift envelope and collect the design sums for
  // y/g = A + B cos(w v) + C sin(w v).
  const double omega = kTwoPi / cfg.volts_per_period;
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(voltages.size());
  ys.reserve(voltages.size());
  for (std::size_t i = 0; i < voltages.size(); ++i) {
    const double g = coupling_efficiency(voltages[i], cfg);
    if (g <= 0.0) continue;  // no light reaches the detectors here
    xs.push_back(voltages[i]);
    ys.push_back(counts[i] / g);
  }
  require(xs.size() >= 8, "visibility fit needs at least 8 usable records");
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  require(*hi - *lo >= cfg.volts_per_period - 1e-9,
          "visibility fit needs records spanning at least one period");

  std::array<std::array<double, 3>, 3> normal{};
  std::array<double, 3> rhs{};
  double mean_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const std::array<double, 3> row{1.0, std::cos(omega * xs[i]),
                                    std::sin(omega * xs[i])};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) normal[r][c] += row[r] * row[c];
      rhs[r] += row[r] * ys[i];
    }
    mean_y += ys[i];
  }
  mean_y /= static_cast<double>(xs.size());

  const auto [a, b, c] = solve3(normal, rhs);
  const double amp = std::hypot(b, c);

  VisibilityFit fit;
  fit.amplitude = a;
  // Under flat Poisson counts the spurious fitted amplitude is Rayleigh
  // with scale sqrt(2*mean/n); five scales out is a ~4e-6 false alarm.
  const double noise_amp =
      5.0 * std::sqrt(2.0 * std::max(mean_y, 1.0) / static_cast<double>(xs.size()));
  if (a <= 0.0 || amp <= noise_amp) {
    fit.flat = true;
    fit.nu = 0.0;
    return fit;
  }
  fit.nu = std::clamp(amp / a, 0.0, 1.0);
  fit.delta = std::atan2(c, -b);
  return fit;
}

VisibilityFit fit_visibility(const std::vector<DetectionRecord>& records,
                             const SweepConfig& cfg) {
  std::vector<double> vs;
  std::vector<double> d1;
  vs.reserve(records.size());
  d1.reserve(records.size());
  for (const DetectionRecord& rec : records) {
    vs.push_back(rec.voltage);
    d1.push_back(static_cast<double>(rec.counts_d1));
  }
  return fit_visibility_series(vs, d1, cfg);
}

std::vector<double> proper_phase_voltages(const SweepConfig& cfg) {
  cfg.validate();
  std::vector<double> out;
  const double scale = cfg.volts_per_period / kTwoPi;
  // phi = (2N+1)*pi  ->  v = ((2N+1)*pi - offset) * vpp / (2*pi)
  const double phi_lo = voltage_to_phase(cfg.v_start, cfg);
  const double phi_hi = voltage_to_phase(cfg.v_end, cfg);
  const long n_lo = static_cast<long>(std::floor((phi_lo / std::numbers::pi - 1.0) / 2.0));
  const long n_hi = static_cast<long>(std::ceil((phi_hi / std::numbers::pi - 1.0) / 2.0));
  for (long n = n_lo; n <= n_hi; ++n) {
    const double phi = (2.0 * static_cast<double>(n) + 1.0) * std::numbers::pi;
    const double v = (phi - cfg.phase_offset) * scale;
    if (v >= cfg.v_start - 1e-9 && v <= cfg.v_end + 1e-9) out.push_back(v);
  }
  return out;
}

FunctionClass classify_counts(std::uint64_t c1, std::uint64_t c2, double z_threshold) {
  if (!(z_threshold > 0.0)) {
    throw std::invalid_argument("z_threshold must be positive");
  }
  const double a = static_cast<double>(c1);
  const double b = static_cast<double>(c2);
  const double noise = z_threshold * std::sqrt(a + b);
  if (a - b > noise) return FunctionClass::Balanced;
  if (b - a > noise) return FunctionClass::Constant;
  return FunctionClass::Indeterminate;
}

}  // namespace sptq
