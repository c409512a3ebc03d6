#include "sptq/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace sptq {

namespace {

constexpr double kWidth = 880.0;
constexpr double kHeight = 560.0;
constexpr double kMarginLeft = 80.0;
constexpr double kMarginRight = 30.0;
constexpr double kMarginTop = 50.0;
constexpr double kMarginBottom = 60.0;

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c; break;
    }
  }
  return out;
}

// Rounds a raw interval to a 1/2/5 * 10^k tick step.
double nice_step(double range, int target_ticks) {
  const double raw = range / std::max(1, target_ticks);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) return m * mag;
  }
  return 10.0 * mag;
}

struct FitModel {
  double a = 0.0;
  double nu = 0.0;
  double delta = 0.0;
  bool flat = true;

  double eval(double v, const SweepConfig& cfg) const {
    const double g = coupling_efficiency(v, cfg);
    if (flat) return a * g;
    const double omega = 2.0 * std::numbers::pi / cfg.volts_per_period;
    return a * g * (1.0 - nu * std::cos(omega * v + delta));
  }
};

FitModel fit_series(const std::vector<DetectionRecord>& records, bool first_detector,
                    const SweepConfig& cfg) {
  std::vector<double> vs;
  std::vector<double> counts;
  double mean = 0.0;
  double mean_g = 0.0;
  for (const DetectionRecord& rec : records) {
    vs.push_back(rec.voltage);
    const double c =
        static_cast<double>(first_detector ? rec.counts_d1 : rec.counts_d2);
    counts.push_back(c);
    mean += c;
    mean_g += coupling_efficiency(rec.voltage, cfg);
  }
  FitModel model;
  try {
    const VisibilityFit fit = fit_visibility_series(vs, counts, cfg);
    model.a = fit.amplitude;
    model.nu = fit.nu;
    model.delta = fit.delta;
    model.flat = fit.flat;
  } catch (const std::invalid_argument&) {
    // Too few points for a fringe fit; fall back to the mean level.
    model.a = mean_g > 0.0 ? mean / mean_g : 0.0;
    model.flat = true;
  }
  return model;
}

}  // namespace

PlotResult render_sweep_plot(const std::vector<DetectionRecord>& records,
                             const SweepConfig& cfg, const std::string& title) {
  if (records.empty()) {
    throw std::invalid_argument("cannot plot an empty sweep");
  }

  double v_min = records.front().voltage;
  double v_max = records.front().voltage;
  double c_max = 1.0;
  for (const DetectionRecord& rec : records) {
    v_min = std::min(v_min, rec.voltage);
    v_max = std::max(v_max, rec.voltage);
    c_max = std::max({c_max, static_cast<double>(rec.counts_d1),
                      static_cast<double>(rec.counts_d2)});
  }
  const double v_span = (v_max > v_min) ? v_max - v_min : 1.0;
  const double y_max = 1.08 * c_max;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto x_of = [&](double v) {
    return kMarginLeft + (v - v_min) / v_span * plot_w;
  };
  const auto y_of = [&](double c) {
    return kMarginTop + plot_h - std::clamp(c / y_max, 0.0, 1.0) * plot_h;
  };

  const FitModel fit_d1 = fit_series(records, true, cfg);
  const FitModel fit_d2 = fit_series(records, false, cfg);

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) +
         "\" height=\"" + fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " +
         fmt(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"28\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">" + xml_escape(title) +
         "</text>\n";

  // axes
  svg += "<rect x=\"" + fmt(kMarginLeft) + "\" y=\"" + fmt(kMarginTop) +
         "\" width=\"" + fmt(plot_w) + "\" height=\"" + fmt(plot_h) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  const double x_step = nice_step(v_span, 8);
  for (double v = std::ceil(v_min / x_step) * x_step; v <= v_max + 1e-9; v += x_step) {
    const double x = x_of(v);
    svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(kMarginTop + plot_h) +
           "\" x2=\"" + fmt(x) + "\" y2=\"" + fmt(kMarginTop + plot_h + 6) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(kMarginTop + plot_h + 22) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           fmt(v) + "</text>\n";
  }
  const double y_step = nice_step(y_max, 6);
  for (double c = 0.0; c <= y_max + 1e-9; c += y_step) {
    const double y = y_of(c);
    svg += "<line x1=\"" + fmt(kMarginLeft - 6) + "\" y1=\"" + fmt(y) + "\" x2=\"" +
           fmt(kMarginLeft) + "\" y2=\"" + fmt(y) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(kMarginLeft - 10) + "\" y=\"" + fmt(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" +
           fmt(c) + "</text>\n";
  }
  svg += "<text x=\"" + fmt(kMarginLeft + plot_w / 2) + "\" y=\"" +
         fmt(kHeight - 16) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">PZT voltage (V)</text>\n";
  svg += "<text x=\"22\" y=\"" + fmt(kMarginTop + plot_h / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
         "transform=\"rotate(-90 22 " + fmt(kMarginTop + plot_h / 2) +
         ")\">counts per point</text>\n";

  // proper-phase markers
  for (double v : proper_phase_voltages(cfg)) {
    if (v < v_min - 1e-9 || v > v_max + 1e-9) continue;
    const double x = x_of(v);
    svg += "<line class=\"proper-phase\" x1=\"" + fmt(x) + "\" y1=\"" +
           fmt(kMarginTop) + "\" x2=\"" + fmt(x) + "\" y2=\"" +
           fmt(kMarginTop + plot_h) +
           "\" stroke=\"green\" stroke-dasharray=\"6,4\"/>\n";
    svg += "<text x=\"" + fmt(x + 4) + "\" y=\"" + fmt(kMarginTop + 14) +
           "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"green\">" +
           fmt(v) + " V</text>\n";
  }

  // fitted curves, sampled finely
  for (int series = 0; series < 2; ++series) {
    const FitModel& model = series == 0 ? fit_d1 : fit_d2;
    const char* color = series == 0 ? "black" : "red";
    std::string points;
    const int samples = 240;
    for (int i = 0; i <= samples; ++i) {
      const double v = v_min + v_span * i / samples;
      points += fmt(x_of(v)) + "," + fmt(y_of(model.eval(v, cfg))) + " ";
    }
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"1.2\" points=\"" + points + "\"/>\n";
  }

  // data markers
  for (const DetectionRecord& rec : records) {
    const double x1 = x_of(rec.voltage);
    const double y1 = y_of(static_cast<double>(rec.counts_d1));
    svg += "<rect x=\"" + fmt(x1 - 3) + "\" y=\"" + fmt(y1 - 3) +
           "\" width=\"6\" height=\"6\" fill=\"black\"/>\n";
    const double x2 = x_of(rec.voltage);
    const double y2 = y_of(static_cast<double>(rec.counts_d2));
    svg += "<path d=\"M " + fmt(x2) + " " + fmt(y2 - 4.5) + " L " + fmt(x2 - 4) +
           " " + fmt(y2 + 3.5) + " L " + fmt(x2 + 4) + " " + fmt(y2 + 3.5) +
           " Z\" fill=\"red\"/>\n";
  }

  // legend
  const double lx = kMarginLeft + plot_w - 150;
  const double ly = kMarginTop + 12;
  svg += "<rect x=\"" + fmt(lx - 8) + "\" y=\"" + fmt(ly - 10) +
         "\" width=\"150\" height=\"42\" fill=\"white\" stroke=\"black\" "
         "stroke-width=\"0.5\"/>\n";
  svg += "<rect x=\"" + fmt(lx) + "\" y=\"" + fmt(ly - 3) +
         "\" width=\"6\" height=\"6\" fill=\"black\"/>\n";
  svg += "<text x=\"" + fmt(lx + 14) + "\" y=\"" + fmt(ly + 4) +
         "\" font-family=\"sans-serif\" font-size=\"12\">D1 (H)</text>\n";
  svg += "<path d=\"M " + fmt(lx + 3) + " " + fmt(ly + 12) + " L " + fmt(lx - 1) +
         " " + fmt(ly + 20) + " L " + fmt(lx + 7) + " " + fmt(ly + 20) +
         " Z\" fill=\"red\"/>\n";
  svg += "<text x=\"" + fmt(lx + 14) + "\" y=\"" + fmt(ly + 20) +
         "\" font-family=\"sans-serif\" font-size=\"12\">D2 (V)</text>\n";
  svg += "</svg>\n";

  std::string sidecar = "# voltage_V phase_rad counts_d1 counts_d2 fit_d1 fit_d2\n";
  char buf[192];
  for (const DetectionRecord& rec : records) {
    std::snprintf(buf, sizeof(buf), "%.9g %.9g %llu %llu %.6g %.6g\n", rec.voltage,
                  rec.phase, static_cast<unsigned long long>(rec.counts_d1),
                  static_cast<unsigned long long>(rec.counts_d2),
                  fit_d1.eval(rec.voltage, cfg), fit_d2.eval(rec.voltage, cfg));
    sidecar += buf;
  }
  return {std::move(svg), std::move(sidecar)};
}

}  // namespace sptq
