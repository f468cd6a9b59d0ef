#pragma once

#include "error.hpp"
#include "feature_names.hpp"
#include "vertex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace rmt {

struct TapGeometry {
  std::vector<double> peak_times;    // seconds, increasing
  std::vector<double> valley_times;  // seconds, increasing
  std::vector<double> amplitudes;    // one per peak, max exactly 1
};

struct FeatureReport {
  double m_tf = 0.0;    // Hz
  int ttc = 0;
  double ms = 0.0;      // Hz
  double m_iti = 0.0;   // s
  double dos = 0.0;
  double cov_a = 0.0;
  double doa = 0.0;
  double cov_tf = 0.0;
  double iiv = 0.0;     // s

  std::string recording_id;
  AvrParams params;
  bool normalized = true;
  // IIV measures peak intervals about M-ITI, a valley statistic. Set when
  // the mean peak interval and M-ITI differ by more than 10%.
  bool iiv_reference_mismatch = false;

  double value(Feature f) const {
    switch (f) {
    case Feature::MTF: return m_tf;
    case Feature::TTC: return ttc;
    case Feature::MS: return ms;
    case Feature::MITI: return m_iti;
    case Feature::DoS: return dos;
    case Feature::COVA: return cov_a;
    case Feature::DoA: return doa;
    case Feature::COVTF: return cov_tf;
    case Feature::IIV: return iiv;
    }
    return 0.0;
  }
};

/// Peak/valley times and per-peak amplitudes. A peak's amplitude is its
/// height above the mean of its neighbouring troughs (the single neighbour
/// at series ends), normalized to the largest.
inline TapGeometry tap_geometry(const VertexSeries& v) {
  TapGeometry g;
  const auto& xs = v.vertices;
  std::vector<double> raw;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0 && xs[i].kind == xs[i - 1].kind) throw AnalysisError("vertex series does not alternate");
    if (xs[i].kind == VertexKind::trough) {
      g.valley_times.push_back(xs[i].time);
      continue;
    }
    g.peak_times.push_back(xs[i].time);
    double sum = 0.0;
    int count = 0;
    if (i > 0) {
      sum += xs[i - 1].height;
      ++count;
    }
    if (i + 1 < xs.size()) {
      sum += xs[i + 1].height;
      ++count;
    }
    // A lone peak has no trough to measure against.
    raw.push_back(count > 0 ? xs[i].height - sum / count : 0.0);
  }
  if (g.peak_times.size() < 2 || g.valley_times.size() < 2)
    throw AnalysisError("insufficient vertices: need at least 2 peaks and 2 troughs, got " +
                        std::to_string(g.peak_times.size()) + " and " + std::to_string(g.valley_times.size()));
  const double top = *std::max_element(raw.begin(), raw.end());
  if (!(top > 0.0)) throw AnalysisError("insufficient vertices: no peak rises above its troughs");
  for (double a : raw) {
    if (!(a > 0.0)) throw AnalysisError("peak at or below its neighbouring troughs");
    g.amplitudes.push_back(a / top);
  }
  return g;
}

/// The nine tapping features. Sums run over consecutive peak intervals
/// (K_p - 1 of them) except M-ITI, which uses valley intervals.
inline FeatureReport extract_features(const TapGeometry& g) {
  const std::size_t kp = g.peak_times.size();
  const std::size_t kv = g.valley_times.size();
  if (kp < 2 || kv < 2) throw AnalysisError("insufficient vertices for feature extraction");
  if (g.amplitudes.size() != kp) throw std::invalid_argument("one amplitude per peak required");

  std::vector<double> peak_iv(kp - 1);
  std::vector<double> freq(kp - 1);
  for (std::size_t k = 1; k < kp; ++k) {
    peak_iv[k - 1] = g.peak_times[k] - g.peak_times[k - 1];
    if (!(peak_iv[k - 1] > 0.0)) throw AnalysisError("corrupt vertex series: non-positive peak interval");
    freq[k - 1] = 1.0 / peak_iv[k - 1];
  }
  double valley_sum = 0.0;
  for (std::size_t k = 1; k < kv; ++k) {
    const double d = g.valley_times[k] - g.valley_times[k - 1];
    if (!(d > 0.0)) throw AnalysisError("corrupt vertex series: non-positive valley interval");
    valley_sum += d;
  }

  const double m_peaks = static_cast<double>(kp - 1);
  FeatureReport r;
  r.m_tf = std::accumulate(freq.begin(), freq.end(), 0.0) / m_peaks;
  r.ttc = static_cast<int>(std::min(kp, kv));
  r.ms = 1.0 / *std::min_element(peak_iv.begin(), peak_iv.end());
  r.m_iti = valley_sum / static_cast<double>(kv - 1);
  r.dos = std::log(freq.front() / freq.back()) / m_peaks;

  const double a_mean = std::accumulate(g.amplitudes.begin(), g.amplitudes.end(), 0.0) / static_cast<double>(kp);
  double a_ss = 0.0;
  for (double a : g.amplitudes) a_ss += (a - a_mean) * (a - a_mean);
  r.cov_a = std::sqrt(a_ss / static_cast<double>(kp)) / a_mean;
  r.doa = std::log(g.amplitudes.front() / g.amplitudes.back()) / static_cast<double>(kp);

  double f_ss = 0.0;
  for (double f : freq) f_ss += (f - r.m_tf) * (f - r.m_tf);
  r.cov_tf = std::sqrt(f_ss / m_peaks) / r.m_tf;

  double iv_ss = 0.0;
  for (double d : peak_iv) iv_ss += (d - r.m_iti) * (d - r.m_iti);
  r.iiv = std::sqrt(iv_ss / m_peaks);

  const double mean_peak_iv = std::accumulate(peak_iv.begin(), peak_iv.end(), 0.0) / m_peaks;
  r.iiv_reference_mismatch = std::abs(mean_peak_iv - r.m_iti) > 0.1 * mean_peak_iv;
  return r;
}

inline FeatureReport extract_features(const VertexSeries& v) {
  FeatureReport r = extract_features(tap_geometry(v));
  r.params = v.source_params;
  return r;
}

} // namespace rmt
