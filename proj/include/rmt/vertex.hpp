#pragma once

// Adaptive vertex recognition: threshold the frame-to-frame slope to drop
// fluctuations, rebuild a piecewise-flat signal, compare each flat section
// against a moving mean, and localize one peak or trough per section.

#include "error.hpp"
#include "signal.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmt {

struct AvrParams {
  double gamma_flatness = 0.1;   // slope threshold, fraction of signal range
  double gamma_window = 0.1;     // moving-mean window, fraction of N
  double gamma_platform = 0.01;  // long/short platform split, fraction of N
  // Short-platform vertex times are refined between frames by a 3-point
  // parabola through S; frame index and height stay on the sampled extremum.
  bool subframe_refinement = true;

  void validate() const {
    if (!(gamma_flatness > 0.0 && gamma_flatness < 1.0))
      throw InputError("gamma_flatness must lie in (0, 1)");
    if (!(gamma_window > 0.0 && gamma_window <= 1.0))
      throw InputError("gamma_window must lie in (0, 1]");
    if (!(gamma_platform > 0.0 && gamma_platform < 1.0))
      throw InputError("gamma_platform must lie in (0, 1)");
  }

  friend bool operator==(const AvrParams&, const AvrParams&) = default;
};

enum class SectionKind { platform, transition };
enum class Polarity { none, peak, trough };
enum class VertexKind { peak, trough };

inline const char* to_string(VertexKind k) { return k == VertexKind::peak ? "peak" : "trough"; }
inline const char* to_string(Polarity p) {
  return p == Polarity::peak ? "peak" : p == Polarity::trough ? "trough" : "none";
}

/// Inclusive frame range. Consecutive sections share their boundary frame;
/// their slope (delta) ranges tile [0, N-1) without overlap.
struct Section {
  std::size_t start_frame = 0;
  std::size_t end_frame = 0;
  SectionKind kind = SectionKind::transition;
  Polarity polarity = Polarity::none;

  std::size_t length() const noexcept { return end_frame - start_frame + 1; }
  friend bool operator==(const Section&, const Section&) = default;
};

struct Vertex {
  double time = 0.0;  // seconds
  std::size_t frame = 0;
  double height = 0.0;
  VertexKind kind = VertexKind::peak;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct VertexSeries {
  std::vector<Vertex> vertices;
  AvrParams source_params;

  std::size_t count(VertexKind k) const {
    return static_cast<std::size_t>(
        std::count_if(vertices.begin(), vertices.end(), [k](const Vertex& v) { return v.kind == k; }));
  }
};

/// Zeroes every slope whose magnitude is below `threshold`.
inline std::vector<double> fluctuation_removal(std::span<const double> delta, double threshold) {
  std::vector<double> out(delta.begin(), delta.end());
  for (double& d : out) {
    if (std::abs(d) < threshold) d = 0.0;
  }
  return out;
}

inline std::vector<double> fluctuation_removal(const DistanceSignal& s, const AvrParams& p) {
  if (!s.mean_removed()) throw std::logic_error("fluctuation_removal expects a mean-removed signal");
  if (!(s.range() > 0.0)) throw AnalysisError("flat recording: distance signal has zero range");
  std::vector<double> delta(s.size() - 1);
  for (std::size_t i = 0; i + 1 < s.size(); ++i) delta[i] = s[i + 1] - s[i];
  return fluctuation_removal(delta, p.gamma_flatness * s.range());
}

/// Splits frames into platforms and transitions. A platform is a maximal run
/// of zero slopes, or a single frame where two nonzero slopes change sign
/// (an extremum sampled without any flat neighbourhood).
inline std::vector<Section> segment(std::span<const double> filtered_delta) {
  const std::size_t n_frames = filtered_delta.size() + 1;
  std::vector<Section> platforms;
  std::size_t i = 0;
  while (i < filtered_delta.size()) {
    if (filtered_delta[i] == 0.0) {
      std::size_t j = i;
      while (j + 1 < filtered_delta.size() && filtered_delta[j + 1] == 0.0) ++j;
      platforms.push_back({i, j + 1, SectionKind::platform, Polarity::none});
      i = j + 1;
    } else {
      if (i > 0 && filtered_delta[i - 1] != 0.0 && ((filtered_delta[i - 1] > 0.0) != (filtered_delta[i] > 0.0)))
        platforms.push_back({i, i, SectionKind::platform, Polarity::none});
      ++i;
    }
  }

  std::vector<Section> out;
  std::size_t cursor = 0;
  for (const auto& p : platforms) {
    if (p.start_frame > cursor) out.push_back({cursor, p.start_frame, SectionKind::transition, Polarity::none});
    out.push_back(p);
    cursor = p.end_frame;
  }
  if (cursor < n_frames - 1) out.push_back({cursor, n_frames - 1, SectionKind::transition, Polarity::none});
  return out;
}

/// Cumulative sum of the filtered slopes, with every platform re-anchored to
/// the mean of the original signal over its frames; transitions continue
/// from the preceding anchor.
inline std::vector<double> reconstruct(std::span<const double> s, std::span<const double> filtered_delta) {
  if (filtered_delta.size() + 1 != s.size()) throw std::invalid_argument("reconstruct: length mismatch");
  std::vector<double> out(s.size());
  out[0] = s[0];
  for (const auto& sec : segment(filtered_delta)) {
    if (sec.kind == SectionKind::platform) {
      double sum = 0.0;
      for (std::size_t i = sec.start_frame; i <= sec.end_frame; ++i) sum += s[i];
      const double level = sum / static_cast<double>(sec.length());
      std::fill(out.begin() + static_cast<std::ptrdiff_t>(sec.start_frame),
                out.begin() + static_cast<std::ptrdiff_t>(sec.end_frame) + 1, level);
    } else {
      for (std::size_t i = sec.start_frame; i < sec.end_frame; ++i) out[i + 1] = out[i] + filtered_delta[i];
    }
  }
  return out;
}

inline std::vector<double> reconstruct(const DistanceSignal& s, std::span<const double> filtered_delta) {
  return reconstruct(s.values(), filtered_delta);
}

inline std::size_t window_size(std::size_t n_frames, const AvrParams& p) {
  const auto n = static_cast<std::size_t>(std::llround(p.gamma_window * static_cast<double>(n_frames)));
  return std::max<std::size_t>(n, 1);
}

/// Centered moving mean over [i - n/2, i + n/2], truncated at the edges.
inline std::vector<double> moving_mean(std::span<const double> x, const AvrParams& p) {
  const std::size_t n = x.size();
  const std::size_t half = window_size(n, p) / 2;
  std::vector<double> mu(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(n - 1, i + half);
    double sum = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) sum += x[k];
    mu[i] = sum / static_cast<double>(hi - lo + 1);
  }
  return mu;
}

/// Platforms above the moving mean are peaks; at or below, troughs.
inline std::vector<Section> segment_and_classify(std::span<const double> reconstructed,
                                                 std::span<const double> filtered_delta,
                                                 std::span<const double> mu) {
  if (reconstructed.size() != filtered_delta.size() + 1 || mu.size() != reconstructed.size())
    throw std::invalid_argument("segment_and_classify: length mismatch");
  auto sections = segment(filtered_delta);
  for (auto& sec : sections) {
    if (sec.kind != SectionKind::platform) continue;
    double sum_s = 0.0;
    double sum_mu = 0.0;
    for (std::size_t i = sec.start_frame; i <= sec.end_frame; ++i) {
      sum_s += reconstructed[i];
      sum_mu += mu[i];
    }
    const double mean_s = sum_s / static_cast<double>(sec.length());
    const double mean_mu = sum_mu / static_cast<double>(sec.length());
    // Differences at rounding level count as ties, which go to trough.
    const double tol = 1e-12 * std::max(std::abs(mean_s), std::abs(mean_mu));
    sec.polarity = (mean_s - mean_mu > tol) ? Polarity::peak : Polarity::trough;
  }
  return sections;
}

/// Offset in frames, within [-0.5, 0.5], of the vertex of the parabola
/// through s[i-1], s[i], s[i+1]. Zero at the signal ends or on flat data.
inline double parabolic_offset(std::span<const double> s, std::size_t i) {
  if (i == 0 || i + 1 >= s.size()) return 0.0;
  const double denom = s[i - 1] - 2.0 * s[i] + s[i + 1];
  if (denom == 0.0) return 0.0;
  return std::clamp(0.5 * (s[i - 1] - s[i + 1]) / denom, -0.5, 0.5);
}

/// One vertex per interior platform. Short platforms use the extremum of S
/// (earliest on ties); long ones use their central time. The first and last
/// platforms of the recording are waiting periods and are dropped.
inline VertexSeries locate_vertices(std::span<const Section> sections, std::span<const double> s, double fps,
                                    const AvrParams& p) {
  std::vector<const Section*> platforms;
  for (const auto& sec : sections) {
    if (sec.kind == SectionKind::platform) platforms.push_back(&sec);
  }
  if (platforms.size() < 3)
    throw AnalysisError("unanalyzable recording: no platform between the first and last");

  const double long_threshold = p.gamma_platform * static_cast<double>(s.size());
  VertexSeries out;
  out.source_params = p;
  for (std::size_t k = 1; k + 1 < platforms.size(); ++k) {
    const Section& sec = *platforms[k];
    const bool peak = sec.polarity == Polarity::peak;

    std::size_t ext = sec.start_frame;
    for (std::size_t i = sec.start_frame + 1; i <= sec.end_frame; ++i) {
      if (peak ? s[i] > s[ext] : s[i] < s[ext]) ext = i;
    }

    Vertex v;
    v.kind = peak ? VertexKind::peak : VertexKind::trough;
    bool interior = false;
    if (static_cast<double>(sec.length()) <= long_threshold) {
      v.frame = ext;
      v.time = (static_cast<double>(ext) + (p.subframe_refinement ? parabolic_offset(s, ext) : 0.0)) / fps;
      interior = ext > sec.start_frame && ext < sec.end_frame;
    } else {
      v.frame = (sec.start_frame + sec.end_frame) / 2;
      v.time = static_cast<double>(sec.start_frame + sec.end_frame) / (2.0 * fps);
      interior = sec.end_frame > sec.start_frame;
    }
    // Inside a platform the slope is zero, so the section extremum is the
    // height; on a section boundary the signal value at the vertex is.
    v.height = interior ? s[ext] : s[v.frame];
    out.vertices.push_back(v);
  }
  return out;
}

inline VertexSeries locate_vertices(std::span<const Section> sections, const DistanceSignal& s,
                                    const AvrParams& p) {
  return locate_vertices(sections, s.values(), s.fps(), p);
}

/// Collapses runs of same-kind vertices to their most extreme member
/// (earliest on ties), then removes adjacent peak/trough pairs in which the
/// peak does not rise above the trough.
inline VertexSeries enforce_alternation(VertexSeries v) {
  std::vector<Vertex> out;
  for (const auto& x : v.vertices) {
    if (!out.empty() && out.back().kind == x.kind) {
      const bool better = x.kind == VertexKind::peak ? x.height > out.back().height : x.height < out.back().height;
      if (better) out.back() = x;
    } else {
      out.push_back(x);
    }
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
      const Vertex& a = out[i];
      const Vertex& b = out[i + 1];
      const double peak_h = a.kind == VertexKind::peak ? a.height : b.height;
      const double trough_h = a.kind == VertexKind::peak ? b.height : a.height;
      if (!(peak_h > trough_h)) {
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(i), out.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  v.vertices = std::move(out);
  return v;
}

/// Every intermediate of the recognition chain, kept for plotting.
struct AvrTrace {
  std::vector<double> filtered_delta;
  std::vector<double> reconstructed;
  std::vector<double> mu;
  std::vector<Section> sections;
  VertexSeries vertices;
};

inline AvrTrace recognize_vertices(const DistanceSignal& s, const AvrParams& p) {
  p.validate();
  AvrTrace t;
  t.filtered_delta = fluctuation_removal(s, p);
  t.reconstructed = reconstruct(s, t.filtered_delta);
  t.mu = moving_mean(t.reconstructed, p);
  t.sections = segment_and_classify(t.reconstructed, t.filtered_delta, t.mu);
  t.vertices = enforce_alternation(locate_vertices(t.sections, s, p));
  const auto peaks = t.vertices.count(VertexKind::peak);
  const auto troughs = t.vertices.count(VertexKind::trough);
  if (peaks < 2 || troughs < 1)
    throw AnalysisError("unanalyzable recording: " + std::to_string(peaks) + " peak(s) and " +
                        std::to_string(troughs) + " trough(s) recognized");
  return t;
}

} // namespace rmt
