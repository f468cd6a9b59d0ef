#pragma once

// Synthetic finger-tapping trajectories with exact ground truth.
//
// The thumb–index distance follows a raised-cosine tap cycle:
//
//   closed dwell | opening stroke | open dwell (+hold) | closing stroke | closed dwell
//
// Strokes are half raised cosines lasting min(T/2, max_stroke_duration), so
// slow metronome-paced tapping becomes quick strokes separated by dwells
// rather than a slow sinusoid. Each cycle k has constant frequency (the
// profile evaluated at the cycle's start) and open amplitude A0 * decay^k.
// Vertices are the centers of the dwell regions, which is also where a
// zero-length dwell puts the raised-cosine extremum.
//
// Noise: i.i.d. Gaussian on every coordinate, drawn from std::mt19937_64
// (bit-exact across standard libraries) through Box–Muller on 53-bit
// uniforms, in frame order thumb.x, thumb.y, index.x, index.y.

#include "error.hpp"
#include "features.hpp"
#include "format.hpp"
#include "ingest.hpp"
#include "vertex.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace rmt {

struct HoldSegment {
  double start = 0.0;   // s; applies to the first peak at or after this time
  double length = 0.0;  // s of extra open dwell

  friend bool operator==(const HoldSegment&, const HoldSegment&) = default;
};

struct SynthSpec {
  std::string recording_id = "synth";
  std::string condition;
  double frequency_start = 2.0;  // Hz
  double frequency_end = 2.0;    // Hz; differs from start for a linear ramp
  double duration = 20.0;        // s, whole recording
  double fps = 30.0;
  double amplitude_decay = 1.0;  // per tap
  double noise_sigma = 0.0;      // coordinate noise, fraction of max aperture
  std::vector<HoldSegment> hold_segments;
  double waiting_period = 0.0;   // s of closed stillness at each end
  std::uint64_t seed = 0;
  double baseline = 10.0;        // px, closed aperture
  double amplitude = 100.0;      // px, first tap's opening above baseline
  double max_stroke_duration = 0.25;

  void validate() const {
    const double nyquist = fps / 2.0;
    if (!(fps > 0.0)) throw InputError("synth: fps must be positive");
    for (double f : {frequency_start, frequency_end}) {
      if (!(f > 0.0)) throw InputError("synth: frequency must be positive");
      if (!(f < nyquist)) throw InputError("synth: frequency " + fmt::exact(f) + " Hz is at or above Nyquist (" +
                                           fmt::exact(nyquist) + " Hz)");
    }
    if (!(duration > 0.0)) throw InputError("synth: duration must be positive");
    if (!(noise_sigma >= 0.0)) throw InputError("synth: noise_sigma must be non-negative");
    if (!(amplitude_decay > 0.0 && amplitude_decay <= 1.0)) throw InputError("synth: amplitude_decay must lie in (0, 1]");
    if (!(waiting_period >= 0.0) || !(2.0 * waiting_period < duration))
      throw InputError("synth: waiting_period must be non-negative and shorter than half the duration");
    if (!(baseline >= 0.0) || !(amplitude > 0.0)) throw InputError("synth: baseline >= 0 and amplitude > 0 required");
    if (!(max_stroke_duration > 0.0)) throw InputError("synth: max_stroke_duration must be positive");
    for (const auto& h : hold_segments) {
      if (!(h.length > 0.0) || !(h.start >= 0.0)) throw InputError("synth: hold segments need start >= 0 and length > 0");
    }
    if (std::llround(duration * fps) < 2) throw InputError("synth: recording shorter than 2 frames");
  }

  std::size_t frames() const { return static_cast<std::size_t>(std::llround(duration * fps)); }
};

struct TrueVertex {
  double time = 0.0;
  double height = 0.0;  // px
  VertexKind kind = VertexKind::peak;
  double region_start = 0.0;
  double region_end = 0.0;
};

struct GroundTruth {
  std::vector<TrueVertex> vertices;
  std::vector<double> true_peak_times;
  std::vector<double> true_valley_times;
  std::vector<double> true_amplitudes;
  std::optional<FeatureReport> true_features;  // absent with < 2 peaks or valleys
};

namespace detail {

struct Piece {
  enum Kind { still, rise, fall } kind;
  double t0, t1;
  double base, amp;  // still pieces sit at base + amp

  double at(double t) const {
    if (kind == still || t1 <= t0) return base + amp;
    const double u = std::clamp((t - t0) / (t1 - t0), 0.0, 1.0);
    const double c = std::cos(std::numbers::pi * u);
    return kind == rise ? base + amp * (1.0 - c) / 2.0 : base + amp * (1.0 + c) / 2.0;
  }
};

struct Timeline {
  std::vector<Piece> pieces;
  std::vector<TrueVertex> regions;  // every dwell region in order, trough first

  double at(double t) const {
    auto it = std::upper_bound(pieces.begin(), pieces.end(), t, [](double v, const Piece& p) { return v < p.t0; });
    if (it == pieces.begin()) return pieces.front().at(t);
    return std::prev(it)->at(t);
  }
};

inline Timeline build_timeline(const SynthSpec& s) {
  Timeline tl;
  const double w = s.waiting_period;
  const double tap_end = s.duration - w;
  const double tap_len = s.duration - 2.0 * w;
  auto holds = s.hold_segments;
  std::sort(holds.begin(), holds.end(), [](const HoldSegment& a, const HoldSegment& b) { return a.start < b.start; });
  std::size_t next_hold = 0;

  double t = 0.0;
  double closed_start = 0.0;
  if (w > 0.0) tl.pieces.push_back({Piece::still, 0.0, w, s.baseline, 0.0});
  t = w;

  double amp = s.amplitude;
  for (;;) {
    const double progress = std::clamp((t - w) / tap_len, 0.0, 1.0);
    const double f = s.frequency_start + (s.frequency_end - s.frequency_start) * progress;
    const double period = 1.0 / f;
    if (t + period > tap_end + 1e-9) break;
    const double stroke = std::min(period / 2.0, s.max_stroke_duration);
    const double dwell = (period - 2.0 * stroke) / 2.0;

    const double rise0 = t + dwell / 2.0;
    if (dwell > 0.0) tl.pieces.push_back({Piece::still, t, rise0, s.baseline, 0.0});
    tl.regions.push_back({0.0, s.baseline, VertexKind::trough, closed_start, rise0});

    const double open0 = rise0 + stroke;
    double open_len = dwell;
    if (next_hold < holds.size() && holds[next_hold].start <= open0 + dwell / 2.0) {
      open_len += holds[next_hold].length;
      ++next_hold;
    }
    tl.pieces.push_back({Piece::rise, rise0, open0, s.baseline, amp});
    if (open_len > 0.0) tl.pieces.push_back({Piece::still, open0, open0 + open_len, s.baseline, amp});
    tl.regions.push_back({0.0, s.baseline + amp, VertexKind::peak, open0, open0 + open_len});

    const double fall0 = open0 + open_len;
    tl.pieces.push_back({Piece::fall, fall0, fall0 + stroke, s.baseline, amp});
    closed_start = fall0 + stroke;
    if (dwell > 0.0) tl.pieces.push_back({Piece::still, closed_start, closed_start + dwell / 2.0, s.baseline, 0.0});
    t = closed_start + dwell / 2.0;
    amp *= s.amplitude_decay;
  }
  tl.pieces.push_back({Piece::still, t, std::max(t, s.duration), s.baseline, 0.0});
  tl.regions.push_back({0.0, s.baseline, VertexKind::trough, closed_start, std::numeric_limits<double>::infinity()});
  for (auto& r : tl.regions) r.time = 0.5 * (r.region_start + r.region_end);
  return tl;
}

// Uniform on (0, 1) from the top 53 bits.
inline double open_unit(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

} // namespace detail

/// Vertex list of the noiseless waveform, excluding dwell regions that touch
/// either end of the sampled span (the waiting periods).
inline GroundTruth oracle_vertices(const SynthSpec& spec) {
  spec.validate();
  const auto tl = detail::build_timeline(spec);
  const double t_last = static_cast<double>(spec.frames() - 1) / spec.fps;

  GroundTruth gt;
  for (const auto& r : tl.regions) {
    if (r.region_start > 0.0 && r.region_end < t_last) gt.vertices.push_back(r);
  }
  VertexSeries vs;
  for (const auto& v : gt.vertices) {
    (v.kind == VertexKind::peak ? gt.true_peak_times : gt.true_valley_times).push_back(v.time);
    vs.vertices.push_back({v.time, static_cast<std::size_t>(std::llround(v.time * spec.fps)), v.height, v.kind});
  }
  if (gt.true_peak_times.size() >= 2 && gt.true_valley_times.size() >= 2) {
    const TapGeometry g = tap_geometry(vs);
    gt.true_amplitudes = g.amplitudes;
    gt.true_features = extract_features(g);
    gt.true_features->recording_id = spec.recording_id;
  }
  return gt;
}

/// Noiseless aperture in px at time t.
inline std::vector<double> synth_distance(const SynthSpec& spec) {
  spec.validate();
  const auto tl = detail::build_timeline(spec);
  std::vector<double> d(spec.frames());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = tl.at(static_cast<double>(i) / spec.fps);
  return d;
}

inline constexpr const char* kSynthThumb = "thumb-tip";
inline constexpr const char* kSynthIndex = "index-fingertip";

inline std::pair<TrajectorySet, GroundTruth> generate(const SynthSpec& spec) {
  const auto distance = synth_distance(spec);
  const std::size_t n = distance.size();

  constexpr Point2 kThumb{320.0, 300.0};
  const double angle = -std::numbers::pi / 3.0;
  const double ux = std::cos(angle);
  const double uy = std::sin(angle);
  const double sigma = spec.noise_sigma * (spec.baseline + spec.amplitude);

  TrajectorySet traj;
  traj.recording_id = spec.recording_id;
  traj.fps = spec.fps;
  traj.duration_frames = n;
  KeypointTrack thumb{kSynthThumb, std::vector<Point2>(n, kThumb), std::vector<bool>(n, false)};
  KeypointTrack index{kSynthIndex, std::vector<Point2>(n), std::vector<bool>(n, false)};
  for (std::size_t i = 0; i < n; ++i) index.samples[i] = {kThumb.x + distance[i] * ux, kThumb.y + distance[i] * uy};

  if (sigma > 0.0) {
    std::mt19937_64 rng(spec.seed);
    for (std::size_t i = 0; i < n; ++i) {
      double z[4];
      for (int k = 0; k < 4; k += 2) {
        const double r = std::sqrt(-2.0 * std::log(detail::open_unit(rng)));
        const double phi = 2.0 * std::numbers::pi * detail::open_unit(rng);
        z[k] = r * std::cos(phi);
        z[k + 1] = r * std::sin(phi);
      }
      thumb.samples[i].x += sigma * z[0];
      thumb.samples[i].y += sigma * z[1];
      index.samples[i].x += sigma * z[2];
      index.samples[i].y += sigma * z[3];
    }
  }
  traj.keypoints = {std::move(thumb), std::move(index)};
  return {std::move(traj), oracle_vertices(spec)};
}

inline SynthSpec parse_synth_spec(const nlohmann::json& j) {
  static const std::set<std::string> known = {
      "recording_id", "condition", "frequency", "frequency_start", "frequency_end", "duration", "fps",
      "amplitude_decay", "noise_sigma", "hold_segments", "waiting_period", "seed", "baseline",
      "amplitude", "max_stroke_duration"};
  if (!j.is_object()) throw InputError("synth spec must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw InputError("synth spec: unknown field '" + key + "'");
  }
  auto num = [&](const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw InputError(std::string("synth spec: '") + key + "' must be a number");
    return j[key].get<double>();
  };
  SynthSpec s;
  s.recording_id = j.value("recording_id", s.recording_id);
  s.condition = j.value("condition", s.condition);
  const double f = num("frequency", s.frequency_start);
  s.frequency_start = num("frequency_start", f);
  s.frequency_end = num("frequency_end", j.contains("frequency_start") ? s.frequency_start : f);
  s.duration = num("duration", s.duration);
  s.fps = num("fps", s.fps);
  s.amplitude_decay = num("amplitude_decay", s.amplitude_decay);
  s.noise_sigma = num("noise_sigma", s.noise_sigma);
  s.waiting_period = num("waiting_period", s.waiting_period);
  s.baseline = num("baseline", s.baseline);
  s.amplitude = num("amplitude", s.amplitude);
  s.max_stroke_duration = num("max_stroke_duration", s.max_stroke_duration);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0))
      throw InputError("synth spec: 'seed' must be a non-negative integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("hold_segments")) {
    if (!j["hold_segments"].is_array()) throw InputError("synth spec: 'hold_segments' must be an array");
    for (const auto& h : j["hold_segments"]) {
      if (h.is_array() && h.size() == 2 && h[0].is_number() && h[1].is_number()) {
        s.hold_segments.push_back({h[0].get<double>(), h[1].get<double>()});
      } else if (h.is_object() && h.contains("start") && h.contains("length")) {
        s.hold_segments.push_back({h["start"].get<double>(), h["length"].get<double>()});
      } else {
        throw InputError("synth spec: hold segment must be [start, length] or {start, length}");
      }
    }
  }
  s.validate();
  return s;
}

/// One spec object or an array of them.
inline std::vector<SynthSpec> parse_synth_specs(std::string_view content) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  std::vector<SynthSpec> out;
  if (doc.is_array()) {
    for (const auto& j : doc) out.push_back(parse_synth_spec(j));
  } else {
    out.push_back(parse_synth_spec(doc));
  }
  std::set<std::string> ids;
  for (const auto& s : out) {
    if (!ids.insert(s.recording_id).second) throw InputError("synth spec: duplicate recording_id '" + s.recording_id + "'");
  }
  return out;
}

} // namespace rmt
