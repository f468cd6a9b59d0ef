#pragma once

#include "error.hpp"
#include "ingest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace rmt {

/// Scalar time series fed to vertex recognition. range() is max - min of the
/// current values; raw_max() is the largest distance before any transform.
class DistanceSignal {
public:
  DistanceSignal(std::vector<double> values, double fps) : values_(std::move(values)), fps_(fps) {
    if (values_.size() < 2) throw std::invalid_argument("distance signal needs at least 2 samples");
    if (!(fps_ > 0.0)) throw std::invalid_argument("fps must be positive");
    for (double v : values_) {
      if (!std::isfinite(v)) throw AnalysisError("distance signal contains non-finite values");
    }
    refresh_range();
    raw_max_ = *std::max_element(values_.begin(), values_.end());
  }

  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }
  double fps() const noexcept { return fps_; }
  bool mean_removed() const noexcept { return mean_removed_; }
  bool normalized() const noexcept { return normalized_; }
  double range() const noexcept { return range_; }
  double raw_max() const noexcept { return raw_max_; }

  double mean() const {
    return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
  }

  /// Multiplies every value by c > 0 (used by scale-invariance checks).
  DistanceSignal scaled(double c) const {
    DistanceSignal out = *this;
    for (double& v : out.values_) v *= c;
    out.range_ *= c;
    out.raw_max_ *= c;
    return out;
  }

private:
  friend DistanceSignal mean_remove(const DistanceSignal& s);
  friend DistanceSignal normalize_max_aperture(const DistanceSignal& s);

  void refresh_range() {
    auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
    range_ = *hi - *lo;
  }

  std::vector<double> values_;
  double fps_;
  bool mean_removed_ = false;
  bool normalized_ = false;
  double range_ = 0.0;
  double raw_max_ = 0.0;
};

inline DistanceSignal distance_signal(const TrajectorySet& traj, std::string_view a, std::string_view b) {
  const KeypointTrack* ka = traj.find(a);
  const KeypointTrack* kb = traj.find(b);
  if (!ka) throw InputError("unknown keypoint id '" + std::string(a) + "'");
  if (!kb) throw InputError("unknown keypoint id '" + std::string(b) + "'");
  std::vector<double> d(traj.duration_frames);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double dx = kb->samples[i].x - ka->samples[i].x;
    const double dy = kb->samples[i].y - ka->samples[i].y;
    d[i] = std::sqrt(dx * dx + dy * dy);
  }
  return DistanceSignal(std::move(d), traj.fps);
}

inline DistanceSignal mean_remove(const DistanceSignal& s) {
  if (s.mean_removed_) throw std::logic_error("mean_remove applied twice");
  DistanceSignal out = s;
  const double m = s.mean();
  for (double& v : out.values_) v -= m;
  out.mean_removed_ = true;
  return out;
}

/// Divides by the largest raw distance so the widest aperture maps to 1.
inline DistanceSignal normalize_max_aperture(const DistanceSignal& s) {
  if (s.mean_removed_) throw std::logic_error("normalize before mean removal");
  if (!(s.range_ > 0.0)) throw AnalysisError("flat recording: distance signal has zero range");
  DistanceSignal out = s;
  const double scale = s.raw_max_;
  for (double& v : out.values_) v /= scale;
  out.refresh_range();
  out.raw_max_ = 1.0;
  out.normalized_ = true;
  return out;
}

/// Normalizes (optionally) and then removes the mean: the S consumed by
/// vertex recognition.
inline DistanceSignal prepare_signal(const DistanceSignal& raw, bool normalize) {
  if (!(raw.range() > 0.0)) throw AnalysisError("flat recording: distance signal has zero range");
  return mean_remove(normalize ? normalize_max_aperture(raw) : raw);
}

} // namespace rmt
