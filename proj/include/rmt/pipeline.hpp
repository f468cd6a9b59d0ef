#pragma once

#include "features.hpp"
#include "ingest.hpp"
#include "signal.hpp"
#include "vertex.hpp"

#include <string>
#include <utility>

namespace rmt {

struct AnalysisOptions {
  std::string keypoint_a = "thumb-tip";
  std::string keypoint_b = "index-fingertip";
  AvrParams params;
  bool normalize = true;
};

struct AnalysisResult {
  DistanceSignal raw;
  DistanceSignal prepared;
  AvrTrace trace;
  FeatureReport features;
};

/// Picks the configured keypoint pair, or the only two keypoints present
/// when the configured ids are absent.
inline std::pair<std::string, std::string> resolve_keypoints(const TrajectorySet& traj, const AnalysisOptions& opts) {
  if (traj.find(opts.keypoint_a) && traj.find(opts.keypoint_b)) return {opts.keypoint_a, opts.keypoint_b};
  if (traj.keypoints.size() == 2) return {traj.keypoints[0].keypoint_id, traj.keypoints[1].keypoint_id};
  const auto& missing = traj.find(opts.keypoint_a) ? opts.keypoint_b : opts.keypoint_a;
  throw InputError("unknown keypoint id '" + missing + "'");
}

/// trajectory -> gap filling -> distance -> S -> vertices -> features.
inline AnalysisResult analyze(const TrajectorySet& traj, const AnalysisOptions& opts) {
  const auto [a, b] = resolve_keypoints(traj, opts);
  TrajectorySet subset;
  subset.recording_id = traj.recording_id;
  subset.fps = traj.fps;
  subset.duration_frames = traj.duration_frames;
  subset.keypoints = {fill_missing(*traj.find(a)), fill_missing(*traj.find(b))};

  DistanceSignal raw = distance_signal(subset, a, b);
  DistanceSignal prepared = prepare_signal(raw, opts.normalize);
  AvrTrace trace = recognize_vertices(prepared, opts.params);
  FeatureReport features = extract_features(trace.vertices);
  features.recording_id = traj.recording_id;
  features.normalized = opts.normalize;
  return {std::move(raw), std::move(prepared), std::move(trace), std::move(features)};
}

} // namespace rmt
