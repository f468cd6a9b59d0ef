#pragma once

// Trajectory and reference-measurement ingestion.
//
// Trajectory CSV:
//   # fps=30 recording=p01_2hz          (optional first comment line)
//   frame,keypoint,x,y[,t]
//   0,thumb-tip,101.5,220.0
//   0,index-fingertip,140.25,180.0
//   1,thumb-tip,,                       (empty x,y: explicitly missing)
//
// Trajectory JSON:
//   {"recording_id": "...", "fps": 30,
//    "keypoints": [{"id": "thumb-tip", "xy": [[x, y], null, ...]}, ...]}
//
// Reference JSON:
//   [{"recording_id": "...", "method_name": "...", "condition": "2Hz",
//     "features": {"M-TF": 2.01, ...}}, ...]

#include "error.hpp"
#include "feature_names.hpp"
#include "format.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rmt {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

struct KeypointTrack {
  std::string keypoint_id;
  std::vector<Point2> samples;
  // Kept after fill_missing so interpolated frames stay auditable.
  std::vector<bool> missing_mask;

  std::size_t size() const noexcept { return samples.size(); }
  bool missing(std::size_t i) const { return missing_mask[i]; }
  std::size_t missing_count() const {
    return static_cast<std::size_t>(std::count(missing_mask.begin(), missing_mask.end(), true));
  }

  /// Equal masks and equal non-missing samples; the payload of missing
  /// samples is unspecified.
  friend bool operator==(const KeypointTrack& a, const KeypointTrack& b) {
    if (a.keypoint_id != b.keypoint_id || a.missing_mask != b.missing_mask ||
        a.samples.size() != b.samples.size())
      return false;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
      if (!a.missing_mask[i] && !(a.samples[i] == b.samples[i])) return false;
    }
    return true;
  }
};

struct TrajectorySet {
  std::string recording_id;
  double fps = 0.0;
  std::vector<KeypointTrack> keypoints;
  std::size_t duration_frames = 0;

  const KeypointTrack* find(std::string_view id) const {
    for (const auto& k : keypoints) {
      if (k.keypoint_id == id) return &k;
    }
    return nullptr;
  }

  friend bool operator==(const TrajectorySet&, const TrajectorySet&) = default;
};

struct ReferenceMeasurement {
  std::string recording_id;
  std::string method_name;
  std::string condition_label;
  std::map<Feature, double> feature_values;

  friend bool operator==(const ReferenceMeasurement&, const ReferenceMeasurement&) = default;
};

enum class TrajectoryFormat { csv, json };

struct ParseOptions {
  // Used when the CSV carries no `# fps=` comment.
  std::optional<double> fps;
  // Used when the input names no recording.
  std::string recording_id = "recording";
};

/// Throws InputError unless every TrajectorySet invariant holds.
inline void validate(const TrajectorySet& traj) {
  if (!(traj.fps > 0.0) || !std::isfinite(traj.fps)) throw InputError("fps must be a positive finite number");
  if (traj.keypoints.empty()) throw InputError("trajectory has zero keypoints");
  if (traj.duration_frames < 2) throw InputError("trajectory needs at least 2 frames");
  std::set<std::string> ids;
  for (const auto& k : traj.keypoints) {
    if (k.keypoint_id.empty()) throw InputError("empty keypoint id");
    if (!ids.insert(k.keypoint_id).second) throw InputError("duplicate keypoint id '" + k.keypoint_id + "'");
    if (k.samples.size() != traj.duration_frames || k.missing_mask.size() != traj.duration_frames)
      throw InputError("keypoint '" + k.keypoint_id + "' does not have " +
                       std::to_string(traj.duration_frames) + " samples");
    for (std::size_t i = 0; i < k.samples.size(); ++i) {
      if (!k.missing_mask[i] && !(std::isfinite(k.samples[i].x) && std::isfinite(k.samples[i].y)))
        throw InputError("keypoint '" + k.keypoint_id + "' has a non-finite sample at frame " +
                         std::to_string(i));
    }
  }
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

inline TrajectorySet parse_csv(std::string_view content, const ParseOptions& opts) {
  std::optional<double> fps;
  std::optional<std::string> recording;
  bool have_header = false;
  bool have_time = false;

  struct Row {
    std::size_t frame;
    Point2 p;
    bool missing;
  };
  std::vector<std::string> order;
  std::map<std::string, std::map<std::size_t, Row>> rows;
  std::vector<std::pair<std::size_t, double>> timestamps;  // (line, t) validated once fps is known
  std::vector<std::size_t> timestamp_frames;
  std::size_t max_frame = 0;
  bool any_row = false;

  auto lines = split(content, '\n');
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::size_t line_no = ln + 1;
    auto line = fmt::trim(lines[ln]);
    if (line.empty()) continue;

    if (line.front() == '#') {
      if (have_header) throw InputError(line_no, "comment lines must precede the header");
      std::istringstream tokens{std::string(line.substr(1))};
      std::string tok;
      while (tokens >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        auto key = tok.substr(0, eq);
        auto value = tok.substr(eq + 1);
        if (key == "fps") {
          auto v = fmt::parse_double(value);
          if (!v || !(*v > 0.0) || !std::isfinite(*v))
            throw InputError(line_no, "inconsistent fps header: '" + value + "'");
          if (fps && *fps != *v) throw InputError(line_no, "inconsistent fps header: " + value + " vs " + fmt::exact(*fps));
          fps = *v;
        } else if (key == "recording") {
          recording = value;
        }
      }
      continue;
    }

    if (!have_header) {
      auto cols = split(line, ',');
      std::vector<std::string_view> names;
      for (auto c : cols) names.push_back(fmt::trim(c));
      const bool base = names.size() >= 4 && names[0] == "frame" && names[1] == "keypoint" &&
                        names[2] == "x" && names[3] == "y";
      if (!base || names.size() > 5 || (names.size() == 5 && names[4] != "t"))
        throw InputError(line_no, "expected header 'frame,keypoint,x,y[,t]'");
      have_time = names.size() == 5;
      have_header = true;
      continue;
    }

    auto cols = split(line, ',');
    const std::size_t expected = have_time ? 5 : 4;
    if (cols.size() != expected)
      throw InputError(line_no, "expected " + std::to_string(expected) + " fields, got " +
                                    std::to_string(cols.size()));
    auto frame = fmt::parse_int(cols[0]);
    if (!frame || *frame < 0) throw InputError(line_no, "invalid frame index '" + std::string(fmt::trim(cols[0])) + "'");
    std::string kp{fmt::trim(cols[1])};
    if (kp.empty()) throw InputError(line_no, "empty keypoint id");

    auto xs = fmt::trim(cols[2]);
    auto ys = fmt::trim(cols[3]);
    Row row{static_cast<std::size_t>(*frame), {kNaN, kNaN}, false};
    if (xs.empty() && ys.empty()) {
      row.missing = true;
    } else {
      auto x = fmt::parse_double(xs);
      if (!x || !std::isfinite(*x)) throw InputError(line_no, "invalid x value '" + std::string(xs) + "'");
      auto y = fmt::parse_double(ys);
      if (!y || !std::isfinite(*y)) throw InputError(line_no, "invalid y value '" + std::string(ys) + "'");
      row.p = {*x, *y};
    }
    if (have_time) {
      auto ts = fmt::trim(cols[4]);
      if (!ts.empty()) {
        auto t = fmt::parse_double(ts);
        if (!t || !std::isfinite(*t)) throw InputError(line_no, "invalid t value '" + std::string(ts) + "'");
        timestamps.emplace_back(line_no, *t);
        timestamp_frames.push_back(row.frame);
      }
    }

    auto [it, fresh] = rows.try_emplace(kp);
    if (fresh) order.push_back(kp);
    if (!it->second.emplace(row.frame, row).second)
      throw InputError(line_no, "duplicate row for frame " + std::to_string(row.frame) + ", keypoint '" + kp + "'");
    max_frame = std::max(max_frame, row.frame);
    any_row = true;
  }

  if (!have_header) throw InputError("missing header 'frame,keypoint,x,y'");
  if (!any_row) throw InputError("trajectory has zero keypoints");
  if (!fps) fps = opts.fps;
  if (!fps) throw InputError("no fps: add a '# fps=<real>' comment line or supply a frame rate");

  for (std::size_t i = 0; i < timestamps.size(); ++i) {
    const double expected_t = static_cast<double>(timestamp_frames[i]) / *fps;
    if (std::abs(timestamps[i].second - expected_t) > 0.5 / *fps)
      throw InputError(timestamps[i].first, "timestamp " + fmt::exact(timestamps[i].second) +
                                                " disagrees with frame/fps = " + fmt::exact(expected_t));
  }

  TrajectorySet traj;
  traj.recording_id = recording.value_or(opts.recording_id);
  traj.fps = *fps;
  traj.duration_frames = max_frame + 1;
  for (const auto& id : order) {
    KeypointTrack track;
    track.keypoint_id = id;
    track.samples.assign(traj.duration_frames, Point2{kNaN, kNaN});
    track.missing_mask.assign(traj.duration_frames, true);
    for (const auto& [frame, row] : rows[id]) {
      if (!row.missing) {
        track.samples[frame] = row.p;
        track.missing_mask[frame] = false;
      }
    }
    traj.keypoints.push_back(std::move(track));
  }
  validate(traj);
  return traj;
}

inline TrajectorySet parse_json(std::string_view content, const ParseOptions& opts) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("trajectory JSON must be an object");

  TrajectorySet traj;
  traj.recording_id = opts.recording_id;
  if (auto it = doc.find("recording_id"); it != doc.end()) {
    if (!it->is_string()) throw InputError("recording_id must be a string");
    traj.recording_id = it->get<std::string>();
  }
  if (auto it = doc.find("fps"); it != doc.end()) {
    if (!it->is_number()) throw InputError("inconsistent fps header: fps must be a number");
    traj.fps = it->get<double>();
  } else if (opts.fps) {
    traj.fps = *opts.fps;
  } else {
    throw InputError("missing fps");
  }

  auto kps = doc.find("keypoints");
  if (kps == doc.end() || !kps->is_array()) throw InputError("missing keypoints array");
  if (kps->empty()) throw InputError("trajectory has zero keypoints");

  for (std::size_t k = 0; k < kps->size(); ++k) {
    const auto& entry = (*kps)[k];
    if (!entry.is_object() || !entry.contains("id") || !entry["id"].is_string())
      throw InputError("keypoints[" + std::to_string(k) + "]: missing string id");
    if (!entry.contains("xy") || !entry["xy"].is_array())
      throw InputError("keypoints[" + std::to_string(k) + "]: missing xy array");
    KeypointTrack track;
    track.keypoint_id = entry["id"].get<std::string>();
    const auto& xy = entry["xy"];
    for (std::size_t i = 0; i < xy.size(); ++i) {
      const auto& s = xy[i];
      if (s.is_null()) {
        track.samples.push_back({kNaN, kNaN});
        track.missing_mask.push_back(true);
      } else if (s.is_array() && s.size() == 2 && s[0].is_number() && s[1].is_number()) {
        track.samples.push_back({s[0].get<double>(), s[1].get<double>()});
        track.missing_mask.push_back(false);
      } else {
        throw InputError("keypoint '" + track.keypoint_id + "' frame " + std::to_string(i) +
                         ": expected [x, y] or null");
      }
    }
    if (k == 0) traj.duration_frames = track.samples.size();
    traj.keypoints.push_back(std::move(track));
  }
  validate(traj);
  return traj;
}

} // namespace detail

inline TrajectorySet parse_trajectory(std::string_view content, TrajectoryFormat format,
                                      const ParseOptions& opts = {}) {
  return format == TrajectoryFormat::csv ? detail::parse_csv(content, opts)
                                         : detail::parse_json(content, opts);
}

/// Every (frame, keypoint) row is written; missing samples have empty x,y.
inline std::string serialize_csv(const TrajectorySet& traj) {
  std::string out = "# fps=" + fmt::exact(traj.fps) + " recording=" + traj.recording_id + "\n";
  out += "frame,keypoint,x,y\n";
  for (std::size_t i = 0; i < traj.duration_frames; ++i) {
    for (const auto& k : traj.keypoints) {
      out += std::to_string(i);
      out += ',';
      out += k.keypoint_id;
      if (k.missing(i)) {
        out += ",,\n";
      } else {
        out += ',' + fmt::exact(k.samples[i].x) + ',' + fmt::exact(k.samples[i].y) + '\n';
      }
    }
  }
  return out;
}

inline std::string serialize_json(const TrajectorySet& traj) {
  nlohmann::ordered_json doc;
  doc["recording_id"] = traj.recording_id;
  doc["fps"] = traj.fps;
  auto& kps = doc["keypoints"] = nlohmann::ordered_json::array();
  for (const auto& k : traj.keypoints) {
    nlohmann::ordered_json entry;
    entry["id"] = k.keypoint_id;
    auto& xy = entry["xy"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (k.missing(i)) {
        xy.push_back(nullptr);
      } else {
        xy.push_back({k.samples[i].x, k.samples[i].y});
      }
    }
    kps.push_back(std::move(entry));
  }
  return doc.dump() + "\n";
}

inline std::string serialize_trajectory(const TrajectorySet& traj, TrajectoryFormat format) {
  return format == TrajectoryFormat::csv ? serialize_csv(traj) : serialize_json(traj);
}

inline std::vector<ReferenceMeasurement> parse_reference(std::string_view content) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw InputError("reference document must be a JSON array");

  std::vector<ReferenceMeasurement> out;
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& e = doc[i];
    const std::string where = "reference[" + std::to_string(i) + "]";
    if (!e.is_object()) throw InputError(where + ": expected an object");
    if (!e.contains("recording_id") || !e["recording_id"].is_string() ||
        e["recording_id"].get<std::string>().empty())
      throw InputError(where + ": missing recording_id");

    ReferenceMeasurement m;
    m.recording_id = e["recording_id"].get<std::string>();
    m.method_name = e.value("method_name", std::string("reference"));
    m.condition_label = e.value("condition", std::string());

    if (auto f = e.find("features"); f != e.end()) {
      if (!f->is_object()) throw InputError(where + ": features must be an object");
      std::vector<std::string> unknown;
      for (const auto& [name, value] : f->items()) {
        auto feature = parse_feature_name(name);
        if (!feature) {
          unknown.push_back(name);
          continue;
        }
        if (!value.is_number()) throw InputError(where + ": feature '" + name + "' must be a number");
        m.feature_values[*feature] = value.get<double>();
      }
      if (!unknown.empty()) {
        std::string names;
        for (const auto& u : unknown) names += (names.empty() ? "" : ", ") + u;
        throw InputError(where + ": unknown feature name(s): " + names);
      }
    }
    if (!seen.emplace(m.recording_id, m.method_name).second)
      throw InputError(where + ": duplicate entry for recording '" + m.recording_id + "', method '" +
                       m.method_name + "'");
    out.push_back(std::move(m));
  }
  return out;
}

inline std::string serialize_reference(const std::vector<ReferenceMeasurement>& ms) {
  auto doc = nlohmann::ordered_json::array();
  for (const auto& m : ms) {
    nlohmann::ordered_json e;
    e["recording_id"] = m.recording_id;
    e["method_name"] = m.method_name;
    e["condition"] = m.condition_label;
    auto& f = e["features"] = nlohmann::ordered_json::object();
    for (Feature feat : kAllFeatures) {
      auto it = m.feature_values.find(feat);
      if (it == m.feature_values.end()) continue;
      const double v = it->second;
      if (feat == Feature::TTC && v == std::round(v) && std::abs(v) < 1e15) {
        f[std::string(feature_name(feat))] = static_cast<long long>(v);
      } else {
        f[std::string(feature_name(feat))] = fmt::round6(v);
      }
    }
    doc.push_back(std::move(e));
  }
  return doc.dump(2) + "\n";
}

/// Linear interpolation across interior gaps, nearest-value extension at the
/// ends. The missing mask is preserved.
inline KeypointTrack fill_missing(KeypointTrack track) {
  const std::size_t n = track.size();
  std::vector<std::size_t> present;
  for (std::size_t i = 0; i < n; ++i) {
    if (!track.missing(i)) present.push_back(i);
  }
  if (present.empty()) throw InputError("keypoint '" + track.keypoint_id + "' has no valid samples");

  for (std::size_t i = 0; i < present.front(); ++i) track.samples[i] = track.samples[present.front()];
  for (std::size_t i = present.back() + 1; i < n; ++i) track.samples[i] = track.samples[present.back()];
  for (std::size_t g = 0; g + 1 < present.size(); ++g) {
    const std::size_t lo = present[g];
    const std::size_t hi = present[g + 1];
    const Point2 a = track.samples[lo];
    const Point2 b = track.samples[hi];
    for (std::size_t i = lo + 1; i < hi; ++i) {
      const double w = static_cast<double>(i - lo) / static_cast<double>(hi - lo);
      track.samples[i] = {a.x + w * (b.x - a.x), a.y + w * (b.y - a.y)};
    }
  }
  return track;
}

inline TrajectorySet fill_missing(TrajectorySet traj) {
  for (auto& k : traj.keypoints) k = fill_missing(std::move(k));
  return traj;
}

} // namespace rmt
