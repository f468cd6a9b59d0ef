#pragma once

// Report serialization. All report numbers carry six significant digits;
// key order is fixed, and nothing depends on the clock.

#include "features.hpp"
#include "format.hpp"
#include "pipeline.hpp"
#include "stats.hpp"
#include "synth.hpp"

#include <json.hpp>

#include <string>

namespace rmt::report {

using Json = nlohmann::ordered_json;

inline Json number(double v) { return std::isfinite(v) ? Json(fmt::round6(v)) : Json(nullptr); }

inline Json feature_json(const FeatureReport& r) {
  Json j;
  for (Feature f : kAllFeatures) {
    if (f == Feature::TTC) {
      j[std::string(feature_name(f))] = r.ttc;
    } else {
      j[std::string(feature_name(f))] = number(r.value(f));
    }
  }
  j["recording_id"] = r.recording_id;
  j["gamma_flatness"] = number(r.params.gamma_flatness);
  j["gamma_window"] = number(r.params.gamma_window);
  j["gamma_platform"] = number(r.params.gamma_platform);
  j["subframe_refinement"] = r.params.subframe_refinement;
  j["normalized"] = r.normalized;
  j["iiv_reference_mismatch"] = r.iiv_reference_mismatch;
  return j;
}

inline std::string feature_csv_header() {
  std::string h = "recording_id";
  for (Feature f : kAllFeatures) h += "," + std::string(feature_name(f));
  return h + "\n";
}

inline std::string feature_csv_row(const FeatureReport& r) {
  std::string row = r.recording_id;
  for (Feature f : kAllFeatures) row += "," + (f == Feature::TTC ? std::to_string(r.ttc) : fmt::sig6(r.value(f)));
  return row + "\n";
}

inline std::string vertices_csv(const VertexSeries& v) {
  std::string out = "index,kind,frame,time,height\n";
  for (std::size_t i = 0; i < v.vertices.size(); ++i) {
    const auto& x = v.vertices[i];
    out += std::to_string(i) + "," + to_string(x.kind) + "," + std::to_string(x.frame) + "," + fmt::sig6(x.time) +
           "," + fmt::sig6(x.height) + "\n";
  }
  return out;
}

/// Per-frame plot data: raw distance, S, reconstruction, moving mean, and
/// the vertex kind at vertex frames.
inline std::string signal_csv(const AnalysisResult& r) {
  std::vector<std::string> marks(r.prepared.size());
  for (const auto& v : r.trace.vertices.vertices) marks[v.frame] = to_string(v.kind);
  std::string out = "frame,time,distance,S,S_reconstructed,mu,vertex\n";
  for (std::size_t i = 0; i < r.prepared.size(); ++i) {
    out += std::to_string(i) + "," + fmt::sig6(static_cast<double>(i) / r.prepared.fps()) + "," +
           fmt::sig6(r.raw[i]) + "," + fmt::sig6(r.prepared[i]) + "," + fmt::sig6(r.trace.reconstructed[i]) + "," +
           fmt::sig6(r.trace.mu[i]) + "," + marks[i] + "\n";
  }
  return out;
}

inline Json welch_json(const WelchResult& w) {
  Json j;
  j["t"] = number(w.t);
  j["df"] = number(w.df);
  j["p"] = number(w.p);
  j["decision"] = to_string(w.decision);
  return j;
}

inline Json bland_altman_json(const BlandAltman& b) {
  Json j;
  j["bias"] = number(b.bias);
  j["sd"] = number(b.sd);
  j["loa_low"] = number(b.loa_low);
  j["loa_high"] = number(b.loa_high);
  return j;
}

inline std::string bland_altman_csv(const BlandAltman& b) {
  std::string out = "mean,diff\n";
  for (const auto& p : b.points) out += fmt::sig6(p.mean) + "," + fmt::sig6(p.diff) + "\n";
  return out;
}

inline std::string pck_csv(const std::vector<PckPoint>& curve) {
  std::string out = "threshold,pck\n";
  for (const auto& p : curve) out += fmt::sig6(p.threshold) + "," + fmt::sig6(p.fraction) + "\n";
  return out;
}

inline Json ground_truth_json(const SynthSpec& spec, const GroundTruth& gt) {
  Json j;
  j["recording_id"] = spec.recording_id;
  j["condition"] = spec.condition;
  j["fps"] = number(spec.fps);
  j["frames"] = spec.frames();
  j["seed"] = spec.seed;
  auto& vs = j["vertices"] = Json::array();
  for (const auto& v : gt.vertices) {
    Json e;
    e["kind"] = to_string(v.kind);
    e["time"] = number(v.time);
    e["height"] = number(v.height);
    vs.push_back(std::move(e));
  }
  auto& amps = j["amplitudes"] = Json::array();
  for (double a : gt.true_amplitudes) amps.push_back(number(a));
  j["features"] = gt.true_features ? feature_json(*gt.true_features) : Json(nullptr);
  return j;
}

} // namespace rmt::report
