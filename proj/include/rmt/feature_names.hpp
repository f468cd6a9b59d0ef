#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace rmt {

enum class Feature { MTF, TTC, MS, MITI, DoS, COVA, DoA, COVTF, IIV };

inline constexpr std::array<Feature, 9> kAllFeatures = {
    Feature::MTF, Feature::TTC, Feature::MS,    Feature::MITI, Feature::DoS,
    Feature::COVA, Feature::DoA, Feature::COVTF, Feature::IIV};

constexpr std::string_view feature_name(Feature f) {
  switch (f) {
  case Feature::MTF: return "M-TF";
  case Feature::TTC: return "TTC";
  case Feature::MS: return "MS";
  case Feature::MITI: return "M-ITI";
  case Feature::DoS: return "DoS";
  case Feature::COVA: return "COV-A";
  case Feature::DoA: return "DoA";
  case Feature::COVTF: return "COV-TF";
  case Feature::IIV: return "IIV";
  }
  return "";
}

constexpr std::optional<Feature> parse_feature_name(std::string_view name) {
  for (Feature f : kAllFeatures) {
    if (feature_name(f) == name) return f;
  }
  return std::nullopt;
}

/// Features measured in Hz; these get the default +/-0.5 Hz agreement threshold.
constexpr bool is_frequency_feature(Feature f) {
  return f == Feature::MTF || f == Feature::MS;
}

} // namespace rmt
