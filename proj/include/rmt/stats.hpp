#pragma once

// Method-agreement and tracking-accuracy statistics.

#include "feature_names.hpp"
#include "ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmt {

namespace detail {

// Continued fraction for the incomplete beta (modified Lentz).
inline double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 10000;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  return h;
}

} // namespace detail

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
inline double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("incomplete beta: a and b must be positive");
  if (x < 0.0 || x > 1.0 || std::isnan(x)) throw std::invalid_argument("incomplete beta: x outside [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

/// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
inline double student_t_two_tailed_p(double t, double df) {
  if (!(df > 0.0)) throw std::invalid_argument("degrees of freedom must be positive");
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return 0.0;
  const double x = df / (df + t * t);
  return std::clamp(regularized_incomplete_beta(0.5 * df, 0.5, x), 0.0, 1.0);
}

enum class Decision { accept, reject };
inline const char* to_string(Decision d) { return d == Decision::accept ? "accept" : "reject"; }

inline constexpr double kSignificanceLevel = 0.05;

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
  Decision decision = Decision::accept;
};

struct SampleSummary {
  double mean = 0.0;
  double variance = 0.0;  // n - 1 denominator
  std::size_t n = 0;
};

inline SampleSummary summarize(std::span<const double> x) {
  SampleSummary s;
  s.n = x.size();
  if (s.n == 0) return s;
  s.mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(s.n);
  if (s.n > 1) {
    double ss = 0.0;
    for (double v : x) ss += (v - s.mean) * (v - s.mean);
    s.variance = ss / static_cast<double>(s.n - 1);
  }
  return s;
}

/// Two-sample t-test without the equal-variance assumption; accept (no
/// significant difference) iff p > 0.05.
inline WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("welch_t_test: each sample needs at least 2 values");
  const auto sa = summarize(a);
  const auto sb = summarize(b);
  if (!std::isfinite(sa.variance) || !std::isfinite(sb.variance))
    throw std::invalid_argument("welch_t_test: non-finite sample variance");

  WelchResult r;
  const double va = sa.variance / static_cast<double>(sa.n);
  const double vb = sb.variance / static_cast<double>(sb.n);
  const double se2 = va + vb;
  if (se2 == 0.0) {
    // Both samples constant: t is 0/0 or +/-inf.
    r.df = static_cast<double>(sa.n + sb.n - 2);
    if (sa.mean == sb.mean) {
      r.t = 0.0;
      r.p = 1.0;
    } else {
      r.t = sa.mean > sb.mean ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
      r.p = 0.0;
    }
  } else {
    r.t = (sa.mean - sb.mean) / std::sqrt(se2);
    r.df = se2 * se2 /
           (va * va / static_cast<double>(sa.n - 1) + vb * vb / static_cast<double>(sb.n - 1));
    r.p = student_t_two_tailed_p(r.t, r.df);
  }
  r.decision = r.p > kSignificanceLevel ? Decision::accept : Decision::reject;
  return r;
}

struct PairedValue {
  double a = 0.0;  // method under test
  double b = 0.0;  // reference method
  std::string recording_id;
};

struct PairedFeatureSample {
  std::vector<PairedValue> pairs;
  Feature feature = Feature::MTF;
  std::string condition_label;

  std::vector<double> a_values() const {
    std::vector<double> out;
    for (const auto& p : pairs) out.push_back(p.a);
    return out;
  }
  std::vector<double> b_values() const {
    std::vector<double> out;
    for (const auto& p : pairs) out.push_back(p.b);
    return out;
  }
};

struct BlandAltmanPoint {
  double mean = 0.0;
  double diff = 0.0;
};

struct BlandAltman {
  double bias = 0.0;
  double sd = 0.0;
  double loa_low = 0.0;
  double loa_high = 0.0;
  std::vector<BlandAltmanPoint> points;
};

inline constexpr double kLimitsOfAgreementZ = 1.96;

inline BlandAltman bland_altman(const PairedFeatureSample& s) {
  if (s.pairs.size() < 2) throw std::invalid_argument("bland_altman: at least 2 pairs required");
  BlandAltman r;
  std::vector<double> d;
  for (const auto& p : s.pairs) {
    d.push_back(p.a - p.b);
    r.points.push_back({0.5 * (p.a + p.b), p.a - p.b});
  }
  const auto sum = summarize(d);
  r.bias = sum.mean;
  r.sd = std::sqrt(sum.variance);
  r.loa_low = r.bias - kLimitsOfAgreementZ * r.sd;
  r.loa_high = r.bias + kLimitsOfAgreementZ * r.sd;
  return r;
}

/// Fraction of pairs whose methods differ by at most `threshold`.
inline double agreement_fraction(const PairedFeatureSample& s, double threshold) {
  if (!(threshold > 0.0)) throw std::invalid_argument("agreement threshold must be positive");
  if (s.pairs.empty()) return 0.0;
  std::size_t ok = 0;
  for (const auto& p : s.pairs) {
    if (std::abs(p.a - p.b) <= threshold) ++ok;
  }
  return static_cast<double>(ok) / static_cast<double>(s.pairs.size());
}

/// predicted[j][n] and truth[j][n]: J keypoints by N frames, in pixels.
struct KeypointPredictionSet {
  std::vector<std::vector<Point2>> predicted;
  std::vector<std::vector<Point2>> truth;
  std::vector<std::string> keypoint_ids;

  std::size_t keypoints() const noexcept { return truth.size(); }
  std::size_t frames() const noexcept { return truth.empty() ? 0 : truth.front().size(); }

  void validate() const {
    if (truth.empty() || predicted.size() != truth.size()) throw InputError("shape mismatch: keypoint counts differ");
    for (std::size_t j = 0; j < truth.size(); ++j) {
      if (truth[j].empty() || predicted[j].size() != truth[j].size())
        throw InputError("shape mismatch: frame counts differ for keypoint " + std::to_string(j));
    }
  }

  double error(std::size_t j, std::size_t n) const {
    const double dx = predicted[j][n].x - truth[j][n].x;
    const double dy = predicted[j][n].y - truth[j][n].y;
    return std::sqrt(dx * dx + dy * dy);
  }
};

/// Fraction of (keypoint, frame) errors strictly below `threshold` pixels.
inline double pck(const KeypointPredictionSet& k, double threshold) {
  if (!(threshold > 0.0)) throw std::invalid_argument("pck threshold must be positive");
  k.validate();
  std::size_t hits = 0;
  std::size_t total = 0;
  for (std::size_t j = 0; j < k.keypoints(); ++j) {
    for (std::size_t n = 0; n < k.truth[j].size(); ++n) {
      if (k.error(j, n) < threshold) ++hits;
      ++total;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

inline double mpjpe(const KeypointPredictionSet& k) {
  k.validate();
  double sum = 0.0;
  std::size_t total = 0;
  for (std::size_t j = 0; j < k.keypoints(); ++j) {
    for (std::size_t n = 0; n < k.truth[j].size(); ++n) {
      sum += k.error(j, n);
      ++total;
    }
  }
  return sum / static_cast<double>(total);
}

/// Mean error of one keypoint over all frames.
inline double mpjpe_keypoint(const KeypointPredictionSet& k, std::size_t j) {
  k.validate();
  double sum = 0.0;
  for (std::size_t n = 0; n < k.truth[j].size(); ++n) sum += k.error(j, n);
  return sum / static_cast<double>(k.truth[j].size());
}

struct PckPoint {
  double threshold = 0.0;
  double fraction = 0.0;
};

inline std::vector<PckPoint> pck_curve(const KeypointPredictionSet& k, std::vector<double> thresholds) {
  std::sort(thresholds.begin(), thresholds.end());
  std::vector<PckPoint> out;
  for (double t : thresholds) out.push_back({t, pck(k, t)});
  return out;
}

/// Pairs two trajectories keypoint-by-keypoint (matched by id). Both must be
/// complete: same ids, same frame count, no missing samples.
inline KeypointPredictionSet pair_keypoints(const TrajectorySet& predicted, const TrajectorySet& truth) {
  if (predicted.keypoints.size() != truth.keypoints.size())
    throw InputError("shape mismatch: " + std::to_string(predicted.keypoints.size()) + " predicted vs " +
                     std::to_string(truth.keypoints.size()) + " true keypoints");
  if (predicted.duration_frames != truth.duration_frames)
    throw InputError("shape mismatch: " + std::to_string(predicted.duration_frames) + " predicted vs " +
                     std::to_string(truth.duration_frames) + " true frames");
  KeypointPredictionSet k;
  for (const auto& t : truth.keypoints) {
    const KeypointTrack* p = predicted.find(t.keypoint_id);
    if (!p) throw InputError("shape mismatch: keypoint '" + t.keypoint_id + "' has no prediction");
    if (p->missing_count() > 0 || t.missing_count() > 0)
      throw InputError("keypoint '" + t.keypoint_id + "' has missing samples");
    k.keypoint_ids.push_back(t.keypoint_id);
    k.predicted.push_back(p->samples);
    k.truth.push_back(t.samples);
  }
  return k;
}

} // namespace rmt
