#include "test_support.hpp"

#include <catch_amalgamated.hpp>

using namespace rmt;
using namespace rmt::test;
using Catch::Approx;
using Catch::Matchers::ContainsSubstring;

namespace {

SynthSpec constant(double f) {
  SynthSpec s;
  s.frequency_start = s.frequency_end = f;
  return s;
}

} // namespace

TEST_CASE("2 Hz for 20 s", "[synth]") {
  const auto [traj, gt] = generate(constant(2.0));
  CHECK(traj.duration_frames == 600);
  CHECK(traj.fps == 30.0);
  CHECK(gt.true_peak_times.size() == 40);
  REQUIRE(gt.true_features);
  CHECK(gt.true_features->m_tf == Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(gt.true_features->cov_tf) <= 1e-9);
  CHECK(std::abs(gt.true_features->cov_a) <= 1e-9);
}

TEST_CASE("closed-form vertex times", "[synth]") {
  const auto gt = oracle_vertices(constant(1.0));
  REQUIRE(gt.true_peak_times.size() >= 10);
  for (std::size_t k = 0; k < gt.true_peak_times.size(); ++k)
    CHECK(gt.true_peak_times[k] == Approx(0.5 + static_cast<double>(k)).epsilon(1e-12));
  for (std::size_t k = 0; k < gt.true_valley_times.size(); ++k)
    CHECK(gt.true_valley_times[k] == Approx(1.0 + static_cast<double>(k)).epsilon(1e-12));
}

TEST_CASE("waiting period shifts every vertex", "[synth]") {
  auto a = constant(1.0);
  a.duration = 24.0;
  auto b = a;
  b.waiting_period = 2.0;
  const auto ga = oracle_vertices(a);
  const auto gb = oracle_vertices(b);
  REQUIRE(gb.true_peak_times.size() >= 18);
  for (std::size_t k = 0; k < gb.true_peak_times.size(); ++k)
    CHECK(gb.true_peak_times[k] == Approx(ga.true_peak_times[k] + 2.0).epsilon(1e-12));
}

TEST_CASE("hold at a peak", "[synth]") {
  auto s = constant(1.0);
  s.hold_segments.push_back({5.0, 3.0});
  const auto gt = oracle_vertices(s);
  const TrueVertex* hold = nullptr;
  for (const auto& v : gt.vertices) {
    if (v.kind == VertexKind::peak && v.region_end - v.region_start > 3.0) hold = &v;
  }
  REQUIRE(hold != nullptr);
  CHECK(hold->time == Approx(0.5 * (hold->region_start + hold->region_end)));
  CHECK(hold->region_start == Approx(5.375));

  const auto [traj, truth] = generate(s);
  const auto r = analyze(traj, AnalysisOptions{});
  bool found = false;
  for (const auto& v : r.trace.vertices.vertices) {
    if (v.kind == VertexKind::peak && std::abs(v.time - hold->time) < 1.0 / 30.0) found = true;
  }
  CHECK(found);
}

TEST_CASE("frequency ramp decreases speed", "[synth]") {
  auto s = constant(3.0);
  s.frequency_end = 2.0;
  s.duration = 10.0;
  const auto gt = oracle_vertices(s);
  REQUIRE(gt.true_features);
  const auto& p = gt.true_peak_times;
  const double f_first = 1.0 / (p[1] - p[0]);
  const double f_last = 1.0 / (p.back() - p[p.size() - 2]);
  CHECK(f_first > f_last);
  CHECK(gt.true_features->dos > 0.0);
  CHECK(gt.true_features->dos == Approx(std::log(f_first / f_last) / static_cast<double>(p.size() - 1)));
}

TEST_CASE("geometric amplitude decay", "[synth]") {
  auto s = constant(2.0);
  s.amplitude_decay = 0.98;
  const auto gt = oracle_vertices(s);
  REQUIRE(gt.true_features);
  const std::size_t kp = gt.true_peak_times.size();
  for (std::size_t k = 0; k < kp; ++k)
    CHECK(gt.true_amplitudes[k] == Approx(std::pow(0.98, static_cast<double>(k))).epsilon(1e-12));
  CHECK(gt.true_features->doa ==
        Approx(std::log(1.0 / std::pow(0.98, static_cast<double>(kp - 1))) / static_cast<double>(kp)).epsilon(1e-10));
}

TEST_CASE("noise is seeded and reproducible", "[synth]") {
  auto s = constant(2.0);
  s.noise_sigma = 0.02;
  s.seed = 42;
  const auto a = generate(s).first;
  const auto b = generate(s).first;
  CHECK(serialize_csv(a) == serialize_csv(b));
  s.seed = 43;
  CHECK(serialize_csv(generate(s).first) != serialize_csv(a));
  // Coordinates move by about sigma_px = 0.02 * 110.
  double sum_sq = 0.0;
  const auto clean = generate(constant(2.0)).first;
  for (std::size_t i = 0; i < a.duration_frames; ++i) {
    const double dx = a.keypoints[0].samples[i].x - clean.keypoints[0].samples[i].x;
    sum_sq += dx * dx;
  }
  CHECK(std::sqrt(sum_sq / static_cast<double>(a.duration_frames)) == Approx(2.2).epsilon(0.15));
}

TEST_CASE("spec validation", "[synth]") {
  CHECK_THROWS_WITH(constant(15.0).validate(), ContainsSubstring("Nyquist"));
  CHECK_THROWS_WITH(constant(20.0).validate(), ContainsSubstring("Nyquist"));
  auto s = constant(2.0);
  s.amplitude_decay = 1.5;
  CHECK_THROWS_AS(s.validate(), InputError);
  s = constant(2.0);
  s.noise_sigma = -1;
  CHECK_THROWS_AS(s.validate(), InputError);
  CHECK_NOTHROW(constant(0.5).validate());
}

TEST_CASE("spec JSON", "[synth]") {
  const auto one = parse_synth_specs(R"({"recording_id":"a","frequency":0.5,"seed":7,"hold_segments":[[2,1],{"start":9,"length":2}]})");
  REQUIRE(one.size() == 1);
  CHECK(one[0].frequency_start == 0.5);
  CHECK(one[0].frequency_end == 0.5);
  CHECK(one[0].seed == 7);
  CHECK(one[0].hold_segments == std::vector<HoldSegment>{{2, 1}, {9, 2}});
  CHECK(one[0].frames() == 600);
  const auto many = parse_synth_specs(R"([{"recording_id":"a","frequency_start":3,"frequency_end":2},{"recording_id":"b"}])");
  REQUIRE(many.size() == 2);
  CHECK(many[0].frequency_end == 2.0);
  CHECK_THROWS_WITH(parse_synth_specs(R"({"frequncy":2})"), ContainsSubstring("frequncy"));
  CHECK_THROWS_WITH(parse_synth_specs(R"({"frequency":16})"), ContainsSubstring("Nyquist"));
  CHECK_THROWS_AS(parse_synth_specs(R"([{"recording_id":"a"},{"recording_id":"a"}])"), InputError);
}

TEST_CASE("noiseless pipeline recovers ground truth", "[synth][property]") {
  for (double f : {0.5, 1.0, 2.0, 3.0}) {
    auto s = constant(f);
    s.waiting_period = 1.0;
    const auto [traj, gt] = generate(s);
    const auto r = analyze(traj, AnalysisOptions{});
    INFO("f=" << f);
    CHECK(r.trace.vertices.count(VertexKind::peak) == gt.true_peak_times.size());
    CHECK(r.trace.vertices.count(VertexKind::trough) == gt.true_valley_times.size());
    REQUIRE(gt.true_features);
    const auto& tf = *gt.true_features;
    const double frame = 1.0 / s.fps;
    CHECK(std::abs(r.features.m_iti - tf.m_iti) <= frame);
    CHECK(std::abs(1.0 / r.features.m_tf - 1.0 / tf.m_tf) <= frame);
    CHECK(r.features.ttc == tf.ttc);
    CHECK(std::abs(r.features.cov_tf - tf.cov_tf) <= 1e-6);
    CHECK(std::abs(r.features.cov_a - tf.cov_a) <= 1e-6);
  }
}

TEST_CASE("vertex counts match ground truth when f <= fps/10", "[synth][property]") {
  std::mt19937_64 rng(303);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    auto s = random_spec(rng, i);
    s.noise_sigma = 0.0;
    s.hold_segments.clear();
    // Decayed taps eventually slope less than gamma_flatness * R per frame
    // and vanish by design, so counts are compared at constant amplitude.
    s.amplitude_decay = 1.0;
    s.waiting_period = 0.5 + s.waiting_period;
    if (std::max(s.frequency_start, s.frequency_end) > s.fps / 10.0) continue;
    const auto [traj, gt] = generate(s);
    const auto r = analyze(traj, AnalysisOptions{});
    INFO("spec " << i << " f=" << s.frequency_start << "->" << s.frequency_end << " fps=" << s.fps);
    CHECK(r.trace.vertices.count(VertexKind::peak) == gt.true_peak_times.size());
    CHECK(r.trace.vertices.count(VertexKind::trough) == gt.true_valley_times.size());
    ++checked;
  }
  CHECK(checked > 100);
}
