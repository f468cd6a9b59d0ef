#include "test_support.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace rmt;
using Catch::Approx;

namespace {

constexpr auto P = VertexKind::peak;
constexpr auto T = VertexKind::trough;

VertexSeries series(std::vector<std::tuple<double, double, VertexKind>> xs) {
  VertexSeries v;
  for (auto [t, h, k] : xs) v.vertices.push_back({t, static_cast<std::size_t>(std::llround(t * 30)), h, k});
  return v;
}

TapGeometry geometry(std::vector<double> peaks, std::vector<double> valleys, std::vector<double> amps) {
  return {std::move(peaks), std::move(valleys), std::move(amps)};
}

// Alternating series from arbitrary times, trough first.
VertexSeries random_series(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> gap(0.1, 1.0), h(0.2, 2.0), low(-0.1, 0.1);
  VertexSeries v;
  double t = gap(rng);
  for (std::size_t i = 0; i < n; ++i) {
    const bool peak = i % 2 == 1;
    v.vertices.push_back({t, i, peak ? h(rng) : low(rng), peak ? P : T});
    t += gap(rng);
  }
  return v;
}

} // namespace

TEST_CASE("tap geometry amplitudes", "[features]") {
  SECTION("uniform taps") {
    const auto g = tap_geometry(series({{0.5, 1, P}, {1.0, 0, T}, {1.5, 1, P}, {2.0, 0, T}}));
    CHECK(g.amplitudes == std::vector<double>{1, 1});
    CHECK(g.peak_times == std::vector<double>{0.5, 1.5});
    CHECK(g.valley_times == std::vector<double>{1.0, 2.0});
  }
  SECTION("normalized to the largest") {
    const auto g = tap_geometry(series({{0.5, 2, P}, {1.0, 0, T}, {1.5, 1, P}, {2.0, 0, T}}));
    CHECK(g.amplitudes == std::vector<double>{1, 0.5});
  }
  SECTION("decaying taps over drifting troughs") {
    // Peak 1 has one neighbour (0.1); peak 2 sits between 0.1 and 0.2;
    // peak 3 between 0.2 and 0.3.
    const auto g = tap_geometry(
        series({{0.5, 1.0, P}, {1.0, 0.1, T}, {1.5, 0.9, P}, {2.0, 0.2, T}, {2.5, 0.7, P}, {3.0, 0.3, T}}));
    const double a1 = 1.0 - 0.1, a2 = 0.9 - 0.15, a3 = 0.7 - 0.25;
    REQUIRE(g.amplitudes.size() == 3);
    CHECK(g.amplitudes[0] == Approx(1.0));
    CHECK(g.amplitudes[1] == Approx(a2 / a1).epsilon(1e-14));
    CHECK(g.amplitudes[2] == Approx(a3 / a1).epsilon(1e-14));
  }
  SECTION("insufficient vertices") {
    CHECK_THROWS_AS(tap_geometry(series({{0.5, 1, P}, {1.0, 0, T}, {1.5, 1, P}})), AnalysisError);
  }
  SECTION("amplitude invariants on random series") {
    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 200; ++rep) {
      const auto g = tap_geometry(random_series(rng, 5 + rep % 20));
      CHECK(*std::max_element(g.amplitudes.begin(), g.amplitudes.end()) == 1.0);
      for (double a : g.amplitudes) CHECK((a > 0.0 && a <= 1.0));
    }
  }
}

TEST_CASE("perfectly periodic taps", "[features]") {
  const auto r = extract_features(geometry({0.5, 1.5, 2.5, 3.5}, {1.0, 2.0, 3.0}, {1, 1, 1, 1}));
  CHECK(r.m_tf == Approx(1.0).epsilon(1e-12));
  CHECK(r.ttc == 3);
  CHECK(r.ms == Approx(1.0).epsilon(1e-12));
  CHECK(r.m_iti == Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(r.dos) <= 1e-9);
  CHECK(std::abs(r.cov_a) <= 1e-9);
  CHECK(std::abs(r.doa) <= 1e-9);
  CHECK(std::abs(r.cov_tf) <= 1e-9);
  CHECK(std::abs(r.iiv) <= 1e-9);
  CHECK_FALSE(r.iiv_reference_mismatch);
}

TEST_CASE("hand-evaluated non-uniform taps", "[features]") {
  const auto r = extract_features(geometry({0.5, 1.0, 2.0}, {0.75, 1.5}, {1, 1, 1}));
  CHECK(r.m_tf == Approx(1.5).margin(1e-4));
  CHECK(r.ms == Approx(2.0).margin(1e-4));
  CHECK(r.dos == Approx(0.3466).margin(1e-4));
  CHECK(r.dos == Approx(0.5 * std::log(2.0)).epsilon(1e-14));
  CHECK(r.cov_tf == Approx(0.3333).margin(1e-4));

  const auto a = extract_features(geometry({0.5, 1.5, 2.5}, {1.0, 2.0}, {1.0, 0.8, 0.6}));
  CHECK(a.doa == Approx(0.1703).margin(1e-4));
  CHECK(a.doa == Approx(std::log(1.0 / 0.6) / 3.0).epsilon(1e-14));
  // Population std of {1, 0.8, 0.6} over their mean 0.8.
  CHECK(a.cov_a == Approx(std::sqrt((0.04 + 0.0 + 0.04) / 3.0) / 0.8).epsilon(1e-14));
}

TEST_CASE("IIV is measured about M-ITI", "[features]") {
  // Peak intervals {1, 1}; valley interval 0.5.
  const auto r = extract_features(geometry({0.0, 1.0, 2.0}, {0.5, 1.0}, {1, 1, 1}));
  CHECK(r.m_iti == Approx(0.5));
  CHECK(r.iiv == Approx(std::sqrt((0.25 + 0.25) / 2.0)).epsilon(1e-14));
  CHECK(r.iiv_reference_mismatch);
}

TEST_CASE("corrupt intervals are rejected", "[features]") {
  CHECK_THROWS_AS(extract_features(geometry({1.0, 1.0, 2.0}, {0.5, 1.5}, {1, 1, 1})), AnalysisError);
  CHECK_THROWS_AS(extract_features(geometry({1.0, 2.0}, {1.5, 1.5}, {1, 1})), AnalysisError);
}

TEST_CASE("feature invariants on random series", "[features][property]") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> shift(-100, 100), scale(0.01, 100);
  for (int rep = 0; rep < 300; ++rep) {
    const auto v = random_series(rng, 6 + rep % 30);
    const auto base = extract_features(v);
    CHECK(base.ms >= base.m_tf);
    CHECK(base.cov_a >= 0.0);
    CHECK(base.cov_tf >= 0.0);
    CHECK(base.iiv >= 0.0);

    auto shifted = v;
    const double dt = shift(rng);
    for (auto& x : shifted.vertices) x.time += dt;
    auto scaled = v;
    const double c = scale(rng);
    for (auto& x : scaled.vertices) x.height *= c;
    auto reversed = v;
    std::reverse(reversed.vertices.begin(), reversed.vertices.end());
    for (auto& x : reversed.vertices) x.time = -x.time;

    const auto s = extract_features(shifted);
    const auto k = extract_features(scaled);
    const auto r = extract_features(reversed);
    for (Feature f : kAllFeatures) {
      CHECK(s.value(f) == Approx(base.value(f)).epsilon(1e-6).margin(1e-9));
      CHECK(k.value(f) == Approx(base.value(f)).epsilon(1e-9).margin(1e-12));
    }
    CHECK(r.dos == Approx(-base.dos).margin(1e-9));
    CHECK(r.doa == Approx(-base.doa).margin(1e-9));
    for (Feature f : {Feature::MTF, Feature::TTC, Feature::MS, Feature::COVA, Feature::COVTF})
      CHECK(r.value(f) == Approx(base.value(f)).epsilon(1e-9).margin(1e-12));
  }
}

TEST_CASE("feature names", "[features]") {
  std::vector<std::string> names;
  for (Feature f : kAllFeatures) names.emplace_back(feature_name(f));
  CHECK(names == std::vector<std::string>{"M-TF", "TTC", "MS", "M-ITI", "DoS", "COV-A", "DoA", "COV-TF", "IIV"});
  for (Feature f : kAllFeatures) CHECK(parse_feature_name(feature_name(f)) == f);
  CHECK_FALSE(parse_feature_name("FOO").has_value());
}
