#include <rmt/ingest.hpp>

#include <catch_amalgamated.hpp>

#include <random>

using namespace rmt;
using Catch::Matchers::ContainsSubstring;

namespace {

std::string two_keypoint_csv(std::size_t frames) {
  std::string s = "# fps=30 recording=r1\nframe,keypoint,x,y\n";
  for (std::size_t i = 0; i < frames; ++i) {
    s += std::to_string(i) + ",thumb-tip,0," + std::to_string(i) + "\n";
    s += std::to_string(i) + ",index-fingertip,3,4\n";
  }
  return s;
}

TrajectorySet random_trajectory(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_kp(1, 4), n_frames(2, 60), coin(0, 9);
  std::uniform_real_distribution<double> coord(-1e4, 1e4), fps(1.0, 250.0);
  TrajectorySet t;
  t.recording_id = "rand-" + std::to_string(rng() % 100000);
  t.fps = fps(rng);
  t.duration_frames = static_cast<std::size_t>(n_frames(rng));
  const int k = n_kp(rng);
  for (int j = 0; j < k; ++j) {
    KeypointTrack track;
    track.keypoint_id = "kp" + std::to_string(j);
    for (std::size_t i = 0; i < t.duration_frames; ++i) {
      const bool miss = coin(rng) == 0;
      track.missing_mask.push_back(miss);
      track.samples.push_back(miss ? Point2{0, 0} : Point2{coord(rng), coord(rng)});
    }
    t.keypoints.push_back(std::move(track));
  }
  return t;
}

} // namespace

TEST_CASE("minimal CSV parses to two tracks", "[ingest]") {
  const auto t = parse_trajectory(two_keypoint_csv(4), TrajectoryFormat::csv);
  CHECK(t.duration_frames == 4);
  REQUIRE(t.keypoints.size() == 2);
  CHECK(t.fps == 30.0);
  CHECK(t.recording_id == "r1");
  CHECK(t.keypoints[0].keypoint_id == "thumb-tip");
  CHECK(t.keypoints[0].samples[3] == Point2{0, 3});
  CHECK(t.keypoints[0].missing_count() == 0);
}

TEST_CASE("600-frame recording", "[ingest]") {
  const auto t = parse_trajectory(two_keypoint_csv(600), TrajectoryFormat::csv);
  CHECK(t.duration_frames == 600);
}

TEST_CASE("non-numeric field names its line", "[ingest]") {
  std::string s = two_keypoint_csv(4);
  // Line 7 is frame 2, thumb-tip.
  s.replace(s.find("2,thumb-tip,0,2"), 15, "2,thumb-tip,abc,2");
  try {
    parse_trajectory(s, TrajectoryFormat::csv);
    FAIL("expected InputError");
  } catch (const InputError& e) {
    REQUIRE(e.line().has_value());
    CHECK(*e.line() == 7);
    CHECK_THAT(e.what(), ContainsSubstring("line 7"));
  }
}

TEST_CASE("CSV errors", "[ingest]") {
  SECTION("duplicate frame and keypoint") {
    std::string s = two_keypoint_csv(3) + "1,thumb-tip,5,5\n";
    CHECK_THROWS_WITH(parse_trajectory(s, TrajectoryFormat::csv), ContainsSubstring("duplicate"));
  }
  SECTION("inconsistent fps header") {
    std::string s = "# fps=30\n# fps=25\nframe,keypoint,x,y\n0,a,0,0\n1,a,1,1\n";
    CHECK_THROWS_WITH(parse_trajectory(s, TrajectoryFormat::csv), ContainsSubstring("inconsistent fps"));
  }
  SECTION("zero keypoints") {
    CHECK_THROWS_WITH(parse_trajectory("# fps=30\nframe,keypoint,x,y\n", TrajectoryFormat::csv),
                      ContainsSubstring("zero keypoints"));
  }
  SECTION("no fps anywhere") {
    CHECK_THROWS_AS(parse_trajectory("frame,keypoint,x,y\n0,a,0,0\n1,a,1,1\n", TrajectoryFormat::csv), InputError);
  }
  SECTION("fps supplied by caller") {
    ParseOptions o;
    o.fps = 25.0;
    CHECK(parse_trajectory("frame,keypoint,x,y\n0,a,0,0\n1,a,1,1\n", TrajectoryFormat::csv, o).fps == 25.0);
  }
  SECTION("bad header") {
    CHECK_THROWS_AS(parse_trajectory("# fps=30\nframe,x,y\n", TrajectoryFormat::csv), InputError);
  }
  SECTION("wrong field count") {
    CHECK_THROWS_WITH(parse_trajectory("# fps=30\nframe,keypoint,x,y\n0,a,0\n", TrajectoryFormat::csv),
                      ContainsSubstring("line 3"));
  }
}

TEST_CASE("absent frames are missing", "[ingest]") {
  const std::string s = "# fps=10\nframe,keypoint,x,y\n0,a,0,0\n1,a,1,1\n2,a,2,2\n0,b,5,5\n2,b,7,7\n";
  const auto t = parse_trajectory(s, TrajectoryFormat::csv);
  REQUIRE(t.keypoints.size() == 2);
  CHECK(t.duration_frames == 3);
  CHECK(t.keypoints[1].missing(1));
  CHECK_FALSE(t.keypoints[1].missing(0));
}

TEST_CASE("timestamp column is checked against frame/fps", "[ingest]") {
  const std::string ok = "# fps=10\nframe,keypoint,x,y,t\n0,a,0,0,0.0\n1,a,1,1,0.12\n";
  CHECK(parse_trajectory(ok, TrajectoryFormat::csv).duration_frames == 2);
  const std::string bad = "# fps=10\nframe,keypoint,x,y,t\n0,a,0,0,0.0\n1,a,1,1,0.2\n";
  CHECK_THROWS_WITH(parse_trajectory(bad, TrajectoryFormat::csv), ContainsSubstring("line 4"));
}

TEST_CASE("JSON trajectory", "[ingest]") {
  const std::string s =
      R"({"recording_id":"j","fps":30,"keypoints":[{"id":"a","xy":[[0,0],null,[2,2]]},{"id":"b","xy":[[1,1],[1,1],[1,1]]}]})";
  const auto t = parse_trajectory(s, TrajectoryFormat::json);
  CHECK(t.recording_id == "j");
  CHECK(t.duration_frames == 3);
  CHECK(t.keypoints[0].missing(1));
  CHECK_THROWS_AS(parse_trajectory(R"({"fps":30,"keypoints":[{"id":"a","xy":[[0,0],[1]]}]})",
                                   TrajectoryFormat::json),
                  InputError);
  CHECK_THROWS_AS(parse_trajectory(R"({"fps":30,"keypoints":[{"id":"a","xy":[[0,0],[1,1]]},{"id":"a","xy":[[0,0],[1,1]]}]})",
                                   TrajectoryFormat::json),
                  InputError);
  CHECK_THROWS_AS(parse_trajectory(R"({"fps":30,"keypoints":[]})", TrajectoryFormat::json), InputError);
}

TEST_CASE("reference documents", "[ingest]") {
  SECTION("one feature") {
    const auto r = parse_reference(R"([{"recording_id":"r1","method_name":"optotrak","condition":"2Hz","features":{"M-TF":2.0}}])");
    REQUIRE(r.size() == 1);
    CHECK(r[0].feature_values.size() == 1);
    CHECK(r[0].feature_values.at(Feature::MTF) == 2.0);
    CHECK(r[0].condition_label == "2Hz");
  }
  SECTION("empty list") { CHECK(parse_reference("[]").empty()); }
  SECTION("unknown feature is named") {
    CHECK_THROWS_WITH(parse_reference(R"([{"recording_id":"r1","features":{"FOO":1}}])"), ContainsSubstring("FOO"));
  }
  SECTION("missing recording id") {
    CHECK_THROWS_WITH(parse_reference(R"([{"features":{"M-TF":1}}])"), ContainsSubstring("recording_id"));
  }
  SECTION("one measurement per recording and method") {
    CHECK_THROWS_WITH(parse_reference(R"([{"recording_id":"r","method_name":"m"},{"recording_id":"r","method_name":"m"}])"),
                      ContainsSubstring("duplicate"));
    CHECK(parse_reference(R"([{"recording_id":"r","method_name":"m"},{"recording_id":"r","method_name":"n"}])").size() == 2);
  }
  SECTION("round trip") {
    const auto r = parse_reference(
        R"([{"recording_id":"a","method_name":"x","condition":"1Hz","features":{"M-TF":1.5,"IIV":0.25,"TTC":9}}])");
    CHECK(parse_reference(serialize_reference(r)) == r);
  }
}

TEST_CASE("fill_missing", "[ingest]") {
  auto make = [](std::vector<std::optional<Point2>> v) {
    KeypointTrack t;
    t.keypoint_id = "k";
    for (auto& p : v) {
      t.samples.push_back(p.value_or(Point2{0, 0}));
      t.missing_mask.push_back(!p);
    }
    return t;
  };
  SECTION("linear midpoint") {
    const auto f = fill_missing(make({Point2{0, 0}, std::nullopt, Point2{2, 2}}));
    CHECK(f.samples[1] == Point2{1, 1});
    CHECK(f.missing(1));
  }
  SECTION("identity without gaps") {
    const auto t = make({Point2{0, 1}, Point2{2, 3}});
    CHECK(fill_missing(t).samples == t.samples);
  }
  SECTION("nearest extension at the ends") {
    const auto f = fill_missing(make({std::nullopt, Point2{1, 1}, std::nullopt}));
    CHECK(f.samples == std::vector<Point2>{{1, 1}, {1, 1}, {1, 1}});
  }
  SECTION("all missing") { CHECK_THROWS_AS(fill_missing(make({std::nullopt, std::nullopt})), InputError); }
  SECTION("idempotent and never moves a present sample") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 100; ++rep) {
      auto t = random_trajectory(rng);
      for (auto& k : t.keypoints) k.missing_mask[0] = false;
      const auto once = fill_missing(t);
      const auto twice = fill_missing(once);
      for (std::size_t j = 0; j < t.keypoints.size(); ++j) {
        CHECK(once.keypoints[j].samples == twice.keypoints[j].samples);
        for (std::size_t i = 0; i < t.duration_frames; ++i) {
          if (!t.keypoints[j].missing(i)) CHECK(once.keypoints[j].samples[i] == t.keypoints[j].samples[i]);
        }
      }
    }
  }
}

TEST_CASE("CSV and JSON round trips are lossless", "[ingest][roundtrip]") {
  std::mt19937_64 rng(2024);
  for (int rep = 0; rep < 100; ++rep) {
    const auto t = random_trajectory(rng);
    const auto from_csv = parse_trajectory(serialize_csv(t), TrajectoryFormat::csv);
    const auto from_json = parse_trajectory(serialize_json(t), TrajectoryFormat::json);
    REQUIRE(from_csv == t);
    REQUIRE(from_json == t);
    REQUIRE(parse_trajectory(serialize_json(from_csv), TrajectoryFormat::json) == t);
    REQUIRE(parse_trajectory(serialize_csv(from_json), TrajectoryFormat::csv) == t);
  }
}
