#pragma once

// Command-line front end. Exit codes: 0 success, 1 input error,
// 2 analysis degeneracy (flat or unanalyzable recording).

#include <rmt/rmt.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace rmt::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kInputError = 1, kDegenerate = 2 };

struct RunConfig {
  std::vector<std::string> inputs;
  std::string keypoints = "thumb-tip,index-fingertip";
  AvrParams params;
  bool normalize = true;
  std::string out_dir = "rmt_out";
  std::string format;  // empty: the subcommand's default
  std::optional<std::uint64_t> seed;
  std::optional<double> fps;
  bool emit_signal = false;
  bool timestamps = false;
  std::string reference;
  std::string candidate;
  std::vector<std::string> agreement_thresholds;  // FEATURE=VALUE
  std::vector<double> thresholds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::string prediction;
  std::string truth;
  std::string spec;
};

inline std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw InputError("cannot read '" + p.string() + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

/// Writes through a temporary file and rename so readers never see a
/// partial file.
inline void write_file(const fs::path& p, const std::string& content) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot write '" + p.string() + "'");
    f << content;
  }
  fs::rename(tmp, p);
}

inline TrajectoryFormat format_for(const fs::path& p) {
  return p.extension() == ".json" ? TrajectoryFormat::json : TrajectoryFormat::csv;
}

inline TrajectorySet load_trajectory(const fs::path& p, std::optional<double> fps) {
  ParseOptions opts;
  opts.fps = fps;
  opts.recording_id = p.stem().string();
  try {
    return parse_trajectory(read_file(p), format_for(p), opts);
  } catch (const InputError& e) {
    throw InputError(p.string() + ": " + e.what());
  }
}

inline std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    fs::path p{in};
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(p)) {
        if (e.is_regular_file() && (e.path().extension() == ".csv" || e.path().extension() == ".json"))
          found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(p)) {
      out.push_back(p);
    } else {
      throw InputError("no such file or directory: '" + in + "'");
    }
  }
  return out;
}

inline std::string safe_name(std::string s) {
  for (char& c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) c = '_';
  }
  return s.empty() ? "recording" : s;
}

inline AnalysisOptions analysis_options(const RunConfig& cfg) {
  AnalysisOptions opts;
  const auto comma = cfg.keypoints.find(',');
  if (comma == std::string::npos || comma == 0 || comma + 1 == cfg.keypoints.size())
    throw InputError("--keypoints expects 'a,b'");
  opts.keypoint_a = cfg.keypoints.substr(0, comma);
  opts.keypoint_b = cfg.keypoints.substr(comma + 1);
  opts.params = cfg.params;
  opts.params.validate();
  opts.normalize = cfg.normalize;
  return opts;
}

inline std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Outcome {
  enum Status { ok, input_error, unanalyzable } status = ok;
  std::string message;
  std::string recording_id;
  std::optional<AnalysisResult> result;
};

/// Parses and analyzes every file, in parallel; results keep input order.
inline std::vector<Outcome> analyze_files(const std::vector<fs::path>& files, const RunConfig& cfg,
                                          const AnalysisOptions& opts) {
  std::vector<Outcome> outcomes(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      Outcome& o = outcomes[i];
      try {
        const auto traj = load_trajectory(files[i], cfg.fps);
        o.recording_id = traj.recording_id;
        o.result = analyze(traj, opts);
      } catch (const InputError& e) {
        o.status = Outcome::input_error;
        o.message = e.what();
      } catch (const AnalysisError& e) {
        o.status = Outcome::unanalyzable;
        o.message = e.what();
      }
    }
  };
  const std::size_t n_threads =
      std::max<std::size_t>(1, std::min<std::size_t>(files.size(), std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return outcomes;
}

inline int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto opts = analysis_options(cfg);
  const std::string format = cfg.format.empty() ? "json" : cfg.format;
  const auto files = expand_inputs(cfg.inputs);
  if (files.empty()) throw InputError("no trajectory files found");
  auto outcomes = analyze_files(files, cfg, opts);

  const fs::path dir{cfg.out_dir};
  std::map<std::string, std::size_t> used;
  Json entries = Json::array();
  std::size_t n_ok = 0, n_input = 0, n_degenerate = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    auto& o = outcomes[i];
    if (o.status == Outcome::ok && !used.emplace(safe_name(o.recording_id), i).second) {
      o.status = Outcome::input_error;
      o.message = "duplicate recording_id '" + o.recording_id + "'";
    }
    Json e;
    e["file"] = files[i].filename().generic_string();
    e["recording_id"] = o.recording_id;
    if (o.status == Outcome::ok) {
      const auto& r = *o.result;
      const std::string stem = safe_name(o.recording_id);
      if (format == "csv") {
        write_file(dir / (stem + ".features.csv"), report::feature_csv_header() + report::feature_csv_row(r.features));
      } else {
        write_file(dir / (stem + ".features.json"), report::feature_json(r.features).dump(2) + "\n");
      }
      write_file(dir / (stem + ".vertices.csv"), report::vertices_csv(r.trace.vertices));
      if (cfg.emit_signal) write_file(dir / (stem + ".signal.csv"), report::signal_csv(r));
      e["status"] = "ok";
      e["peaks"] = r.trace.vertices.count(VertexKind::peak);
      e["troughs"] = r.trace.vertices.count(VertexKind::trough);
      ++n_ok;
    } else {
      const bool input = o.status == Outcome::input_error;
      e["status"] = input ? "input_error" : "unanalyzable";
      e["message"] = o.message;
      err << files[i].string() << ": " << (input ? "error: " : "unanalyzable: ") << o.message << "\n";
      ++(input ? n_input : n_degenerate);
    }
    entries.push_back(std::move(e));
  }
  Json index;
  index["recordings"] = std::move(entries);
  index["summary"] = {{"files", files.size()}, {"analyzed", n_ok}, {"input_errors", n_input},
                      {"unanalyzable", n_degenerate}};
  if (cfg.timestamps) index["generated_at"] = utc_now();
  write_file(dir / "index.json", index.dump(2) + "\n");

  out << "analyzed " << n_ok << " of " << files.size() << " recording(s): " << n_input << " input error(s), "
      << n_degenerate << " unanalyzable\n";
  if (n_input > 0) return kInputError;
  if (n_degenerate > 0) return kDegenerate;
  return kOk;
}

inline std::map<Feature, double> agreement_thresholds(const RunConfig& cfg) {
  std::map<Feature, double> th;
  for (Feature f : kAllFeatures) {
    if (is_frequency_feature(f)) th[f] = 0.5;
  }
  for (const auto& spec : cfg.agreement_thresholds) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw InputError("--agreement-threshold expects FEATURE=VALUE, got '" + spec + "'");
    const auto f = parse_feature_name(spec.substr(0, eq));
    if (!f) throw InputError("unknown feature name '" + spec.substr(0, eq) + "'");
    const auto v = fmt::parse_double(spec.substr(eq + 1));
    if (!v || !(*v > 0.0)) throw InputError("agreement threshold must be a positive number, got '" + spec + "'");
    th[*f] = *v;
  }
  return th;
}

inline int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.reference.empty()) throw InputError("compare: --reference is required");
  const auto refs = parse_reference(read_file(cfg.reference));
  const auto thresholds = agreement_thresholds(cfg);
  int status = kOk;

  // Candidate measurements: a precomputed feature file, analyzed trajectories, or both.
  std::vector<ReferenceMeasurement> cands;
  if (!cfg.candidate.empty()) cands = parse_reference(read_file(cfg.candidate));
  if (!cfg.inputs.empty()) {
    const auto opts = analysis_options(cfg);
    const auto files = expand_inputs(cfg.inputs);
    for (auto& o : analyze_files(files, cfg, opts)) {
      if (o.status != Outcome::ok) {
        err << (o.status == Outcome::input_error ? "error: " : "unanalyzable: ") << o.message << "\n";
        status = std::max<int>(status, o.status == Outcome::input_error ? kInputError : kDegenerate);
        continue;
      }
      ReferenceMeasurement m;
      m.recording_id = o.recording_id;
      m.method_name = "rmt";
      for (Feature f : kAllFeatures) m.feature_values[f] = o.result->features.value(f);
      cands.push_back(std::move(m));
    }
  }
  if (cands.empty()) throw InputError("compare: no candidate measurements (give trajectories or --candidate)");

  using Key = std::tuple<std::string, std::string, std::string>;  // condition, method, reference method
  std::map<Key, std::map<Feature, PairedFeatureSample>> groups;
  for (const auto& r : refs) {
    for (const auto& c : cands) {
      if (c.recording_id != r.recording_id) continue;
      auto& g = groups[{r.condition_label, c.method_name, r.method_name}];
      for (const auto& [f, rv] : r.feature_values) {
        auto cv = c.feature_values.find(f);
        if (cv == c.feature_values.end()) continue;
        auto& s = g[f];
        s.feature = f;
        s.condition_label = r.condition_label;
        s.pairs.push_back({cv->second, rv, r.recording_id});
      }
    }
  }
  if (groups.empty()) throw InputError("compare: candidate and reference share no recording ids");

  const fs::path dir{cfg.out_dir};
  Json comparisons = Json::array();
  Json table = Json::array();
  std::string csv = "condition,method,reference_method,feature,n,t,df,p,decision,bias,loa_low,loa_high,"
                    "agreement_threshold,agreement_fraction\n";

  out << "condition\tmethod\tspeed\tamplitude\trhythm\n";
  for (const auto& [key, features] : groups) {
    const auto& [condition, method, ref_method] = key;
    std::map<Feature, std::string> decisions;
    for (Feature f : kAllFeatures) {
      auto it = features.find(f);
      if (it == features.end()) continue;
      const auto& s = it->second;
      Json c;
      c["condition"] = condition;
      c["method"] = method;
      c["reference_method"] = ref_method;
      c["feature"] = std::string(feature_name(f));
      c["n"] = s.pairs.size();
      std::string row = condition + "," + method + "," + ref_method + "," + std::string(feature_name(f)) + "," +
                        std::to_string(s.pairs.size());
      if (s.pairs.size() >= 2) {
        const auto w = welch_t_test(s.a_values(), s.b_values());
        const auto ba = bland_altman(s);
        c["welch"] = report::welch_json(w);
        c["bland_altman"] = report::bland_altman_json(ba);
        decisions[f] = to_string(w.decision);
        row += "," + fmt::sig6(w.t) + "," + fmt::sig6(w.df) + "," + fmt::sig6(w.p) + "," + to_string(w.decision) +
               "," + fmt::sig6(ba.bias) + "," + fmt::sig6(ba.loa_low) + "," + fmt::sig6(ba.loa_high);
        write_file(dir / "bland_altman" /
                       (safe_name(condition.empty() ? "all" : condition) + "__" + safe_name(method) + "__" +
                        safe_name(std::string(feature_name(f))) + ".csv"),
                   report::bland_altman_csv(ba));
      } else {
        c["welch"] = nullptr;
        c["bland_altman"] = nullptr;
        decisions[f] = "insufficient";
        row += ",,,,insufficient,,,";
      }
      if (auto th = thresholds.find(f); th != thresholds.end()) {
        const double frac = agreement_fraction(s, th->second);
        c["agreement"] = {{"threshold", report::number(th->second)}, {"fraction", report::number(frac)}};
        row += "," + fmt::sig6(th->second) + "," + fmt::sig6(frac);
      } else {
        c["agreement"] = nullptr;
        row += ",,";
      }
      csv += row + "\n";
      comparisons.push_back(std::move(c));
    }
    auto pick = [&](Feature f) { return decisions.count(f) ? decisions[f] : std::string("n/a"); };
    Json t;
    t["condition"] = condition;
    t["method"] = method;
    t["reference_method"] = ref_method;
    t["speed"] = pick(Feature::MTF);
    t["amplitude"] = pick(Feature::COVA);
    t["rhythm"] = pick(Feature::COVTF);
    out << (condition.empty() ? "-" : condition) << "\t" << method << "\t" << pick(Feature::MTF) << "\t"
        << pick(Feature::COVA) << "\t" << pick(Feature::COVTF) << "\n";
    table.push_back(std::move(t));
  }
  Json doc;
  doc["comparisons"] = std::move(comparisons);
  doc["decision_table"] = std::move(table);
  if (cfg.timestamps) doc["generated_at"] = utc_now();
  write_file(dir / "agreement.json", doc.dump(2) + "\n");
  if (cfg.format == "csv") write_file(dir / "agreement.csv", csv);
  return status;
}

inline int cmd_synth(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  auto specs = parse_synth_specs(read_file(cfg.spec));
  const std::string format = cfg.format.empty() ? "csv" : cfg.format;
  const auto traj_format = format == "json" ? TrajectoryFormat::json : TrajectoryFormat::csv;
  const fs::path dir{cfg.out_dir};
  std::vector<ReferenceMeasurement> truth_refs;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (cfg.seed) specs[i].seed = *cfg.seed + i;
    const auto [traj, gt] = generate(specs[i]);
    const std::string stem = safe_name(specs[i].recording_id);
    write_file(dir / (stem + (format == "json" ? ".json" : ".csv")), serialize_trajectory(traj, traj_format));
    write_file(dir / "truth" / (stem + ".json"), report::ground_truth_json(specs[i], gt).dump(2) + "\n");
    if (gt.true_features) {
      ReferenceMeasurement m;
      m.recording_id = specs[i].recording_id;
      m.method_name = "ground-truth";
      m.condition_label = specs[i].condition;
      for (Feature f : kAllFeatures) m.feature_values[f] = gt.true_features->value(f);
      truth_refs.push_back(std::move(m));
    }
  }
  write_file(dir / "truth" / "reference.json", serialize_reference(truth_refs));
  out << "wrote " << specs.size() << " synthetic recording(s) to " << dir.generic_string() << "\n";
  return kOk;
}

inline int cmd_eval_keypoints(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto pred = load_trajectory(cfg.prediction, cfg.fps.value_or(30.0));
  const auto truth = load_trajectory(cfg.truth, cfg.fps.value_or(30.0));
  const auto k = pair_keypoints(pred, truth);
  if (cfg.thresholds.empty()) throw InputError("eval-keypoints: at least one threshold required");
  for (double t : cfg.thresholds) {
    if (!(t > 0.0)) throw InputError("eval-keypoints: thresholds must be positive");
  }
  const auto curve = pck_curve(k, cfg.thresholds);
  const double err_all = mpjpe(k);

  const fs::path dir{cfg.out_dir};
  Json doc;
  doc["mpjpe"] = report::number(err_all);
  Json per = Json::object();
  for (std::size_t j = 0; j < k.keypoints(); ++j) per[k.keypoint_ids[j]] = report::number(mpjpe_keypoint(k, j));
  Json pc = Json::array();
  for (const auto& p : curve) pc.push_back({{"threshold", report::number(p.threshold)}, {"pck", report::number(p.fraction)}});
  doc["mpjpe_per_keypoint"] = std::move(per);
  doc["pck"] = std::move(pc);
  doc["keypoints"] = k.keypoints();
  doc["frames"] = k.frames();
  write_file(dir / "keypoints.json", doc.dump(2) + "\n");
  write_file(dir / "pck.csv", report::pck_csv(curve));
  out << "MPJPE " << fmt::sig6(err_all) << " px over " << k.keypoints() << " keypoint(s) x " << k.frames()
      << " frame(s)\n";
  return kOk;
}

/// Applies config-file values for every option not given on the command line.
inline void apply_config(const fs::path& path, RunConfig& cfg, const CLI::App& app) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw InputError("config: invalid JSON: " + std::string(e.what()));
  }
  if (!j.is_object()) throw InputError("config must be a JSON object");

  auto given = [&](const std::string& flag) {
    const CLI::App* scope = &app;
    for (const auto* sub : app.get_subcommands()) {
      try {
        if (sub->get_option("--" + flag)->count() > 0) return true;
      } catch (const CLI::OptionNotFound&) {
      }
    }
    try {
      return scope->get_option("--" + flag)->count() > 0;
    } catch (const CLI::OptionNotFound&) {
      return false;
    }
  };
  using Setter = std::function<void(const Json&)>;
  const std::map<std::string, Setter> setters = {
      {"gamma-flatness", [&](const Json& v) { cfg.params.gamma_flatness = v.get<double>(); }},
      {"gamma-window", [&](const Json& v) { cfg.params.gamma_window = v.get<double>(); }},
      {"gamma-platform", [&](const Json& v) { cfg.params.gamma_platform = v.get<double>(); }},
      {"no-normalize", [&](const Json& v) { cfg.normalize = !v.get<bool>(); }},
      {"no-subframe", [&](const Json& v) { cfg.params.subframe_refinement = !v.get<bool>(); }},
      {"keypoints", [&](const Json& v) { cfg.keypoints = v.get<std::string>(); }},
      {"out", [&](const Json& v) { cfg.out_dir = v.get<std::string>(); }},
      {"format", [&](const Json& v) { cfg.format = v.get<std::string>(); }},
      {"seed", [&](const Json& v) { cfg.seed = v.get<std::uint64_t>(); }},
      {"fps", [&](const Json& v) { cfg.fps = v.get<double>(); }},
      {"emit-signal", [&](const Json& v) { cfg.emit_signal = v.get<bool>(); }},
      {"timestamps", [&](const Json& v) { cfg.timestamps = v.get<bool>(); }},
      {"reference", [&](const Json& v) { cfg.reference = v.get<std::string>(); }},
      {"candidate", [&](const Json& v) { cfg.candidate = v.get<std::string>(); }},
      {"agreement-threshold", [&](const Json& v) { cfg.agreement_thresholds = v.get<std::vector<std::string>>(); }},
      {"thresholds", [&](const Json& v) { cfg.thresholds = v.get<std::vector<double>>(); }},
  };
  for (const auto& [key, value] : j.items()) {
    auto it = setters.find(key);
    if (it == setters.end()) throw InputError("config: unknown key '" + key + "'");
    if (given(key)) continue;
    try {
      it->second(value);
    } catch (const Json::exception&) {
      throw InputError("config: bad value for '" + key + "'");
    }
  }
  if (!cfg.format.empty() && cfg.format != "json" && cfg.format != "csv")
    throw InputError("config: format must be json or csv");
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Finger-tapping kinematics from keypoint trajectories", "rmt"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string config_path;
  bool no_normalize = false;
  bool no_subframe = false;
  std::uint64_t seed = 0;
  double fps = 0.0;

  app.add_option("--config", config_path, "JSON file mirroring these flags; flags win");
  app.add_option("--gamma-flatness", cfg.params.gamma_flatness, "Slope threshold as a fraction of the range")
      ->capture_default_str();
  app.add_option("--gamma-window", cfg.params.gamma_window, "Moving-mean window as a fraction of N")
      ->capture_default_str();
  app.add_option("--gamma-platform", cfg.params.gamma_platform, "Long-platform threshold as a fraction of N")
      ->capture_default_str();
  app.add_flag("--no-normalize", no_normalize, "Skip max-aperture normalization");
  app.add_flag("--no-subframe", no_subframe, "Keep short-platform vertex times on whole frames");
  app.add_option("--keypoints", cfg.keypoints, "Keypoint pair a,b")->capture_default_str();
  app.add_option("--out", cfg.out_dir, "Output directory")->capture_default_str();
  app.add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", seed, "Base seed for synth");
  app.add_option("--fps", fps, "Frame rate for CSV files without a '# fps=' line")->check(CLI::PositiveNumber);
  app.add_flag("--timestamps", cfg.timestamps, "Include generation time in index reports");
  app.add_flag("--emit-signal", cfg.emit_signal, "analyze: also write per-frame signal CSV");
  app.add_option("--reference", cfg.reference, "compare: reference feature JSON");
  app.add_option("--candidate", cfg.candidate, "compare: candidate feature JSON (reference format)");
  app.add_option("--agreement-threshold", cfg.agreement_thresholds, "compare: FEATURE=VALUE, repeatable");
  app.add_option("--thresholds", cfg.thresholds, "eval-keypoints: PCK thresholds in px")->delimiter(',');

  auto* analyze = app.add_subcommand("analyze", "Extract tapping features from trajectory files or directories");
  analyze->add_option("inputs", cfg.inputs, "Trajectory files (.csv/.json) or directories")->required();
  auto* compare = app.add_subcommand("compare", "Compare candidate features against reference measurements");
  compare->add_option("inputs", cfg.inputs, "Trajectory files or directories to analyze as the candidate");
  auto* synth = app.add_subcommand("synth", "Generate synthetic trajectories with ground truth");
  synth->add_option("spec", cfg.spec, "Synth spec JSON (object or array)")->required();
  auto* eval = app.add_subcommand("eval-keypoints", "PCK and MPJPE of predicted against true keypoints");
  eval->add_option("prediction", cfg.prediction, "Predicted trajectory")->required();
  eval->add_option("truth", cfg.truth, "True trajectory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (app.get_option("--seed")->count() > 0) cfg.seed = seed;
    if (app.get_option("--fps")->count() > 0) cfg.fps = fps;
    if (no_normalize) cfg.normalize = false;
    if (no_subframe) cfg.params.subframe_refinement = false;
    if (!config_path.empty()) apply_config(config_path, cfg, app);

    if (analyze->parsed()) return cmd_analyze(cfg, out, err);
    if (compare->parsed()) return cmd_compare(cfg, out, err);
    if (synth->parsed()) return cmd_synth(cfg, out, err);
    if (eval->parsed()) return cmd_eval_keypoints(cfg, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const AnalysisError& e) {
    err << "unanalyzable: " << e.what() << "\n";
    return kDegenerate;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

} // namespace rmt::cli
