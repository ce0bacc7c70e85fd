// Copyright 2026 The qaunwrap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qaunwrap/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace qaunwrap {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "' for reading");
  return in;
}

void write_file(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw Error(ErrorKind::io, "failed writing '" + path.string() + "'");
}

template <typename F>
auto in_stage(const char* stage, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(stage) + ": " + e.what());
  }
}

ojson stats_json(const ChainStats& s) {
  return {{"avg", s.avg}, {"std", s.std}, {"rclo", s.rclo}, {"max", s.max}};
}

ojson labels_json(const LabelField& f) {
  auto rows = ojson::array();
  for (int r = 0; r < f.rows(); ++r) {
    auto row = ojson::array();
    for (int c = 0; c < f.cols(); ++c) row.push_back(f(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string file_tag(std::string s) {
  for (char& c : s)
    if (c == ':' || c == '/' || c == '\\' || c == ' ') c = '_';
  return s;
}

TargetGraph load_target(const TargetDescriptor& desc, const std::string& mask_path) {
  auto g = build_target(desc);
  if (mask_path.empty()) return g;
  auto in = open_in(mask_path);
  const auto mask = read_node_mask(in);
  return g.without_nodes(mask);
}

Embedding load_embedding(const std::string& path, std::optional<ChainStats>* stored = nullptr) {
  auto in = open_in(path);
  return read_embedding(in, stored);
}

Scene load_scene(const std::string& path) {
  auto in = open_in(path);
  return read_scene(in);
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::validation: return kExitValidation;
    case ErrorKind::capacity: return kExitCapacity;
    case ErrorKind::io:
    case ErrorKind::schema: return kExitIo;
    default: return kExitUsage;
  }
}

Qubo scene_qubo(const Scene& scene, double anchor_weight) {
  if (anchor_weight < 0.0) throw Error(ErrorKind::invalid_parameter, "anchor weight must be nonnegative");
  const ProblemGraph pg(scene.height, scene.width);
  auto offsets = compute_offsets(scene.wrapped);
  auto weights = ModelWeights::uniform(pg.shape());
  offsets.prior(scene.meta.reference_row, scene.meta.reference_col) = scene.meta.reference_label;
  weights.unary(scene.meta.reference_row, scene.meta.reference_col) = anchor_weight;
  return build_qubo(pg, offsets, weights);
}

std::string embedding_type_tag(const Embedding& e, const std::string& path) {
  if (e.scheme == "pegasus_native" || e.scheme == "chimera_symmetric") return e.scheme;
  return "imported:" + fs::path(path).stem().string();
}

RunRecord solve_scene(const Scene& scene, const Embedding& embedding, const TargetGraph& target,
                      const SolveOptions& options) {
  RunRecord rec;
  rec.scene_seed = scene.meta.seed;
  rec.height = scene.height;
  rec.width = scene.width;
  rec.reads = options.anneal.reads;
  rec.sweeps = options.anneal.sweeps;
  rec.seed = options.anneal.seed;
  rec.anchor_weight = options.anchor_weight;
  rec.embedding_type = embedding.scheme.empty() ? "imported" : embedding.scheme;

  const Qubo logical = in_stage("qubo", [&] { return scene_qubo(scene, options.anchor_weight); });
  const ProblemGraph pg(scene.height, scene.width);
  in_stage("validate", [&] {
    if (embedding.height != scene.height || embedding.width != scene.width)
      throw Error(ErrorKind::dimension_mismatch, "embedding is for a " + std::to_string(embedding.height) + "x" +
                                                     std::to_string(embedding.width) + " image, scene is " +
                                                     std::to_string(scene.height) + "x" + std::to_string(scene.width));
    const auto report = validate_embedding(pg, target, embedding);
    if (!report.ok())
      throw Error(ErrorKind::validation, std::to_string(report.violations.size()) + " violations, first: " +
                                             report.violations.front().details);
    return 0;
  });
  const auto chained = in_stage("embed", [&] { return embed_qubo(logical, embedding, target, options.chain_strength); });
  rec.chain_strength = chained.chain_strength;
  const auto schedule = in_stage("anneal", [&] { return resolve_schedule(chained.qubo, options.anneal); });
  rec.beta_start = schedule.start;
  rec.beta_end = schedule.end;
  const auto raw = in_stage("anneal", [&] { return simulated_anneal(chained.qubo, options.anneal); });
  const auto logical_samples = in_stage("unembed", [&] { return unembed(raw, chained, logical); });
  rec.chain_break_fraction = logical_samples.chain_break_fraction;
  in_stage("score", [&] {
    const auto& best = logical_samples.samples.best();
    rec.best_energy = best.energy;
    rec.labels = labels_from_bits(best.x, scene.height, scene.width);
    rec.matching_fraction = matching_fraction(rec.labels, scene.ref_labels);
    rec.reference_energy = logical.energy(bits_from_labels(scene.ref_labels));
    rec.chain_stats = chain_stats(embedding);
    return 0;
  });
  return rec;
}

void write_run_record(std::ostream& out, const RunRecord& r) {
  ojson j;
  j["scene"] = r.scene_path;
  j["scene_seed"] = r.scene_seed;
  j["embedding"] = r.embedding_path;
  j["embedding_type"] = r.embedding_type;
  j["H"] = r.height;
  j["W"] = r.width;
  j["sampler"] = {{"reads", r.reads},           {"sweeps", r.sweeps},
                  {"seed", r.seed},             {"beta_start", r.beta_start},
                  {"beta_end", r.beta_end},     {"chain_strength", r.chain_strength},
                  {"anchor_weight", r.anchor_weight}};
  j["best_energy"] = r.best_energy;
  j["reference_energy"] = r.reference_energy;
  j["matching_fraction"] = r.matching_fraction;
  j["chain_stats"] = stats_json(r.chain_stats);
  j["chain_break_fraction"] = r.chain_break_fraction;
  j["labels"] = labels_json(r.labels);
  if (r.duration_s) j["duration_s"] = *r.duration_s;
  out << j.dump(1) << '\n';
}

RunRecord read_run_record(std::istream& in) {
  try {
    const auto j = nlohmann::json::parse(in);
    RunRecord r;
    r.scene_path = j.at("scene").get<std::string>();
    r.scene_seed = j.at("scene_seed").get<std::uint64_t>();
    r.embedding_path = j.at("embedding").get<std::string>();
    r.embedding_type = j.at("embedding_type").get<std::string>();
    r.height = j.at("H").get<int>();
    r.width = j.at("W").get<int>();
    const auto& s = j.at("sampler");
    r.reads = s.at("reads").get<std::size_t>();
    r.sweeps = s.at("sweeps").get<std::size_t>();
    r.seed = s.at("seed").get<std::uint64_t>();
    r.beta_start = s.at("beta_start").get<double>();
    r.beta_end = s.at("beta_end").get<double>();
    r.chain_strength = s.at("chain_strength").get<double>();
    r.anchor_weight = s.at("anchor_weight").get<double>();
    r.best_energy = j.at("best_energy").get<double>();
    r.reference_energy = j.at("reference_energy").get<double>();
    r.matching_fraction = j.at("matching_fraction").get<double>();
    const auto& cs = j.at("chain_stats");
    r.chain_stats = {cs.at("avg").get<double>(), cs.at("std").get<double>(), cs.at("rclo").get<double>(),
                     cs.at("max").get<std::size_t>()};
    r.chain_break_fraction = j.at("chain_break_fraction").get<double>();
    const auto& rows = j.at("labels");
    r.labels = LabelField(r.height, r.width);
    if (static_cast<int>(rows.size()) != r.height) throw Error(ErrorKind::schema, "run record labels have wrong row count");
    for (int y = 0; y < r.height; ++y) {
      if (static_cast<int>(rows[y].size()) != r.width) throw Error(ErrorKind::schema, "run record labels have wrong width");
      for (int x = 0; x < r.width; ++x) r.labels(y, x) = rows[y][x].get<int>();
    }
    if (j.contains("duration_s")) r.duration_s = j["duration_s"].get<double>();
    return r;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::schema, std::string("malformed run record: ") + ex.what());
  }
}

std::vector<EmbeddingSummary> summarize_runs(const std::vector<RunRecord>& records) {
  if (records.empty()) throw Error(ErrorKind::invalid_input, "no run records to summarise");
  std::vector<EmbeddingSummary> out;
  std::map<std::string, std::vector<double>> values;
  for (const auto& r : records) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& s) { return s.embedding_type == r.embedding_type; });
    if (it == out.end()) {
      out.push_back({});
      it = std::prev(out.end());
      it->embedding_type = r.embedding_type;
    }
    const double pct = 100.0 * r.matching_fraction;
    it->per_scene[r.scene_seed] = pct;
    values[r.embedding_type].push_back(pct);
  }
  for (auto& s : out) {
    const auto& v = values[s.embedding_type];
    s.runs = v.size();
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= double(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    s.mean_percent = mean;
    s.std_percent = std::sqrt(var / double(v.size()));
  }
  return out;
}

void write_report_csv(std::ostream& out, const std::vector<EmbeddingSummary>& summary) {
  std::set<std::uint64_t> scenes;
  for (const auto& s : summary)
    for (const auto& [seed, pct] : s.per_scene) scenes.insert(seed);
  out << "scene";
  for (const auto& s : summary) out << ',' << s.embedding_type;
  out << '\n';
  for (auto seed : scenes) {
    out << seed;
    for (const auto& s : summary) {
      out << ',';
      auto it = s.per_scene.find(seed);
      if (it != s.per_scene.end()) out << fmt("%.1f", it->second);
    }
    out << '\n';
  }
  out << "Average";
  for (const auto& s : summary) out << ',' << fmt("%.1f", s.mean_percent);
  out << "\nStd";
  for (const auto& s : summary) out << ',' << fmt("%.1f", s.std_percent);
  out << '\n';
}

void write_report_json(std::ostream& out, const std::vector<EmbeddingSummary>& summary) {
  auto list = ojson::array();
  for (const auto& s : summary) {
    auto scenes = ojson::object();
    for (const auto& [seed, pct] : s.per_scene) scenes[std::to_string(seed)] = pct / 100.0;
    list.push_back({{"embedding_type", s.embedding_type},
                    {"runs", s.runs},
                    {"mean_fraction", s.mean_percent / 100.0},
                    {"std_fraction", s.std_percent / 100.0},
                    {"per_scene", std::move(scenes)}});
  }
  out << list.dump(1) << '\n';
}

std::string chain_stats_csv(const ChainStats& s) {
  return fmt("%.6g", s.avg) + "," + fmt("%.6g", s.std) + "," + fmt("%.6g", s.rclo) + "," + std::to_string(s.max);
}

// ---------------------------------------------------------------------------
// Command line

namespace {

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::string format = "csv";
};

void print_stats(std::ostream& out, const GlobalOptions& g, const ChainStats& s) {
  if (g.format == "json") out << stats_json(s).dump() << '\n';
  else out << chain_stats_csv(s) << '\n';
}

int cmd_gen(const GlobalOptions& g, int height, int width, double snr_db, bool noiseless, double period, int count,
            std::vector<std::uint64_t> seeds, std::ostream& out) {
  if (height < 1 || width < 1) throw Error(ErrorKind::invalid_parameter, "image dimensions must be >= 1");
  if (seeds.empty()) {
    if (count < 1) throw Error(ErrorKind::invalid_parameter, "--count must be >= 1");
    for (int i = 0; i < count; ++i) seeds.push_back(g.seed + static_cast<std::uint64_t>(i));
  }
  for (auto seed : seeds) {
    const auto scene = make_scene(height, width, noiseless ? std::nullopt : std::optional<double>(snr_db), period, seed);
    std::ostringstream buf;
    write_scene(buf, scene);
    const auto path = fs::path(g.out_dir) / ("scene_" + std::to_string(seed) + ".json");
    write_file(path, buf.str());
    out << path.string() << '\n';
  }
  return kExitOk;
}

int cmd_embed(const GlobalOptions& g, const std::string& scheme, const std::string& import_path, std::string target,
              int height, int width, const std::string& mask, std::string output, std::ostream& out,
              std::ostream& err) {
  Embedding e;
  if (!import_path.empty()) {
    e = load_embedding(import_path);
  } else {
    if (height < 1 || width < 1) throw Error(ErrorKind::invalid_parameter, "image dimensions must be >= 1");
    if (scheme == "pegasus_native") {
      if (target.empty()) target = "pegasus:16";
      const auto graph = load_target(TargetDescriptor::parse(target), mask);
      e = pegasus_native(height, width, graph, find_native_template(graph));
    } else if (scheme == "chimera_symmetric") {
      if (target.empty()) target = "chimera:16,16,4";
      const auto graph = load_target(TargetDescriptor::parse(target), mask);
      e = chimera_symmetric(height, width, graph);
    } else {
      throw Error(ErrorKind::invalid_parameter, "--scheme must be pegasus_native or chimera_symmetric");
    }
  }
  const auto graph = load_target(e.target, mask);
  const auto report = validate_embedding(ProblemGraph(e.height, e.width), graph, e);
  if (!report.ok()) {
    out << report_to_json(report) << '\n';
    err << "embedding is invalid: " << report.violations.size() << " violations\n";
    return kExitValidation;
  }
  if (output.empty() && import_path.empty())
    output = (fs::path(g.out_dir) /
              ("embedding_" + scheme + "_" + std::to_string(height) + "x" + std::to_string(width) + ".json"))
                 .string();
  if (!output.empty()) {
    std::ostringstream buf;
    write_embedding(buf, e);
    write_file(output, buf.str());
  }
  print_stats(out, g, chain_stats(e));
  return kExitOk;
}

int cmd_qubo(const GlobalOptions& g, const std::string& scene_path, double anchor_weight, std::string output,
             std::ostream& out) {
  const auto scene = load_scene(scene_path);
  const auto q = scene_qubo(scene, anchor_weight);
  if (output.empty()) output = (fs::path(g.out_dir) / ("qubo_" + std::to_string(scene.meta.seed) + ".json")).string();
  std::ostringstream buf;
  write_qubo(buf, q);
  write_file(output, buf.str());
  out << output << '\n';
  return kExitOk;
}

int cmd_solve(const GlobalOptions& g, const std::string& scene_path, const std::string& embedding_path,
              const std::string& mask, SolveOptions options, bool timing, std::string output,
              const std::string& samples_path, std::ostream& out) {
  const auto scene = in_stage("load scene", [&] { return load_scene(scene_path); });
  const auto e = in_stage("load embedding", [&] { return load_embedding(embedding_path); });
  const auto graph = in_stage("load target", [&] { return load_target(e.target, mask); });
  options.anneal.seed = g.seed;
  const auto started = std::chrono::steady_clock::now();
  auto rec = solve_scene(scene, e, graph, options);
  const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  rec.scene_path = scene_path;
  rec.embedding_path = embedding_path;
  rec.embedding_type = embedding_type_tag(e, embedding_path);
  if (timing) rec.duration_s = elapsed;
  if (output.empty())
    output = (fs::path(g.out_dir) /
              ("run_" + file_tag(rec.embedding_type) + "_" + std::to_string(scene.meta.seed) + ".json"))
                 .string();
  std::ostringstream buf;
  write_run_record(buf, rec);
  write_file(output, buf.str());
  if (!samples_path.empty()) {
    const Qubo logical = scene_qubo(scene, options.anchor_weight);
    std::ostringstream sbuf;
    write_sample_set(sbuf, make_sample_set({bits_from_labels(rec.labels)}, logical,
                                           {options.anneal.seed, options.anneal.reads, options.anneal.sweeps}));
    write_file(samples_path, sbuf.str());
  }
  if (g.format == "json") {
    out << buf.str();
  } else {
    out << rec.embedding_type << ',' << rec.scene_seed << ',' << fmt("%.6g", rec.matching_fraction) << ','
        << fmt("%.10g", rec.best_energy) << ',' << fmt("%.10g", rec.reference_energy) << ','
        << fmt("%.6g", rec.chain_break_fraction) << '\n';
  }
  return kExitOk;
}

int cmd_report(const GlobalOptions& g, const std::vector<std::string>& paths, const std::string& output,
               std::ostream& out) {
  std::vector<RunRecord> records;
  for (const auto& p : paths) {
    auto in = open_in(p);
    records.push_back(read_run_record(in));
  }
  const auto summary = summarize_runs(records);
  std::ostringstream buf;
  if (g.format == "json") write_report_json(buf, summary);
  else write_report_csv(buf, summary);
  if (!output.empty()) write_file(output, buf.str());
  out << buf.str();
  return kExitOk;
}

int cmd_validate(const std::string& path, const std::string& mask, std::ostream& out, std::ostream& err) {
  const auto e = load_embedding(path);
  const auto graph = load_target(e.target, mask);
  const auto report = validate_embedding(ProblemGraph(e.height, e.width), graph, e);
  out << report_to_json(report) << '\n';
  if (!report.ok()) {
    err << "embedding is invalid: " << report.violations.size() << " violations\n";
    return kExitValidation;
  }
  return kExitOk;
}

int cmd_stats(const GlobalOptions& g, const std::string& path, std::ostream& out, std::ostream& err) {
  std::optional<ChainStats> stored;
  const auto e = load_embedding(path, &stored);
  const auto s = chain_stats(e);
  print_stats(out, g, s);
  if (stored) {
    const bool same = std::abs(stored->avg - s.avg) <= 1e-12 && std::abs(stored->std - s.std) <= 1e-12 &&
                      std::abs(stored->rclo - s.rclo) <= 1e-12 && stored->max == s.max;
    if (!same) {
      err << "stored stats " << chain_stats_csv(*stored) << " disagree with recomputed " << chain_stats_csv(s) << '\n';
      return kExitValidation;
    }
  }
  return kExitOk;
}

int cmd_graph(const GlobalOptions& g, const std::string& target, const std::string& mask, std::string output,
              std::ostream& out) {
  const auto graph = load_target(TargetDescriptor::parse(target), mask);
  if (output.empty()) output = (fs::path(g.out_dir) / (file_tag(graph.descriptor().to_string()) + ".edges")).string();
  std::ostringstream buf;
  write_edge_list(buf, graph);
  write_file(output, buf.str());
  out << output << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase unwrapping as QUBO on Chimera/Pegasus embeddings with classical samplers", "qaunwrap"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
  app.add_option("--out-dir", g.out_dir, "Directory for generated files")->capture_default_str();
  app.add_option("--format", g.format, "Console output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  int height = 10, width = 10;
  std::string mask, output;

  auto* gen = app.add_subcommand("gen", "Generate synthetic scenes");
  double snr_db = 10.0, period = 18.0;
  bool noiseless = false;
  int count = 5;
  std::vector<std::uint64_t> seeds;
  gen->add_option("-H,--height", height)->capture_default_str();
  gen->add_option("-W,--width", width)->capture_default_str();
  gen->add_option("--snr-db", snr_db)->capture_default_str();
  gen->add_flag("--noiseless", noiseless, "Disable noise");
  gen->add_option("--period", period, "Perlin lattice period in pixels")->capture_default_str();
  gen->add_option("--count", count, "Scenes to generate from --seed upwards")->capture_default_str();
  gen->add_option("--seeds", seeds, "Explicit scene seeds");

  auto* embed = app.add_subcommand("embed", "Build or import an embedding and print its chain statistics");
  std::string scheme = "pegasus_native", import_path, target;
  embed->add_option("--scheme", scheme)->check(CLI::IsMember({"pegasus_native", "chimera_symmetric"}))->capture_default_str();
  embed->add_option("--import", import_path, "Analyse an existing embedding file instead");
  embed->add_option("--target", target, "pegasus:m[:full] or chimera:M[,N,L]");
  embed->add_option("-H,--height", height)->capture_default_str();
  embed->add_option("-W,--width", width)->capture_default_str();
  embed->add_option("--mask", mask, "File of qubit ids to remove");
  embed->add_option("-o,--output", output);

  auto* qubo = app.add_subcommand("qubo", "Write the QUBO of a scene");
  std::string scene_path;
  double anchor_weight = 1.0;
  qubo->add_option("--scene", scene_path)->required();
  qubo->add_option("--anchor-weight", anchor_weight)->capture_default_str();
  qubo->add_option("-o,--output", output);

  auto* solve = app.add_subcommand("solve", "Unwrap a scene through an embedding with simulated annealing");
  std::string embedding_path, samples_path;
  SolveOptions options;
  double beta_start = 0.0, beta_end = 0.0, chain_strength = 0.0;
  bool timing = false;
  solve->add_option("--scene", scene_path)->required();
  solve->add_option("--embedding", embedding_path)->required();
  solve->add_option("--reads", options.anneal.reads)->capture_default_str();
  solve->add_option("--sweeps", options.anneal.sweeps)->capture_default_str();
  auto* bs = solve->add_option("--beta-start", beta_start);
  auto* be = solve->add_option("--beta-end", beta_end);
  auto* cs = solve->add_option("--chain-strength", chain_strength, "Default: 2 x max |coefficient|");
  solve->add_option("--threads", options.anneal.threads, "0 = all cores; results do not depend on it");
  solve->add_option("--anchor-weight", options.anchor_weight)->capture_default_str();
  solve->add_option("--mask", mask);
  solve->add_flag("--timing", timing, "Record wall-clock duration in the run record");
  solve->add_option("-o,--output", output);
  solve->add_option("--samples", samples_path, "Also write the chosen logical state as a sample set");

  auto* report = app.add_subcommand("report", "Aggregate run records into an accuracy table");
  std::vector<std::string> record_paths;
  report->add_option("records", record_paths)->required();
  report->add_option("-o,--output", output);

  auto* validate = app.add_subcommand("validate", "Check an embedding file against its target");
  validate->add_option("--embedding", embedding_path)->required();
  validate->add_option("--mask", mask);

  auto* stats = app.add_subcommand("stats", "Chain statistics of an embedding file");
  stats->add_option("--embedding", embedding_path)->required();

  auto* graph = app.add_subcommand("graph", "Export a hardware graph as an edge list");
  graph->add_option("--target", target)->required();
  graph->add_option("--mask", mask);
  graph->add_option("-o,--output", output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(g, height, width, snr_db, noiseless, period, count, seeds, out);
    if (*embed) return cmd_embed(g, scheme, import_path, target, height, width, mask, output, out, err);
    if (*qubo) return cmd_qubo(g, scene_path, anchor_weight, output, out);
    if (*solve) {
      if (*bs) options.anneal.beta_start = beta_start;
      if (*be) options.anneal.beta_end = beta_end;
      if (*cs) options.chain_strength = chain_strength;
      return cmd_solve(g, scene_path, embedding_path, mask, options, timing, output, samples_path, out);
    }
    if (*report) return cmd_report(g, record_paths, output, out);
    if (*validate) return cmd_validate(embedding_path, mask, out, err);
    if (*stats) return cmd_stats(g, embedding_path, out, err);
    if (*graph) return cmd_graph(g, target, mask, output, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  return kExitUsage;
}

}  // namespace qaunwrap
