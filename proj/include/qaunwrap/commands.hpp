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

#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qaunwrap/embedding.hpp"
#include "qaunwrap/phase_model.hpp"
#include "qaunwrap/sampler.hpp"
#include "qaunwrap/scene.hpp"

namespace qaunwrap {

/// Process exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitValidation = 2,
  kExitCapacity = 3,
  kExitIo = 4,
};

int exit_code_for(ErrorKind kind);

/// Offsets from the scene's wrapped field, unit pair weights, and a unary
/// prior of weight `anchor_weight` pinning the reference pixel to its label.
/// anchor_weight = 0 leaves the cost invariant to a global label shift.
Qubo scene_qubo(const Scene& scene, double anchor_weight);

struct SolveOptions {
  AnnealParams anneal;
  std::optional<double> chain_strength;
  double anchor_weight = 1.0;
};

struct RunRecord {
  std::string scene_path;
  std::string embedding_path;
  std::string embedding_type;
  std::uint64_t scene_seed = 0;
  int height = 0;
  int width = 0;
  std::size_t reads = 0;
  std::size_t sweeps = 0;
  std::uint64_t seed = 0;
  double beta_start = 0.0;
  double beta_end = 0.0;
  double chain_strength = 0.0;
  double anchor_weight = 0.0;
  double best_energy = 0.0;
  double reference_energy = 0.0;
  double matching_fraction = 0.0;
  ChainStats chain_stats;
  double chain_break_fraction = 0.0;
  LabelField labels;
  /// Wall-clock seconds; only recorded on request so records stay reproducible.
  std::optional<double> duration_s;

  bool operator==(const RunRecord&) const = default;
};

/// "pegasus_native", "chimera_symmetric" or "imported:<name>".
std::string embedding_type_tag(const Embedding& e, const std::string& path);

/// offsets -> QUBO -> chains -> anneal -> majority vote -> labels -> accuracy.
/// Errors carry the failing stage in their message.
RunRecord solve_scene(const Scene& scene, const Embedding& embedding, const TargetGraph& target,
                      const SolveOptions& options);

void write_run_record(std::ostream& out, const RunRecord& r);
RunRecord read_run_record(std::istream& in);

struct EmbeddingSummary {
  std::string embedding_type;
  std::size_t runs = 0;
  /// Percentages (fraction x 100).
  double mean_percent = 0.0;
  double std_percent = 0.0;  // population standard deviation
  /// scene seed -> percentage.
  std::map<std::uint64_t, double> per_scene;
};

/// Groups records by embedding type, in order of first appearance.
std::vector<EmbeddingSummary> summarize_runs(const std::vector<RunRecord>& records);

/// Table layout: one row per scene, one column per embedding, then Average
/// and Std rows. Percentages carry one decimal.
void write_report_csv(std::ostream& out, const std::vector<EmbeddingSummary>& summary);
void write_report_json(std::ostream& out, const std::vector<EmbeddingSummary>& summary);

/// "avg,std,rclo,max" with six significant digits, e.g. "1,0,1,1".
std::string chain_stats_csv(const ChainStats& s);

/// Entry point of the qaunwrap tool. Subcommands: gen, embed, qubo, solve,
/// report, validate, stats, graph.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qaunwrap
