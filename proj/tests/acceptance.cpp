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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qaunwrap/commands.hpp"
#include "qaunwrap/embedding.hpp"
#include "qaunwrap/phase_model.hpp"
#include "qaunwrap/sampler.hpp"
#include "qaunwrap/scene.hpp"
#include "qaunwrap/topology.hpp"

using namespace qaunwrap;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(const char* id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (dt > limit_s) {
    o.pass = false;
    o.detail += " [runtime " + std::to_string(dt) + " s exceeds " + std::to_string(limit_s) + " s]";
  }
  if (!o.pass) ++failures;
  std::printf("%s %s: %s (%.2f s) %s\n", o.pass ? "PASS" : "FAIL", id, title, dt, o.detail.c_str());
  std::fflush(stdout);
}

const TargetGraph& pegasus16() {
  static const TargetGraph g = build_pegasus(16, true);
  return g;
}
const TargetGraph& chimera16() {
  static const TargetGraph g = build_chimera(16, 16, 4);
  return g;
}
const NativeTemplate& native_template() {
  static const NativeTemplate t = find_native_template(pegasus16());
  return t;
}

std::string scene_bytes(const Scene& s) {
  std::ostringstream o;
  write_scene(o, s);
  return o.str();
}
std::string record_bytes(const RunRecord& r) {
  std::ostringstream o;
  write_run_record(o, r);
  return o.str();
}

// Artifacts of criteria 4-6, concatenated, for the determinism check.
struct Artifacts {
  std::string ac4, ac5, ac6;
};

Outcome ac4(std::string* artifacts) {
  const auto& g = pegasus16();
  const auto emb = pegasus_native(10, 10, g, native_template());
  SolveOptions opt;
  opt.anneal.reads = 300;
  opt.anneal.sweeps = 1000;
  opt.anneal.beta_start = 0.2;
  double worst_ref = 0.0, worst_match = 1.0, worst_bf = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto scene = make_scene(10, 10, std::nullopt, 18.0, seed);
    const auto q = scene_qubo(scene, 1.0);
    worst_ref = std::max(worst_ref, std::abs(q.energy(bits_from_labels(scene.ref_labels))));
    opt.anneal.seed = 1000 + seed;
    const auto rec = solve_scene(scene, emb, g, opt);
    worst_match = std::min(worst_match, rec.matching_fraction);
    if (artifacts) *artifacts += scene_bytes(scene) + record_bytes(rec);

    const auto small = make_scene(2, 3, std::nullopt, 18.0, seed);
    const auto sq = scene_qubo(small, 1.0);
    const auto bf = brute_force(sq);
    worst_ref = std::max(worst_ref, std::abs(sq.energy(bits_from_labels(small.ref_labels))));
    worst_bf = std::max(worst_bf, std::abs(bf.energy));
    if (artifacts) *artifacts += scene_bytes(small);
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "max|E(ref)|=%.3g, max|brute-force optimum|=%.3g, min matching=%.3f", worst_ref,
                worst_bf, worst_match);
  return {worst_ref <= 1e-9 && worst_bf <= 1e-9 && worst_match == 1.0, buf};
}

Outcome ac5(std::string* artifacts) {
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto scene = make_scene(2, 3, 10.0, 18.0, seed);
    const auto q = scene_qubo(scene, 1.0);
    const auto bf = brute_force(q);
    AnnealParams p;
    p.reads = 1000;
    p.sweeps = 1000;
    p.seed = 500 + seed;
    const auto ss = simulated_anneal(q, p);
    if (ss.best().energy <= bf.energy + 1e-9) ++hits;
    if (artifacts) {
      std::ostringstream o;
      write_sample_set(o, ss);
      *artifacts += scene_bytes(scene) + o.str();
    }
  }
  return {hits >= 19, std::to_string(hits) + "/20 runs reach the exact optimum (need >= 19)"};
}

Outcome ac6(std::string* artifacts) {
  const auto& g = pegasus16();
  const auto emb = pegasus_native(10, 10, g, native_template());
  SolveOptions opt;
  std::vector<RunRecord> records;
  bool energy_ok = true;
  std::string per_scene;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto scene = make_scene(10, 10, 10.0, 18.0, seed);
    opt.anneal.seed = seed;
    auto rec = solve_scene(scene, emb, g, opt);
    rec.embedding_type = "pegasus_native";
    if (rec.best_energy > rec.reference_energy + 1e-9) energy_ok = false;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s%llu:%.2f", per_scene.empty() ? "" : " ", static_cast<unsigned long long>(seed),
                  rec.matching_fraction);
    per_scene += buf;
    if (artifacts) *artifacts += scene_bytes(scene) + record_bytes(rec);
    records.push_back(std::move(rec));
  }
  const auto summary = summarize_runs(records);
  const double avg = summary.at(0).mean_percent / 100.0;
  char buf[96];
  std::snprintf(buf, sizeof buf, "average=%.3f (need >= 0.90), E(best)<=E(ref) on all scenes: %s; per scene ", avg,
                energy_ok ? "yes" : "no");
  return {avg >= 0.90 && energy_ok, buf + per_scene};
}

// Returns ids of qubits that are free and not adjacent to any used qubit.
std::vector<QubitId> isolated_free_qubits(const TargetGraph& g, const Embedding& e) {
  std::vector<char> used(g.capacity(), 0);
  for (const auto& c : e.chains)
    for (QubitId q : c) used[q] = 1;
  std::vector<QubitId> out;
  for (QubitId q : g.nodes()) {
    if (used[q]) continue;
    bool touches = false;
    for (QubitId n : g.neighbors(q)) touches |= used[n] != 0;
    if (!touches) out.push_back(q);
  }
  return out;
}

Outcome ac3() {
  int clean = 0, mutants = 0, detected = 0;
  std::string first_miss;
  for (int scheme = 0; scheme < 2; ++scheme) {
    const auto& g = scheme == 0 ? pegasus16() : chimera16();
    for (int h = 2; h <= 10; ++h) {
      for (int w = 2; w <= 10; ++w) {
        const ProblemGraph pg(h, w);
        const auto e = scheme == 0 ? pegasus_native(h, w, g, native_template()) : chimera_symmetric(h, w, g);
        if (validate_embedding(pg, g, e).ok()) ++clean;
        else if (first_miss.empty()) first_miss = "invalid clean embedding " + std::to_string(h) + "x" + std::to_string(w);
        const auto spare = isolated_free_qubits(g, e);
        if (spare.empty()) return {false, "no isolated spare qubit for mutation"};
        for (std::size_t v = 0; v < e.chains.size(); ++v) {
          const std::size_t other = (v + 1) % e.chains.size();
          std::vector<Embedding> muts(4, e);
          muts[0].chains[v].clear();
          muts[1].chains[v].push_back(e.chains[other].front());
          muts[2].chains[v].push_back(static_cast<QubitId>(g.capacity()) + 7);
          muts[3].chains[v] = {spare.front()};
          for (const auto& m : muts) {
            ++mutants;
            if (!validate_embedding(pg, g, m).ok()) ++detected;
            else if (first_miss.empty()) first_miss = "missed mutation of chain " + std::to_string(v);
          }
        }
      }
    }
  }
  return {clean == 162 && detected == mutants, std::to_string(clean) + "/162 clean embeddings valid, " +
                                                   std::to_string(detected) + "/" + std::to_string(mutants) +
                                                   " mutants detected " + first_miss};
}

Outcome ac8() {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  const auto& g = chimera16();
  long states = 0, mismatches = 0;
  // Images of 1x1 .. 2x3 give 2 .. 12 logical variables, chains of 4.
  const std::vector<std::pair<int, int>> shapes = {{1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}};
  for (auto [h, w] : shapes) {
    const auto e = chimera_symmetric(h, w, g);
    for (const auto& c : e.chains)
      if (c.size() != 4) return {false, "chain length is not 4"};
    const ProblemGraph pg(h, w);
    for (int trial = 0; trial < 3; ++trial) {
      Qubo q(pg.num_nodes());
      q.add_offset(coef(rng));
      for (std::size_t v = 0; v < pg.num_nodes(); ++v) q.add_linear(static_cast<VarId>(v), coef(rng));
      for (auto [a, b] : pg.edges()) q.add_quadratic(a, b, coef(rng));
      const auto cq = embed_qubo(q, e, g, 1.0 + 4.0 * trial);
      const std::size_t n = q.size();
      Bits x(n);
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<std::uint8_t>((m >> i) & 1u);
        const double lhs = cq.qubo.energy(spread_to_chains(x, cq));
        if (std::abs(lhs - q.energy(x)) > 1e-9) ++mismatches;
        ++states;
      }
    }
  }

  // Two-qubit chain on an otherwise empty problem: one broken coupler costs c.
  const auto& p = pegasus16();
  const QubitId a = p.nodes().front();
  const QubitId b = p.neighbors(a).front();
  Embedding two;
  two.target = p.descriptor();
  two.height = 1;
  two.width = 1;
  two.chains = {{a, b}};
  Qubo empty(1);
  const double c = 5.0;
  const auto cq = embed_qubo(empty, two, p, c);
  const Bits broken = {1, 0}, broken2 = {0, 1}, intact0 = {0, 0}, intact1 = {1, 1};
  const bool penalty_ok = cq.chain_couplers.size() == 1 && cq.qubo.energy(broken) == c &&
                          cq.qubo.energy(broken2) == c && cq.qubo.energy(intact0) == 0.0 &&
                          cq.qubo.energy(intact1) == 0.0;
  return {mismatches == 0 && penalty_ok, std::to_string(states - mismatches) + "/" + std::to_string(states) +
                                             " states contract exactly; broken 2-qubit chain costs " +
                                             std::to_string(cq.qubo.energy(broken)) + " for c=5"};
}

}  // namespace

int main() {
  run("AC1", "topology counts", 1.0, [] {
    const auto p = build_pegasus(16, true);
    const auto c = build_chimera(16, 16, 4);
    return Outcome{p.num_nodes() == 5640 && c.num_nodes() == 2048,
                   "pegasus(16, fabric)=" + std::to_string(p.num_nodes()) +
                       ", chimera(16,16,4)=" + std::to_string(c.num_nodes())};
  });
  run("AC2", "chain statistics for 10x10 embeddings", 1.0, [] {
    const auto pn = chain_stats(pegasus_native(10, 10, pegasus16(), native_template()));
    const auto cs = chain_stats(chimera_symmetric(10, 10, chimera16()));
    const bool ok = pn == ChainStats{1.0, 0.0, 1.0, 1} && cs == ChainStats{4.0, 0.0, 0.0, 4};
    return Outcome{ok, "pegasus_native " + chain_stats_csv(pn) + ", chimera_symmetric " + chain_stats_csv(cs)};
  });
  run("AC3", "embedding validity and mutation detection", 10.0, ac3);
  Artifacts first;
  run("AC4", "zero-residual optimality on noiseless scenes", 60.0, [&] { return ac4(&first.ac4); });
  run("AC5", "annealer matches brute force on 2x3 scenes", 120.0, [&] { return ac5(&first.ac5); });
  run("AC6", "10x10 native pipeline accuracy", 300.0, [&] { return ac6(&first.ac6); });
  run("AC7", "determinism of criteria 4-6", 600.0, [&] {
    Artifacts second;
    ac4(&second.ac4);
    ac5(&second.ac5);
    ac6(&second.ac6);
    const bool same = first.ac4 == second.ac4 && first.ac5 == second.ac5 && first.ac6 == second.ac6;
    return Outcome{same && !first.ac4.empty(), std::to_string(first.ac4.size() + first.ac5.size() + first.ac6.size()) +
                                                   " artifact bytes " + (same ? "identical" : "differ")};
  });
  run("AC8", "chain penalty and contraction identity", 30.0, ac8);
  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
