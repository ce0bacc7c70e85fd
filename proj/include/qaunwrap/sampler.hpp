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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qaunwrap/embedding.hpp"
#include "qaunwrap/phase_model.hpp"

namespace qaunwrap {

struct Sample {
  Bits x;
  double energy = 0.0;
  std::size_t count = 1;

  bool operator==(const Sample&) const = default;
};

struct SampleSetMeta {
  std::uint64_t seed = 0;
  std::size_t reads = 0;
  std::size_t sweeps = 0;

  bool operator==(const SampleSetMeta&) const = default;
};

/// Distinct states with multiplicities, sorted by (energy, state).
struct SampleSet {
  std::vector<Sample> samples;
  SampleSetMeta meta;

  const Sample& best() const;
  std::size_t total_count() const;
  bool operator==(const SampleSet&) const = default;
};

/// Merges duplicate states, re-evaluates energies against q and sorts.
SampleSet make_sample_set(std::vector<Bits> states, const Qubo& q, SampleSetMeta meta);

struct AnnealParams {
  std::size_t reads = 1000;
  std::size_t sweeps = 1000;
  /// Defaults derived from the coefficients when unset: 0.1 / max|c| and
  /// 10 / min nonzero |c|.
  std::optional<double> beta_start;
  std::optional<double> beta_end;
  std::uint64_t seed = 0;
  /// 0 picks the hardware concurrency. Results do not depend on it.
  unsigned threads = 0;
};

struct BetaSchedule {
  double start = 0.0;
  double end = 0.0;
};
BetaSchedule resolve_schedule(const Qubo& q, const AnnealParams& p);

/// Single-flip Metropolis annealing with a geometric inverse-temperature
/// schedule. Read r draws from its own generator seeded by (seed, r), so the
/// output is identical for any thread count. Each read reports the best state
/// it visited.
SampleSet simulated_anneal(const Qubo& q, const AnnealParams& p);

struct BruteForceResult {
  Bits x;
  double energy = 0.0;
  std::uint64_t degeneracy = 0;
};

inline constexpr std::size_t kBruteForceMaxVars = 26;

/// Exhaustive minimisation. States within 1e-9 of the minimum count as
/// degenerate; the returned state is the lexicographically smallest optimum
/// (x[0] most significant).
BruteForceResult brute_force(const Qubo& q);

/// QUBO over the qubits of an embedding with ferromagnetic chain penalties.
struct ChainedQubo {
  Qubo qubo;
  double chain_strength = 0.0;
  /// qubits[i] is the target qubit of compact variable i (ascending).
  std::vector<QubitId> qubits;
  /// Chains in compact variable indices, one per logical variable.
  std::vector<std::vector<VarId>> chains;
  /// Intra-chain couplers carrying a penalty, in compact indices.
  std::vector<std::pair<VarId, VarId>> chain_couplers;
};

/// Default chain strength: twice the largest absolute logical coefficient.
double auto_chain_strength(const Qubo& logical);

/// Spreads each linear bias evenly over its chain and each quadratic bias
/// evenly over every coupler joining the two chains, then adds
/// c (x_p + x_q - 2 x_p x_q) on every intra-chain coupler so that each broken
/// coupler costs exactly c.
ChainedQubo embed_qubo(const Qubo& logical, const Embedding& e, const TargetGraph& g,
                       std::optional<double> chain_strength = std::nullopt);

/// Expands a logical state onto the chains (every chain unanimous).
Bits spread_to_chains(std::span<const std::uint8_t> logical, const ChainedQubo& cq);

struct UnembedResult {
  SampleSet samples;
  /// Broken chains / total chains, averaged over reads.
  double chain_break_fraction = 0.0;
};

/// Majority vote per chain with ties resolved to 0; energies re-evaluated on
/// the logical QUBO.
UnembedResult unembed(const SampleSet& target, const ChainedQubo& cq, const Qubo& logical);

// JSON interchange: {meta: {seed, reads, sweeps}, samples: [{x, energy, count}]}
// with x written as a bit string.
void write_sample_set(std::ostream& out, const SampleSet& s);
SampleSet read_sample_set(std::istream& in);

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit engine draw.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace qaunwrap
