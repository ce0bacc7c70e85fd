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

#include "qaunwrap/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <thread>

#include <json.hpp>

namespace qaunwrap {

namespace {

// Compressed adjacency of the quadratic terms.
struct Couplings {
  std::vector<std::size_t> start;
  std::vector<VarId> other;
  std::vector<double> weight;

  explicit Couplings(const Qubo& q) {
    const std::size_t n = q.size();
    std::vector<std::size_t> deg(n, 0);
    for (const auto& [key, b] : q.quadratic_terms()) {
      ++deg[key.first];
      ++deg[key.second];
    }
    start.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) start[i + 1] = start[i] + deg[i];
    other.resize(start[n]);
    weight.resize(start[n]);
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (const auto& [key, b] : q.quadratic_terms()) {
      other[fill[key.first]] = key.second;
      weight[fill[key.first]++] = b;
      other[fill[key.second]] = key.first;
      weight[fill[key.second]++] = b;
    }
  }
};

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(rng()) * n) >> 64);
}

std::mt19937_64 read_engine(std::uint64_t seed, std::uint64_t read) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(read), static_cast<std::uint32_t>(read >> 32)};
  return std::mt19937_64(seq);
}

Bits anneal_once(const Qubo& q, const Couplings& adj, const BetaSchedule& schedule, std::size_t sweeps,
                 std::mt19937_64& rng) {
  const std::size_t n = q.size();
  Bits x(n);
  for (auto& b : x) b = static_cast<std::uint8_t>(rng() >> 63);

  std::vector<double> field(q.linear_terms());
  for (std::size_t i = 0; i < n; ++i)
    if (x[i])
      for (std::size_t e = adj.start[i]; e < adj.start[i + 1]; ++e) field[adj.other[e]] += adj.weight[e];

  double energy = q.energy(x);
  double best_energy = energy;
  Bits best = x;
  std::vector<VarId> order(n);
  std::iota(order.begin(), order.end(), 0);

  const double ratio = sweeps > 1 ? std::pow(schedule.end / schedule.start, 1.0 / double(sweeps - 1)) : 1.0;
  double beta = sweeps > 1 ? schedule.start : schedule.end;
  for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[bounded(rng, i)]);
    for (VarId v : order) {
      const double delta = x[v] ? -field[v] : field[v];
      if (delta > 0.0) {
        const double cost = beta * delta;
        // exp(-40) is below the resolution of uniform01.
        if (cost > 40.0 || uniform01(rng) >= std::exp(-cost)) continue;
      }
      x[v] ^= 1;
      const double sign = x[v] ? 1.0 : -1.0;
      const auto* w = adj.weight.data();
      const auto* o = adj.other.data();
      for (std::size_t e = adj.start[v], end = adj.start[v + 1]; e < end; ++e) field[o[e]] += sign * w[e];
      energy += delta;
    }
    if (energy < best_energy) {
      best_energy = energy;
      best = x;
    }
    beta *= ratio;
  }
  return best;
}

SampleSet collect(std::map<Bits, std::size_t> counts, const Qubo& q, SampleSetMeta meta) {
  SampleSet out;
  out.meta = meta;
  for (auto& [x, count] : counts) out.samples.push_back({x, q.energy(x), count});
  std::sort(out.samples.begin(), out.samples.end(), [](const Sample& a, const Sample& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.x < b.x;
  });
  return out;
}

}  // namespace

const Sample& SampleSet::best() const {
  if (samples.empty()) throw Error(ErrorKind::invalid_input, "empty sample set");
  return samples.front();
}

std::size_t SampleSet::total_count() const {
  std::size_t n = 0;
  for (const auto& s : samples) n += s.count;
  return n;
}

SampleSet make_sample_set(std::vector<Bits> states, const Qubo& q, SampleSetMeta meta) {
  std::map<Bits, std::size_t> counts;
  for (auto& x : states) ++counts[std::move(x)];
  return collect(std::move(counts), q, meta);
}

BetaSchedule resolve_schedule(const Qubo& q, const AnnealParams& p) {
  double hi = q.max_abs_coefficient();
  double lo = q.min_abs_nonzero_coefficient();
  if (hi == 0.0) hi = lo = 1.0;
  BetaSchedule s{p.beta_start.value_or(0.1 / hi), p.beta_end.value_or(10.0 / lo)};
  if (!(s.start > 0.0) || !(s.end > 0.0) || !(s.start < s.end))
    throw Error(ErrorKind::invalid_parameter, "inverse temperatures must satisfy 0 < beta_start < beta_end");
  return s;
}

SampleSet simulated_anneal(const Qubo& q, const AnnealParams& p) {
  if (q.size() == 0) throw Error(ErrorKind::invalid_input, "cannot anneal an empty QUBO");
  if (p.reads < 1 || p.sweeps < 1) throw Error(ErrorKind::invalid_parameter, "reads and sweeps must be >= 1");
  const auto schedule = resolve_schedule(q, p);
  const Couplings adj(q);

  std::vector<Bits> results(p.reads);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < p.reads; r = next++) {
      auto rng = read_engine(p.seed, r);
      results[r] = anneal_once(q, adj, schedule, p.sweeps, rng);
    }
  };
  unsigned threads = p.threads ? p.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, p.reads));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return make_sample_set(std::move(results), q, {p.seed, p.reads, p.sweeps});
}

BruteForceResult brute_force(const Qubo& q) {
  const std::size_t n = q.size();
  if (n > kBruteForceMaxVars)
    throw Error(ErrorKind::capacity, "brute force supports at most " + std::to_string(kBruteForceMaxVars) +
                                         " variables, got " + std::to_string(n));
  const Couplings adj(q);
  // Gray-code walk: bit b of the code is variable n - 1 - b, so comparing codes
  // compares states lexicographically with x[0] most significant.
  auto walk = [&](auto&& visit) {
    std::vector<double> field(q.linear_terms());
    Bits x(n, 0);
    double energy = q.offset();
    visit(std::uint64_t{0}, energy);
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t i = 1; i < total; ++i) {
      const auto b = static_cast<std::size_t>(std::countr_zero(i));
      const auto v = static_cast<VarId>(n - 1 - b);
      energy += x[v] ? -field[v] : field[v];
      x[v] ^= 1;
      const double sign = x[v] ? 1.0 : -1.0;
      for (std::size_t e = adj.start[v]; e < adj.start[v + 1]; ++e) field[adj.other[e]] += sign * adj.weight[e];
      visit(i ^ (i >> 1), energy);
    }
  };

  double min_energy = INFINITY;
  walk([&](std::uint64_t, double e) { min_energy = std::min(min_energy, e); });
  const double tol = 1e-9 * std::max(1.0, std::abs(min_energy));
  BruteForceResult result;
  std::uint64_t best_code = ~std::uint64_t{0};
  walk([&](std::uint64_t code, double e) {
    if (e <= min_energy + tol) {
      ++result.degeneracy;
      best_code = std::min(best_code, code);
    }
  });
  result.x.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v) result.x[v] = static_cast<std::uint8_t>((best_code >> (n - 1 - v)) & 1);
  result.energy = q.energy(result.x);
  return result;
}

// ---------------------------------------------------------------------------
// Chains

double auto_chain_strength(const Qubo& logical) { return 2.0 * logical.max_abs_coefficient(); }

ChainedQubo embed_qubo(const Qubo& logical, const Embedding& e, const TargetGraph& g,
                       std::optional<double> chain_strength) {
  const std::size_t n = logical.size();
  if (e.chains.size() != n)
    throw Error(ErrorKind::validation, "embedding has " + std::to_string(e.chains.size()) + " chains for " +
                                           std::to_string(n) + " variables");
  const double strength = chain_strength.value_or(auto_chain_strength(logical));
  if (!(strength > 0.0)) throw Error(ErrorKind::invalid_parameter, "chain strength must be positive");

  ChainedQubo cq;
  cq.chain_strength = strength;
  std::vector<VarId> owner(g.capacity(), -1);
  for (std::size_t v = 0; v < n; ++v) {
    if (e.chains[v].empty()) throw Error(ErrorKind::validation, "variable " + std::to_string(v) + " has an empty chain");
    for (QubitId q : e.chains[v]) {
      if (!g.contains(q)) throw Error(ErrorKind::validation, "qubit " + std::to_string(q) + " is not in the target");
      if (owner[q] >= 0) throw Error(ErrorKind::validation, "qubit " + std::to_string(q) + " is in two chains");
      owner[q] = static_cast<VarId>(v);
      cq.qubits.push_back(q);
    }
  }
  std::sort(cq.qubits.begin(), cq.qubits.end());
  auto compact = [&](QubitId q) {
    return static_cast<VarId>(std::lower_bound(cq.qubits.begin(), cq.qubits.end(), q) - cq.qubits.begin());
  };
  cq.chains.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (QubitId q : e.chains[v]) cq.chains[v].push_back(compact(q));
    std::sort(cq.chains[v].begin(), cq.chains[v].end());
  }

  Qubo& out = cq.qubo = Qubo(cq.qubits.size());
  out.add_offset(logical.offset());
  for (std::size_t v = 0; v < n; ++v) {
    const double share = logical.linear_terms()[v] / double(e.chains[v].size());
    if (share != 0.0)
      for (VarId c : cq.chains[v]) out.add_linear(c, share);
  }
  for (const auto& [key, b] : logical.quadratic_terms()) {
    std::vector<std::pair<VarId, VarId>> couplers;
    for (QubitId p : e.chains[key.first])
      for (QubitId nb : g.neighbors(p))
        if (owner[nb] == key.second) couplers.emplace_back(compact(p), compact(nb));
    if (couplers.empty())
      throw Error(ErrorKind::validation, "no coupler between chains of variables " + std::to_string(key.first) +
                                             " and " + std::to_string(key.second));
    const double share = b / double(couplers.size());
    for (auto [p, r] : couplers) out.add_quadratic(p, r, share);
  }
  for (std::size_t v = 0; v < n; ++v) {
    const auto& chain = e.chains[v];
    for (QubitId p : chain)
      for (QubitId nb : g.neighbors(p))
        if (p < nb && owner[nb] == static_cast<VarId>(v)) cq.chain_couplers.emplace_back(compact(p), compact(nb));
  }
  std::sort(cq.chain_couplers.begin(), cq.chain_couplers.end());
  for (auto [p, r] : cq.chain_couplers) {
    out.add_linear(p, strength);
    out.add_linear(r, strength);
    out.add_quadratic(p, r, -2.0 * strength);
  }
  out.prune();
  return cq;
}

Bits spread_to_chains(std::span<const std::uint8_t> logical, const ChainedQubo& cq) {
  if (logical.size() != cq.chains.size()) throw Error(ErrorKind::dimension_mismatch, "logical state length mismatch");
  Bits x(cq.qubits.size(), 0);
  for (std::size_t v = 0; v < cq.chains.size(); ++v)
    for (VarId c : cq.chains[v]) x[c] = logical[v];
  return x;
}

UnembedResult unembed(const SampleSet& target, const ChainedQubo& cq, const Qubo& logical) {
  if (cq.chains.size() != logical.size())
    throw Error(ErrorKind::dimension_mismatch, "embedding and logical QUBO differ in variable count");
  UnembedResult result;
  std::map<Bits, std::size_t> counts;
  double broken_weighted = 0.0;
  std::size_t reads = 0;
  for (const auto& s : target.samples) {
    if (s.x.size() != cq.qubits.size())
      throw Error(ErrorKind::dimension_mismatch, "sample has " + std::to_string(s.x.size()) + " bits, embedding uses " +
                                                     std::to_string(cq.qubits.size()) + " qubits");
    Bits x(cq.chains.size(), 0);
    std::size_t broken = 0;
    for (std::size_t v = 0; v < cq.chains.size(); ++v) {
      std::size_t ones = 0;
      for (VarId c : cq.chains[v]) ones += s.x[c];
      const std::size_t len = cq.chains[v].size();
      x[v] = 2 * ones > len ? 1 : 0;
      if (ones != 0 && ones != len) ++broken;
    }
    counts[std::move(x)] += s.count;
    if (!cq.chains.empty()) broken_weighted += double(s.count) * double(broken) / double(cq.chains.size());
    reads += s.count;
  }
  result.chain_break_fraction = reads ? broken_weighted / double(reads) : 0.0;
  result.samples = collect(std::move(counts), logical, target.meta);
  return result;
}

// ---------------------------------------------------------------------------
// Interchange

void write_sample_set(std::ostream& out, const SampleSet& s) {
  nlohmann::ordered_json j;
  j["meta"] = {{"seed", s.meta.seed}, {"reads", s.meta.reads}, {"sweeps", s.meta.sweeps}};
  auto samples = nlohmann::ordered_json::array();
  for (const auto& sample : s.samples) {
    std::string bits(sample.x.size(), '0');
    for (std::size_t i = 0; i < sample.x.size(); ++i) bits[i] = sample.x[i] ? '1' : '0';
    samples.push_back({{"x", bits}, {"energy", sample.energy}, {"count", sample.count}});
  }
  j["samples"] = std::move(samples);
  out << j.dump(1) << '\n';
}

SampleSet read_sample_set(std::istream& in) {
  try {
    const auto j = nlohmann::json::parse(in);
    SampleSet s;
    const auto& meta = j.at("meta");
    s.meta = {meta.at("seed").get<std::uint64_t>(), meta.at("reads").get<std::size_t>(),
              meta.at("sweeps").get<std::size_t>()};
    for (const auto& item : j.at("samples")) {
      Sample sample;
      for (char c : item.at("x").get<std::string>()) {
        if (c != '0' && c != '1') throw Error(ErrorKind::schema, "sample bit strings may contain only 0 and 1");
        sample.x.push_back(static_cast<std::uint8_t>(c - '0'));
      }
      sample.energy = item.at("energy").get<double>();
      sample.count = item.at("count").get<std::size_t>();
      s.samples.push_back(std::move(sample));
    }
    return s;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::schema, std::string("malformed sample set: ") + ex.what());
  }
}

}  // namespace qaunwrap
