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

#include "qaunwrap/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <queue>

#include <json.hpp>

namespace qaunwrap {

using json = nlohmann::ordered_json;

std::size_t Embedding::num_qubits() const {
  std::size_t n = 0;
  for (const auto& c : chains) n += c.size();
  return n;
}

ChainStats chain_stats(const Embedding& e) {
  if (e.chains.empty()) throw Error(ErrorKind::invalid_input, "chain statistics of an empty embedding");
  const double n = static_cast<double>(e.chains.size());
  ChainStats s;
  double total = 0.0;
  std::size_t ones = 0;
  for (const auto& c : e.chains) {
    total += static_cast<double>(c.size());
    s.max = std::max(s.max, c.size());
    if (c.size() == 1) ++ones;
  }
  s.avg = total / n;
  double var = 0.0;
  for (const auto& c : e.chains) {
    const double d = static_cast<double>(c.size()) - s.avg;
    var += d * d;
  }
  s.std = std::sqrt(var / n);
  s.rclo = static_cast<double>(ones) / n;
  return s;
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::chain_count: return "chain_count";
    case ViolationKind::empty_chain: return "empty_chain";
    case ViolationKind::unknown_qubit: return "unknown_qubit";
    case ViolationKind::overlap: return "overlap";
    case ViolationKind::disconnected: return "disconnected";
    case ViolationKind::uncovered_edge: return "uncovered_edge";
  }
  return "unknown";
}

std::size_t ValidationReport::count(ViolationKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; }));
}

ValidationReport validate_embedding(const ProblemGraph& pg, const TargetGraph& g, const Embedding& e) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::string details) { report.violations.push_back({kind, std::move(details)}); };

  if (e.chains.size() != pg.num_nodes()) {
    add(ViolationKind::chain_count,
        "embedding has " + std::to_string(e.chains.size()) + " chains, problem has " +
            std::to_string(pg.num_nodes()) + " variables");
    return report;
  }

  std::vector<Chain> sorted(e.chains.size());
  std::vector<VarId> owner(g.capacity(), -1);
  for (std::size_t v = 0; v < e.chains.size(); ++v) {
    const auto& chain = e.chains[v];
    if (chain.empty()) add(ViolationKind::empty_chain, "variable " + std::to_string(v) + " has an empty chain");
    for (QubitId q : chain) {
      if (!g.contains(q)) {
        add(ViolationKind::unknown_qubit,
            "variable " + std::to_string(v) + " uses qubit " + std::to_string(q) + " which is not in the target");
        continue;
      }
      if (owner[q] >= 0) {
        add(ViolationKind::overlap, "qubit " + std::to_string(q) + " is shared by variables " +
                                        std::to_string(owner[q]) + " and " + std::to_string(v));
        continue;
      }
      owner[q] = static_cast<VarId>(v);
      sorted[v].push_back(q);
    }
    std::sort(sorted[v].begin(), sorted[v].end());
    sorted[v].erase(std::unique(sorted[v].begin(), sorted[v].end()), sorted[v].end());
  }

  for (std::size_t v = 0; v < sorted.size(); ++v) {
    const auto& chain = sorted[v];
    if (chain.size() < 2) continue;
    std::vector<char> seen(chain.size(), 0);
    std::queue<std::size_t> frontier;
    frontier.push(0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!frontier.empty()) {
      const QubitId q = chain[frontier.front()];
      frontier.pop();
      for (QubitId nb : g.neighbors(q)) {
        auto it = std::lower_bound(chain.begin(), chain.end(), nb);
        if (it == chain.end() || *it != nb) continue;
        const auto idx = static_cast<std::size_t>(it - chain.begin());
        if (!seen[idx]) {
          seen[idx] = 1;
          ++reached;
          frontier.push(idx);
        }
      }
    }
    if (reached != chain.size())
      add(ViolationKind::disconnected, "chain of variable " + std::to_string(v) + " splits into disconnected parts");
  }

  for (const auto& [a, b] : pg.edges()) {
    const auto& target = sorted[b];
    bool covered = false;
    for (QubitId q : sorted[a]) {
      for (QubitId nb : g.neighbors(q)) {
        if (std::binary_search(target.begin(), target.end(), nb)) {
          covered = true;
          break;
        }
      }
      if (covered) break;
    }
    if (!covered)
      add(ViolationKind::uncovered_edge,
          "no coupler between chains of variables " + std::to_string(a) + " and " + std::to_string(b));
  }
  return report;
}

Embedding chimera_symmetric(int height, int width, const TargetGraph& g) {
  const auto& d = g.descriptor();
  if (d.kind != TopologyKind::chimera) throw Error(ErrorKind::invalid_parameter, "chimera_symmetric needs a chimera target");
  if (d.shore != 4) throw Error(ErrorKind::invalid_parameter, "chimera_symmetric needs shore size 4");
  if (height < 1 || width < 1) throw Error(ErrorKind::invalid_parameter, "image dimensions must be >= 1");
  if (height > d.rows || width > d.cols)
    throw Error(ErrorKind::capacity, "image " + std::to_string(height) + "x" + std::to_string(width) +
                                         " exceeds the " + std::to_string(d.rows) + "x" + std::to_string(d.cols) +
                                         " cell lattice");
  // {LSB rows, MSB rows} for cells of type A ((i + j) even) and type B.
  static constexpr std::array<std::array<std::array<int, 2>, 2>, 2> kRows = {{
      {{{0, 3}, {1, 2}}},
      {{{1, 3}, {0, 2}}},
  }};
  Embedding e;
  e.scheme = "chimera_symmetric";
  e.target = d;
  e.height = height;
  e.width = width;
  e.chains.resize(static_cast<std::size_t>(height) * width * 2);
  for (int i = 0; i < height; ++i) {
    for (int j = 0; j < width; ++j) {
      const auto& type = kRows[(i + j) % 2];
      for (int bit = 0; bit < 2; ++bit) {
        Chain chain;
        for (int row : type[bit])
          for (int side = 0; side < 2; ++side) chain.push_back(g.from_chimera({i, j, side, row}));
        std::sort(chain.begin(), chain.end());
        e.chains[bitvar_id({i, j, bit}, width)] = std::move(chain);
      }
    }
  }
  return e;
}

// ---------------------------------------------------------------------------
// Interchange

namespace {

json target_to_json(const TargetDescriptor& d) {
  json t;
  t["kind"] = d.kind_name();
  if (d.kind == TopologyKind::chimera) {
    t["shape"] = json::array({d.rows, d.cols, d.shore});
  } else {
    t["shape"] = json::array({d.size});
    t["fabric_only"] = d.fabric_only;
  }
  return t;
}

TargetDescriptor target_from_json(const json& t) {
  const auto kind = t.at("kind").get<std::string>();
  const auto shape = t.at("shape").get<std::vector<int>>();
  if (kind == "chimera") {
    if (shape.size() != 3) throw Error(ErrorKind::schema, "chimera shape must have 3 entries");
    return TargetDescriptor::chimera(shape[0], shape[1], shape[2]);
  }
  if (kind == "pegasus") {
    if (shape.size() != 1) throw Error(ErrorKind::schema, "pegasus shape must have 1 entry");
    return TargetDescriptor::pegasus(shape[0], t.value("fabric_only", true));
  }
  throw Error(ErrorKind::schema, "unknown target kind '" + kind + "'");
}

}  // namespace

void write_embedding(std::ostream& out, const Embedding& e) {
  json j;
  j["target"] = target_to_json(e.target);
  if (!e.scheme.empty()) j["scheme"] = e.scheme;
  j["H"] = e.height;
  j["W"] = e.width;
  json chains = json::object();
  for (std::size_t v = 0; v < e.chains.size(); ++v) {
    Chain c = e.chains[v];
    std::sort(c.begin(), c.end());
    chains[std::to_string(v)] = c;
  }
  j["chains"] = std::move(chains);
  if (!e.chains.empty()) {
    const auto s = chain_stats(e);
    j["stats"] = {{"avg", s.avg}, {"std", s.std}, {"rclo", s.rclo}, {"max", s.max}};
  }
  out << j.dump(1) << '\n';
}

Embedding read_embedding(std::istream& in, std::optional<ChainStats>* stored_stats) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::schema, std::string("embedding file is not valid JSON: ") + ex.what());
  }
  try {
    Embedding e;
    try {
      e.target = target_from_json(j.at("target"));
    } catch (const Error& ex) {
      throw Error(ErrorKind::schema, ex.what());
    }
    e.scheme = j.value("scheme", std::string{});
    e.height = j.at("H").get<int>();
    e.width = j.at("W").get<int>();
    if (e.height < 1 || e.width < 1) throw Error(ErrorKind::schema, "embedding H and W must be >= 1");
    const std::size_t n = static_cast<std::size_t>(e.height) * e.width * 2;
    const auto cap = static_cast<QubitId>(e.target.capacity());
    e.chains.assign(n, {});
    std::vector<char> seen(n, 0);
    for (const auto& [key, value] : j.at("chains").items()) {
      std::size_t pos = 0;
      long id = -1;
      try {
        id = std::stol(key, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != key.size() || id < 0 || static_cast<std::size_t>(id) >= n)
        throw Error(ErrorKind::schema, "chain key '" + key + "' is not a variable id in [0, " + std::to_string(n) + ")");
      if (seen[id]) throw Error(ErrorKind::schema, "duplicate chain for variable " + key);
      seen[id] = 1;
      auto chain = value.get<Chain>();
      for (QubitId q : chain)
        if (q < 0 || q >= cap)
          throw Error(ErrorKind::schema, "qubit id " + std::to_string(q) + " out of range for " + e.target.to_string());
      e.chains[id] = std::move(chain);
    }
    for (std::size_t v = 0; v < n; ++v)
      if (!seen[v]) throw Error(ErrorKind::schema, "missing chain for variable " + std::to_string(v));
    if (stored_stats) {
      stored_stats->reset();
      if (j.contains("stats")) {
        const auto& s = j["stats"];
        *stored_stats = ChainStats{s.at("avg").get<double>(), s.at("std").get<double>(), s.at("rclo").get<double>(),
                                   s.at("max").get<std::size_t>()};
      }
    }
    return e;
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::schema, std::string("malformed embedding file: ") + ex.what());
  }
}

std::string report_to_json(const ValidationReport& report) {
  json list = json::array();
  for (const auto& v : report.violations) list.push_back({{"kind", to_string(v.kind)}, {"details", v.details}});
  return list.dump(1);
}

}  // namespace qaunwrap
