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

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "qaunwrap/error.hpp"

using namespace qaunwrap;

namespace {

const TargetGraph& p16() {
  static const TargetGraph g = build_pegasus(16, true);
  return g;
}
const TargetGraph& c16() {
  static const TargetGraph g = build_chimera(16, 16, 4);
  return g;
}
const NativeTemplate& tpl() {
  static const NativeTemplate t = find_native_template(p16());
  return t;
}

Embedding with_lengths(std::vector<std::size_t> lengths) {
  Embedding e;
  e.target = TargetDescriptor::pegasus(16, true);
  QubitId next = 0;
  for (auto n : lengths) {
    Chain c;
    for (std::size_t i = 0; i < n; ++i) c.push_back(next++);
    e.chains.push_back(c);
  }
  return e;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no exception";
  return ErrorKind::io;
}

}  // namespace

TEST(ChainStats, Formula) {
  const auto s = chain_stats(with_lengths({1, 1, 2, 4}));
  EXPECT_DOUBLE_EQ(s.avg, 2.0);
  EXPECT_NEAR(s.std, std::sqrt(1.5), 1e-12);
  EXPECT_NEAR(s.std, 1.2247, 1e-4);
  EXPECT_DOUBLE_EQ(s.rclo, 0.5);
  EXPECT_EQ(s.max, 4u);
  EXPECT_EQ(chain_stats(with_lengths({1, 1, 1})), (ChainStats{1.0, 0.0, 1.0, 1}));
  EXPECT_EQ(kind_of([] { chain_stats(Embedding{}); }), ErrorKind::invalid_input);
}

TEST(ChimeraSymmetric, Stats) {
  for (auto [h, w] : {std::pair{1, 1}, {3, 7}, {10, 10}})
    EXPECT_EQ(chain_stats(chimera_symmetric(h, w, c16())), (ChainStats{4.0, 0.0, 0.0, 4}));
}

TEST(ChimeraSymmetric, QubitEconomy) {
  const auto e = chimera_symmetric(10, 10, c16());
  EXPECT_EQ(e.num_qubits(), 800u);
  std::map<std::pair<int, int>, int> per_cell;
  for (const auto& c : e.chains)
    for (QubitId q : c) {
      const auto cc = c16().to_chimera(q);
      ++per_cell[{cc.row, cc.col}];
    }
  EXPECT_EQ(per_cell.size(), 100u);
  for (const auto& [cell, n] : per_cell) EXPECT_EQ(n, 8);
}

TEST(ChimeraSymmetric, ValidOnFourByFour) {
  const auto e = chimera_symmetric(4, 4, c16());
  EXPECT_TRUE(validate_embedding(ProblemGraph(4, 4), c16(), e).ok());
}

TEST(ChimeraSymmetric, Capacity) {
  EXPECT_EQ(kind_of([] { chimera_symmetric(17, 10, c16()); }), ErrorKind::capacity);
  EXPECT_EQ(kind_of([] { chimera_symmetric(4, 4, p16()); }), ErrorKind::invalid_parameter);
}

TEST(NativeTemplate, ChecksAndDeterminism) {
  const auto check = check_native_template(p16(), tpl());
  EXPECT_TRUE(check.ok());
  EXPECT_EQ(check.internal_edges, 20);
  EXPECT_EQ(check.right_edges, 8);
  EXPECT_EQ(check.down_edges, 8);
  EXPECT_EQ(check.cell_split, (std::vector<int>{6, 2}));
  EXPECT_EQ(find_native_template(p16()), tpl());
}

TEST(NativeTemplate, FrozenP16Template) {
  const std::array<PegasusCoord, 8> slots = {{{1, 8, 4, 7}, {1, 8, 5, 7}, {0, 7, 6, 7}, {0, 7, 7, 7},
                                              {0, 8, 0, 8}, {0, 8, 1, 8}, {1, 8, 6, 7}, {1, 8, 7, 7}}};
  EXPECT_EQ(tpl().slots, slots);
  EXPECT_EQ(tpl().right, (NativeTemplate::Shift{-4, 4}));
  EXPECT_EQ(tpl().down, (NativeTemplate::Shift{4, 8}));
}

TEST(NativeTemplate, SmallTargets) {
  EXPECT_EQ(kind_of([] { find_native_template(build_pegasus(3, true)); }), ErrorKind::invalid_parameter);
  EXPECT_EQ(kind_of([] { find_native_template(c16()); }), ErrorKind::invalid_parameter);
}

TEST(PegasusNative, TenByTen) {
  const auto e = pegasus_native(10, 10, p16(), tpl());
  EXPECT_EQ(e.num_qubits(), 200u);
  EXPECT_EQ(chain_stats(e), (ChainStats{1.0, 0.0, 1.0, 1}));
  EXPECT_TRUE(validate_embedding(ProblemGraph(10, 10), p16(), e).ok());
}

TEST(PegasusNative, SingleBlockIsTemplate) {
  const auto e = pegasus_native(2, 2, p16(), tpl());
  ASSERT_EQ(e.chains.size(), 8u);
  // Variable (r, c, q) of a 2x2 image and slot (r, c, q) share an index, so
  // one translation must carry every slot onto its chain.
  int matches = 0;
  for (int dy = -192; dy <= 192; ++dy) {
    for (int dx = -192; dx <= 192; ++dx) {
      bool all = true;
      for (int v = 0; v < 8 && all; ++v) {
        const auto moved = pegasus_translate(tpl().slots[v], dx, dy, 16);
        all = moved && p16().from_pegasus(*moved) == e.chains[v].front();
      }
      matches += all;
    }
  }
  EXPECT_EQ(matches, 1);
  EXPECT_EQ(e.num_qubits(), 8u);
}

TEST(PegasusNative, OddDimensions) {
  const auto e = pegasus_native(3, 3, p16(), tpl());
  EXPECT_EQ(e.num_qubits(), 18u);
  EXPECT_TRUE(validate_embedding(ProblemGraph(3, 3), p16(), e).ok());
}

TEST(PegasusNative, MaximumSquare) {
  EXPECT_EQ(pegasus_native_max_square(p16(), tpl()), 31);
  EXPECT_TRUE(validate_embedding(ProblemGraph(31, 31), p16(), pegasus_native(31, 31, p16(), tpl())).ok());
  EXPECT_EQ(kind_of([] { pegasus_native(32, 32, p16(), tpl()); }), ErrorKind::capacity);
}

TEST(PegasusNative, TranslatedBlocksShareShape) {
  const auto e = pegasus_native(4, 4, p16(), tpl());
  const ProblemGraph pg(4, 4);
  for (int q = 0; q < 2; ++q) {
    const auto a = p16().to_pegasus(e.chains[pg.var(0, 0, q)].front());
    const auto b = p16().to_pegasus(e.chains[pg.var(0, 2, q)].front());
    const auto moved = pegasus_translate(a, tpl().right.dx, tpl().right.dy, 16);
    ASSERT_TRUE(moved.has_value());
    EXPECT_EQ(*moved, b);
  }
}

TEST(Validate, Overlap) {
  auto e = chimera_symmetric(2, 2, c16());
  e.chains[1].push_back(e.chains[0].front());
  const auto r = validate_embedding(ProblemGraph(2, 2), c16(), e);
  EXPECT_GE(r.count(ViolationKind::overlap), 1u);
}

TEST(Validate, MovedChainLosesEdges) {
  auto e = pegasus_native(4, 4, p16(), tpl());
  std::set<QubitId> used;
  for (const auto& c : e.chains) used.insert(c.front());
  QubitId far = -1;
  for (QubitId q : p16().nodes()) {
    bool near = used.count(q) > 0;
    for (QubitId n : p16().neighbors(q)) near |= used.count(n) > 0;
    if (!near) {
      far = q;
      break;
    }
  }
  ASSERT_GE(far, 0);
  e.chains[5] = {far};
  EXPECT_GE(validate_embedding(ProblemGraph(4, 4), p16(), e).count(ViolationKind::uncovered_edge), 1u);
}

TEST(Validate, OtherViolations) {
  const ProblemGraph pg(1, 2);
  auto e = pegasus_native(1, 2, p16(), tpl());
  auto empty = e;
  empty.chains[2].clear();
  EXPECT_EQ(validate_embedding(pg, p16(), empty).count(ViolationKind::empty_chain), 1u);
  auto unknown = e;
  unknown.chains[0].push_back(999999);
  EXPECT_EQ(validate_embedding(pg, p16(), unknown).count(ViolationKind::unknown_qubit), 1u);
  auto short_list = e;
  short_list.chains.pop_back();
  EXPECT_GE(validate_embedding(pg, p16(), short_list).count(ViolationKind::chain_count), 1u);
}

TEST(EmbeddingIo, RoundTrip) {
  for (const auto& e : {pegasus_native(3, 4, p16(), tpl()), chimera_symmetric(2, 5, c16())}) {
    std::stringstream s;
    write_embedding(s, e);
    std::optional<ChainStats> stored;
    const auto back = read_embedding(s, &stored);
    EXPECT_EQ(back, e);
    ASSERT_TRUE(stored.has_value());
    EXPECT_EQ(*stored, chain_stats(e));
  }
}

TEST(EmbeddingIo, ForeignDisconnectedChain) {
  const auto g = build_chimera(2, 2, 4);
  // 0 and 1 sit on the same side of cell (0,0), so they are not coupled.
  ASSERT_FALSE(g.adjacent(0, 1));
  std::istringstream in(R"({"target": {"kind": "chimera", "shape": [2, 2, 4]}, "H": 1, "W": 1,
                             "chains": {"0": [0, 1], "1": [4]}})");
  const auto e = read_embedding(in);
  EXPECT_EQ(e.scheme, "");
  const auto r = validate_embedding(ProblemGraph(1, 1), g, e);
  EXPECT_EQ(r.count(ViolationKind::disconnected), 1u);
  EXPECT_NE(report_to_json(r).find("disconnected"), std::string::npos);
}

TEST(EmbeddingIo, SchemaErrors) {
  std::istringstream missing(R"({"target": {"kind": "chimera", "shape": [2, 2, 4]}, "H": 1, "W": 1,
                                  "chains": {"0": [0]}})");
  EXPECT_EQ(kind_of([&] { read_embedding(missing); }), ErrorKind::schema);
  std::istringstream bad_kind(R"({"target": {"kind": "zephyr", "shape": [2]}, "H": 1, "W": 1, "chains": {}})");
  EXPECT_EQ(kind_of([&] { read_embedding(bad_kind); }), ErrorKind::schema);
  std::istringstream bad_qubit(R"({"target": {"kind": "chimera", "shape": [1, 1, 4]}, "H": 1, "W": 1,
                                    "chains": {"0": [0], "1": [64]}})");
  EXPECT_EQ(kind_of([&] { read_embedding(bad_qubit); }), ErrorKind::schema);
  std::istringstream garbage("{");
  EXPECT_EQ(kind_of([&] { read_embedding(garbage); }), ErrorKind::schema);
}
