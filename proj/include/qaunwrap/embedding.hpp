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

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qaunwrap/phase_model.hpp"
#include "qaunwrap/topology.hpp"

namespace qaunwrap {

using Chain = std::vector<QubitId>;

/// Minor embedding of a ProblemGraph: chains[v] is the chain of bit variable v.
struct Embedding {
  TargetDescriptor target;
  int height = 0;
  int width = 0;
  std::vector<Chain> chains;
  /// Name of the scheme that produced the chains; empty when unknown.
  std::string scheme;

  std::size_t num_qubits() const;
  bool operator==(const Embedding&) const = default;
};

struct ChainStats {
  double avg = 0.0;
  double std = 0.0;  // population standard deviation
  double rclo = 0.0;
  std::size_t max = 0;

  bool operator==(const ChainStats&) const = default;
};

ChainStats chain_stats(const Embedding& e);

enum class ViolationKind {
  chain_count,
  empty_chain,
  unknown_qubit,
  overlap,
  disconnected,
  uncovered_edge,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string details;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  std::size_t count(ViolationKind kind) const;
};

/// Checks chain count, qubit membership, chain disjointness, chain
/// connectivity and coverage of every logical edge. Never throws on a bad
/// embedding; every problem is reported.
ValidationReport validate_embedding(const ProblemGraph& pg, const TargetGraph& g, const Embedding& e);

/// One pixel per Chimera cell. Cells alternate between two row layouts in a
/// checkerboard so that every neighbouring bit pair meets on an inter-cell
/// coupler; every chain has 4 qubits.
Embedding chimera_symmetric(int height, int width, const TargetGraph& g);

/// A 2x2 sub-image placed on 8 Pegasus qubits, plus the two lattice shifts
/// that tile it: `right` moves a block onto its right-hand neighbour and
/// `down` onto the block below.
struct NativeTemplate {
  struct Shift {
    int dx = 0;
    int dy = 0;
    bool operator==(const Shift&) const = default;
  };

  /// slots[(r * 2 + c) * 2 + q] holds bit q of block pixel (r, c).
  std::array<PegasusCoord, 8> slots{};
  Shift right;
  Shift down;

  bool operator==(const NativeTemplate&) const = default;
};

/// Number of logical edges a template must realise.
inline constexpr int kTemplateInternalEdges = 20;
inline constexpr int kTemplateBoundaryEdgesPerSide = 8;

struct TemplateCheck {
  int internal_edges = 0;
  int right_edges = 0;
  int down_edges = 0;
  bool disjoint_tiling = false;
  /// Slot counts per nice cell, largest first.
  std::vector<int> cell_split;

  bool ok() const noexcept {
    return internal_edges == kTemplateInternalEdges && right_edges == kTemplateBoundaryEdgesPerSide &&
           down_edges == kTemplateBoundaryEdgesPerSide && disjoint_tiling;
  }
};

/// Independent check of a template against the graph adjacency.
TemplateCheck check_native_template(const TargetGraph& g, const NativeTemplate& tpl);

/// Deterministic backtracking search for a chain-length-1 template around a
/// nice cell near the centre of g. Throws infeasible if none exists.
NativeTemplate find_native_template(const TargetGraph& g);

/// Tiles the template over the image. Throws capacity when the image does not
/// fit; the message reports the largest square image that does.
Embedding pegasus_native(int height, int width, const TargetGraph& g, const NativeTemplate& tpl);

/// Largest n such that an n x n image fits under pegasus_native.
int pegasus_native_max_square(const TargetGraph& g, const NativeTemplate& tpl);

// JSON interchange: {target: {kind, shape}, H, W, chains: {id: [qubits]}}.
// The optional "stats" object is written for reference and compared on read.
void write_embedding(std::ostream& out, const Embedding& e);
Embedding read_embedding(std::istream& in, std::optional<ChainStats>* stored_stats = nullptr);
std::string report_to_json(const ValidationReport& report);

}  // namespace qaunwrap
