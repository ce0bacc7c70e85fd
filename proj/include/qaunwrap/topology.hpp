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
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace qaunwrap {

using QubitId = std::int32_t;

enum class TopologyKind { chimera, pegasus };

/// Chimera coordinate (i, j, u, k): cell row, cell column, side (0 vertical /
/// left column, 1 horizontal / right column) and index within the side.
struct ChimeraCoord {
  int row = 0;
  int col = 0;
  int side = 0;
  int offset = 0;
  auto operator<=>(const ChimeraCoord&) const = default;
};

/// Pegasus coordinate (u, w, k, z): orientation, perpendicular major offset,
/// minor offset in [0, 12) and parallel offset in [0, m - 1).
struct PegasusCoord {
  int u = 0;
  int w = 0;
  int k = 0;
  int z = 0;
  auto operator<=>(const PegasusCoord&) const = default;
};

/// Coordinates of a qubit inside one of the K4,4 cells of a Pegasus graph:
/// shard t in {0,1,2}, cell row y, cell column x, side u and index k < 4.
struct NiceCoord {
  int t = 0;
  int y = 0;
  int x = 0;
  int u = 0;
  int k = 0;
  auto operator<=>(const NiceCoord&) const = default;
};

/// Shape of a hardware graph. Chimera uses (rows, cols, shore); Pegasus uses
/// (size, fabric_only).
struct TargetDescriptor {
  TopologyKind kind = TopologyKind::chimera;
  int rows = 0;
  int cols = 0;
  int shore = 0;
  int size = 0;
  bool fabric_only = true;

  static TargetDescriptor chimera(int rows, int cols, int shore);
  static TargetDescriptor pegasus(int size, bool fabric_only);

  /// Accepts "chimera:M", "chimera:M,N,L", "pegasus:m" and "pegasus:m:full".
  static TargetDescriptor parse(std::string_view text);

  /// Inverse of parse(); always emits the fully qualified form.
  std::string to_string() const;
  std::string kind_name() const;
  /// Shape token used in edge-list headers, e.g. "16,16,4" or "16:full".
  std::string shape_token() const;

  /// Size of the linear id space, including qubits removed from the fabric.
  std::size_t capacity() const;

  bool operator==(const TargetDescriptor&) const = default;
};

class TargetGraph;

TargetGraph build_chimera(int rows, int cols, int shore);
TargetGraph build_pegasus(int size, bool fabric_only);
TargetGraph build_target(const TargetDescriptor& desc);

/// Immutable hardware graph over linear qubit ids. Ids follow lexicographic
/// order over (i, j, u, k) for Chimera and (u, w, k, z) for Pegasus; qubits
/// missing from the node set (fabric trimming, yield mask) keep their ids.
class TargetGraph {
 public:
  const TargetDescriptor& descriptor() const noexcept { return desc_; }
  TopologyKind kind() const noexcept { return desc_.kind; }
  std::size_t capacity() const noexcept { return present_.size(); }

  std::size_t num_nodes() const noexcept { return nodes_.size(); }
  std::size_t num_edges() const noexcept { return adjacency_.size() / 2; }
  const std::vector<QubitId>& nodes() const noexcept { return nodes_; }
  std::vector<std::pair<QubitId, QubitId>> edges() const;

  bool contains(QubitId q) const noexcept {
    return q >= 0 && static_cast<std::size_t>(q) < present_.size() && present_[q];
  }
  /// Sorted, duplicate-free. Throws not_found for qubits outside the graph.
  std::span<const QubitId> neighbors(QubitId q) const;
  bool adjacent(QubitId a, QubitId b) const noexcept;
  std::size_t degree(QubitId q) const { return neighbors(q).size(); }
  std::size_t max_degree() const noexcept;

  /// Copy of this graph with the given qubits (and their couplers) removed.
  TargetGraph without_nodes(std::span<const QubitId> removed) const;

  // Coordinate conversions operate on the id space and do not require the
  // qubit to be present. Out-of-range input throws invalid_parameter.
  ChimeraCoord to_chimera(QubitId q) const;
  QubitId from_chimera(const ChimeraCoord& c) const;
  PegasusCoord to_pegasus(QubitId q) const;
  QubitId from_pegasus(const PegasusCoord& c) const;
  NiceCoord to_nice(QubitId q) const;
  QubitId from_nice(const NiceCoord& c) const;

 private:
  friend TargetGraph build_chimera(int, int, int);
  friend TargetGraph build_pegasus(int, bool);

  TargetGraph(TargetDescriptor desc, std::vector<std::uint8_t> present,
              std::vector<std::pair<QubitId, QubitId>> edges);

  void require_kind(TopologyKind kind, const char* what) const;

  TargetDescriptor desc_;
  std::vector<std::uint8_t> present_;
  std::vector<std::size_t> row_start_;
  std::vector<QubitId> adjacency_;
  std::vector<QubitId> nodes_;
};

/// Offsets of the qubit segments in the 12m x 12m grid model of Pegasus.
inline constexpr std::array<int, 12> kPegasusVerticalOffsets = {2, 2, 2, 2, 10, 10, 10, 10, 6, 6, 6, 6};
inline constexpr std::array<int, 12> kPegasusHorizontalOffsets = {6, 6, 6, 6, 2, 2, 2, 2, 10, 10, 10, 10};

/// A qubit in the grid model: vertical qubits occupy column `line` over rows
/// [start, start + 12), horizontal qubits occupy row `line` over columns
/// [start, start + 12).
struct PegasusSegment {
  int u = 0;
  int line = 0;
  int start = 0;
};

PegasusSegment pegasus_segment(const PegasusCoord& c);

/// Shifts a qubit by (dx, dy) grid units. Returns nullopt when the shift is
/// not a symmetry of the lattice for this qubit or leaves the id space.
std::optional<PegasusCoord> pegasus_translate(const PegasusCoord& c, int dx, int dy, int size);

/// Internal-coupler rule: a vertical and a horizontal qubit are coupled iff
/// their segments cross.
bool pegasus_segments_cross(const PegasusCoord& a, const PegasusCoord& b);

// Pure coordinate maps between Pegasus and nice coordinates (size independent).
PegasusCoord nice_to_pegasus(const NiceCoord& n);
NiceCoord pegasus_to_nice(const PegasusCoord& p);

struct NiceCell {
  int t = 0;
  int y = 0;
  int x = 0;
  /// Side-0 qubits first (k = 0..3), then side-1 qubits.
  std::array<QubitId, 8> qubits{};
};

/// All 3 (m - 1)^2 K4,4 cells of a Pegasus graph, ordered by (t, y, x).
std::vector<NiceCell> enumerate_nice_cells(const TargetGraph& g);

/// True when every side-0 qubit is coupled to every side-1 qubit. Pegasus odd
/// couplers inside a side are tolerated.
bool induces_k44(const TargetGraph& g, std::span<const QubitId, 8> qubits);

enum class CoordScheme { linear, standard, nice };
using AnyCoord = std::variant<QubitId, ChimeraCoord, PegasusCoord, NiceCoord>;

/// Converts any coordinate of a qubit in `g` into the requested scheme.
/// "standard" means Chimera (i,j,u,k) or Pegasus (u,w,k,z) depending on g.
AnyCoord coord_convert(const TargetGraph& g, const AnyCoord& coord, CoordScheme scheme);

// Edge-list interchange: header "kind shape nodecount", then "u v" per line.
void write_edge_list(std::ostream& out, const TargetGraph& g);

struct EdgeListFile {
  TargetDescriptor descriptor;
  std::size_t node_count = 0;
  std::vector<std::pair<QubitId, QubitId>> edges;
};
EdgeListFile read_edge_list(std::istream& in);

/// One linear id per line; blank lines and '#' comments are ignored.
std::vector<QubitId> read_node_mask(std::istream& in);

}  // namespace qaunwrap
