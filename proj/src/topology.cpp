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

#include "qaunwrap/topology.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "qaunwrap/error.hpp"

namespace qaunwrap {

namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int floor_mod(int a, int b) { return a - floor_div(a, b) * b; }

int parse_int(std::string_view text, std::string_view context) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw Error(ErrorKind::invalid_parameter,
                "bad integer '" + std::string(text) + "' in " + std::string(context));
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    auto next = text.find(sep, pos);
    parts.push_back(text.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

}  // namespace

// ---------------------------------------------------------------------------
// TargetDescriptor

TargetDescriptor TargetDescriptor::chimera(int rows, int cols, int shore) {
  if (rows < 1 || cols < 1 || shore < 1)
    throw Error(ErrorKind::invalid_parameter, "chimera dimensions must be >= 1");
  TargetDescriptor d;
  d.kind = TopologyKind::chimera;
  d.rows = rows;
  d.cols = cols;
  d.shore = shore;
  return d;
}

TargetDescriptor TargetDescriptor::pegasus(int size, bool fabric_only) {
  if (size < 2) throw Error(ErrorKind::invalid_parameter, "pegasus size must be >= 2");
  TargetDescriptor d;
  d.kind = TopologyKind::pegasus;
  d.size = size;
  d.fabric_only = fabric_only;
  return d;
}

TargetDescriptor TargetDescriptor::parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw Error(ErrorKind::invalid_parameter, "target must look like kind:shape, got '" + std::string(text) + "'");
  auto kind = text.substr(0, colon);
  auto shape = text.substr(colon + 1);
  if (kind == "chimera") {
    auto dims = split(shape, ',');
    if (dims.size() == 1) {
      int m = parse_int(dims[0], "chimera shape");
      return chimera(m, m, 4);
    }
    if (dims.size() == 3)
      return chimera(parse_int(dims[0], "chimera shape"), parse_int(dims[1], "chimera shape"),
                     parse_int(dims[2], "chimera shape"));
    throw Error(ErrorKind::invalid_parameter, "chimera shape must be M or M,N,L");
  }
  if (kind == "pegasus") {
    auto parts = split(shape, ':');
    if (parts.size() > 2) throw Error(ErrorKind::invalid_parameter, "pegasus shape must be m or m:full");
    bool fabric = true;
    if (parts.size() == 2) {
      if (parts[1] == "full") fabric = false;
      else if (parts[1] == "fabric") fabric = true;
      else throw Error(ErrorKind::invalid_parameter, "pegasus shape suffix must be full or fabric");
    }
    return pegasus(parse_int(parts[0], "pegasus shape"), fabric);
  }
  throw Error(ErrorKind::invalid_parameter, "unknown target kind '" + std::string(kind) + "'");
}

std::string TargetDescriptor::kind_name() const {
  return kind == TopologyKind::chimera ? "chimera" : "pegasus";
}

std::string TargetDescriptor::shape_token() const {
  if (kind == TopologyKind::chimera)
    return std::to_string(rows) + "," + std::to_string(cols) + "," + std::to_string(shore);
  return std::to_string(size) + (fabric_only ? "" : ":full");
}

std::string TargetDescriptor::to_string() const { return kind_name() + ":" + shape_token(); }

std::size_t TargetDescriptor::capacity() const {
  if (kind == TopologyKind::chimera)
    return static_cast<std::size_t>(rows) * cols * 2 * shore;
  return static_cast<std::size_t>(24) * size * (size - 1);
}

// ---------------------------------------------------------------------------
// TargetGraph

TargetGraph::TargetGraph(TargetDescriptor desc, std::vector<std::uint8_t> present,
                         std::vector<std::pair<QubitId, QubitId>> edges)
    : desc_(desc), present_(std::move(present)) {
  const std::size_t n = present_.size();
  std::vector<std::size_t> deg(n, 0);
  for (auto& [a, b] : edges) {
    if (a > b) std::swap(a, b);
    ++deg[a];
    ++deg[b];
  }
  row_start_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) row_start_[i + 1] = row_start_[i] + deg[i];
  adjacency_.resize(row_start_[n]);
  std::vector<std::size_t> fill(row_start_.begin(), row_start_.end() - 1);
  for (const auto& [a, b] : edges) {
    adjacency_[fill[a]++] = b;
    adjacency_[fill[b]++] = a;
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto first = adjacency_.begin() + static_cast<std::ptrdiff_t>(row_start_[i]);
    auto last = adjacency_.begin() + static_cast<std::ptrdiff_t>(row_start_[i + 1]);
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last)
      throw Error(ErrorKind::invalid_input, "duplicate coupler in graph construction");
  }
  for (std::size_t i = 0; i < n; ++i)
    if (present_[i]) nodes_.push_back(static_cast<QubitId>(i));
}

std::vector<std::pair<QubitId, QubitId>> TargetGraph::edges() const {
  std::vector<std::pair<QubitId, QubitId>> out;
  out.reserve(num_edges());
  for (QubitId a : nodes_)
    for (QubitId b : neighbors(a))
      if (a < b) out.emplace_back(a, b);
  return out;
}

std::span<const QubitId> TargetGraph::neighbors(QubitId q) const {
  if (!contains(q))
    throw Error(ErrorKind::not_found, "qubit " + std::to_string(q) + " is not in the graph");
  return {adjacency_.data() + row_start_[q], row_start_[q + 1] - row_start_[q]};
}

bool TargetGraph::adjacent(QubitId a, QubitId b) const noexcept {
  if (!contains(a) || !contains(b)) return false;
  auto first = adjacency_.begin() + static_cast<std::ptrdiff_t>(row_start_[a]);
  auto last = adjacency_.begin() + static_cast<std::ptrdiff_t>(row_start_[a + 1]);
  return std::binary_search(first, last, b);
}

std::size_t TargetGraph::max_degree() const noexcept {
  std::size_t best = 0;
  for (QubitId q : nodes_) best = std::max(best, row_start_[q + 1] - row_start_[q]);
  return best;
}

TargetGraph TargetGraph::without_nodes(std::span<const QubitId> removed) const {
  auto present = present_;
  for (QubitId q : removed) {
    if (q < 0 || static_cast<std::size_t>(q) >= present.size())
      throw Error(ErrorKind::invalid_parameter, "mask id " + std::to_string(q) + " out of range");
    present[q] = 0;
  }
  std::vector<std::pair<QubitId, QubitId>> kept;
  for (auto [a, b] : edges())
    if (present[a] && present[b]) kept.emplace_back(a, b);
  return TargetGraph(desc_, std::move(present), std::move(kept));
}

void TargetGraph::require_kind(TopologyKind kind, const char* what) const {
  if (desc_.kind != kind)
    throw Error(ErrorKind::invalid_parameter, std::string(what) + " requires a " +
                                                  (kind == TopologyKind::chimera ? "chimera" : "pegasus") +
                                                  " graph");
}

ChimeraCoord TargetGraph::to_chimera(QubitId q) const {
  require_kind(TopologyKind::chimera, "chimera coordinates");
  if (q < 0 || static_cast<std::size_t>(q) >= capacity())
    throw Error(ErrorKind::invalid_parameter, "qubit id out of range");
  const int L = desc_.shore;
  ChimeraCoord c;
  c.offset = q % L;
  q /= L;
  c.side = q % 2;
  q /= 2;
  c.col = q % desc_.cols;
  c.row = q / desc_.cols;
  return c;
}

QubitId TargetGraph::from_chimera(const ChimeraCoord& c) const {
  require_kind(TopologyKind::chimera, "chimera coordinates");
  if (c.row < 0 || c.row >= desc_.rows || c.col < 0 || c.col >= desc_.cols || c.side < 0 || c.side > 1 ||
      c.offset < 0 || c.offset >= desc_.shore)
    throw Error(ErrorKind::invalid_parameter, "chimera coordinate out of range");
  return ((c.row * desc_.cols + c.col) * 2 + c.side) * desc_.shore + c.offset;
}

PegasusCoord TargetGraph::to_pegasus(QubitId q) const {
  require_kind(TopologyKind::pegasus, "pegasus coordinates");
  if (q < 0 || static_cast<std::size_t>(q) >= capacity())
    throw Error(ErrorKind::invalid_parameter, "qubit id out of range");
  const int m = desc_.size;
  PegasusCoord c;
  c.z = q % (m - 1);
  q /= (m - 1);
  c.k = q % 12;
  q /= 12;
  c.w = q % m;
  c.u = q / m;
  return c;
}

QubitId TargetGraph::from_pegasus(const PegasusCoord& c) const {
  require_kind(TopologyKind::pegasus, "pegasus coordinates");
  const int m = desc_.size;
  if (c.u < 0 || c.u > 1 || c.w < 0 || c.w >= m || c.k < 0 || c.k >= 12 || c.z < 0 || c.z >= m - 1)
    throw Error(ErrorKind::invalid_parameter, "pegasus coordinate out of range");
  return ((c.u * m + c.w) * 12 + c.k) * (m - 1) + c.z;
}

NiceCoord TargetGraph::to_nice(QubitId q) const {
  auto n = pegasus_to_nice(to_pegasus(q));
  if (n.y < 0 || n.y >= desc_.size - 1 || n.x < 0 || n.x >= desc_.size - 1)
    throw Error(ErrorKind::invalid_parameter, "qubit " + std::to_string(q) + " is not in a nice cell");
  return n;
}

QubitId TargetGraph::from_nice(const NiceCoord& n) const {
  require_kind(TopologyKind::pegasus, "nice coordinates");
  if (n.t < 0 || n.t > 2 || n.y < 0 || n.y >= desc_.size - 1 || n.x < 0 || n.x >= desc_.size - 1 || n.u < 0 ||
      n.u > 1 || n.k < 0 || n.k > 3)
    throw Error(ErrorKind::invalid_parameter, "nice coordinate out of range");
  return from_pegasus(nice_to_pegasus(n));
}

// ---------------------------------------------------------------------------
// Builders

TargetGraph build_chimera(int rows, int cols, int shore) {
  auto desc = TargetDescriptor::chimera(rows, cols, shore);
  std::vector<std::uint8_t> present(desc.capacity(), 1);
  auto id = [&](int i, int j, int u, int k) { return ((i * cols + j) * 2 + u) * shore + k; };
  std::vector<std::pair<QubitId, QubitId>> edges;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      for (int k = 0; k < shore; ++k) {
        for (int kk = 0; kk < shore; ++kk) edges.emplace_back(id(i, j, 0, k), id(i, j, 1, kk));
        if (i + 1 < rows) edges.emplace_back(id(i, j, 0, k), id(i + 1, j, 0, k));
        if (j + 1 < cols) edges.emplace_back(id(i, j, 1, k), id(i, j + 1, 1, k));
      }
    }
  }
  return TargetGraph(desc, std::move(present), std::move(edges));
}

TargetGraph build_pegasus(int size, bool fabric_only) {
  auto desc = TargetDescriptor::pegasus(size, fabric_only);
  const int m = size;
  auto id = [&](int u, int w, int k, int z) { return ((u * m + w) * 12 + k) * (m - 1) + z; };
  std::vector<std::pair<QubitId, QubitId>> edges;
  std::vector<std::uint8_t> has_internal(desc.capacity(), 0);

  for (int w0 = 0; w0 < m; ++w0) {
    for (int k0 = 0; k0 < 12; ++k0) {
      for (int z0 = 0; z0 < m - 1; ++z0) {
        for (int k1 = 0; k1 < 12; ++k1) {
          const int w1 = z0 + (k1 < kPegasusVerticalOffsets[k0] ? 1 : 0);
          const int z1 = w0 - (k0 < kPegasusHorizontalOffsets[k1] ? 1 : 0);
          if (w1 < 0 || w1 >= m || z1 < 0 || z1 >= m - 1) continue;
          const int a = id(0, w0, k0, z0);
          const int b = id(1, w1, k1, z1);
          edges.emplace_back(a, b);
          has_internal[a] = has_internal[b] = 1;
        }
      }
    }
  }
  for (int u = 0; u < 2; ++u) {
    for (int w = 0; w < m; ++w) {
      for (int k = 0; k < 12; ++k) {
        for (int z = 0; z < m - 1; ++z) {
          if (z + 1 < m - 1) edges.emplace_back(id(u, w, k, z), id(u, w, k, z + 1));
          if (k % 2 == 0) edges.emplace_back(id(u, w, k, z), id(u, w, k + 1, z));
        }
      }
    }
  }

  std::vector<std::uint8_t> present(desc.capacity(), 1);
  if (fabric_only) {
    present = has_internal;
    std::erase_if(edges, [&](const auto& e) { return !present[e.first] || !present[e.second]; });
  }
  return TargetGraph(desc, std::move(present), std::move(edges));
}

TargetGraph build_target(const TargetDescriptor& desc) {
  if (desc.kind == TopologyKind::chimera) return build_chimera(desc.rows, desc.cols, desc.shore);
  return build_pegasus(desc.size, desc.fabric_only);
}

// ---------------------------------------------------------------------------
// Pegasus geometry

PegasusSegment pegasus_segment(const PegasusCoord& c) {
  const auto& offsets = c.u == 0 ? kPegasusVerticalOffsets : kPegasusHorizontalOffsets;
  return {c.u, 12 * c.w + c.k, 12 * c.z + offsets[c.k]};
}

std::optional<PegasusCoord> pegasus_translate(const PegasusCoord& c, int dx, int dy, int size) {
  const auto seg = pegasus_segment(c);
  // Vertical segments move their column by dx and their span by dy; the
  // roles swap for horizontal segments.
  const int line = seg.line + (c.u == 0 ? dx : dy);
  const int start = seg.start + (c.u == 0 ? dy : dx);
  PegasusCoord out;
  out.u = c.u;
  out.w = floor_div(line, 12);
  out.k = floor_mod(line, 12);
  const auto& offsets = c.u == 0 ? kPegasusVerticalOffsets : kPegasusHorizontalOffsets;
  const int rel = start - offsets[out.k];
  if (floor_mod(rel, 12) != 0) return std::nullopt;
  out.z = floor_div(rel, 12);
  if (out.w < 0 || out.w >= size || out.z < 0 || out.z >= size - 1) return std::nullopt;
  return out;
}

bool pegasus_segments_cross(const PegasusCoord& a, const PegasusCoord& b) {
  if (a.u == b.u) return false;
  const auto v = pegasus_segment(a.u == 0 ? a : b);
  const auto h = pegasus_segment(a.u == 0 ? b : a);
  return h.line >= v.start && h.line < v.start + 12 && v.line >= h.start && v.line < h.start + 12;
}

PegasusCoord nice_to_pegasus(const NiceCoord& n) {
  const bool horiz = n.u == 1;
  switch (n.t) {
    case 0: return {n.u, horiz ? n.y + 1 : n.x, 4 + n.k, horiz ? n.x : n.y};
    case 1: return {n.u, horiz ? n.y + 1 : n.x, horiz ? n.k : 8 + n.k, horiz ? n.x : n.y};
    case 2: return {n.u, horiz ? n.y : n.x + 1, horiz ? 8 + n.k : n.k, horiz ? n.x : n.y};
    default: break;
  }
  throw Error(ErrorKind::invalid_parameter, "nice shard must be 0, 1 or 2");
}

NiceCoord pegasus_to_nice(const PegasusCoord& p) {
  const bool horiz = p.u == 1;
  const int t = floor_mod(2 - p.u - (2 * p.u - 1) * (p.k / 4), 3);
  switch (t) {
    case 0: return {0, horiz ? p.w - 1 : p.z, horiz ? p.z : p.w, p.u, p.k - 4};
    case 1: return {1, horiz ? p.w - 1 : p.z, horiz ? p.z : p.w, p.u, horiz ? p.k : p.k - 8};
    default: return {2, horiz ? p.w : p.z, horiz ? p.z : p.w - 1, p.u, horiz ? p.k - 8 : p.k};
  }
}

bool induces_k44(const TargetGraph& g, std::span<const QubitId, 8> qubits) {
  for (int a = 0; a < 4; ++a)
    for (int b = 4; b < 8; ++b)
      if (!g.adjacent(qubits[a], qubits[b])) return false;
  return true;
}

std::vector<NiceCell> enumerate_nice_cells(const TargetGraph& g) {
  if (g.kind() != TopologyKind::pegasus)
    throw Error(ErrorKind::invalid_parameter, "nice cells exist only in pegasus graphs");
  const int cells = g.descriptor().size - 1;
  std::vector<NiceCell> out;
  out.reserve(static_cast<std::size_t>(3 * cells * cells));
  for (int t = 0; t < 3; ++t) {
    for (int y = 0; y < cells; ++y) {
      for (int x = 0; x < cells; ++x) {
        NiceCell cell{t, y, x, {}};
        for (int u = 0; u < 2; ++u)
          for (int k = 0; k < 4; ++k) cell.qubits[u * 4 + k] = g.from_nice({t, y, x, u, k});
        out.push_back(cell);
      }
    }
  }
  return out;
}

AnyCoord coord_convert(const TargetGraph& g, const AnyCoord& coord, CoordScheme scheme) {
  const QubitId q = std::visit(
      [&](const auto& c) -> QubitId {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, QubitId>) {
          if (c < 0 || static_cast<std::size_t>(c) >= g.capacity())
            throw Error(ErrorKind::invalid_parameter, "qubit id out of range");
          return c;
        } else if constexpr (std::is_same_v<T, ChimeraCoord>) {
          return g.from_chimera(c);
        } else if constexpr (std::is_same_v<T, PegasusCoord>) {
          return g.from_pegasus(c);
        } else {
          return g.from_nice(c);
        }
      },
      coord);
  switch (scheme) {
    case CoordScheme::linear: return q;
    case CoordScheme::standard:
      if (g.kind() == TopologyKind::chimera) return g.to_chimera(q);
      return g.to_pegasus(q);
    case CoordScheme::nice: return g.to_nice(q);
  }
  return q;
}

// ---------------------------------------------------------------------------
// Interchange

void write_edge_list(std::ostream& out, const TargetGraph& g) {
  const auto& d = g.descriptor();
  out << d.kind_name() << ' ' << d.shape_token() << ' ' << g.num_nodes() << '\n';
  for (auto [a, b] : g.edges()) out << a << ' ' << b << '\n';
}

EdgeListFile read_edge_list(std::istream& in) {
  EdgeListFile file;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::schema, "edge list is empty");
  std::istringstream header(line);
  std::string kind, shape;
  if (!(header >> kind >> shape >> file.node_count))
    throw Error(ErrorKind::schema, "edge list header must be 'kind shape nodecount'");
  try {
    file.descriptor = TargetDescriptor::parse(kind + ":" + shape);
  } catch (const Error& e) {
    throw Error(ErrorKind::schema, e.what());
  }
  const auto cap = static_cast<QubitId>(file.descriptor.capacity());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    QubitId a = 0, b = 0;
    if (!(row >> a >> b)) throw Error(ErrorKind::schema, "bad edge line '" + line + "'");
    if (a < 0 || b < 0 || a >= cap || b >= cap) throw Error(ErrorKind::schema, "edge endpoint out of range");
    file.edges.emplace_back(a, b);
  }
  return file;
}

std::vector<QubitId> read_node_mask(std::istream& in) {
  std::vector<QubitId> ids;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream row(line);
    QubitId q = 0;
    if (!(row >> q)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw Error(ErrorKind::schema, "bad node mask line '" + line + "'");
    }
    ids.push_back(q);
  }
  return ids;
}

}  // namespace qaunwrap
