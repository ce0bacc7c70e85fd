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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>

#include "qaunwrap/embedding.hpp"

namespace qaunwrap {

namespace {

using Shift = NativeTemplate::Shift;

constexpr int slot_of(int r, int c, int q) { return (r * 2 + c) * 2 + q; }

struct BlockLayout {
  // Pairs (a, b), a < b, of slots joined by a logical edge inside a block.
  std::vector<std::pair<int, int>> internal;
  // (slot in a block, slot in the neighbouring block) for logical edges that
  // cross the right and bottom block boundaries.
  std::vector<std::pair<int, int>> right;
  std::vector<std::pair<int, int>> down;
};

const BlockLayout& block_layout() {
  static const BlockLayout layout = [] {
    BlockLayout l;
    for (int a = 0; a < 8; ++a) {
      for (int b = a + 1; b < 8; ++b) {
        const int pa = a / 2, pb = b / 2;
        const int dr = std::abs(pa / 2 - pb / 2), dc = std::abs(pa % 2 - pb % 2);
        if (pa == pb || dr + dc == 1) l.internal.emplace_back(a, b);
      }
    }
    for (int r = 0; r < 2; ++r)
      for (int q = 0; q < 2; ++q)
        for (int q2 = 0; q2 < 2; ++q2) {
          l.right.emplace_back(slot_of(r, 1, q), slot_of(r, 0, q2));
          l.down.emplace_back(slot_of(1, r, q), slot_of(0, r, q2));
        }
    return l;
  }();
  return layout;
}

Shift operator+(Shift a, Shift b) { return {a.dx + b.dx, a.dy + b.dy}; }
Shift operator*(int n, Shift a) { return {n * a.dx, n * a.dy}; }

std::optional<QubitId> shifted(const TargetGraph& g, const PegasusCoord& c, Shift s) {
  auto moved = pegasus_translate(c, s.dx, s.dy, g.descriptor().size);
  if (!moved) return std::nullopt;
  const QubitId q = g.from_pegasus(*moved);
  if (!g.contains(q)) return std::nullopt;
  return q;
}

PegasusSegment shifted_segment(PegasusSegment seg, Shift s) {
  seg.line += seg.u == 0 ? s.dx : s.dy;
  seg.start += seg.u == 0 ? s.dy : s.dx;
  return seg;
}

bool same_segment(const PegasusSegment& a, const PegasusSegment& b) {
  return a.u == b.u && a.line == b.line && a.start == b.start;
}

// Shifts that map the (unbounded) Pegasus lattice onto itself.
bool is_lattice_shift(Shift s) {
  constexpr int kFar = 1000;
  for (int u = 0; u < 2; ++u)
    for (int k = 0; k < 12; ++k)
      if (!pegasus_translate({u, kFar / 2, k, kFar / 2}, s.dx, s.dy, kFar)) return false;
  return true;
}

std::vector<Shift> lattice_shifts(int radius) {
  std::vector<Shift> out;
  for (int dy = -radius; dy <= radius; ++dy)
    for (int dx = -radius; dx <= radius; ++dx)
      if (is_lattice_shift({dx, dy})) out.push_back({dx, dy});
  return out;
}

bool tiles_disjointly(const std::array<PegasusCoord, 8>& slots, Shift right, Shift down) {
  std::array<PegasusSegment, 8> segs;
  for (int i = 0; i < 8; ++i) segs[i] = pegasus_segment(slots[i]);
  constexpr int kWindow = 6;
  for (int a = -kWindow; a <= kWindow; ++a) {
    for (int b = -kWindow; b <= kWindow; ++b) {
      const Shift s = a * right + b * down;
      for (int i = 0; i < 8; ++i) {
        const auto moved = shifted_segment(segs[i], s);
        for (int j = 0; j < 8; ++j) {
          if (a == 0 && b == 0 && i == j) continue;
          if (same_segment(moved, segs[j])) return false;
        }
      }
    }
  }
  return true;
}

std::vector<int> cell_split(const std::array<PegasusCoord, 8>& slots) {
  std::map<std::array<int, 3>, int> cells;
  for (const auto& c : slots) {
    const auto n = pegasus_to_nice(c);
    ++cells[{n.t, n.y, n.x}];
  }
  std::vector<int> split;
  for (const auto& [cell, count] : cells) split.push_back(count);
  std::sort(split.rbegin(), split.rend());
  return split;
}

class TemplateSearch {
 public:
  TemplateSearch(const TargetGraph& g, std::vector<QubitId> seed, std::set<QubitId> window,
                 bool require_six_two)
      : g_(g), seed_(std::move(seed)), window_(std::move(window)), six_two_(require_six_two) {}

  std::optional<NativeTemplate> run(Shift right, Shift down) {
    right_ = right;
    down_ = down;
    assigned_.fill(-1);
    if (!place(0)) return std::nullopt;
    NativeTemplate tpl;
    for (int s = 0; s < 8; ++s) tpl.slots[s] = g_.to_pegasus(assigned_[s]);
    tpl.right = right;
    tpl.down = down;
    return tpl;
  }

 private:
  bool boundary_ok(int s) const {
    const auto& layout = block_layout();
    auto check = [&](const std::vector<std::pair<int, int>>& pairs, Shift shift) {
      for (auto [here, there] : pairs) {
        if (here != s && there != s) continue;
        if (assigned_[here] < 0 || assigned_[there] < 0) continue;
        auto moved = shifted(g_, g_.to_pegasus(assigned_[there]), shift);
        if (!moved || !g_.adjacent(assigned_[here], *moved)) return false;
      }
      return true;
    };
    return check(layout.right, right_) && check(layout.down, down_);
  }

  bool complete() const {
    std::array<PegasusCoord, 8> slots;
    for (int s = 0; s < 8; ++s) slots[s] = g_.to_pegasus(assigned_[s]);
    if (six_two_ && cell_split(slots) != std::vector<int>{6, 2}) return false;
    return tiles_disjointly(slots, right_, down_);
  }

  bool place(int s) {
    if (s == 8) return complete();
    const auto& layout = block_layout();
    std::vector<int> linked;
    for (auto [a, b] : layout.internal)
      if (b == s && assigned_[a] >= 0) linked.push_back(a);

    std::vector<QubitId> candidates;
    if (linked.empty()) {
      candidates = seed_;
    } else {
      for (QubitId q : g_.neighbors(assigned_[linked.front()]))
        if (window_.count(q)) candidates.push_back(q);
    }
    for (QubitId q : candidates) {
      if (std::find(assigned_.begin(), assigned_.begin() + s, q) != assigned_.begin() + s) continue;
      bool ok = true;
      for (int other : linked)
        if (!g_.adjacent(q, assigned_[other])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      assigned_[s] = q;
      if (boundary_ok(s) && place(s + 1)) return true;
      assigned_[s] = -1;
    }
    return false;
  }

  const TargetGraph& g_;
  std::vector<QubitId> seed_;
  std::set<QubitId> window_;
  bool six_two_;
  Shift right_{}, down_{};
  std::array<QubitId, 8> assigned_{};
};

// Candidate tiling shifts: pairs whose fundamental cell holds exactly 8
// qubits, so that the tiling uses every qubit it covers. Pairs pointing the
// right-hand block down-left and the lower block down-right come first.
std::vector<std::pair<Shift, Shift>> shift_pairs() {
  constexpr int kRadius = 24;
  // 24 qubits per 12x12 grid square, 8 per block.
  constexpr int kBlockArea = 12 * 12 * 8 / 24;
  const auto shifts = lattice_shifts(kRadius);
  std::vector<std::pair<Shift, Shift>> pairs;
  for (const auto& r : shifts)
    for (const auto& d : shifts)
      if (std::abs(r.dx * d.dy - r.dy * d.dx) == kBlockArea) pairs.emplace_back(r, d);
  auto key = [](const std::pair<Shift, Shift>& p) {
    const auto& [r, d] = p;
    const int preferred = (r.dx < 0 && r.dy > 0 && d.dx > 0 && d.dy > 0) ? 0 : 1;
    const int length = std::abs(r.dx) + std::abs(r.dy) + std::abs(d.dx) + std::abs(d.dy);
    return std::array<int, 6>{preferred, length, r.dx, r.dy, d.dx, d.dy};
  };
  std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  return pairs;
}

std::vector<QubitId> block_qubits(const TargetGraph& g, const NativeTemplate& tpl, int height, int width,
                                  Shift anchor, int block_r, int block_c, bool* ok) {
  std::vector<QubitId> out;
  const Shift offset = anchor + block_c * tpl.right + block_r * tpl.down;
  for (int s = 0; s < 8; ++s) {
    const int pr = block_r * 2 + (s / 2) / 2;
    const int pc = block_c * 2 + (s / 2) % 2;
    if (pr >= height || pc >= width) continue;
    auto q = shifted(g, tpl.slots[s], offset);
    if (!q) {
      *ok = false;
      return {};
    }
    out.push_back(*q);
  }
  *ok = true;
  return out;
}

bool footprint_fits(const TargetGraph& g, const NativeTemplate& tpl, int height, int width, Shift anchor) {
  const int block_rows = (height + 1) / 2;
  const int block_cols = (width + 1) / 2;
  bool ok = true;
  for (int r = 0; r < block_rows; ++r)
    for (int c = 0; c < block_cols; ++c) {
      block_qubits(g, tpl, height, width, anchor, r, c, &ok);
      if (!ok) return false;
    }
  return true;
}

// Anchors ordered top-most first, then left-most.
std::vector<Shift> anchors_for(int size) {
  std::vector<Shift> anchors;
  const int radius = 12 * size;
  // Lattice shifts repeat with period 12 in both directions.
  std::set<std::pair<int, int>> residues;
  for (const auto& s : lattice_shifts(6)) residues.insert({((s.dx % 12) + 12) % 12, ((s.dy % 12) + 12) % 12});
  for (int dy = -radius; dy <= radius; ++dy)
    for (int dx = -radius; dx <= radius; ++dx)
      if (residues.count({((dx % 12) + 12) % 12, ((dy % 12) + 12) % 12})) anchors.push_back({dx, dy});
  return anchors;
}

std::optional<Shift> find_anchor(const TargetGraph& g, const NativeTemplate& tpl, int height, int width) {
  for (const auto& a : anchors_for(g.descriptor().size))
    if (footprint_fits(g, tpl, height, width, a)) return a;
  return std::nullopt;
}

void require_pegasus(const TargetGraph& g, const char* what) {
  if (g.kind() != TopologyKind::pegasus) throw Error(ErrorKind::invalid_parameter, std::string(what) + " needs a pegasus target");
}

}  // namespace

TemplateCheck check_native_template(const TargetGraph& g, const NativeTemplate& tpl) {
  require_pegasus(g, "check_native_template");
  TemplateCheck check;
  std::array<std::optional<QubitId>, 8> ids;
  for (int s = 0; s < 8; ++s) ids[s] = shifted(g, tpl.slots[s], {0, 0});
  const auto& layout = block_layout();
  for (auto [a, b] : layout.internal)
    if (ids[a] && ids[b] && g.adjacent(*ids[a], *ids[b])) ++check.internal_edges;
  auto boundary = [&](const std::vector<std::pair<int, int>>& pairs, Shift shift) {
    int n = 0;
    for (auto [here, there] : pairs) {
      auto moved = shifted(g, tpl.slots[there], shift);
      if (ids[here] && moved && g.adjacent(*ids[here], *moved)) ++n;
    }
    return n;
  };
  check.right_edges = boundary(layout.right, tpl.right);
  check.down_edges = boundary(layout.down, tpl.down);
  std::set<QubitId> distinct;
  for (const auto& id : ids)
    if (id) distinct.insert(*id);
  check.disjoint_tiling = distinct.size() == 8 && tiles_disjointly(tpl.slots, tpl.right, tpl.down);
  check.cell_split = cell_split(tpl.slots);
  return check;
}

NativeTemplate find_native_template(const TargetGraph& g) {
  require_pegasus(g, "find_native_template");
  const int m = g.descriptor().size;
  if (m < 4) throw Error(ErrorKind::invalid_parameter, "native template search needs pegasus size >= 4");
  const int centre = (m - 2) / 2;

  std::vector<QubitId> seed;
  std::set<QubitId> window;
  for (int t = 0; t < 3; ++t)
    for (int y = centre - 1; y <= centre + 1; ++y)
      for (int x = centre - 1; x <= centre + 1; ++x)
        for (int u = 0; u < 2; ++u)
          for (int k = 0; k < 4; ++k) {
            const QubitId q = g.from_nice({t, y, x, u, k});
            if (!g.contains(q)) continue;
            window.insert(q);
            if (t == 0 && y == centre && x == centre) seed.push_back(q);
          }
  std::sort(seed.begin(), seed.end());

  const auto pairs = shift_pairs();
  for (bool six_two : {true, false}) {
    TemplateSearch search(g, seed, window, six_two);
    for (const auto& [right, down] : pairs)
      if (auto tpl = search.run(right, down)) return *tpl;
  }
  throw Error(ErrorKind::infeasible, "no chain-length-1 template exists around the central nice cell");
}

Embedding pegasus_native(int height, int width, const TargetGraph& g, const NativeTemplate& tpl) {
  require_pegasus(g, "pegasus_native");
  if (height < 1 || width < 1) throw Error(ErrorKind::invalid_parameter, "image dimensions must be >= 1");
  const auto anchor = find_anchor(g, tpl, height, width);
  if (!anchor) {
    const int best = pegasus_native_max_square(g, tpl);
    throw Error(ErrorKind::capacity, "image " + std::to_string(height) + "x" + std::to_string(width) + " does not fit on " +
                                         g.descriptor().to_string() + "; largest square image is " +
                                         std::to_string(best) + "x" + std::to_string(best));
  }
  Embedding e;
  e.scheme = "pegasus_native";
  e.target = g.descriptor();
  e.height = height;
  e.width = width;
  e.chains.resize(static_cast<std::size_t>(height) * width * 2);
  const Shift a = *anchor;
  for (int r = 0; r < (height + 1) / 2; ++r) {
    for (int c = 0; c < (width + 1) / 2; ++c) {
      const Shift offset = a + c * tpl.right + r * tpl.down;
      for (int s = 0; s < 8; ++s) {
        const int pr = r * 2 + (s / 2) / 2;
        const int pc = c * 2 + (s / 2) % 2;
        if (pr >= height || pc >= width) continue;
        e.chains[bitvar_id({pr, pc, s % 2}, width)] = {*shifted(g, tpl.slots[s], offset)};
      }
    }
  }
  return e;
}

int pegasus_native_max_square(const TargetGraph& g, const NativeTemplate& tpl) {
  require_pegasus(g, "pegasus_native_max_square");
  int lo = 0;
  int hi = static_cast<int>(std::sqrt(static_cast<double>(g.num_nodes()) / 2.0)) + 1;
  while (lo + 1 < hi) {
    const int mid = (lo + hi) / 2;
    if (find_anchor(g, tpl, mid, mid)) lo = mid;
    else hi = mid;
  }
  return lo;
}

}  // namespace qaunwrap
