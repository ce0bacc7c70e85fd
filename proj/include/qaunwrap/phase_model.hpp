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
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "qaunwrap/grid.hpp"

namespace qaunwrap {

using VarId = std::int32_t;
using Bits = std::vector<std::uint8_t>;

inline constexpr int kDefaultBitDepth = 2;

/// Bit q of pixel (row, col); q = 0 is the least significant bit.
struct BitVar {
  int row = 0;
  int col = 0;
  int bit = 0;
  auto operator<=>(const BitVar&) const = default;
};

struct ImageShape {
  int height = 0;
  int width = 0;
  int pixels() const noexcept { return height * width; }
  bool operator==(const ImageShape&) const = default;
};

inline VarId bitvar_id(const BitVar& v, int width, int bits = kDefaultBitDepth) {
  return (v.row * width + v.col) * bits + v.bit;
}
inline BitVar bitvar_of(VarId id, int width, int bits = kDefaultBitDepth) {
  const int pixel = id / bits;
  return {pixel / width, pixel % width, id % bits};
}

/// Logical graph of bit variables: every pixel's bits are pairwise coupled and
/// every bit of a pixel is coupled to every bit of its 4-neighbours.
class ProblemGraph {
 public:
  ProblemGraph(int height, int width, int bits = kDefaultBitDepth);

  ImageShape shape() const noexcept { return {height_, width_}; }
  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  int bits() const noexcept { return bits_; }
  std::size_t num_nodes() const noexcept { return neighbors_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  /// Edges (a, b) with a < b, sorted.
  const std::vector<std::pair<VarId, VarId>>& edges() const noexcept { return edges_; }
  const std::vector<VarId>& neighbors(VarId v) const;
  bool has_edge(VarId a, VarId b) const;

  VarId var(int row, int col, int bit) const { return bitvar_id({row, col, bit}, width_, bits_); }

 private:
  int height_;
  int width_;
  int bits_;
  std::vector<std::pair<VarId, VarId>> edges_;
  std::vector<std::vector<VarId>> neighbors_;
};

ProblemGraph build_problem_graph(int height, int width);

/// Integer offsets between neighbouring pixels plus a per-pixel prior.
///
/// right(r, c) holds a_st for s = (r, c), t = (r, c + 1); down(r, c) holds
/// a_st for s = (r, c), t = (r + 1, c). The reverse orientation is implied by
/// antisymmetry, a_ts = -a_st.
struct OffsetField {
  LabelField right;  // height x (width - 1)
  LabelField down;   // (height - 1) x width
  LabelField prior;  // height x width, the a_s of the unary term

  explicit OffsetField(ImageShape shape = {});

  ImageShape shape() const noexcept { return {prior.rows(), prior.cols()}; }
  /// a_st for an ordered pair of 4-neighbour pixels given as (row, col).
  int at(std::pair<int, int> s, std::pair<int, int> t) const;
  void set(std::pair<int, int> s, std::pair<int, int> t, int value);
};

/// Round half away from zero.
long nint(double x);

/// a_st = -nint((phi_s - phi_t) / 2pi) for every 4-neighbour pair of the
/// wrapped field; priors are zero. Inputs must lie in (-pi, pi].
OffsetField compute_offsets(const PhaseField& wrapped);

struct ModelWeights {
  Grid<double> right;   // W_st, same layout as OffsetField::right
  Grid<double> down;    // W_st, same layout as OffsetField::down
  Grid<double> unary;   // omega_s
  int bits = kDefaultBitDepth;

  /// W_st = 1 on every pair and omega_s = 0.
  static ModelWeights uniform(ImageShape shape, int bits = kDefaultBitDepth);
  ImageShape shape() const noexcept { return {unary.rows(), unary.cols()}; }
};

/// Sparse QUBO: offset + sum a_i x_i + sum_{i<j} b_ij x_i x_j.
class Qubo {
 public:
  Qubo() = default;
  explicit Qubo(std::size_t n) : linear_(n, 0.0) {}

  std::size_t size() const noexcept { return linear_.size(); }
  double offset() const noexcept { return offset_; }
  double linear(VarId i) const { return linear_.at(static_cast<std::size_t>(i)); }
  double quadratic(VarId i, VarId j) const;
  const std::vector<double>& linear_terms() const noexcept { return linear_; }
  const std::map<std::pair<VarId, VarId>, double>& quadratic_terms() const noexcept { return quadratic_; }

  void add_offset(double v) { offset_ += v; }
  void add_linear(VarId i, double v);
  /// i == j folds into the linear term because x^2 = x.
  void add_quadratic(VarId i, VarId j, double v);
  /// Drops coefficients that cancelled to exactly zero.
  void prune();

  /// Largest and smallest nonzero absolute coefficient (linear or quadratic).
  double max_abs_coefficient() const;
  double min_abs_nonzero_coefficient() const;

  double energy(std::span<const std::uint8_t> x) const;

  bool operator==(const Qubo&) const = default;

 private:
  void check(VarId i) const;

  std::vector<double> linear_;
  std::map<std::pair<VarId, VarId>, double> quadratic_;
  double offset_ = 0.0;
};

/// Ising form over spins s in {-1, +1}: offset + sum h_i s_i + sum J_ij s_i s_j.
struct Ising {
  std::vector<double> h;
  std::map<std::pair<VarId, VarId>, double> couplings;
  double offset = 0.0;

  double energy(std::span<const int> spins) const;
};

Ising qubo_to_ising(const Qubo& q);
Qubo ising_to_qubo(const Ising& s);

/// Expands the squared-residual cost into a QUBO over the bit variables of g:
/// sum W_st (k_t - k_s - a_ts)^2 + sum omega_s (k_s - a_s)^2 with
/// k = sum_q 2^q x_q.
Qubo build_qubo(const ProblemGraph& g, const OffsetField& offsets, const ModelWeights& weights);

/// Direct evaluation of the label-space cost; the reference for build_qubo.
double label_cost(const LabelField& labels, const OffsetField& offsets, const ModelWeights& weights);

LabelField labels_from_bits(std::span<const std::uint8_t> x, int height, int width, int bits = kDefaultBitDepth);
Bits bits_from_labels(const LabelField& labels, int bits = kDefaultBitDepth);

// JSON interchange: {n, offset, linear: {id: value}, quadratic: {"i,j": value}}.
void write_qubo(std::ostream& out, const Qubo& q);
Qubo read_qubo(std::istream& in);

/// Fraction of 4-neighbour pairs with |phi_s - phi_t| >= pi.
double nyquist_violation_fraction(const PhaseField& unwrapped);

}  // namespace qaunwrap
