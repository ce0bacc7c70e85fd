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

#include "qaunwrap/grid.hpp"

namespace qaunwrap {

/// 2-D gradient noise: unit gradients hashed from (seed, lattice point) on a
/// lattice of spacing `period` pixels, quintic fade. Scaled into [-1, 1].
PhaseField perlin(int height, int width, double period, std::uint64_t seed);

/// Reduces a phase into (-pi, pi]; both -pi and pi map to pi.
double wrap(double phase);
PhaseField wrap(const PhaseField& phase);

struct SceneMeta {
  /// nullopt disables noise (infinite SNR).
  std::optional<double> snr_db;
  double perlin_period = 18.0;
  std::uint64_t seed = 0;
  /// Pixels whose label fell outside [0, 3] and was clamped.
  int clamped_labels = 0;
  double nyquist_true = 0.0;
  double nyquist_noisy = 0.0;
  /// Reference pixel whose label is treated as known when solving.
  int reference_row = 0;
  int reference_col = 0;
  int reference_label = 0;

  bool operator==(const SceneMeta&) const = default;
};

struct Scene {
  int height = 0;
  int width = 0;
  PhaseField true_unwrapped;
  PhaseField noisy_unwrapped;
  PhaseField wrapped;
  LabelField ref_labels;
  SceneMeta meta;

  bool operator==(const Scene&) const = default;
};

inline constexpr int kMaxLabel = 3;

/// Perlin surface mapped from [-1, 1] onto [0, 7 pi], white Gaussian noise
/// with variance Var(true) / 10^(snr_db / 10), then wrapped. Reference labels
/// are nint((noisy - wrapped) / 2 pi) clamped to [0, 3].
Scene make_scene(int height, int width, std::optional<double> snr_db, double period, std::uint64_t seed);

/// Fraction of pixels whose labels agree.
double matching_fraction(const LabelField& estimate, const LabelField& reference);

// JSON interchange: {H, W, meta, true_unwrapped, noisy_unwrapped, wrapped,
// ref_labels} with fields as arrays of rows.
void write_scene(std::ostream& out, const Scene& s);
Scene read_scene(std::istream& in);

// CSV: one line per row, comma separated.
void write_field_csv(std::ostream& out, const PhaseField& f);
void write_field_csv(std::ostream& out, const LabelField& f);
PhaseField read_field_csv(std::istream& in);

}  // namespace qaunwrap
