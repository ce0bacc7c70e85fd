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

#include "qaunwrap/scene.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "qaunwrap/error.hpp"
#include "qaunwrap/phase_model.hpp"

using namespace qaunwrap;

namespace {

constexpr double kPi = std::numbers::pi;

double variance(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= double(v.size());
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / double(v.size());
}

}  // namespace

TEST(Wrap, Endpoints) {
  EXPECT_DOUBLE_EQ(wrap(kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap(-kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap(1.5 * kPi), -0.5 * kPi);
  EXPECT_DOUBLE_EQ(wrap(0.0), 0.0);
  EXPECT_THROW(wrap(std::nan("")), Error);
}

TEST(Wrap, Periodic) {
  for (double x : {-3.1, -1.0, 0.2, 2.9, 3.14}) {
    for (int k = -2; k <= 2; ++k) EXPECT_NEAR(wrap(x + 2 * kPi * k), wrap(x), 1e-12);
    EXPECT_GT(wrap(x), -kPi);
    EXPECT_LE(wrap(x), kPi);
  }
}

TEST(Perlin, BoundedAndSeeded) {
  const auto a = perlin(40, 30, 7.0, 1);
  for (double v : a.values()) {
    EXPECT_GE(v, -1.0);
    EXPECT_LE(v, 1.0);
  }
  EXPECT_EQ(perlin(40, 30, 7.0, 1), a);
  EXPECT_NE(perlin(40, 30, 7.0, 2), a);
  EXPECT_THROW(perlin(4, 4, 0.5, 1), Error);
}

TEST(Perlin, LongPeriodIsSmooth) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto f = perlin(10, 10, 500.0, seed);
    for (double& v : f.values()) v = (v + 1.0) * 0.5 * 7.0 * kPi;
    EXPECT_EQ(nyquist_violation_fraction(f), 0.0);
  }
}

TEST(Scene, NoiselessSnapshot) {
  const auto s = make_scene(10, 10, std::nullopt, 18.0, 3);
  EXPECT_NEAR(s.true_unwrapped(0, 0), 10.995574287564276, 1e-12);
  EXPECT_NEAR(s.true_unwrapped(5, 7), 14.786807909866386, 1e-12);
  EXPECT_NEAR(s.true_unwrapped(9, 9), 16.717903499270964, 1e-12);
  const std::vector<int> labels = {
      2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2,
      2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 3, 3, 2, 2, 2, 2, 2, 2,
      3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3};
  EXPECT_EQ(s.ref_labels, LabelField(10, 10, labels));
  EXPECT_EQ(s.noisy_unwrapped, s.true_unwrapped);
  EXPECT_EQ(s.meta.nyquist_true, 0.0);
  EXPECT_EQ(s.meta.clamped_labels, 0);
  EXPECT_EQ(s.meta.reference_label, 2);
}

TEST(Scene, NoiselessTruthHasZeroEnergy) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = make_scene(8, 9, std::nullopt, 18.0, seed);
    const ProblemGraph g(8, 9);
    const auto q = build_qubo(g, compute_offsets(s.wrapped), ModelWeights::uniform(g.shape()));
    EXPECT_NEAR(q.energy(bits_from_labels(s.ref_labels)), 0.0, 1e-9) << "seed " << seed;
  }
}

TEST(Scene, Congruence) {
  const auto s = make_scene(30, 30, 10.0, 18.0, 4);
  for (std::size_t i = 0; i < s.wrapped.size(); ++i) {
    const double rebuilt = s.wrapped.values()[i] + 2 * kPi * s.ref_labels.values()[i];
    if (s.meta.clamped_labels == 0) EXPECT_NEAR(rebuilt, s.noisy_unwrapped.values()[i], 1e-9);
  }
}

TEST(Scene, RealisedSnr) {
  for (double snr : {5.0, 10.0, 20.0}) {
    const auto s = make_scene(100, 100, snr, 18.0, 12);
    std::vector<double> noise(s.noisy_unwrapped.size());
    for (std::size_t i = 0; i < noise.size(); ++i)
      noise[i] = s.noisy_unwrapped.values()[i] - s.true_unwrapped.values()[i];
    const double realised = 10.0 * std::log10(variance(s.true_unwrapped.values()) / variance(noise));
    EXPECT_NEAR(realised, snr, 1.0);
  }
}

TEST(Scene, Deterministic) {
  EXPECT_EQ(make_scene(10, 10, 10.0, 18.0, 9), make_scene(10, 10, 10.0, 18.0, 9));
  EXPECT_NE(make_scene(10, 10, 10.0, 18.0, 9).wrapped, make_scene(10, 10, 10.0, 18.0, 10).wrapped);
  EXPECT_THROW(make_scene(0, 10, 10.0, 18.0, 1), Error);
}

TEST(Matching, Fractions) {
  LabelField a(10, 10, 1);
  EXPECT_EQ(matching_fraction(a, a), 1.0);
  EXPECT_EQ(matching_fraction(a, LabelField(10, 10, 2)), 0.0);
  auto b = a;
  b(3, 4) = 0;
  EXPECT_DOUBLE_EQ(matching_fraction(b, a), 0.99);
  EXPECT_THROW(matching_fraction(a, LabelField(9, 10, 1)), Error);
}

TEST(SceneIo, JsonRoundTrip) {
  for (const auto& s : {make_scene(4, 6, 10.0, 18.0, 2), make_scene(3, 3, std::nullopt, 9.0, 5)}) {
    std::stringstream io;
    write_scene(io, s);
    EXPECT_EQ(read_scene(io), s);
  }
  std::istringstream bad(R"({"H": 2})");
  EXPECT_THROW(read_scene(bad), Error);
}

TEST(SceneIo, CsvRoundTrip) {
  const auto s = make_scene(5, 7, 10.0, 18.0, 8);
  std::stringstream io;
  write_field_csv(io, s.wrapped);
  EXPECT_EQ(read_field_csv(io), s.wrapped);
  std::istringstream ragged("1,2\n3\n");
  EXPECT_THROW(read_field_csv(ragged), Error);
}
