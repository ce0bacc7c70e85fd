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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qaunwrap/phase_model.hpp"
#include "qaunwrap/sampler.hpp"

namespace qaunwrap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::uint64_t kNoiseStream = 0x6e6f697365ULL;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Gradient {
  double gx;
  double gy;
};

Gradient lattice_gradient(std::uint64_t seed, long ix, long iy) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint32_t>(ix));
  h = splitmix64(h ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(iy)) << 32));
  const double angle = kTwoPi * (static_cast<double>(h >> 11) * 0x1.0p-53);
  return {std::cos(angle), std::sin(angle)};
}

double fade(double t) { return t * t * t * (t * (t * 6.0 - 15.0) + 10.0); }

double gradient_noise(double x, double y, std::uint64_t seed) {
  const double fx0 = std::floor(x);
  const double fy0 = std::floor(y);
  const long x0 = static_cast<long>(fx0);
  const long y0 = static_cast<long>(fy0);
  const double tx = x - fx0;
  const double ty = y - fy0;
  auto dot = [&](long dx, long dy) {
    const auto g = lattice_gradient(seed, x0 + dx, y0 + dy);
    return g.gx * (tx - double(dx)) + g.gy * (ty - double(dy));
  };
  const double u = fade(tx);
  const double v = fade(ty);
  const double top = std::lerp(dot(0, 0), dot(1, 0), u);
  const double bottom = std::lerp(dot(0, 1), dot(1, 1), u);
  return std::lerp(top, bottom, v);
}

double standard_normal(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double population_variance(std::span<const double> v) {
  if (v.empty()) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= double(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  return var / double(v.size());
}

template <typename T>
nlohmann::ordered_json rows_to_json(const Grid<T>& f) {
  auto rows = nlohmann::ordered_json::array();
  for (int r = 0; r < f.rows(); ++r) {
    auto row = nlohmann::ordered_json::array();
    for (int c = 0; c < f.cols(); ++c) row.push_back(f(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename T>
Grid<T> rows_from_json(const nlohmann::json& j, int height, int width, const char* name) {
  if (!j.is_array() || static_cast<int>(j.size()) != height)
    throw Error(ErrorKind::schema, std::string("scene field ") + name + " must have " + std::to_string(height) + " rows");
  Grid<T> g(height, width);
  for (int r = 0; r < height; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != width)
      throw Error(ErrorKind::schema, std::string("scene field ") + name + " row " + std::to_string(r) + " must have " +
                                         std::to_string(width) + " values");
    for (int c = 0; c < width; ++c) g(r, c) = row[c].get<T>();
  }
  return g;
}

template <typename T>
void write_csv(std::ostream& out, const Grid<T>& f) {
  char buf[32];
  for (int r = 0; r < f.rows(); ++r) {
    for (int c = 0; c < f.cols(); ++c) {
      if (c) out << ',';
      if constexpr (std::is_floating_point_v<T>) {
        std::snprintf(buf, sizeof buf, "%.17g", f(r, c));
        out << buf;
      } else {
        out << f(r, c);
      }
    }
    out << '\n';
  }
}

}  // namespace

PhaseField perlin(int height, int width, double period, std::uint64_t seed) {
  if (height < 1 || width < 1) throw Error(ErrorKind::invalid_parameter, "field dimensions must be >= 1");
  if (!(period >= 1.0)) throw Error(ErrorKind::invalid_parameter, "perlin period must be >= 1 pixel");
  PhaseField f(height, width);
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c)
      // Unit-gradient noise is bounded by sqrt(2)/2 in magnitude.
      f(r, c) = std::clamp(std::numbers::sqrt2 * gradient_noise(c / period, r / period, seed), -1.0, 1.0);
  return f;
}

double wrap(double phase) {
  if (!std::isfinite(phase)) throw Error(ErrorKind::invalid_input, "cannot wrap a non-finite phase");
  double r = std::remainder(phase, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

PhaseField wrap(const PhaseField& phase) {
  PhaseField out(phase.rows(), phase.cols());
  for (std::size_t i = 0; i < phase.size(); ++i) out.values()[i] = wrap(phase.values()[i]);
  return out;
}

Scene make_scene(int height, int width, std::optional<double> snr_db, double period, std::uint64_t seed) {
  if (height < 1 || width < 1) throw Error(ErrorKind::invalid_parameter, "scene dimensions must be >= 1");
  if (snr_db && !std::isfinite(*snr_db)) throw Error(ErrorKind::invalid_parameter, "SNR must be finite; omit it to disable noise");
  Scene s;
  s.height = height;
  s.width = width;
  s.meta.snr_db = snr_db;
  s.meta.perlin_period = period;
  s.meta.seed = seed;

  s.true_unwrapped = perlin(height, width, period, seed);
  for (double& v : s.true_unwrapped.values()) v = (v + 1.0) * 0.5 * 7.0 * kPi;

  s.noisy_unwrapped = s.true_unwrapped;
  if (snr_db) {
    const double sigma = std::sqrt(population_variance(s.true_unwrapped.values()) / std::pow(10.0, *snr_db / 10.0));
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(kNoiseStream), static_cast<std::uint32_t>(kNoiseStream >> 32)};
    std::mt19937_64 rng(seq);
    for (double& v : s.noisy_unwrapped.values()) v += sigma * standard_normal(rng);
  }
  s.wrapped = wrap(s.noisy_unwrapped);

  s.ref_labels = LabelField(height, width);
  for (std::size_t i = 0; i < s.ref_labels.size(); ++i) {
    long k = nint((s.noisy_unwrapped.values()[i] - s.wrapped.values()[i]) / kTwoPi);
    if (k < 0 || k > kMaxLabel) {
      ++s.meta.clamped_labels;
      k = std::clamp<long>(k, 0, kMaxLabel);
    }
    s.ref_labels.values()[i] = static_cast<int>(k);
  }
  s.meta.nyquist_true = nyquist_violation_fraction(s.true_unwrapped);
  s.meta.nyquist_noisy = nyquist_violation_fraction(s.noisy_unwrapped);
  s.meta.reference_label = s.ref_labels(s.meta.reference_row, s.meta.reference_col);
  return s;
}

double matching_fraction(const LabelField& estimate, const LabelField& reference) {
  if (!estimate.same_shape(reference)) throw Error(ErrorKind::dimension_mismatch, "label fields differ in shape");
  if (estimate.size() == 0) throw Error(ErrorKind::invalid_input, "empty label fields");
  std::size_t same = 0;
  for (std::size_t i = 0; i < estimate.size(); ++i) same += estimate.values()[i] == reference.values()[i];
  return double(same) / double(estimate.size());
}

void write_scene(std::ostream& out, const Scene& s) {
  nlohmann::ordered_json j;
  j["H"] = s.height;
  j["W"] = s.width;
  nlohmann::ordered_json meta;
  meta["snr_db"] = s.meta.snr_db ? nlohmann::ordered_json(*s.meta.snr_db) : nlohmann::ordered_json(nullptr);
  meta["perlin_period"] = s.meta.perlin_period;
  meta["seed"] = s.meta.seed;
  meta["clamped_labels"] = s.meta.clamped_labels;
  meta["nyquist_true"] = s.meta.nyquist_true;
  meta["nyquist_noisy"] = s.meta.nyquist_noisy;
  meta["reference"] = {{"row", s.meta.reference_row}, {"col", s.meta.reference_col}, {"label", s.meta.reference_label}};
  j["meta"] = std::move(meta);
  j["true_unwrapped"] = rows_to_json(s.true_unwrapped);
  j["noisy_unwrapped"] = rows_to_json(s.noisy_unwrapped);
  j["wrapped"] = rows_to_json(s.wrapped);
  j["ref_labels"] = rows_to_json(s.ref_labels);
  out << j.dump(1) << '\n';
}

Scene read_scene(std::istream& in) {
  try {
    const auto j = nlohmann::json::parse(in);
    Scene s;
    s.height = j.at("H").get<int>();
    s.width = j.at("W").get<int>();
    if (s.height < 1 || s.width < 1) throw Error(ErrorKind::schema, "scene H and W must be >= 1");
    const auto& meta = j.at("meta");
    if (!meta.at("snr_db").is_null()) s.meta.snr_db = meta.at("snr_db").get<double>();
    s.meta.perlin_period = meta.at("perlin_period").get<double>();
    s.meta.seed = meta.at("seed").get<std::uint64_t>();
    s.meta.clamped_labels = meta.value("clamped_labels", 0);
    s.meta.nyquist_true = meta.value("nyquist_true", 0.0);
    s.meta.nyquist_noisy = meta.value("nyquist_noisy", 0.0);
    if (meta.contains("reference")) {
      const auto& ref = meta.at("reference");
      s.meta.reference_row = ref.at("row").get<int>();
      s.meta.reference_col = ref.at("col").get<int>();
      s.meta.reference_label = ref.at("label").get<int>();
    }
    s.true_unwrapped = rows_from_json<double>(j.at("true_unwrapped"), s.height, s.width, "true_unwrapped");
    s.noisy_unwrapped = rows_from_json<double>(j.at("noisy_unwrapped"), s.height, s.width, "noisy_unwrapped");
    s.wrapped = rows_from_json<double>(j.at("wrapped"), s.height, s.width, "wrapped");
    s.ref_labels = rows_from_json<int>(j.at("ref_labels"), s.height, s.width, "ref_labels");
    if (s.meta.reference_row < 0 || s.meta.reference_row >= s.height || s.meta.reference_col < 0 ||
        s.meta.reference_col >= s.width)
      throw Error(ErrorKind::schema, "scene reference pixel lies outside the image");
    return s;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::schema, std::string("malformed scene file: ") + ex.what());
  }
}

void write_field_csv(std::ostream& out, const PhaseField& f) { write_csv(out, f); }
void write_field_csv(std::ostream& out, const LabelField& f) { write_csv(out, f); }

PhaseField read_field_csv(std::istream& in) {
  std::vector<double> values;
  int rows = 0;
  int cols = -1;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    int n = 0;
    while (std::getline(ss, cell, ',')) {
      std::size_t pos = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos == 0) throw Error(ErrorKind::schema, "bad CSV value '" + cell + "'");
      values.push_back(v);
      ++n;
    }
    if (cols >= 0 && n != cols) throw Error(ErrorKind::schema, "CSV rows have differing lengths");
    cols = n;
    ++rows;
  }
  if (rows == 0) throw Error(ErrorKind::schema, "empty CSV field");
  return PhaseField(rows, cols, std::move(values));
}

}  // namespace qaunwrap
