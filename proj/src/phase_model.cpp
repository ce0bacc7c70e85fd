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

#include "qaunwrap/phase_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

namespace qaunwrap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Term = std::pair<VarId, double>;

// weight * (sum c_p x_p + constant)^2 with x_p^2 = x_p.
void add_weighted_square(Qubo& q, double weight, std::span<const Term> terms, double constant) {
  if (weight == 0.0) return;
  for (std::size_t p = 0; p < terms.size(); ++p) {
    const auto [vp, cp] = terms[p];
    q.add_linear(vp, weight * (cp * cp + 2.0 * constant * cp));
    for (std::size_t r = p + 1; r < terms.size(); ++r)
      q.add_quadratic(vp, terms[r].first, weight * 2.0 * cp * terms[r].second);
  }
  q.add_offset(weight * constant * constant);
}

void require_shape(const char* what, int rows, int cols, int want_rows, int want_cols) {
  if (rows != want_rows || cols != want_cols)
    throw Error(ErrorKind::dimension_mismatch, std::string(what) + " has shape " + std::to_string(rows) + "x" +
                                                   std::to_string(cols) + ", expected " +
                                                   std::to_string(want_rows) + "x" + std::to_string(want_cols));
}

}  // namespace

// ---------------------------------------------------------------------------
// ProblemGraph

ProblemGraph::ProblemGraph(int height, int width, int bits) : height_(height), width_(width), bits_(bits) {
  if (height < 1 || width < 1) throw Error(ErrorKind::invalid_parameter, "image dimensions must be >= 1");
  if (bits < 1 || bits > 15) throw Error(ErrorKind::invalid_parameter, "bit depth must be in [1, 15]");
  neighbors_.resize(static_cast<std::size_t>(height) * width * bits);
  auto link = [&](VarId a, VarId b) {
    edges_.emplace_back(std::min(a, b), std::max(a, b));
    neighbors_[a].push_back(b);
    neighbors_[b].push_back(a);
  };
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      for (int p = 0; p < bits; ++p)
        for (int q = p + 1; q < bits; ++q) link(var(r, c, p), var(r, c, q));
      for (int p = 0; p < bits; ++p) {
        for (int q = 0; q < bits; ++q) {
          if (c + 1 < width) link(var(r, c, p), var(r, c + 1, q));
          if (r + 1 < height) link(var(r, c, p), var(r + 1, c, q));
        }
      }
    }
  }
  std::sort(edges_.begin(), edges_.end());
  for (auto& n : neighbors_) std::sort(n.begin(), n.end());
}

const std::vector<VarId>& ProblemGraph::neighbors(VarId v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= neighbors_.size())
    throw Error(ErrorKind::not_found, "bit variable " + std::to_string(v) + " out of range");
  return neighbors_[v];
}

bool ProblemGraph::has_edge(VarId a, VarId b) const {
  const auto& n = neighbors(a);
  return std::binary_search(n.begin(), n.end(), b);
}

ProblemGraph build_problem_graph(int height, int width) { return ProblemGraph(height, width); }

// ---------------------------------------------------------------------------
// Offsets

OffsetField::OffsetField(ImageShape shape)
    : right(shape.height, std::max(shape.width - 1, 0)),
      down(std::max(shape.height - 1, 0), shape.width),
      prior(shape.height, shape.width) {}

int OffsetField::at(std::pair<int, int> s, std::pair<int, int> t) const {
  const auto [sr, sc] = s;
  const auto [tr, tc] = t;
  if (sr == tr && tc == sc + 1) return right(sr, sc);
  if (sr == tr && tc == sc - 1) return -right(tr, tc);
  if (sc == tc && tr == sr + 1) return down(sr, sc);
  if (sc == tc && tr == sr - 1) return -down(tr, tc);
  throw Error(ErrorKind::invalid_parameter, "pixels are not 4-neighbours");
}

void OffsetField::set(std::pair<int, int> s, std::pair<int, int> t, int value) {
  const auto [sr, sc] = s;
  const auto [tr, tc] = t;
  if (sr == tr && tc == sc + 1) right(sr, sc) = value;
  else if (sr == tr && tc == sc - 1) right(tr, tc) = -value;
  else if (sc == tc && tr == sr + 1) down(sr, sc) = value;
  else if (sc == tc && tr == sr - 1) down(tr, tc) = -value;
  else throw Error(ErrorKind::invalid_parameter, "pixels are not 4-neighbours");
}

long nint(double x) { return std::lround(x); }

OffsetField compute_offsets(const PhaseField& wrapped) {
  for (double v : wrapped.values())
    if (!std::isfinite(v) || v <= -std::numbers::pi || v > std::numbers::pi)
      throw Error(ErrorKind::invalid_input, "wrapped phase " + std::to_string(v) + " outside (-pi, pi]");
  const int H = wrapped.rows();
  const int W = wrapped.cols();
  OffsetField off({H, W});
  for (int r = 0; r < H; ++r)
    for (int c = 0; c + 1 < W; ++c)
      off.right(r, c) = static_cast<int>(-nint((wrapped(r, c) - wrapped(r, c + 1)) / kTwoPi));
  for (int r = 0; r + 1 < H; ++r)
    for (int c = 0; c < W; ++c)
      off.down(r, c) = static_cast<int>(-nint((wrapped(r, c) - wrapped(r + 1, c)) / kTwoPi));
  return off;
}

ModelWeights ModelWeights::uniform(ImageShape shape, int bits) {
  ModelWeights w;
  w.right = Grid<double>(shape.height, std::max(shape.width - 1, 0), 1.0);
  w.down = Grid<double>(std::max(shape.height - 1, 0), shape.width, 1.0);
  w.unary = Grid<double>(shape.height, shape.width, 0.0);
  w.bits = bits;
  return w;
}

// ---------------------------------------------------------------------------
// Qubo

void Qubo::check(VarId i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= linear_.size())
    throw Error(ErrorKind::invalid_parameter, "variable " + std::to_string(i) + " out of range");
}

double Qubo::quadratic(VarId i, VarId j) const {
  if (i > j) std::swap(i, j);
  auto it = quadratic_.find({i, j});
  return it == quadratic_.end() ? 0.0 : it->second;
}

void Qubo::add_linear(VarId i, double v) {
  check(i);
  linear_[i] += v;
}

void Qubo::add_quadratic(VarId i, VarId j, double v) {
  check(i);
  check(j);
  if (i == j) {
    linear_[i] += v;
    return;
  }
  if (i > j) std::swap(i, j);
  quadratic_[{i, j}] += v;
}

void Qubo::prune() {
  std::erase_if(quadratic_, [](const auto& kv) { return kv.second == 0.0; });
}

double Qubo::max_abs_coefficient() const {
  double m = 0.0;
  for (double a : linear_) m = std::max(m, std::abs(a));
  for (const auto& [key, b] : quadratic_) m = std::max(m, std::abs(b));
  return m;
}

double Qubo::min_abs_nonzero_coefficient() const {
  double m = 0.0;
  auto take = [&](double v) {
    v = std::abs(v);
    if (v > 0.0 && (m == 0.0 || v < m)) m = v;
  };
  for (double a : linear_) take(a);
  for (const auto& [key, b] : quadratic_) take(b);
  return m;
}

double Qubo::energy(std::span<const std::uint8_t> x) const {
  if (x.size() != linear_.size())
    throw Error(ErrorKind::dimension_mismatch, "state has " + std::to_string(x.size()) + " bits, QUBO has " +
                                                   std::to_string(linear_.size()) + " variables");
  double e = offset_;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) e += linear_[i];
  for (const auto& [key, b] : quadratic_)
    if (x[key.first] && x[key.second]) e += b;
  return e;
}

double Ising::energy(std::span<const int> spins) const {
  if (spins.size() != h.size()) throw Error(ErrorKind::dimension_mismatch, "spin vector length mismatch");
  double e = offset;
  for (std::size_t i = 0; i < spins.size(); ++i) e += h[i] * spins[i];
  for (const auto& [key, J] : couplings) e += J * spins[key.first] * spins[key.second];
  return e;
}

Ising qubo_to_ising(const Qubo& q) {
  Ising s;
  s.h.assign(q.size(), 0.0);
  s.offset = q.offset();
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double a = q.linear_terms()[i];
    s.h[i] += a / 2.0;
    s.offset += a / 2.0;
  }
  for (const auto& [key, b] : q.quadratic_terms()) {
    s.couplings[key] += b / 4.0;
    s.h[key.first] += b / 4.0;
    s.h[key.second] += b / 4.0;
    s.offset += b / 4.0;
  }
  std::erase_if(s.couplings, [](const auto& kv) { return kv.second == 0.0; });
  return s;
}

Qubo ising_to_qubo(const Ising& s) {
  Qubo q(s.h.size());
  q.add_offset(s.offset);
  for (std::size_t i = 0; i < s.h.size(); ++i) {
    q.add_linear(static_cast<VarId>(i), 2.0 * s.h[i]);
    q.add_offset(-s.h[i]);
  }
  for (const auto& [key, J] : s.couplings) {
    q.add_quadratic(key.first, key.second, 4.0 * J);
    q.add_linear(key.first, -2.0 * J);
    q.add_linear(key.second, -2.0 * J);
    q.add_offset(J);
  }
  q.prune();
  return q;
}

// ---------------------------------------------------------------------------
// Cost construction

Qubo build_qubo(const ProblemGraph& g, const OffsetField& offsets, const ModelWeights& weights) {
  const int H = g.height();
  const int W = g.width();
  const int d = g.bits();
  if (weights.bits != d) throw Error(ErrorKind::dimension_mismatch, "weights bit depth differs from problem graph");
  require_shape("offset prior", offsets.prior.rows(), offsets.prior.cols(), H, W);
  require_shape("horizontal offsets", offsets.right.rows(), offsets.right.cols(), H, W - 1);
  require_shape("vertical offsets", offsets.down.rows(), offsets.down.cols(), H - 1, W);
  require_shape("unary weights", weights.unary.rows(), weights.unary.cols(), H, W);
  require_shape("horizontal weights", weights.right.rows(), weights.right.cols(), H, W - 1);
  require_shape("vertical weights", weights.down.rows(), weights.down.cols(), H - 1, W);

  Qubo q(g.num_nodes());
  std::vector<Term> terms;
  // Residual k_t - k_s - a_ts = k_t - k_s + a_st, zero when k_s - k_t = a_st.
  auto pair_term = [&](int sr, int sc, int tr, int tc, double weight, int a_st) {
    if (weight < 0.0) throw Error(ErrorKind::invalid_parameter, "pair weights must be nonnegative");
    terms.clear();
    for (int b = 0; b < d; ++b) {
      terms.emplace_back(g.var(tr, tc, b), double(1 << b));
      terms.emplace_back(g.var(sr, sc, b), -double(1 << b));
    }
    add_weighted_square(q, weight, terms, double(a_st));
  };
  for (int r = 0; r < H; ++r)
    for (int c = 0; c + 1 < W; ++c) pair_term(r, c, r, c + 1, weights.right(r, c), offsets.right(r, c));
  for (int r = 0; r + 1 < H; ++r)
    for (int c = 0; c < W; ++c) pair_term(r, c, r + 1, c, weights.down(r, c), offsets.down(r, c));
  for (int r = 0; r < H; ++r) {
    for (int c = 0; c < W; ++c) {
      const double omega = weights.unary(r, c);
      if (omega < 0.0) throw Error(ErrorKind::invalid_parameter, "unary weights must be nonnegative");
      terms.clear();
      for (int b = 0; b < d; ++b) terms.emplace_back(g.var(r, c, b), double(1 << b));
      add_weighted_square(q, omega, terms, -double(offsets.prior(r, c)));
    }
  }
  q.prune();
  return q;
}

double label_cost(const LabelField& k, const OffsetField& offsets, const ModelWeights& weights) {
  const int H = k.rows();
  const int W = k.cols();
  if (offsets.shape() != ImageShape{H, W} || weights.shape() != ImageShape{H, W})
    throw Error(ErrorKind::dimension_mismatch, "label field, offsets and weights differ in shape");
  double e = 0.0;
  for (int r = 0; r < H; ++r) {
    for (int c = 0; c < W; ++c) {
      if (c + 1 < W) {
        const double res = k(r, c + 1) - k(r, c) - offsets.at({r, c + 1}, {r, c});
        e += weights.right(r, c) * res * res;
      }
      if (r + 1 < H) {
        const double res = k(r + 1, c) - k(r, c) - offsets.at({r + 1, c}, {r, c});
        e += weights.down(r, c) * res * res;
      }
      const double res = k(r, c) - offsets.prior(r, c);
      e += weights.unary(r, c) * res * res;
    }
  }
  return e;
}

LabelField labels_from_bits(std::span<const std::uint8_t> x, int height, int width, int bits) {
  if (x.size() != static_cast<std::size_t>(height) * width * bits)
    throw Error(ErrorKind::dimension_mismatch, "bit vector length " + std::to_string(x.size()) +
                                                   " does not match " + std::to_string(height) + "x" +
                                                   std::to_string(width) + " image");
  LabelField k(height, width);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      int label = 0;
      for (int b = 0; b < bits; ++b) {
        const auto v = x[bitvar_id({r, c, b}, width, bits)];
        if (v > 1) throw Error(ErrorKind::invalid_input, "bit vector entries must be 0 or 1");
        label |= v << b;
      }
      k(r, c) = label;
    }
  }
  return k;
}

Bits bits_from_labels(const LabelField& labels, int bits) {
  const int H = labels.rows();
  const int W = labels.cols();
  Bits x(static_cast<std::size_t>(H) * W * bits, 0);
  for (int r = 0; r < H; ++r) {
    for (int c = 0; c < W; ++c) {
      const int k = labels(r, c);
      if (k < 0 || k >= (1 << bits))
        throw Error(ErrorKind::invalid_input, "label " + std::to_string(k) + " not representable in " +
                                                  std::to_string(bits) + " bits");
      for (int b = 0; b < bits; ++b) x[bitvar_id({r, c, b}, W, bits)] = static_cast<std::uint8_t>((k >> b) & 1);
    }
  }
  return x;
}

double nyquist_violation_fraction(const PhaseField& phi) {
  const int H = phi.rows();
  const int W = phi.cols();
  long pairs = 0;
  long bad = 0;
  for (int r = 0; r < H; ++r) {
    for (int c = 0; c < W; ++c) {
      if (c + 1 < W) {
        ++pairs;
        if (std::abs(phi(r, c) - phi(r, c + 1)) >= std::numbers::pi) ++bad;
      }
      if (r + 1 < H) {
        ++pairs;
        if (std::abs(phi(r, c) - phi(r + 1, c)) >= std::numbers::pi) ++bad;
      }
    }
  }
  return pairs == 0 ? 0.0 : double(bad) / double(pairs);
}

// ---------------------------------------------------------------------------
// Interchange

void write_qubo(std::ostream& out, const Qubo& q) {
  nlohmann::ordered_json j;
  j["n"] = q.size();
  j["offset"] = q.offset();
  auto linear = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < q.size(); ++i)
    if (q.linear_terms()[i] != 0.0) linear[std::to_string(i)] = q.linear_terms()[i];
  auto quadratic = nlohmann::ordered_json::object();
  for (const auto& [key, b] : q.quadratic_terms())
    if (b != 0.0) quadratic[std::to_string(key.first) + "," + std::to_string(key.second)] = b;
  j["linear"] = std::move(linear);
  j["quadratic"] = std::move(quadratic);
  out << j.dump(1) << '\n';
}

Qubo read_qubo(std::istream& in) {
  auto parse_id = [](const std::string& text, std::size_t n) {
    std::size_t pos = 0;
    long id = -1;
    try {
      id = std::stol(text, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != text.size() || id < 0 || static_cast<std::size_t>(id) >= n)
      throw Error(ErrorKind::schema, "QUBO variable id '" + text + "' out of range");
    return static_cast<VarId>(id);
  };
  try {
    const auto j = nlohmann::json::parse(in);
    const auto n = j.at("n").get<std::size_t>();
    Qubo q(n);
    q.add_offset(j.at("offset").get<double>());
    for (const auto& [key, value] : j.at("linear").items()) q.add_linear(parse_id(key, n), value.get<double>());
    for (const auto& [key, value] : j.at("quadratic").items()) {
      const auto comma = key.find(',');
      if (comma == std::string::npos) throw Error(ErrorKind::schema, "quadratic key '" + key + "' must be 'i,j'");
      const VarId a = parse_id(key.substr(0, comma), n);
      const VarId b = parse_id(key.substr(comma + 1), n);
      if (a >= b) throw Error(ErrorKind::schema, "quadratic key '" + key + "' must have i < j");
      q.add_quadratic(a, b, value.get<double>());
    }
    q.prune();
    return q;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::schema, std::string("malformed QUBO file: ") + ex.what());
  }
}

}  // namespace qaunwrap
