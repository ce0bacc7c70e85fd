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

#include <cstddef>
#include <span>
#include <vector>

#include "qaunwrap/error.hpp"

namespace qaunwrap {

/// Row-major 2-D array used for phase fields, label fields and per-pixel
/// weights.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(checked(rows) * checked(cols)), fill) {}
  Grid(int rows, int cols, std::vector<T> values)
      : rows_(rows), cols_(cols), data_(std::move(values)) {
    if (static_cast<long>(data_.size()) != long{checked(rows)} * checked(cols))
      throw Error(ErrorKind::dimension_mismatch, "grid data does not match shape");
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  T& operator()(int r, int c) { return data_[index(r, c)]; }
  const T& operator()(int r, int c) const { return data_[index(r, c)]; }

  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }

  bool same_shape(const Grid<T>& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  template <typename U>
  bool same_shape(const Grid<U>& other) const noexcept {
    return rows_ == other.rows() && cols_ == other.cols();
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  static int checked(int n) {
    if (n < 0) throw Error(ErrorKind::invalid_parameter, "negative grid dimension");
    return n;
  }
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(c);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using PhaseField = Grid<double>;
using LabelField = Grid<int>;

}  // namespace qaunwrap
