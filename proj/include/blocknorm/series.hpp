// Copyright 2026 The blocknorm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BLOCKNORM_SERIES_HPP
#define BLOCKNORM_SERIES_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "blocknorm/error.hpp"

namespace blocknorm {

/// One sample path X_1, ..., X_n. Non-empty and finite.
class Series {
 public:
  Series() = default;
  explicit Series(std::vector<double> values) : values_(std::move(values)) {
    Validate(values_);
  }
  Series(std::initializer_list<double> values) : Series(std::vector(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::span<const double> view() const noexcept { return values_; }
  operator std::span<const double>() const noexcept { return values_; }

  static void Validate(std::span<const double> values) {
    if (values.empty()) throw ShapeError("series must be non-empty");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!std::isfinite(values[i])) {
        throw DomainError("series value at index " + std::to_string(i + 1) +
                          " is not finite");
      }
    }
  }

 private:
  std::vector<double> values_;
};

/// n x p panel Z_{il}: rows are time points, columns coordinates. Row-major.
class PanelSeries {
 public:
  PanelSeries() = default;
  PanelSeries(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  PanelSeries(std::size_t rows, std::size_t cols, std::vector<double> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw ShapeError("panel data size does not match rows x cols");
    }
    for (double v : data_) {
      if (!std::isfinite(v)) throw DomainError("panel entries must be finite");
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t i, std::size_t l) {
    return data_[i * cols_ + l];
  }
  double operator()(std::size_t i, std::size_t l) const {
    return data_[i * cols_ + l];
  }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * cols_, cols_);
  }
  std::vector<double> column(std::size_t l) const {
    std::vector<double> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = data_[i * cols_ + l];
    return out;
  }
  const std::vector<double>& data() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace blocknorm

#endif  // BLOCKNORM_SERIES_HPP
