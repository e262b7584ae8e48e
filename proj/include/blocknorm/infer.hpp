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

/// \file
/// Bonferroni simultaneous confidence intervals and the induced test for
/// the mean vector of a stationary p-dimensional series, built from
/// interlaced block sums of each coordinate.

#ifndef BLOCKNORM_INFER_HPP
#define BLOCKNORM_INFER_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "blocknorm/blocks.hpp"
#include "blocknorm/dist.hpp"
#include "blocknorm/error.hpp"
#include "blocknorm/series.hpp"
#include "blocknorm/stats.hpp"

namespace blocknorm {

struct CiSet {
  std::vector<double> center;
  std::vector<double> halfwidth;
  double alpha = 0.05;
  std::size_t m = 0;
  std::size_t k = 0;
  RefDist quantile_source = RefDist::Normal();
  /// Critical value at upper tail alpha / (2p).
  double quantile = 0.0;
  Studentization studentization = Studentization::kStudent;
  /// log p exceeds n^(1/4); coverage guarantees get shaky.
  bool dimension_warning = false;

  std::size_t size() const noexcept { return center.size(); }
  double lower(std::size_t l) const { return center[l] - halfwidth[l]; }
  double upper(std::size_t l) const { return center[l] + halfwidth[l]; }
};

struct TestResult {
  bool reject = false;
  /// 0-based coordinates whose hypothesized mean falls outside its interval.
  std::vector<std::size_t> violating_coordinates;
  double alpha = 0.05;
  std::vector<double> mu0;
};

/// Default block length round(n^(1/4)), at least 1.
inline std::size_t auto_block_length(std::size_t n) {
  const double m = std::round(std::pow(static_cast<double>(n), 0.25));
  return m < 1.0 ? 1 : static_cast<std::size_t>(m);
}

/// Simultaneous 1 - alpha intervals center_l +- halfwidth_l with
///   center_l    = Ybar_l / m
///   halfwidth_l = q * sqrt(c * sum_j (Y_jl - Ybar_l)^2) / (k m)
/// where Y_jl are the k odd-block sums of column l, q is the upper
/// alpha/(2p) quantile of N(0,1) or, with use_t, of t_{k-1}, and c is
/// k/(k-1) under Student scaling or 1 under block-sum scaling.
inline CiSet simultaneous_ci(const PanelSeries& panel, double alpha,
                             std::size_t m, bool use_t = true,
                             Studentization stud = Studentization::kStudent) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("alpha must lie in (0, 1)");
  }
  const std::size_t n = panel.rows();
  const std::size_t p = panel.cols();
  if (n == 0 || p == 0) throw ShapeError("panel must be non-empty");
  const BlockPartition part = interlace_partition(n, m);
  const std::size_t k = part.k();
  if (k < 2) {
    throw ConfigError("need at least 2 interlaced blocks, got k = " +
                      std::to_string(k));
  }
  const RegularBlocks layout = part.layout(BlockTag::kOdd);

  CiSet ci;
  ci.alpha = alpha;
  ci.m = m;
  ci.k = k;
  ci.studentization = stud;
  ci.quantile_source =
      use_t ? RefDist::StudentT(static_cast<int>(k - 1)) : RefDist::Normal();
  ci.quantile = ref_upper_quantile(ci.quantile_source,
                                   alpha / (2.0 * static_cast<double>(p)));
  ci.dimension_warning =
      std::log(static_cast<double>(p)) > std::pow(static_cast<double>(n), 0.25);

  const double kd = static_cast<double>(k);
  const double md = static_cast<double>(m);
  const double scale = stud == Studentization::kStudent ? kd / (kd - 1.0) : 1.0;
  std::vector<double> sums(k);
  for (std::size_t l = 0; l < p; ++l) {
    const std::vector<double> col = panel.column(l);
    detail::SumRegularBlocks(col, layout, sums);
    double total = 0.0;
    for (double y : sums) total += y;
    const double mean = total / kd;
    double ss = 0.0;
    for (double y : sums) ss += (y - mean) * (y - mean);
    ci.center.push_back(mean / md);
    ci.halfwidth.push_back(ci.quantile * std::sqrt(scale * ss) / (kd * md));
  }
  return ci;
}

/// Rejects H0: mu = mu0 when any mu0_l lies outside its interval.
inline TestResult mean_test(const CiSet& ci, std::span<const double> mu0) {
  if (mu0.size() != ci.size()) {
    throw ShapeError("mu0 has " + std::to_string(mu0.size()) +
                     " entries but the panel has " +
                     std::to_string(ci.size()) + " columns");
  }
  TestResult result;
  result.alpha = ci.alpha;
  result.mu0.assign(mu0.begin(), mu0.end());
  for (std::size_t l = 0; l < ci.size(); ++l) {
    if (std::fabs(mu0[l] - ci.center[l]) > ci.halfwidth[l]) {
      result.violating_coordinates.push_back(l);
    }
  }
  result.reject = !result.violating_coordinates.empty();
  return result;
}

inline TestResult mean_test(const PanelSeries& panel,
                            std::span<const double> mu0, double alpha,
                            std::size_t m, bool use_t = true,
                            Studentization stud = Studentization::kStudent) {
  if (mu0.size() != panel.cols()) {
    throw ShapeError("mu0 has " + std::to_string(mu0.size()) +
                     " entries but the panel has " +
                     std::to_string(panel.cols()) + " columns");
  }
  return mean_test(simultaneous_ci(panel, alpha, m, use_t, stud), mu0);
}

}  // namespace blocknorm

#endif  // BLOCKNORM_INFER_HPP
