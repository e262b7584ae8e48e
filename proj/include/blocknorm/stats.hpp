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
/// Self-normalized block statistics.
///
/// Unstarred statistics (W_n, I_n) divide the sum of block sums Y_j by
/// sqrt(sum Y_j^2) and assume a known zero mean. Starred statistics center
/// the denominator at the block-sum average and test a hypothesized mean mu
/// through the numerator sum_j (Y_j - m mu).
///
/// Starred statistics come in two scalings that differ by the constant
/// sqrt(K / (K - 1)), K the number of blocks used:
///   * Studentization::kStudent (default) divides by
///     sqrt(K / (K - 1) * sum_j (Y_j - Ybar)^2). This is the one-sample
///     t statistic of the block sums, so with i.i.d. Gaussian block sums it
///     is exactly t_{K-1}.
///   * Studentization::kBlockSum divides by sqrt(sum_j (Y_j - Ybar)^2)
///     directly. Same asymptotics, but its finite-sample law is the
///     rescaled sqrt(K / (K - 1)) t_{K-1}.

#ifndef BLOCKNORM_STATS_HPP
#define BLOCKNORM_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "blocknorm/blocks.hpp"
#include "blocknorm/dist.hpp"
#include "blocknorm/error.hpp"
#include "blocknorm/series.hpp"

namespace blocknorm {

enum class StatKind { kWn, kWnStar, kIn, kInStar, kTnStar, kTwoSampleW };

enum class Studentization { kStudent, kBlockSum };

inline const char* to_string(StatKind kind) {
  switch (kind) {
    case StatKind::kWn: return "w";
    case StatKind::kWnStar: return "w-star";
    case StatKind::kIn: return "i";
    case StatKind::kInStar: return "i-star";
    case StatKind::kTnStar: return "t-star";
    case StatKind::kTwoSampleW: return "two-sample-w";
  }
  return "?";
}

inline const char* to_string(Studentization s) {
  return s == Studentization::kStudent ? "student" : "block-sum";
}

inline bool is_starred(StatKind kind) {
  return kind == StatKind::kWnStar || kind == StatKind::kInStar ||
         kind == StatKind::kTnStar;
}

struct StatValue {
  StatKind kind;
  double value;
  /// Block groups used (number of big or odd blocks; half the batch count).
  std::size_t k;
  /// Recommended finite-sample reference law.
  RefDist ref;
};

struct TwoSampleData {
  Series x1;
  Series x2;
};

namespace detail {

// sum(y) / sqrt(sum(y^2))
inline double SelfNormalizedSum(std::span<const double> y) {
  double s = 0.0;
  double v2 = 0.0;
  for (double v : y) {
    s += v;
    v2 += v * v;
  }
  if (v2 == 0.0) {
    throw DegenerateError("self-normalizer is zero: all block sums vanish");
  }
  return s / std::sqrt(v2);
}

// sum(y - center) / sqrt(c * sum((y - ybar)^2)), c per studentization.
inline double CenteredStudent(std::span<const double> y, double center,
                              Studentization stud) {
  const std::size_t count = y.size();
  double total = 0.0;
  for (double v : y) total += v;
  const double mean = total / static_cast<double>(count);
  double num = 0.0;
  double ss = 0.0;
  bool all_equal = true;
  for (double v : y) {
    num += v - center;
    const double d = v - mean;
    ss += d * d;
    all_equal = all_equal && v == y[0];
  }
  if (all_equal || ss == 0.0) {
    throw DegenerateError(
        "centered self-normalizer is zero: all block sums are equal");
  }
  if (stud == Studentization::kStudent) {
    ss *= static_cast<double>(count) / static_cast<double>(count - 1);
  }
  return num / std::sqrt(ss);
}

inline void RequireBlocks(std::size_t count, std::size_t minimum,
                          const char* what) {
  if (count < minimum) {
    throw ConfigError(std::string(what) + " needs at least " +
                      std::to_string(minimum) + " blocks, got " +
                      std::to_string(count));
  }
}

inline void CheckFinite(std::span<const double> x) { Series::Validate(x); }

inline int AsDf(std::size_t v) { return static_cast<int>(v); }

}  // namespace detail

/// Big-block self-normalized sum S_{n,1} / V_{n,1}.
inline StatValue w_n(std::span<const double> x, std::size_t m1,
                     std::size_t m2) {
  detail::CheckFinite(x);
  const BlockPartition part = bbsb_partition(x.size(), m1, m2);
  const BlockSums y = block_sums(x, part, BlockTag::kBig);
  return {StatKind::kWn, detail::SelfNormalizedSum(y.values), part.k(),
          RefDist::StudentT(detail::AsDf(part.k()))};
}

/// Big-block Student statistic with hypothesized mean mu.
inline StatValue w_n_star(std::span<const double> x, std::size_t m1,
                          std::size_t m2, double mu,
                          Studentization stud = Studentization::kStudent) {
  detail::CheckFinite(x);
  const BlockPartition part = bbsb_partition(x.size(), m1, m2);
  detail::RequireBlocks(part.k(), 2, "w_n_star");
  const BlockSums y = block_sums(x, part, BlockTag::kBig);
  const double center = static_cast<double>(m1) * mu;
  return {StatKind::kWnStar, detail::CenteredStudent(y.values, center, stud),
          part.k(), RefDist::StudentT(detail::AsDf(part.k() - 1))};
}

/// Interlaced self-normalized sum over the odd blocks; equals
/// w_n(x, m, m) exactly.
inline StatValue i_n(std::span<const double> x, std::size_t m) {
  detail::CheckFinite(x);
  const BlockPartition part = interlace_partition(x.size(), m);
  const BlockSums y = block_sums(x, part, BlockTag::kOdd);
  return {StatKind::kIn, detail::SelfNormalizedSum(y.values), part.k(),
          RefDist::StudentT(detail::AsDf(part.k()))};
}

/// Interlaced Student statistic with hypothesized mean mu.
inline StatValue i_n_star(std::span<const double> x, std::size_t m, double mu,
                          Studentization stud = Studentization::kStudent) {
  detail::CheckFinite(x);
  const BlockPartition part = interlace_partition(x.size(), m);
  detail::RequireBlocks(part.k(), 2, "i_n_star");
  const BlockSums y = block_sums(x, part, BlockTag::kOdd);
  const double center = static_cast<double>(m) * mu;
  return {StatKind::kInStar, detail::CenteredStudent(y.values, center, stud),
          part.k(), RefDist::StudentT(detail::AsDf(part.k() - 1))};
}

/// Batch-means Student statistic over 2k consecutive blocks of length m.
/// mu defaults to the zero null mean.
inline StatValue t_n_star(std::span<const double> x, std::size_t m,
                          double mu = 0.0,
                          Studentization stud = Studentization::kStudent) {
  detail::CheckFinite(x);
  const BlockPartition part = batch_partition(x.size(), m);
  const BlockSums b = block_sums(x, part, BlockTag::kBatch);
  const double center = static_cast<double>(m) * mu;
  return {StatKind::kTnStar, detail::CenteredStudent(b.values, center, stud),
          part.k(), RefDist::StudentT(detail::AsDf(2 * part.k() - 1))};
}

/// Two-sample big-block statistic
///   (S1/k1 - S2/k2) / sqrt(V1^2/k1^2 + V2^2/k2^2),
/// k_l = floor(n_l / (m1 + m2)). Both samples share (m1, m2); when block
/// sizes come from exponents, compute them from n1 + n2 with
/// two_sample_block_sizes(). Reference is t_{min(k1,k2)-1}, or the normal
/// when a sample has a single block.
inline StatValue two_sample_w(const TwoSampleData& data, std::size_t m1,
                              std::size_t m2) {
  const auto side = [m1, m2](std::span<const double> x, double& mean,
                             double& scaled_v2) {
    const BlockPartition part = bbsb_partition(x.size(), m1, m2);
    const BlockSums y = block_sums(x, part, BlockTag::kBig);
    double s = 0.0;
    double v2 = 0.0;
    for (double v : y.values) {
      s += v;
      v2 += v * v;
    }
    const double kl = static_cast<double>(part.k());
    mean = s / kl;
    scaled_v2 = v2 / (kl * kl);
    return part.k();
  };
  if (data.x1.empty() || data.x2.empty()) {
    throw ShapeError("both samples must be non-empty");
  }
  double mean1 = 0.0, mean2 = 0.0, v1 = 0.0, v2 = 0.0;
  const std::size_t k1 = side(data.x1, mean1, v1);
  const std::size_t k2 = side(data.x2, mean2, v2);
  const double denom2 = v1 + v2;
  if (denom2 == 0.0) {
    throw DegenerateError("two-sample self-normalizer is zero");
  }
  const std::size_t kmin = std::min(k1, k2);
  const RefDist ref = kmin >= 2 ? RefDist::StudentT(detail::AsDf(kmin - 1))
                                : RefDist::Normal();
  return {StatKind::kTwoSampleW, (mean1 - mean2) / std::sqrt(denom2), kmin,
          ref};
}

/// Block sizes for the two-sample statistic: exponents applied to n1 + n2.
inline std::pair<std::size_t, std::size_t> two_sample_block_sizes(
    std::size_t n1, std::size_t n2, double alpha1, double alpha2) {
  return exponents_to_sizes(n1 + n2, alpha1, alpha2);
}

/// A single-series statistic together with its block scheme; the unit of
/// work of the Monte Carlo engine.
struct StatisticSpec {
  StatKind kind = StatKind::kInStar;
  BlockScheme scheme = Interlace{50};
  double mu = 0.0;
  Studentization studentization = Studentization::kStudent;
};

/// Throws ConfigError unless `spec.kind` is a single-series statistic whose
/// scheme matches (W: big/small, I: interlace, T*: batch).
inline void validate_spec(const StatisticSpec& spec) {
  validate_scheme(spec.scheme);
  const bool ok = [&] {
    switch (spec.kind) {
      case StatKind::kWn:
      case StatKind::kWnStar:
        return std::holds_alternative<BigSmall>(spec.scheme);
      case StatKind::kIn:
      case StatKind::kInStar:
        return std::holds_alternative<Interlace>(spec.scheme);
      case StatKind::kTnStar:
        return std::holds_alternative<Batch>(spec.scheme);
      case StatKind::kTwoSampleW:
        return false;
    }
    return false;
  }();
  if (!ok) {
    throw ConfigError(std::string("statistic '") + to_string(spec.kind) +
                      "' is not a single-series statistic for this scheme");
  }
}

inline StatValue compute_statistic(const StatisticSpec& spec,
                                   std::span<const double> x) {
  validate_spec(spec);
  switch (spec.kind) {
    case StatKind::kWn: {
      const auto& s = std::get<BigSmall>(spec.scheme);
      return w_n(x, s.m1, s.m2);
    }
    case StatKind::kWnStar: {
      const auto& s = std::get<BigSmall>(spec.scheme);
      return w_n_star(x, s.m1, s.m2, spec.mu, spec.studentization);
    }
    case StatKind::kIn:
      return i_n(x, std::get<Interlace>(spec.scheme).m);
    case StatKind::kInStar:
      return i_n_star(x, std::get<Interlace>(spec.scheme).m, spec.mu,
                      spec.studentization);
    case StatKind::kTnStar:
      return t_n_star(x, std::get<Batch>(spec.scheme).m, spec.mu,
                      spec.studentization);
    case StatKind::kTwoSampleW:
      break;
  }
  throw ConfigError("two-sample statistic needs two series");
}

/// Allocation-free evaluation for hot loops. Skips the finiteness scan;
/// the caller guarantees finite input of a length matching `partition`.
class StatisticEvaluator {
 public:
  StatisticEvaluator(const StatisticSpec& spec, std::size_t n)
      : spec_(spec), partition_(make_partition(n, spec.scheme)) {
    validate_spec(spec_);
    if (is_starred(spec_.kind) && spec_.kind != StatKind::kTnStar) {
      detail::RequireBlocks(partition_.k(), 2, to_string(spec_.kind));
    }
    BlockTag tag = BlockTag::kBig;
    if (std::holds_alternative<Interlace>(spec_.scheme)) tag = BlockTag::kOdd;
    if (std::holds_alternative<Batch>(spec_.scheme)) tag = BlockTag::kBatch;
    layout_ = partition_.layout(tag);
    sums_.resize(layout_.count);
    center_ = static_cast<double>(layout_.length) * spec_.mu;
  }

  std::size_t n() const noexcept { return partition_.n(); }
  std::size_t k() const noexcept { return partition_.k(); }

  RefDist reference() const {
    const auto k = partition_.k();
    switch (spec_.kind) {
      case StatKind::kWn:
      case StatKind::kIn:
        return RefDist::StudentT(detail::AsDf(k));
      case StatKind::kTnStar:
        return RefDist::StudentT(detail::AsDf(2 * k - 1));
      default:
        return RefDist::StudentT(detail::AsDf(k - 1));
    }
  }

  /// Throws DegenerateError on a zero denominator.
  double operator()(std::span<const double> x) {
    detail::SumRegularBlocks(x, layout_, sums_);
    if (is_starred(spec_.kind)) {
      return detail::CenteredStudent(sums_, center_, spec_.studentization);
    }
    return detail::SelfNormalizedSum(sums_);
  }

 private:
  StatisticSpec spec_;
  BlockPartition partition_;
  RegularBlocks layout_{};
  std::vector<double> sums_;
  double center_ = 0.0;
};

}  // namespace blocknorm

#endif  // BLOCKNORM_STATS_HPP
