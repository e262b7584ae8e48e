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
/// Block index schemes: big-block/small-block, interlaced (odd blocks of an
/// equal-size partition) and consecutive batches. Indices reported in
/// `Block` are 1-based and inclusive. Observations past the last complete
/// block group are left unassigned.

#ifndef BLOCKNORM_BLOCKS_HPP
#define BLOCKNORM_BLOCKS_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "blocknorm/error.hpp"

namespace blocknorm {

struct BigSmall {
  std::size_t m1;
  std::size_t m2;
  friend bool operator==(const BigSmall&, const BigSmall&) = default;
};

struct Interlace {
  std::size_t m;
  friend bool operator==(const Interlace&, const Interlace&) = default;
};

struct Batch {
  std::size_t m;
  friend bool operator==(const Batch&, const Batch&) = default;
};

using BlockScheme = std::variant<BigSmall, Interlace, Batch>;

enum class BlockTag { kBig, kSmall, kOdd, kBatch };

inline const char* to_string(BlockTag tag) {
  switch (tag) {
    case BlockTag::kBig: return "big";
    case BlockTag::kSmall: return "small";
    case BlockTag::kOdd: return "odd";
    case BlockTag::kBatch: return "batch";
  }
  return "?";
}

struct Block {
  std::size_t start;  // 1-based, inclusive
  std::size_t end;    // 1-based, inclusive
  BlockTag tag;

  std::size_t length() const noexcept { return end - start + 1; }
  friend bool operator==(const Block&, const Block&) = default;
};

/// Equally spaced blocks of equal length over a 0-based array:
/// block j covers [offset + j*stride, offset + j*stride + length).
struct RegularBlocks {
  std::size_t offset;
  std::size_t stride;
  std::size_t length;
  std::size_t count;
};

class BlockPartition {
 public:
  BlockPartition(std::vector<Block> blocks, std::size_t k, BlockScheme scheme,
                 std::size_t n)
      : blocks_(std::move(blocks)), k_(k), scheme_(scheme), n_(n) {}

  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  /// Number of block groups: floor(n / (m1 + m2)) or floor(n / (2m)). A
  /// batch partition holds 2k blocks.
  std::size_t k() const noexcept { return k_; }
  const BlockScheme& scheme() const noexcept { return scheme_; }
  std::size_t n() const noexcept { return n_; }

  std::vector<Block> with_tag(BlockTag tag) const {
    std::vector<Block> out;
    for (const Block& b : blocks_) {
      if (b.tag == tag) out.push_back(b);
    }
    return out;
  }

  /// Regular-stride description of the blocks carrying `tag`.
  RegularBlocks layout(BlockTag tag) const;

 private:
  std::vector<Block> blocks_;
  std::size_t k_;
  BlockScheme scheme_;
  std::size_t n_;
};

/// Sums of the series over the blocks of one tag, in index order.
struct BlockSums {
  std::vector<double> values;
  std::size_t block_length = 0;
  /// Number of blocks summed; equals values.size().
  std::size_t k = 0;
};

/// m1 = floor(n^alpha1), m2 = floor(n^alpha2). A relative nudge of 1e-12
/// keeps exact integer powers (1000^(1/3)) from flooring one short.
inline std::pair<std::size_t, std::size_t> exponents_to_sizes(std::size_t n,
                                                              double alpha1,
                                                              double alpha2) {
  if (!(alpha1 > 0.0 && alpha1 < 1.0 && alpha2 > 0.0 && alpha2 < 1.0)) {
    throw ConfigError("block exponents must lie in (0, 1)");
  }
  if (alpha1 < alpha2) {
    throw ConfigError("block exponents require alpha1 >= alpha2");
  }
  if (n < 1) throw ConfigError("sample size must be positive");
  const auto floor_pow = [n](double a) {
    return static_cast<std::size_t>(
        std::floor(std::pow(static_cast<double>(n), a) * (1.0 + 1e-12)));
  };
  const std::size_t m1 = floor_pow(alpha1);
  const std::size_t m2 = floor_pow(alpha2);
  if (m2 < 1) throw ConfigError("sample too small for a block of length 1");
  return {m1, m2};
}

inline void validate_scheme(const BlockScheme& scheme) {
  if (const auto* bs = std::get_if<BigSmall>(&scheme)) {
    if (bs->m1 < 1 || bs->m2 < 1) {
      throw ConfigError("big/small block sizes must be >= 1");
    }
    if (bs->m1 < bs->m2) {
      throw ConfigError("big block size m1 must be >= small block size m2");
    }
  } else if (const auto* il = std::get_if<Interlace>(&scheme)) {
    if (il->m < 1) throw ConfigError("interlace block size must be >= 1");
  } else if (const auto* bt = std::get_if<Batch>(&scheme)) {
    if (bt->m < 1) throw ConfigError("batch block size must be >= 1");
  }
}

/// Alternating big blocks of length m1 and small blocks of length m2;
/// k = floor(n / (m1 + m2)).
inline BlockPartition bbsb_partition(std::size_t n, std::size_t m1,
                                     std::size_t m2) {
  validate_scheme(BigSmall{m1, m2});
  if (m1 + m2 > n) {
    throw ConfigError("m1 + m2 = " + std::to_string(m1 + m2) +
                      " exceeds sample size " + std::to_string(n));
  }
  const std::size_t span = m1 + m2;
  const std::size_t k = n / span;
  std::vector<Block> blocks;
  blocks.reserve(2 * k);
  for (std::size_t j = 0; j < k; ++j) {
    blocks.push_back({j * span + 1, j * span + m1, BlockTag::kBig});
    blocks.push_back({j * span + m1 + 1, (j + 1) * span, BlockTag::kSmall});
  }
  return BlockPartition(std::move(blocks), k, BigSmall{m1, m2}, n);
}

/// Odd blocks of an equal-size partition: block j covers
/// 2m(j-1)+1 .. 2m(j-1)+m; the even blocks in between are unused.
inline BlockPartition interlace_partition(std::size_t n, std::size_t m) {
  validate_scheme(Interlace{m});
  if (2 * m > n) {
    throw ConfigError("2m = " + std::to_string(2 * m) +
                      " exceeds sample size " + std::to_string(n));
  }
  const std::size_t k = n / (2 * m);
  std::vector<Block> blocks;
  blocks.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    blocks.push_back({2 * m * j + 1, 2 * m * j + m, BlockTag::kOdd});
  }
  return BlockPartition(std::move(blocks), k, Interlace{m}, n);
}

/// 2k consecutive blocks of length m, k = floor(n / (2m)).
inline BlockPartition batch_partition(std::size_t n, std::size_t m) {
  validate_scheme(Batch{m});
  if (2 * m > n) {
    throw ConfigError("2m = " + std::to_string(2 * m) +
                      " exceeds sample size " + std::to_string(n));
  }
  const std::size_t k = n / (2 * m);
  std::vector<Block> blocks;
  blocks.reserve(2 * k);
  for (std::size_t j = 0; j < 2 * k; ++j) {
    blocks.push_back({m * j + 1, m * (j + 1), BlockTag::kBatch});
  }
  return BlockPartition(std::move(blocks), k, Batch{m}, n);
}

inline BlockPartition make_partition(std::size_t n, const BlockScheme& scheme) {
  return std::visit(
      [n](const auto& s) -> BlockPartition {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, BigSmall>) {
          return bbsb_partition(n, s.m1, s.m2);
        } else if constexpr (std::is_same_v<S, Interlace>) {
          return interlace_partition(n, s.m);
        } else {
          return batch_partition(n, s.m);
        }
      },
      scheme);
}

inline RegularBlocks BlockPartition::layout(BlockTag tag) const {
  if (const auto* bs = std::get_if<BigSmall>(&scheme_)) {
    const std::size_t span = bs->m1 + bs->m2;
    if (tag == BlockTag::kBig) return {0, span, bs->m1, k_};
    if (tag == BlockTag::kSmall) return {bs->m1, span, bs->m2, k_};
  } else if (const auto* il = std::get_if<Interlace>(&scheme_)) {
    if (tag == BlockTag::kOdd) return {0, 2 * il->m, il->m, k_};
  } else if (const auto* bt = std::get_if<Batch>(&scheme_)) {
    if (tag == BlockTag::kBatch) return {0, bt->m, bt->m, 2 * k_};
  }
  throw ConfigError(std::string("partition has no blocks tagged '") +
                    to_string(tag) + "'");
}

namespace detail {

// Writes the block sums into `out` (size layout.count). Summation runs
// left to right within each block, so equal layouts give bitwise-equal sums.
inline void SumRegularBlocks(std::span<const double> x,
                             const RegularBlocks& layout,
                             std::span<double> out) {
  for (std::size_t j = 0; j < layout.count; ++j) {
    const double* p = x.data() + layout.offset + j * layout.stride;
    double s = 0.0;
    for (std::size_t i = 0; i < layout.length; ++i) s += p[i];
    out[j] = s;
  }
}

}  // namespace detail

inline BlockSums block_sums(std::span<const double> series,
                            const BlockPartition& partition, BlockTag tag) {
  if (series.size() != partition.n()) {
    throw ShapeError("series length " + std::to_string(series.size()) +
                     " does not match partition length " +
                     std::to_string(partition.n()));
  }
  const RegularBlocks layout = partition.layout(tag);
  BlockSums sums;
  sums.values.resize(layout.count);
  sums.block_length = layout.length;
  sums.k = layout.count;
  detail::SumRegularBlocks(series, layout, sums.values);
  return sums;
}

}  // namespace blocknorm

#endif  // BLOCKNORM_BLOCKS_HPP
