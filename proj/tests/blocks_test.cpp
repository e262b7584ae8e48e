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

#include "blocknorm/blocks.hpp"

#include <numeric>
#include <random>
#include <vector>

#include "gtest/gtest.h"

namespace blocknorm {
namespace {

std::vector<double> Iota(std::size_t n) {
  std::vector<double> v(n);
  std::iota(v.begin(), v.end(), 1.0);
  return v;
}

TEST(Blocks, ExponentsToSizes) {
  EXPECT_EQ(exponents_to_sizes(1000, 0.5, 0.5), (std::pair<std::size_t, std::size_t>{31, 31}));
  EXPECT_EQ(exponents_to_sizes(1000, 0.25, 0.25), (std::pair<std::size_t, std::size_t>{5, 5}));
  EXPECT_EQ(exponents_to_sizes(16, 0.5, 0.25), (std::pair<std::size_t, std::size_t>{4, 2}));
  EXPECT_EQ(exponents_to_sizes(1000, 1.0 / 3.0, 1.0 / 3.0).first, 10u);
  EXPECT_THROW(exponents_to_sizes(1000, 0.25, 0.5), ConfigError);
  EXPECT_THROW(exponents_to_sizes(1000, 1.0, 0.5), ConfigError);
  EXPECT_THROW(exponents_to_sizes(0, 0.5, 0.5), ConfigError);
}

TEST(Blocks, BigSmallLayout) {
  const auto p = bbsb_partition(1000, 43, 7);
  EXPECT_EQ(p.k(), 20u);
  const auto big = p.with_tag(BlockTag::kBig);
  const auto small = p.with_tag(BlockTag::kSmall);
  ASSERT_EQ(big.size(), 20u);
  EXPECT_EQ(big.front(), (Block{1, 43, BlockTag::kBig}));
  EXPECT_EQ(small.front(), (Block{44, 50, BlockTag::kSmall}));
  EXPECT_EQ(big.back(), (Block{951, 993, BlockTag::kBig}));

  const auto q = bbsb_partition(10, 3, 2);
  EXPECT_EQ(q.k(), 2u);
  EXPECT_EQ(q.with_tag(BlockTag::kBig),
            (std::vector<Block>{{1, 3, BlockTag::kBig}, {6, 8, BlockTag::kBig}}));
  EXPECT_EQ(q.with_tag(BlockTag::kSmall),
            (std::vector<Block>{{4, 5, BlockTag::kSmall}, {9, 10, BlockTag::kSmall}}));

  EXPECT_THROW(bbsb_partition(4, 3, 2), ConfigError);
  EXPECT_THROW(bbsb_partition(100, 2, 3), ConfigError);
  EXPECT_THROW(bbsb_partition(100, 0, 0), ConfigError);
}

TEST(Blocks, InterlaceLayout) {
  const auto p = interlace_partition(1000, 50);
  EXPECT_EQ(p.k(), 10u);
  EXPECT_EQ(p.blocks()[0], (Block{1, 50, BlockTag::kOdd}));
  EXPECT_EQ(p.blocks()[1], (Block{101, 150, BlockTag::kOdd}));
  for (std::size_t n : {8u, 10u}) {
    const auto q = interlace_partition(n, 2);
    EXPECT_EQ(q.k(), 2u);
    EXPECT_EQ(q.blocks(), (std::vector<Block>{{1, 2, BlockTag::kOdd}, {5, 6, BlockTag::kOdd}}));
  }
  EXPECT_THROW(interlace_partition(3, 2), ConfigError);
}

TEST(Blocks, BatchLayout) {
  const auto p = batch_partition(1000, 50);
  EXPECT_EQ(p.blocks().size(), 20u);
  for (const auto& b : p.blocks()) EXPECT_EQ(b.length(), 50u);
  const auto q = batch_partition(8, 2);
  EXPECT_EQ(q.blocks(), (std::vector<Block>{{1, 2, BlockTag::kBatch},
                                            {3, 4, BlockTag::kBatch},
                                            {5, 6, BlockTag::kBatch},
                                            {7, 8, BlockTag::kBatch}}));
  EXPECT_THROW(batch_partition(3, 2), ConfigError);
}

TEST(Blocks, SumsByHand) {
  const auto x = Iota(8);
  EXPECT_EQ(block_sums(x, interlace_partition(8, 2), BlockTag::kOdd).values,
            (std::vector<double>{3, 11}));
  const auto b = block_sums(x, batch_partition(8, 2), BlockTag::kBatch);
  EXPECT_EQ(b.values, (std::vector<double>{3, 7, 11, 15}));
  EXPECT_EQ(b.k, 4u);
  EXPECT_EQ(b.block_length, 2u);

  const std::vector<double> zeros(37, 0.0);
  for (double v : block_sums(zeros, bbsb_partition(37, 5, 3), BlockTag::kSmall).values) {
    EXPECT_EQ(v, 0.0);
  }
  EXPECT_THROW(block_sums(x, batch_partition(9, 2), BlockTag::kBatch), ShapeError);
  EXPECT_THROW(block_sums(x, batch_partition(8, 2), BlockTag::kOdd), ConfigError);
}

// Fuzzed (n, m1, m2): blocks stay inside [1, n], never overlap, have the
// scheme's lengths and appear in increasing order within each tag.
TEST(Blocks, FuzzedPartitionInvariants) {
  std::mt19937_64 gen(12345);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = 1 + gen() % 400;
    const std::size_t m1 = 1 + gen() % 40;
    const std::size_t m2 = 1 + gen() % m1;
    std::vector<BlockPartition> parts;
    if (m1 + m2 <= n) parts.push_back(bbsb_partition(n, m1, m2));
    if (2 * m1 <= n) {
      parts.push_back(interlace_partition(n, m1));
      parts.push_back(batch_partition(n, m1));
    }
    for (const auto& p : parts) {
      std::vector<int> owner(n + 1, 0);
      std::size_t prev_end[4] = {0, 0, 0, 0};
      for (const auto& b : p.blocks()) {
        ASSERT_GE(b.start, 1u);
        ASSERT_LE(b.end, n);
        ASSERT_LE(b.start, b.end);
        const auto tag = static_cast<int>(b.tag);
        ASSERT_GT(b.start, prev_end[tag]);
        prev_end[tag] = b.end;
        for (std::size_t i = b.start; i <= b.end; ++i) ASSERT_EQ(owner[i]++, 0);
        switch (b.tag) {
          case BlockTag::kBig: ASSERT_EQ(b.length(), m1); break;
          case BlockTag::kSmall: ASSERT_EQ(b.length(), m2); break;
          default: ASSERT_EQ(b.length(), m1); break;
        }
      }
      const auto& s = p.scheme();
      if (std::holds_alternative<BigSmall>(s)) {
        ASSERT_EQ(p.k(), n / (m1 + m2));
        ASSERT_EQ(p.blocks().size(), 2 * p.k());
      } else if (std::holds_alternative<Interlace>(s)) {
        ASSERT_EQ(p.k(), n / (2 * m1));
        ASSERT_EQ(p.blocks().size(), p.k());
      } else {
        ASSERT_EQ(p.blocks().size(), 2 * (n / (2 * m1)));
      }
    }
  }
}

TEST(Blocks, EqualBlockIdentity) {
  for (std::size_t n : {10u, 37u, 1000u}) {
    for (std::size_t m = 1; 2 * m <= n; m += 3) {
      EXPECT_EQ(bbsb_partition(n, m, m).with_tag(BlockTag::kBig).size(),
                interlace_partition(n, m).blocks().size());
      const auto big = bbsb_partition(n, m, m).with_tag(BlockTag::kBig);
      const auto odd = interlace_partition(n, m).blocks();
      for (std::size_t j = 0; j < big.size(); ++j) {
        EXPECT_EQ(big[j].start, odd[j].start);
        EXPECT_EQ(big[j].end, odd[j].end);
      }
    }
  }
}

TEST(Blocks, BatchSumsTotalTheCoveredPrefix) {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<int> val(-50, 50);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 4 + gen() % 300;
    const std::size_t m = 1 + gen() % (n / 2);
    std::vector<double> x(n);
    for (auto& v : x) v = val(gen);  // integers: sums are exact
    const auto part = batch_partition(n, m);
    const auto sums = block_sums(x, part, BlockTag::kBatch);
    const double total = std::accumulate(sums.values.begin(), sums.values.end(), 0.0);
    const double prefix = std::accumulate(x.begin(), x.begin() + 2 * part.k() * m, 0.0);
    EXPECT_EQ(total, prefix);
  }
}

TEST(Blocks, SumsAreLinear) {
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<int> val(-20, 20);
  const std::size_t n = 120;
  std::vector<double> x(n), z(n), combo(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = val(gen);
    z[i] = val(gen);
    combo[i] = 3 * x[i] - 2 * z[i];
  }
  const auto part = bbsb_partition(n, 9, 4);
  for (auto tag : {BlockTag::kBig, BlockTag::kSmall}) {
    const auto sx = block_sums(x, part, tag).values;
    const auto sz = block_sums(z, part, tag).values;
    const auto sc = block_sums(combo, part, tag).values;
    for (std::size_t j = 0; j < sc.size(); ++j) EXPECT_EQ(sc[j], 3 * sx[j] - 2 * sz[j]);
  }
}

}  // namespace
}  // namespace blocknorm
