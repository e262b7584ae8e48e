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

// Simultaneous intervals and a mean test on a simulated 20-dimensional
// linear process whose true mean is zero.

#include <cstdio>
#include <vector>

#include "blocknorm/blocknorm.hpp"

int main() {
  using namespace blocknorm;

  const std::size_t n = 2000;
  const PanelSeries panel = gen_hd_linear(n, HDLinear{20, 0.5, 200}, Seed{11});
  const std::size_t m = auto_block_length(n);
  const CiSet ci = simultaneous_ci(panel, 0.05, m);

  std::printf("n=%zu p=%zu m=%zu k=%zu quantile=%.4f (%s)\n", n, ci.size(), ci.m, ci.k,
              ci.quantile, ci.quantile_source.name().c_str());
  for (std::size_t l = 0; l < ci.size(); ++l) {
    std::printf("  z%-3zu [%9.5f, %9.5f]\n", l + 1, ci.lower(l), ci.upper(l));
  }

  const std::vector<double> zero(ci.size(), 0.0);
  const std::vector<double> shifted(ci.size(), 0.5);
  std::printf("H0: mu = 0    -> %s\n", mean_test(ci, zero).reject ? "reject" : "keep");
  std::printf("H0: mu = 0.5  -> %s\n", mean_test(ci, shifted).reject ? "reject" : "keep");
  return 0;
}
