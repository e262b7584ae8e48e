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
/// Monte Carlo engine for tail probabilities of the block statistics.
///
/// Replication r draws its path from an RNG seeded with
/// derive_rep_seed(master, r), so the set of simulated values depends only
/// on the configuration. Workers take contiguous replication ranges and
/// keep integer counters that are summed at the end; results are bitwise
/// identical for any worker count.

#ifndef BLOCKNORM_MC_HPP
#define BLOCKNORM_MC_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "blocknorm/dist.hpp"
#include "blocknorm/error.hpp"
#include "blocknorm/procgen.hpp"
#include "blocknorm/rng.hpp"
#include "blocknorm/stats.hpp"

namespace blocknorm {

/// x = start, start + step, ..., stop; the endpoint is included when it is
/// within 1e-9 of a grid point. Values are computed as start + i * step and
/// rounded to 12 decimals so 1.6:4.0:0.1 yields exactly 1.6, 1.7, ... 4.0.
inline std::vector<double> make_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop) ||
      stop < start) {
    throw ConfigError("grid needs finite start <= stop and step > 0");
  }
  std::vector<double> grid;
  for (std::size_t i = 0;; ++i) {
    double x = start + static_cast<double>(i) * step;
    if (x > stop + 1e-9) break;
    x = std::round(x * 1e12) / 1e12;
    grid.push_back(x);
  }
  return grid;
}

inline std::vector<double> default_x_grid() { return make_grid(1.6, 4.0, 0.1); }

struct SimConfig {
  ProcessSpec process = IIDNormal{};
  std::size_t n = 1000;
  /// Statistic, block scheme, null mean mu0 and studentization.
  StatisticSpec statistic;
  std::size_t reps = 100000;
  Seed master_seed{};
  std::vector<double> x_grid = default_x_grid();
  /// Overrides the statistic's recommended reference law.
  std::optional<RefDist> ref;
};

struct TailRow {
  double x;
  double mc_tail;
  double ref_tail;
  /// mc_tail / ref_tail; NaN when ref_tail underflows to zero.
  double ratio;
  double mc_se;
  std::size_t degenerate_count;
};

struct TailTable {
  std::vector<TailRow> rows;
  RefDist ref = RefDist::Normal();
  std::size_t reps = 0;
  /// Replications that produced a finite statistic.
  std::size_t used_reps = 0;
  std::size_t degenerate_count = 0;
};

/// Degenerate replications tolerated before a run is aborted.
inline constexpr double kMaxDegenerateFraction = 1e-3;

inline void validate_config(const SimConfig& config) {
  validate_process(config.process);
  if (std::holds_alternative<HDLinear>(config.process)) {
    throw ConfigError("the tail engine simulates univariate processes only");
  }
  validate_spec(config.statistic);
  if (config.reps < 1) throw ConfigError("reps must be >= 1");
  if (config.x_grid.empty()) throw ConfigError("x grid must be non-empty");
  for (std::size_t i = 1; i < config.x_grid.size(); ++i) {
    if (!(config.x_grid[i] > config.x_grid[i - 1])) {
      throw ConfigError("x grid must be strictly increasing");
    }
  }
  for (double x : config.x_grid) {
    if (!std::isfinite(x)) throw ConfigError("x grid must be finite");
  }
  // Constructing the partition checks block sizes against n.
  StatisticEvaluator probe(config.statistic, config.n);
  (void)probe;
}

/// Recommended reference law of the configured statistic, or the override.
inline RefDist reference_for(const SimConfig& config) {
  if (config.ref) return *config.ref;
  return StatisticEvaluator(config.statistic, config.n).reference();
}

namespace detail {

inline unsigned ClampWorkers(unsigned workers, std::size_t reps) {
  if (workers == 0) workers = 1;
  if (workers > reps) workers = static_cast<unsigned>(reps);
  return workers;
}

// Calls acc.add(rep, value) for every finite replication and
// acc.degenerate(rep) otherwise. One accumulator per worker; each worker
// handles the contiguous range [w * reps / W, (w + 1) * reps / W).
template <class Accumulator>
std::vector<Accumulator> RunReplications(const SimConfig& config,
                                         unsigned workers,
                                         const Accumulator& prototype) {
  const std::size_t reps = config.reps;
  workers = ClampWorkers(workers, reps);
  std::vector<Accumulator> accs(workers, prototype);
  std::vector<std::exception_ptr> errors(workers);

  auto body = [&](unsigned w) {
    try {
      const std::size_t begin = reps * w / workers;
      const std::size_t end = reps * (w + 1) / workers;
      StatisticEvaluator eval(config.statistic, config.n);
      std::vector<double> path(config.n);
      for (std::size_t r = begin; r < end; ++r) {
        Xoshiro256 rng(derive_rep_seed(config.master_seed, r));
        fill_path(config.process, rng, path);
        double value;
        try {
          value = eval(path);
        } catch (const DegenerateError&) {
          accs[w].degenerate(r);
          continue;
        }
        accs[w].add(r, value);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    body(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(body, w);
    for (auto& t : threads) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return accs;
}

struct ExceedanceCounter {
  const std::vector<double>* grid = nullptr;
  // bucket[b] counts values v with exactly b grid points <= v.
  std::vector<std::uint64_t> bucket;
  std::uint64_t degenerate_count = 0;

  void add(std::size_t, double v) {
    const auto b = std::upper_bound(grid->begin(), grid->end(), v) - grid->begin();
    ++bucket[static_cast<std::size_t>(b)];
  }
  void degenerate(std::size_t) { ++degenerate_count; }
};

struct SampleCollector {
  std::size_t begin = 0;
  std::vector<double>* out = nullptr;
  std::uint64_t degenerate_count = 0;

  void add(std::size_t r, double v) { (*out)[r] = v; }
  void degenerate(std::size_t r) {
    (*out)[r] = std::numeric_limits<double>::quiet_NaN();
    ++degenerate_count;
  }
};

inline void CheckDegenerate(std::size_t degenerate, std::size_t reps) {
  if (static_cast<double>(degenerate) >
      kMaxDegenerateFraction * static_cast<double>(reps)) {
    throw SimulationError(
        std::to_string(degenerate) + " of " + std::to_string(reps) +
        " replications had a zero self-normalizer (limit 0.1%); "
        "check the process parameters and block sizes");
  }
}

}  // namespace detail

/// Monte Carlo estimate of P(stat >= x) on the configured grid, next to the
/// reference tail, their ratio and the binomial standard error.
inline TailTable estimate_tail(const SimConfig& config, unsigned workers = 1) {
  validate_config(config);
  const std::vector<double>& grid = config.x_grid;
  detail::ExceedanceCounter proto;
  proto.grid = &grid;
  proto.bucket.assign(grid.size() + 1, 0);
  const auto accs = detail::RunReplications(config, workers, proto);

  std::vector<std::uint64_t> bucket(grid.size() + 1, 0);
  std::uint64_t degenerate = 0;
  for (const auto& acc : accs) {
    for (std::size_t b = 0; b < bucket.size(); ++b) bucket[b] += acc.bucket[b];
    degenerate += acc.degenerate_count;
  }
  detail::CheckDegenerate(degenerate, config.reps);

  TailTable table;
  table.ref = reference_for(config);
  table.reps = config.reps;
  table.degenerate_count = degenerate;
  table.used_reps = config.reps - degenerate;
  const double used = static_cast<double>(table.used_reps);

  // count(v >= x_g) = sum of buckets above g.
  std::uint64_t above = 0;
  std::vector<std::uint64_t> exceed(grid.size());
  for (std::size_t g = grid.size(); g-- > 0;) {
    above += bucket[g + 1];
    exceed[g] = above;
  }
  for (std::size_t g = 0; g < grid.size(); ++g) {
    TailRow row{};
    row.x = grid[g];
    row.mc_tail = used > 0 ? static_cast<double>(exceed[g]) / used : 0.0;
    row.ref_tail = ref_upper(table.ref, row.x);
    row.ratio = row.ref_tail > 0.0 ? row.mc_tail / row.ref_tail
                                   : std::numeric_limits<double>::quiet_NaN();
    row.mc_se = used > 0 ? std::sqrt(row.mc_tail * (1.0 - row.mc_tail) / used)
                         : 0.0;
    row.degenerate_count = degenerate;
    table.rows.push_back(row);
  }
  return table;
}

struct StatSample {
  /// One entry per replication, in replication order; NaN marks a
  /// degenerate draw.
  std::vector<double> values;
  std::size_t degenerate_count = 0;
};

/// Raw simulated statistic values, for distributional checks.
inline StatSample simulate_statistic(const SimConfig& config,
                                     unsigned workers = 1) {
  validate_config(config);
  StatSample sample;
  sample.values.assign(config.reps, 0.0);
  detail::SampleCollector proto;
  proto.out = &sample.values;
  const auto accs = detail::RunReplications(config, workers, proto);
  for (const auto& acc : accs) sample.degenerate_count += acc.degenerate_count;
  detail::CheckDegenerate(sample.degenerate_count, config.reps);
  return sample;
}

/// Upper tails of the normal, t19 and t9 on x = 1.6, ..., 4.0, with the
/// t9-to-normal ratio. Unrounded; writers round to 5 decimals.
struct Table1Row {
  double x;
  double normal_tail;
  double t19_tail;
  double t9_tail;
  double t9_over_normal;
};

inline std::vector<Table1Row> table1() {
  std::vector<Table1Row> rows;
  for (double x : default_x_grid()) {
    const double n = normal_upper(x);
    const double t19 = t_upper(x, 19);
    const double t9 = t_upper(x, 9);
    rows.push_back({x, n, t19, t9, t9 / n});
  }
  return rows;
}

struct RatioGrid {
  std::vector<double> x;
  std::vector<ProcessSpec> params;
  /// One table per entry of `params`, in order.
  std::vector<TailTable> tables;

  double ratio(std::size_t row, std::size_t col) const {
    return tables[col].rows[row].ratio;
  }
};

/// Runs `base` once per process in `params` (same seed, same grid).
inline RatioGrid ratio_grid(const SimConfig& base,
                            const std::vector<ProcessSpec>& params,
                            unsigned workers = 1) {
  if (params.empty()) throw ConfigError("parameter grid must be non-empty");
  RatioGrid grid;
  grid.x = base.x_grid;
  grid.params = params;
  for (const ProcessSpec& p : params) {
    SimConfig cfg = base;
    cfg.process = p;
    grid.tables.push_back(estimate_tail(cfg, workers));
  }
  return grid;
}

/// Kolmogorov-Smirnov distance sup_x |F_N(x) - F(x)| between the empirical
/// CDF of `sample` and the reference CDF.
inline double ks_distance(std::span<const double> sample, const RefDist& ref) {
  if (sample.empty()) throw ShapeError("KS distance needs a non-empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = ref_cdf(ref, sorted[i]);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  return std::clamp(d, 0.0, 1.0);
}

}  // namespace blocknorm

#endif  // BLOCKNORM_MC_HPP
