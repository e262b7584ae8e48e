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
/// Synthetic dependent processes. Every generator is a pure function of its
/// parameters and seed.

#ifndef BLOCKNORM_PROCGEN_HPP
#define BLOCKNORM_PROCGEN_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "blocknorm/error.hpp"
#include "blocknorm/rng.hpp"
#include "blocknorm/series.hpp"

namespace blocknorm {

struct IIDNormal {
  friend bool operator==(const IIDNormal&, const IIDNormal&) = default;
};

/// X_i = rho X_{i-1} + e_i, started from the stationary N(0, 1/(1-rho^2)).
struct AR1 {
  double rho = 0.0;
  friend bool operator==(const AR1&, const AR1&) = default;
};

/// U_i = sqrt(a^2 + b^2 U_{i-1}^2) e_i. Started from N(0, a^2/(1-b^2)) and
/// run through `burn_in` discarded steps.
struct ARCH1 {
  double a = 1.0;
  double b = 0.0;
  std::size_t burn_in = 1000;
  friend bool operator==(const ARCH1&, const ARCH1&) = default;
};

/// Z_i = sum_{j=0}^{lag_cap} decay^j A0 eta_{i-j}, A0 tridiagonal
/// (1 on the diagonal, 1/2 beside it) with rows scaled to unit norm.
struct HDLinear {
  std::size_t p = 1;
  double decay = 0.5;
  std::size_t lag_cap = 200;
  friend bool operator==(const HDLinear&, const HDLinear&) = default;
};

using ProcessSpec = std::variant<IIDNormal, AR1, ARCH1, HDLinear>;

inline void validate_process(const ProcessSpec& spec) {
  if (const auto* ar = std::get_if<AR1>(&spec)) {
    if (!(std::fabs(ar->rho) < 1.0)) {
      throw ConfigError("AR(1) requires |rho| < 1, got " +
                        std::to_string(ar->rho));
    }
  } else if (const auto* arch = std::get_if<ARCH1>(&spec)) {
    if (!(arch->a > 0.0) || !std::isfinite(arch->a)) {
      throw ConfigError("ARCH(1) requires a > 0");
    }
    if (!(arch->b >= 0.0 && arch->b < 1.0)) {
      throw ConfigError("ARCH(1) requires 0 <= b < 1, got " +
                        std::to_string(arch->b));
    }
  } else if (const auto* hd = std::get_if<HDLinear>(&spec)) {
    if (hd->p < 1) throw ConfigError("linear process dimension must be >= 1");
    if (!(hd->decay >= 0.0 && hd->decay < 1.0)) {
      throw ConfigError("linear process decay must lie in [0, 1)");
    }
    if (hd->lag_cap < 1) throw ConfigError("lag cap must be >= 1");
  }
}

inline std::string describe(const ProcessSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, IIDNormal>) {
          return "iid";
        } else if constexpr (std::is_same_v<S, AR1>) {
          return "ar1(rho=" + std::to_string(s.rho) + ")";
        } else if constexpr (std::is_same_v<S, ARCH1>) {
          return "arch1(a=" + std::to_string(s.a) +
                 ",b=" + std::to_string(s.b) + ")";
        } else {
          return "hd-linear(p=" + std::to_string(s.p) +
                 ",decay=" + std::to_string(s.decay) +
                 ",lag_cap=" + std::to_string(s.lag_cap) + ")";
        }
      },
      spec);
}

/// Writes one path of a univariate process into `out` using `rng`.
/// HDLinear is multivariate and rejected here.
inline void fill_path(const ProcessSpec& spec, Xoshiro256& rng,
                      std::span<double> out) {
  if (std::holds_alternative<IIDNormal>(spec)) {
    for (double& v : out) v = rng.normal();
  } else if (const auto* ar = std::get_if<AR1>(&spec)) {
    const double rho = ar->rho;
    double prev = rng.normal() / std::sqrt(1.0 - rho * rho);
    for (double& v : out) {
      prev = rho * prev + rng.normal();
      v = prev;
    }
  } else if (const auto* arch = std::get_if<ARCH1>(&spec)) {
    const double a2 = arch->a * arch->a;
    const double b2 = arch->b * arch->b;
    double prev = rng.normal() * std::sqrt(a2 / (1.0 - b2));
    for (std::size_t i = 0; i < arch->burn_in; ++i) {
      prev = std::sqrt(a2 + b2 * prev * prev) * rng.normal();
    }
    for (double& v : out) {
      prev = std::sqrt(a2 + b2 * prev * prev) * rng.normal();
      v = prev;
    }
  } else {
    throw ConfigError("multivariate process cannot fill a univariate path");
  }
}

inline Series gen_iid_normal(std::size_t n, Seed seed) {
  if (n < 1) throw ConfigError("series length must be >= 1");
  Xoshiro256 rng(seed);
  std::vector<double> out(n);
  fill_path(IIDNormal{}, rng, out);
  return Series(std::move(out));
}

inline Series gen_ar1(std::size_t n, double rho, Seed seed) {
  validate_process(AR1{rho});
  if (n < 1) throw ConfigError("series length must be >= 1");
  Xoshiro256 rng(seed);
  std::vector<double> out(n);
  fill_path(AR1{rho}, rng, out);
  return Series(std::move(out));
}

inline Series gen_arch1(std::size_t n, double a, double b, Seed seed,
                        std::size_t burn_in = 1000) {
  const ARCH1 spec{a, b, burn_in};
  validate_process(spec);
  if (n < 1) throw ConfigError("series length must be >= 1");
  Xoshiro256 rng(seed);
  std::vector<double> out(n);
  fill_path(spec, rng, out);
  return Series(std::move(out));
}

/// The fixed row-normalized tridiagonal loading matrix, row-major p x p.
inline std::vector<double> hd_loading_matrix(std::size_t p) {
  std::vector<double> a(p * p, 0.0);
  for (std::size_t r = 0; r < p; ++r) {
    a[r * p + r] = 1.0;
    if (r > 0) a[r * p + r - 1] = 0.5;
    if (r + 1 < p) a[r * p + r + 1] = 0.5;
    double norm2 = 0.0;
    for (std::size_t c = 0; c < p; ++c) norm2 += a[r * p + c] * a[r * p + c];
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t c = 0; c < p; ++c) a[r * p + c] *= inv;
  }
  return a;
}

/// n x p panel from the truncated vector linear process.
inline PanelSeries gen_hd_linear(std::size_t n, const HDLinear& spec,
                                 Seed seed) {
  validate_process(spec);
  if (n < 1) throw ConfigError("panel length must be >= 1");
  const std::size_t p = spec.p;
  const std::size_t lags = spec.lag_cap;
  const std::size_t total = n + lags;

  // Innovations eta_t for t = 0 .. n + lags - 1, drawn row by row.
  Xoshiro256 rng(seed);
  std::vector<double> eta(total * p);
  for (double& v : eta) v = rng.normal();

  // xi_t = sum_{j=0}^{lags} decay^j eta_{t-j}; rolled forward by adding
  // the newest term and dropping the one that falls off the window.
  const double drop = std::pow(spec.decay, static_cast<double>(lags + 1));
  std::vector<double> xi(p, 0.0);
  for (std::size_t l = 0; l < p; ++l) {
    double w = 1.0;
    for (std::size_t j = 0; j <= lags; ++j) {
      xi[l] += w * eta[(lags - j) * p + l];
      w *= spec.decay;
    }
  }

  const std::vector<double> a0 = hd_loading_matrix(p);
  PanelSeries out(n, p);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      const std::size_t t = lags + i;
      for (std::size_t l = 0; l < p; ++l) {
        xi[l] = spec.decay * xi[l] + eta[t * p + l] - drop * eta[(t - lags - 1) * p + l];
      }
    }
    for (std::size_t r = 0; r < p; ++r) {
      const std::size_t lo = r > 0 ? r - 1 : 0;
      const std::size_t hi = r + 1 < p ? r + 1 : r;
      double z = 0.0;
      for (std::size_t c = lo; c <= hi; ++c) z += a0[r * p + c] * xi[c];
      out(i, r) = z;
    }
  }
  return out;
}

/// Univariate path for any univariate spec; HDLinear with p = 1 is allowed
/// and returns its single column.
inline Series generate(const ProcessSpec& spec, std::size_t n, Seed seed) {
  validate_process(spec);
  if (const auto* hd = std::get_if<HDLinear>(&spec)) {
    if (hd->p != 1) throw ConfigError("multivariate process; use gen_hd_linear");
    return Series(gen_hd_linear(n, *hd, seed).column(0));
  }
  if (n < 1) throw ConfigError("series length must be >= 1");
  Xoshiro256 rng(seed);
  std::vector<double> out(n);
  fill_path(spec, rng, out);
  return Series(std::move(out));
}

}  // namespace blocknorm

#endif  // BLOCKNORM_PROCGEN_HPP
