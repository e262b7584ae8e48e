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

#include "blocknorm/dist.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "blocknorm/mc.hpp"
#include "gtest/gtest.h"
#include "support/published_table1.hpp"

namespace blocknorm {
namespace {

using published::kPublished;

double Round5(double v) { return std::round(v * 1e5) / 1e5; }

// Composite Simpson on the t density written out independently of the
// library; the tail beyond x + 400 is below 1e-20 for df >= 9.
double QuadratureUpperTail(double x, int df) {
  const double nu = df;
  const double c = std::tgamma(0.5 * (nu + 1)) /
                   (std::sqrt(nu * std::numbers::pi) * std::tgamma(0.5 * nu));
  auto pdf = [&](double t) { return c * std::pow(1 + t * t / nu, -0.5 * (nu + 1)); };
  const int steps = 400000;
  const double a = x, b = x + 400.0;
  const double h = (b - a) / steps;
  double sum = pdf(a) + pdf(b);
  for (int i = 1; i < steps; ++i) sum += pdf(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

double BisectQuantile(double p, int df) {
  double lo = -50, hi = 50;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (t_cdf(mid, df) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

TEST(Dist, NormalCdfBasics) {
  EXPECT_DOUBLE_EQ(normal_cdf(0.0), 0.5);
  EXPECT_NEAR(Round5(normal_cdf(2.0)), 0.97725, 1e-12);
  EXPECT_NEAR(Round5(normal_upper(2.0)), 0.02275, 1e-12);
  EXPECT_NEAR(Round5(normal_upper(4.0)), 0.00003, 1e-12);
  EXPECT_NEAR(Round5(normal_upper(2.5)), 0.00621, 1e-12);
  // 1 - Phi(1.959963984540054) = 0.025 to double precision.
  EXPECT_NEAR(normal_upper(1.959963984540054), 0.025, 1e-15);
}

TEST(Dist, StudentCdfBasics) {
  EXPECT_DOUBLE_EQ(t_cdf(0.0, 9), 0.5);
  EXPECT_NEAR(Round5(t_upper(1.6, 19)), 0.06305, 1e-12);
  EXPECT_NEAR(Round5(t_upper(4.0, 9)), 0.00156, 1e-12);
  EXPECT_NEAR(Round5(ref_upper(RefDist::StudentT(9), 2.5)), 0.01693, 1e-12);
  EXPECT_DOUBLE_EQ(ref_upper(RefDist::Normal(), 0.0), 0.5);
}

TEST(Dist, StudentMatchesClosedForms) {
  for (double x = -30.0; x <= 30.0; x += 0.37) {
    const double cauchy = 0.5 + std::atan(x) / std::numbers::pi;
    const double t2 = 0.5 + x / (2.0 * std::sqrt(2.0 + x * x));
    const double s = x / std::sqrt(3.0);
    const double t3 =
        0.5 + (s / (1.0 + s * s) + std::atan(s)) / std::numbers::pi;
    EXPECT_NEAR(t_cdf(x, 1), cauchy, 1e-14) << x;
    EXPECT_NEAR(t_cdf(x, 2), t2, 1e-14) << x;
    EXPECT_NEAR(t_cdf(x, 3), t3, 1e-14) << x;
  }
}

TEST(Dist, StudentTailMatchesQuadrature) {
  for (int df : {9, 19, 40}) {
    for (double x : {0.5, 1.6, 2.5, 4.0, 6.0}) {
      const double oracle = QuadratureUpperTail(x, df);
      EXPECT_NEAR(t_upper(x, df) / oracle, 1.0, 1e-9) << "df=" << df << " x=" << x;
    }
  }
}

TEST(Dist, PublishedTailTableReproduces) {
  const auto rows = table1();
  ASSERT_EQ(rows.size(), std::size(kPublished));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& want = kPublished[i];
    EXPECT_NEAR(rows[i].x, want.x, 1e-12);
    EXPECT_LE(std::fabs(Round5(rows[i].normal_tail) - want.normal), 1.0001e-5) << want.x;
    EXPECT_LE(std::fabs(Round5(rows[i].t19_tail) - want.t19), 1.0001e-5) << want.x;
    EXPECT_LE(std::fabs(Round5(rows[i].t9_tail) - want.t9), 1.0001e-5) << want.x;
    EXPECT_LE(std::fabs(Round5(rows[i].t9_over_normal) - want.ratio), 1.0001e-5) << want.x;
  }
}

TEST(Dist, GridInvariants) {
  for (int df = 1; df <= 200; ++df) {
    double prev = -1.0;
    for (int i = -800; i <= 800; ++i) {
      const double x = i * 0.01;
      const double c = t_cdf(x, df);
      ASSERT_GE(c, 0.0);
      ASSERT_LE(c, 1.0);
      ASSERT_GE(c, prev) << "df=" << df << " x=" << x;
      ASSERT_NEAR(c + t_cdf(-x, df), 1.0, 1e-13);
      prev = c;
    }
  }
  double prev = -1.0;
  for (int i = -800; i <= 800; ++i) {
    const double x = i * 0.01;
    const double c = normal_cdf(x);
    ASSERT_GE(c, prev);
    ASSERT_NEAR(c + normal_cdf(-x), 1.0, 1e-15);
    prev = c;
  }
}

TEST(Dist, StudentApproachesNormal) {
  for (double x = -5.0; x <= 5.0; x += 0.05) {
    EXPECT_NEAR(t_cdf(x, 10000), normal_cdf(x), 1e-4);
  }
}

TEST(Dist, QuantileBasics) {
  EXPECT_DOUBLE_EQ(ref_quantile(RefDist::Normal(), 0.5), 0.0);
  EXPECT_NEAR(ref_quantile(RefDist::Normal(), 0.97725), 2.0, 1e-4);
  const double v = ref_quantile(RefDist::StudentT(9), 0.95);
  EXPECT_NEAR(v, BisectQuantile(0.95, 9), 1e-10);
  EXPECT_NEAR(t_cdf(v, 9), 0.95, 1e-10);
  EXPECT_NEAR(ref_quantile(RefDist::Normal(), 0.975), 1.959963984540054, 1e-12);
}

TEST(Dist, QuantileRoundTrip) {
  const RefDist dists[] = {RefDist::Normal(), RefDist::StudentT(1),
                           RefDist::StudentT(2), RefDist::StudentT(9),
                           RefDist::StudentT(19), RefDist::StudentT(200)};
  for (const auto& d : dists) {
    for (double x = -6.0; x <= 6.0; x += 0.05) {
      EXPECT_LT(std::fabs(ref_quantile(d, ref_cdf(d, x)) - x), 1e-8)
          << d.name() << " x=" << x;
    }
    for (double q : {0.4, 0.1, 1e-2, 1e-3, 1e-4, 1e-6}) {
      EXPECT_NEAR(ref_upper(d, ref_quantile(d, 1.0 - q)) / q, 1.0, 1e-10)
          << d.name() << " q=" << q;
      EXPECT_NEAR(ref_upper(d, ref_upper_quantile(d, q)) / q, 1.0, 1e-10);
    }
    EXPECT_NEAR(ref_upper(d, ref_upper_quantile(d, 1e-12)) / 1e-12, 1.0, 1e-10);
  }
}

TEST(Dist, DomainErrors) {
  const double inf = std::numeric_limits<double>::infinity();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(normal_cdf(inf), DomainError);
  EXPECT_THROW(normal_cdf(nan), DomainError);
  EXPECT_THROW(t_cdf(1.0, 0), DomainError);
  EXPECT_THROW(t_cdf(nan, 3), DomainError);
  EXPECT_THROW(RefDist::StudentT(0), DomainError);
  EXPECT_THROW(ref_quantile(RefDist::Normal(), 0.0), DomainError);
  EXPECT_THROW(ref_quantile(RefDist::Normal(), 1.0), DomainError);
  EXPECT_THROW(ref_quantile(RefDist::StudentT(3), 1.5), DomainError);
}

}  // namespace
}  // namespace blocknorm
