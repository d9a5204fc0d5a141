// Copyright 2026 The fluxsweet Authors
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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fluxsweet/bessel.hpp"
#include "fluxsweet/chebyshev.hpp"

using namespace fluxsweet;

TEST(Bessel, MatchesStandardLibrary) {
  for (double x : {0.0, 1e-3, 0.7, 3.0, 11.5, 40.0, 90.0}) {
    const auto j = bessel_j_sequence(60, x);
    ASSERT_EQ(j.size(), 61u);
    for (int n = 0; n <= 60; ++n) {
      EXPECT_NEAR(j[n], std::cyl_bessel_j(static_cast<double>(n), x), 2e-14)
          << "n=" << n << " x=" << x;
    }
  }
}

TEST(Bessel, RowParityAndCutoff) {
  const BesselRow row(7.3);
  for (int n = 1; n < 12; ++n) {
    EXPECT_DOUBLE_EQ(row(-n), (n % 2 ? -1.0 : 1.0) * row(n));
  }
  EXPECT_EQ(row(row.max_order() + 5), 0.0);
  const int cut = bessel_cutoff_order(7.3);
  EXPECT_LT(std::abs(std::cyl_bessel_j(cut + 1.0, 7.3)), 1e-17);
}

TEST(Bessel, DerivativeMatchesFiniteDifference) {
  const double x = 4.2, h = 1e-5;
  const BesselRow row(x);
  for (int n = -6; n <= 6; ++n) {
    const BesselRow lo(x - h), hi(x + h);
    EXPECT_NEAR(row.derivative(n), (hi(n) - lo(n)) / (2 * h), 1e-9);
  }
}

TEST(Chebyshev, ClenshawMatchesTrigonometricForm) {
  const ChebyshevSeries s({0.5, -1.0, 0.25, 2.0, -0.75});
  for (double x = -1.0; x <= 1.0; x += 0.125) {
    double direct = 0.0;
    for (int m = 0; m < 5; ++m) direct += s.coefficients()[m] * std::cos(m * std::acos(x));
    EXPECT_NEAR(s(x), direct, 1e-14);
  }
}

TEST(Chebyshev, DerivativeMatchesFiniteDifference) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01;
  std::vector<double> c(15);
  for (auto& v : c) v = n01(rng);
  const ChebyshevSeries s(c);
  const auto d = s.derivative();
  const double h = 1e-6;
  for (double x = -0.95; x < 0.95; x += 0.1) {
    EXPECT_NEAR(d(x), (s(x + h) - s(x - h)) / (2 * h), 1e-6 * (1 + std::abs(d(x))));
  }
}

TEST(Chebyshev, RootsAgreeWithSignChangeScan) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<double> c(2 + trial % 18);
    for (auto& v : c) v = n01(rng);
    const ChebyshevSeries s(c);
    const auto roots = s.roots_in_unit_interval();

    // Oracle: sign changes on a fine grid, each bracket refined by bisection.
    std::vector<double> scan;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
      double a = -1.0 + 2.0 * i / n, b = -1.0 + 2.0 * (i + 1) / n;
      if (s(a) * s(b) > 0) continue;
      for (int it = 0; it < 60; ++it) {
        const double m = 0.5 * (a + b);
        (s(a) * s(m) <= 0 ? b : a) = m;
      }
      scan.push_back(0.5 * (a + b));
    }
    // Double roots (no sign change) are measure-zero for random coefficients.
    ASSERT_EQ(roots.size(), scan.size()) << "trial " << trial;
    for (std::size_t i = 0; i < roots.size(); ++i) EXPECT_NEAR(roots[i], scan[i], 1e-9);
  }
}

TEST(Chebyshev, KnownRootsOfT5) {
  const ChebyshevSeries t5({0, 0, 0, 0, 0, 1});
  const auto r = t5.roots_in_unit_interval();
  ASSERT_EQ(r.size(), 5u);
  for (int k = 0; k < 5; ++k) {
    EXPECT_NEAR(r[4 - k], std::cos((2 * k + 1) * M_PI / 10), 1e-13);
  }
}

TEST(Chebyshev, ZeroSeriesHasNoIsolatedRoots) {
  const ChebyshevSeries z({0.0, 0.0, 0.0});
  EXPECT_TRUE(z.is_zero(0.0));
  EXPECT_EQ(z.degree(), -1);
  EXPECT_TRUE(z.roots_in_unit_interval().empty());
}

TEST(Chebyshev, TrimDropsSmallTail) {
  const ChebyshevSeries s({1.0, 0.5, 1e-14, 1e-15});
  EXPECT_EQ(s.trimmed(1e-12).degree(), 1);
}
