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

#include "fluxsweet/bessel.hpp"

#include <algorithm>
#include <cmath>

namespace fluxsweet {

int bessel_cutoff_order(double x) {
  const double ax = std::abs(x);
  // Past the turning point J_n(x) falls off like Ai(2^{1/3}(n - x) / n^{1/3}).
  return static_cast<int>(std::ceil(ax + 12.0 * std::cbrt(ax) + 20.0));
}

std::vector<double> bessel_j_sequence(int max_order, double x) {
  std::vector<double> out(static_cast<std::size_t>(std::max(max_order, 0)) + 1, 0.0);
  const double ax = std::abs(x);
  if (ax < 1e-300) {
    out[0] = 1.0;
    return out;
  }

  const int top = std::max(max_order, static_cast<int>(ax)) + 30 +
                  static_cast<int>(10.0 * std::cbrt(std::max(max_order, 1) + ax));
  const int start = top + (top & 1);  // even start keeps the normalization sum simple

  std::vector<double> work(static_cast<std::size_t>(start) + 2, 0.0);
  double next = 0.0;
  double cur = 1e-30;
  work[start] = cur;
  const double two_over_x = 2.0 / ax;
  for (int k = start; k >= 1; --k) {
    const double prev = k * two_over_x * cur - next;
    next = cur;
    cur = prev;
    work[k - 1] = cur;
    if (std::abs(cur) > 1e250) {
      for (int j = k - 1; j <= start; ++j) work[j] *= 1e-250;
      next *= 1e-250;
      cur *= 1e-250;
    }
  }

  double norm = work[0];
  for (int k = 2; k <= start; k += 2) norm += 2.0 * work[k];
  const double scale = 1.0 / norm;

  for (int n = 0; n <= max_order; ++n) {
    double v = work[n] * scale;
    if (x < 0 && (n & 1)) v = -v;
    out[n] = v;
  }
  return out;
}

BesselRow::BesselRow(double x, int min_order) : x_(x) {
  const int order = std::max(min_order, bessel_cutoff_order(x)) + 1;
  values_ = bessel_j_sequence(order, x);
}

}  // namespace fluxsweet
