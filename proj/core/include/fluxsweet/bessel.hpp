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

#pragma once

#include <vector>

namespace fluxsweet {

/// J_0(x) .. J_max_order(x) by Miller's backward recurrence, normalized with
/// J_0 + 2 sum_k J_2k = 1. Accurate to a few ulp relative to max |J_n(x)|.
std::vector<double> bessel_j_sequence(int max_order, double x);

/// Smallest order N such that |J_n(x)| < 1e-17 for every n > N.
int bessel_cutoff_order(double x);

/// Integer-order Bessel values J_n(x) for a fixed argument, including negative
/// orders through J_{-n}(x) = (-1)^n J_n(x). Orders beyond the stored range
/// evaluate to zero, which is exact to double precision past the cutoff.
class BesselRow {
 public:
  BesselRow() = default;
  /// Stores orders 0..max(min_order, cutoff(x)) + 1.
  explicit BesselRow(double x, int min_order = 0);

  double argument() const { return x_; }
  int max_order() const { return static_cast<int>(values_.size()) - 1; }

  double operator()(int n) const {
    const int m = n < 0 ? -n : n;
    if (m >= static_cast<int>(values_.size())) return 0.0;
    const double v = values_[m];
    return (n < 0 && (m & 1)) ? -v : v;
  }

  /// dJ_n/dx from J'_n = (J_{n-1} - J_{n+1}) / 2.
  double derivative(int n) const { return 0.5 * ((*this)(n - 1) - (*this)(n + 1)); }

 private:
  double x_ = 0.0;
  std::vector<double> values_{1.0};
};

}  // namespace fluxsweet
