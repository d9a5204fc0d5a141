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

#include <span>
#include <vector>

namespace fluxsweet {

/// Finite series sum_m c_m T_m(x) in the Chebyshev basis of the first kind.
class ChebyshevSeries {
 public:
  ChebyshevSeries() = default;
  explicit ChebyshevSeries(std::vector<double> coefficients) : c_(std::move(coefficients)) {}

  std::span<const double> coefficients() const { return c_; }
  std::vector<double>& mutable_coefficients() { return c_; }

  /// Index of the last non-zero coefficient, or -1 for the empty/zero series.
  int degree() const;
  double max_abs_coefficient() const;
  bool is_zero(double abs_tol) const { return max_abs_coefficient() <= abs_tol; }

  /// Clenshaw evaluation.
  double operator()(double x) const;
  ChebyshevSeries derivative() const;

  /// Drops trailing coefficients below rel_tol * max |c_m|.
  ChebyshevSeries trimmed(double rel_tol) const;

  /// Real roots in [-1, 1], ascending. Eigenvalues of the colleague matrix,
  /// each polished by Newton steps on the series itself. A zero series has no
  /// isolated roots and returns an empty list; check is_zero() first.
  std::vector<double> roots_in_unit_interval() const;

 private:
  std::vector<double> c_;
};

}  // namespace fluxsweet
