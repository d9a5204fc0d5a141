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

#include "fluxsweet/chebyshev.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace fluxsweet {

int ChebyshevSeries::degree() const {
  for (int m = static_cast<int>(c_.size()) - 1; m >= 0; --m) {
    if (c_[m] != 0.0) return m;
  }
  return -1;
}

double ChebyshevSeries::max_abs_coefficient() const {
  double s = 0.0;
  for (double c : c_) s = std::max(s, std::abs(c));
  return s;
}

double ChebyshevSeries::operator()(double x) const {
  double b1 = 0.0;
  double b2 = 0.0;
  const double two_x = 2.0 * x;
  for (int m = static_cast<int>(c_.size()) - 1; m >= 1; --m) {
    const double b0 = c_[m] + two_x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return (c_.empty() ? 0.0 : c_[0]) + x * b1 - b2;
}

ChebyshevSeries ChebyshevSeries::derivative() const {
  const int n = static_cast<int>(c_.size()) - 1;
  if (n < 1) return ChebyshevSeries({0.0});
  std::vector<double> d(n, 0.0);
  // d_{m-1} = d_{m+1} + 2 m c_m, then halve d_0.
  for (int m = n; m >= 1; --m) {
    const double upper = (m + 1 <= n - 1) ? d[m + 1] : 0.0;
    d[m - 1] = upper + 2.0 * m * c_[m];
  }
  d[0] *= 0.5;
  return ChebyshevSeries(std::move(d));
}

ChebyshevSeries ChebyshevSeries::trimmed(double rel_tol) const {
  const double cut = rel_tol * max_abs_coefficient();
  int last = static_cast<int>(c_.size()) - 1;
  while (last > 0 && std::abs(c_[last]) <= cut) --last;
  return ChebyshevSeries(std::vector<double>(c_.begin(), c_.begin() + std::max(last, 0) + 1));
}

std::vector<double> ChebyshevSeries::roots_in_unit_interval() const {
  std::vector<double> roots;
  const ChebyshevSeries p = trimmed(1e-14);
  const auto& c = p.c_;
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1 || p.max_abs_coefficient() == 0.0) return roots;

  std::vector<double> candidates;
  if (n == 1) {
    candidates.push_back(-c[0] / c[1]);
  } else {
    Eigen::MatrixXd colleague = Eigen::MatrixXd::Zero(n, n);
    colleague(0, 1) = 1.0;
    for (int k = 1; k < n - 1; ++k) {
      colleague(k, k - 1) = 0.5;
      colleague(k, k + 1) = 0.5;
    }
    colleague(n - 1, n - 2) += 0.5;
    for (int j = 0; j < n; ++j) colleague(n - 1, j) -= c[j] / (2.0 * c[n]);

    Eigen::EigenSolver<Eigen::MatrixXd> solver(colleague, /*computeEigenvectors=*/false);
    const auto& ev = solver.eigenvalues();
    for (int k = 0; k < ev.size(); ++k) {
      const double re = ev[k].real();
      const double im = ev[k].imag();
      if (std::abs(im) < 1e-6 && re > -1.0 - 1e-6 && re < 1.0 + 1e-6) candidates.push_back(re);
    }
  }

  const ChebyshevSeries dp = p.derivative();
  for (double x : candidates) {
    for (int it = 0; it < 8; ++it) {
      const double f = p(x);
      const double df = dp(x);
      if (df == 0.0) break;
      const double step = f / df;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    if (x < -1.0 - 1e-10 || x > 1.0 + 1e-10) continue;
    roots.push_back(std::clamp(x, -1.0, 1.0));
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-10; }),
              roots.end());
  return roots;
}

}  // namespace fluxsweet
