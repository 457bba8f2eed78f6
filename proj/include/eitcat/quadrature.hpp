// Copyright 2026 The eitcat Authors
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

#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <algorithm>
#include <sstream>
#include <vector>

#include "eitcat/error.hpp"

namespace eitcat {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  int max_intervals = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

/// Globally adaptive 15-point Gauss-Kronrod quadrature on [a, b].
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate drops below max(abs_tol, rel_tol * |value|). On failure the
/// thrown NumericError names the worst remaining interval.
template <class F>
QuadratureResult integrate(F&& f, double a, double b,
                           const QuadratureOptions& opt = {}) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
  using Gauss = boost::math::quadrature::gauss<double, 7>;
  if (a == b) return {};

  struct Piece {
    double lo, hi, value, error;
    bool operator<(const Piece& o) const { return error < o.error; }
  };
  // Node tables hold the non-negative half of each symmetric rule.
  auto rule = [&](const auto& nodes, const auto& weights, double mid,
                  double half) {
    double sum = weights[0] * f(mid);
    for (std::size_t i = 1; i < nodes.size(); ++i)
      sum += weights[i] * (f(mid - half * nodes[i]) + f(mid + half * nodes[i]));
    return sum * half;
  };
  auto eval = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    const double k = rule(Kronrod::abscissa(), Kronrod::weights(), mid, half);
    const double g = rule(Gauss::abscissa(), Gauss::weights(), mid, half);
    if (!std::isfinite(k)) {
      std::ostringstream os;
      os << "integrand not finite on [" << lo << ", " << hi << "]";
      throw NumericError(os.str());
    }
    const double err = std::max(std::abs(k - g),
                                4.0 * std::numeric_limits<double>::epsilon() * std::abs(k));
    return Piece{lo, hi, k, err};
  };

  std::vector<Piece> heap{eval(a, b)};
  double total = heap.front().value;
  double total_err = heap.front().error;

  while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (static_cast<int>(heap.size()) >= opt.max_intervals) {
      const Piece& worst = heap.front();
      std::ostringstream os;
      os.precision(17);
      os << "quadrature did not converge: residual estimate " << total_err
         << ", worst interval [" << worst.lo << ", " << worst.hi
         << "] with error " << worst.error;
      throw NumericError(os.str());
    }
    std::pop_heap(heap.begin(), heap.end());
    const Piece worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    for (const Piece& half : {eval(worst.lo, mid), eval(mid, worst.hi)}) {
      heap.push_back(half);
      std::push_heap(heap.begin(), heap.end());
    }
    // Resum instead of updating incrementally so cancellation error does not
    // accumulate over thousands of bisections.
    total = 0.0;
    total_err = 0.0;
    for (const Piece& p : heap) {
      total += p.value;
      total_err += p.error;
    }
  }
  return {total, total_err, static_cast<int>(heap.size())};
}

}  // namespace eitcat
