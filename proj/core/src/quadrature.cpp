// Copyright 2026 The Refocus Authors
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

#include "refocus/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace refocus {

GaussLegendreRule gauss_legendre_unit(int order) {
  if (order < 1) throw std::invalid_argument("quadrature order must be >= 1");
  GaussLegendreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton iteration on P_order from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) p0 = 1.0;
      derivative = order * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / derivative;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    if (order == 1) {
      x = 0.0;
      derivative = 1.0;
    }
    const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
    // Map [-1, 1] -> [0, 1]; weights halve.
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.nodes[order - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[order - 1 - i] = 0.5 * w;
  }
  return rule;
}

std::vector<PairNode> uniform_pair_rule(double e, int order) {
  if (!(e >= 0.0) || !std::isfinite(e)) throw std::invalid_argument("e must be finite and >= 0");
  if (e == 0.0) return {PairNode{0.0, 0.0, 1.0}};
  const GaussLegendreRule gl = gauss_legendre_unit(order);
  std::vector<PairNode> out;
  out.reserve(4 * static_cast<std::size_t>(order) * order);
  const double span = 2.0 * e;
  for (const double sign_s : {1.0, -1.0}) {
    for (const double sign_d : {1.0, -1.0}) {
      for (int i = 0; i < order; ++i) {
        const double u = gl.nodes[i];
        for (int j = 0; j < order; ++j) {
          const double v = gl.nodes[j];
          const double s = sign_s * span * u * (1.0 - v);
          const double d = sign_d * span * u * v;
          // Triangle area fraction 1/4, Duffy Jacobian 2u.
          const double w = 0.5 * u * gl.weights[i] * gl.weights[j];
          out.push_back({0.5 * (s - d), 0.5 * (s + d), w});
        }
      }
    }
  }
  return out;
}

}  // namespace refocus
