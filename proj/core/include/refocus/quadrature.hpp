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

#ifndef REFOCUS_QUADRATURE_HPP_
#define REFOCUS_QUADRATURE_HPP_

#include <vector>

namespace refocus {

/// Gauss-Legendre rule mapped to [0, 1]; weights sum to 1.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Throws std::invalid_argument for order < 1.
GaussLegendreRule gauss_legendre_unit(int order);

struct PairNode {
  double eps1 = 0.0;
  double eps2 = 0.0;
  double weight = 0.0;
};

/// Expectation rule for a pair (eps1, eps2) drawn uniformly from [-e, e]^2.
///
/// The integrands of interest are only piecewise smooth: they bend where
/// eps1 + eps2 or eps2 - eps1 changes sign. The square is therefore mapped to
/// the diamond |s| + |d| <= 2e with s = eps1 + eps2, d = eps2 - eps1, cut into
/// four triangles along s = 0 and d = 0, and each triangle is covered by a
/// collapsed (Duffy) tensor rule of `order` x `order` points. Returns
/// 4 order^2 nodes whose weights sum to 1; a single node for e = 0.
std::vector<PairNode> uniform_pair_rule(double e, int order);

}  // namespace refocus

#endif  // REFOCUS_QUADRATURE_HPP_
