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

#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "refocus/analytics.hpp"

namespace refocus::analytics {
namespace {

// Average of f(x + y) over the square [-e, e]^2: u = x + y has the
// triangular density (2e - |u|) / 4e^2 on [-2e, 2e].
template <typename F>
double square_average(double e, F f) {
  using boost::math::quadrature::gauss_kronrod;
  auto weighted = [&](double u) { return f(u) * (2 * e - std::abs(u)); };
  const double left = gauss_kronrod<double, 31>::integrate(weighted, -2 * e, 0.0, 10, 1e-15);
  const double right = gauss_kronrod<double, 31>::integrate(weighted, 0.0, 2 * e, 10, 1e-15);
  return (left + right) / (4 * e * e);
}

TEST(CS, MatchQuadratureOracle) {
  for (double e : {0.01, 0.05, 0.1, 0.3, 0.7, 1.2}) {
    const double c = square_average(e, [](double u) { return std::cos(u) * std::cos(u); });
    const double s = square_average(e, [](double u) { return std::sin(u) * std::sin(u); });
    EXPECT_NEAR(c_of_e(e), c, 1e-12) << e;
    EXPECT_NEAR(s_of_e(e), s, 1e-12) << e;
  }
}

TEST(CS, Limits) {
  EXPECT_EQ(c_of_e(0.0), 1.0);
  EXPECT_EQ(s_of_e(0.0), 0.0);
  EXPECT_THROW(c_of_e(-0.1), std::invalid_argument);
  EXPECT_THROW(s_of_e(-0.1), std::invalid_argument);
  // Leading order 2e^2/3.
  EXPECT_NEAR(s_of_e(1e-4) / (2e-8 / 3), 1.0, 1e-7);
  // The true value at e = 0.3 sits 4.7% below the leading-order 0.06.
  EXPECT_NEAR(s_of_e(0.3), 0.0571929, 1e-7);
}

TEST(CS, SeriesBranchIsContinuous) {
  const double below = s_of_e(std::nextafter(2e-2, 0.0));
  const double at = s_of_e(2e-2);
  EXPECT_NEAR(below / at, 1.0, 1e-12);
}

TEST(Property, CPlusSIsOne) {
  for (double e = 0.0; e < 2.0; e += 0.013) EXPECT_NEAR(c_of_e(e) + s_of_e(e), 1.0, 1e-15);
}

TEST(Binomial, KnownValues) {
  EXPECT_EQ(binomial(5, 3), 10.0);
  EXPECT_EQ(binomial(3, 2), 3.0);
  EXPECT_EQ(binomial(0, 0), 1.0);
  EXPECT_EQ(binomial(4, 5), 0.0);
  EXPECT_EQ(binomial(40, 20), 137846528820.0);
}

TEST(MeasurementInfidelity, LeadingTerm) {
  EXPECT_NEAR(measurement_infidelity_leading(0.3, 2), 0.0054, 1e-15);
  EXPECT_NEAR(measurement_infidelity_leading(0.3, 3), 0.00108, 1e-16);
  EXPECT_NEAR(measurement_infidelity_leading(0.3, 1), 0.03, 1e-15);
  EXPECT_EQ(measurement_infidelity_leading(0.0, 2), 0.0);
  EXPECT_THROW(measurement_infidelity_leading(0.1, 0), std::invalid_argument);
}

TEST(MeasurementInfidelity, FullBreakdown) {
  const double e = 0.2, eps2 = 1e-4;
  const int n = 2;
  const auto zz = measurement_infidelity_full(e, eps2, n, ParityKind::ZZ);
  const auto xx = measurement_infidelity_full(e, eps2, n, ParityKind::XX);
  const double flip = 2 * e * e / 3;
  EXPECT_NEAR(zz.single_body_term, (4 * n * (1 + flip) + 5) * eps2, 1e-18);
  EXPECT_NEAR(xx.single_body_term, (4 * n * (1 + flip) + 1) * eps2, 1e-18);
  EXPECT_NEAR(zz.total - xx.total, 4 * eps2, 1e-18);
  EXPECT_EQ(zz.amplitude_term, measurement_infidelity_leading(e, n));
  EXPECT_THROW(measurement_infidelity_full(e, 2.0, n, ParityKind::ZZ), std::invalid_argument);
}

TEST(CnotInfidelity, BoundAndStateDependence) {
  const double e = 0.1, eps2 = 2e-5;
  const int n = 2;
  const auto bound = cnot_infidelity_bound(e, eps2, n);
  EXPECT_NEAR(bound.amplitude_term, 2 * measurement_infidelity_leading(e, n), 1e-18);
  EXPECT_NEAR(bound.single_body_term, (8 * n * (1 + 2 * e * e / 3) + 9) * eps2, 1e-18);

  // <Z_c> = <X_t> = 0 attains the bound.
  const Complex h(0.5), ih(0, 0.5);
  EXPECT_NEAR(cnot_infidelity_state(e, eps2, n, {h, h, ih, ih}), bound.total, 1e-16);
  // Control |0>, target |+>: output is a product eigenstate of Z_c and X_t.
  const double r = std::sqrt(0.5);
  EXPECT_NEAR(cnot_infidelity_state(e, 0.0, n, {0.0, r, 0.0, r}), 0.0, 1e-18);
  // |11> -> |10>: <Z_c> = -1, <X_t> = 0.
  EXPECT_NEAR(cnot_infidelity_state(e, 0.0, n, {1.0, 0.0, 0.0, 0.0}),
              measurement_infidelity_leading(e, n), 1e-18);
  EXPECT_THROW(cnot_infidelity_state(e, 0.0, n, {1.0, 1.0, 0.0, 0.0}), std::invalid_argument);
}

TEST(CnotInfidelity, FromStateOrdering) {
  Statevector s(2);
  s[0b11] = 1.0;
  s[0b00] = 2.0;
  s[0b10] = 3.0;
  s[0b01] = 4.0;
  const auto a = CnotAmplitudes::from_state(s);
  EXPECT_EQ(a.alpha, Complex(1.0));
  EXPECT_EQ(a.beta, Complex(2.0));
  EXPECT_EQ(a.gamma, Complex(3.0));
  EXPECT_EQ(a.delta, Complex(4.0));
}

TEST(StoppingTime, KnownMean) {
  const double c = c_of_e(0.3), s = s_of_e(0.3);
  EXPECT_NEAR(expected_repetitions_exact(0.3, 2), 2 + 2 * c * s, 1e-14);
  EXPECT_NEAR(expected_repetitions_exact(0.3, 2), 2.10784, 1e-5);
  EXPECT_EQ(expected_repetitions_exact(0.3, 1), 1.0);
  EXPECT_NEAR(expected_repetitions(0.3, 2), 2.12, 1e-12);
}

TEST(Property, StoppingTimeLawIsADistribution) {
  for (int n = 1; n <= 8; ++n) {
    for (double e : {0.0, 0.05, 0.3, 0.8, 1.5}) {
      const auto p = stopping_time_distribution(e, n);
      ASSERT_EQ(static_cast<int>(p.size()), n);
      for (double x : p) EXPECT_GE(x, 0.0);
      EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-12) << n << " " << e;
      // First-order mean n(1 + 2e^2/3) agrees to O(e^4); n = 1 always stops
      // after one round.
      if (n == 1) EXPECT_EQ(expected_repetitions_exact(e, n), 1.0);
      if (n >= 2 && e <= 0.05) EXPECT_NEAR(expected_repetitions_exact(e, n), expected_repetitions(e, n), 10 * n * e * e * e * e);
    }
  }
}

TEST(WrongMajority, Limits) {
  EXPECT_NEAR(wrong_majority_probability(0.3, 1), s_of_e(0.3), 1e-15);
  EXPECT_EQ(wrong_majority_probability(0.0, 3), 0.0);
  const double s = s_of_e(0.02);
  EXPECT_NEAR(wrong_majority_probability(0.02, 3) / (binomial(5, 3) * s * s * s), 1.0, 1e-2);
}

TEST(OriginalError, Value) { EXPECT_NEAR(original_cnot_error(0.3), 0.015, 1e-17); }

TEST(InfidelityVsEps, AgreesWithBound) {
  for (double e : {0.05, 0.1, 0.2}) {
    for (int n = 1; n <= 4; ++n) {
      const double eps = original_cnot_error(e);
      EXPECT_NEAR(infidelity_vs_eps(n, eps, 3e-6), cnot_infidelity_bound(e, 3e-6, n).total, 1e-15);
    }
  }
}

TEST(InfidelityVsEps, LogSpaceBranchIsContinuous) {
  // n = 40 uses the exact product, n = 41 the lgamma path; compare the ratio
  // of successive terms with its closed form.
  const double x = 0.05;
  const double t40 = infidelity_vs_eps(40, x / 4, 0.0);
  const double t41 = infidelity_vs_eps(41, x / 4, 0.0);
  const double ratio = binomial(81, 41) / binomial(79, 40) * x;
  EXPECT_NEAR(t41 / t40, ratio, 1e-10 * ratio);
}

TEST(Threshold, ShapeAndEndpoints) {
  const double t = 1e-4;
  std::vector<double> grid;
  for (int i = 0; i <= 200; ++i) grid.push_back(i * 1e-5 / 200);
  const auto curve = threshold_curve(t, grid);
  for (std::size_t i = 1; i < curve.size(); ++i) {
    EXPECT_LE(curve[i].threshold, curve[i - 1].threshold + 1e-8);
  }
  for (const auto& p : curve) {
    if (p.eps2 * 17 > t * (1 + 1e-12)) {
      EXPECT_EQ(p.threshold, 0.0);
      EXPECT_EQ(p.best_n, 0);
    } else if (p.eps2 * 17 < t * (1 - 1e-6)) {
      EXPECT_GT(p.threshold, 0.0);
      EXPECT_GE(p.best_n, 1);
    }
  }
  // n -> infinity limit of binom(2n-1, n)(4 eps)^n <= T is eps = 1/16.
  EXPECT_NEAR(curve.front().threshold, 1.0 / 16, 1e-3 / 16);
  EXPECT_LT(curve.front().threshold, 1.0 / 16);
}

TEST(Threshold, EndpointResolution) {
  const double t = 1e-4;
  const std::vector<double> grid{t / 17 - 1e-8, t / 17 + 1e-8};
  const auto curve = threshold_curve(t, grid);
  EXPECT_GT(curve[0].threshold, 0.0);
  EXPECT_EQ(curve[1].threshold, 0.0);
}

TEST(Threshold, SolutionIsTight) {
  const double t = 1e-4;
  const std::vector<double> grid{1e-6, 3e-6};
  ThresholdOptions opt;
  const auto curve = threshold_curve(t, grid, opt);
  for (const auto& p : curve) {
    auto best = [&](double eps) {
      double v = 1e300;
      for (int n = 1; n <= opt.n_max; ++n) v = std::min(v, infidelity_vs_eps(n, eps, p.eps2));
      return v;
    };
    EXPECT_LE(best(p.threshold), t);
    EXPECT_GT(best(p.threshold + 2 * opt.tolerance), t);
    EXPECT_LE(infidelity_vs_eps(p.best_n, p.threshold, p.eps2), t);
  }
}

TEST(Threshold, SmallNMaxAndErrors) {
  ThresholdOptions opt;
  opt.n_max = 1;
  const std::vector<double> grid{0.0};
  // n = 1: 4 eps <= T.
  EXPECT_NEAR(threshold_curve(1e-4, grid, opt)[0].threshold, 1e-4 / 4, 1e-8);
  EXPECT_THROW(threshold_curve(0.0, grid), std::invalid_argument);
  EXPECT_THROW(threshold_curve(1e-4, std::vector<double>{-1.0}), std::invalid_argument);
  opt.n_max = 0;
  EXPECT_THROW(threshold_curve(1e-4, grid, opt), std::invalid_argument);
}

}  // namespace
}  // namespace refocus::analytics
