// Copyright 2026 The fdpsep Authors
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

#include "fdpsep/tradeoff.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fdpsep/csv.hpp"
#include "fdpsep/numerics.hpp"
#include "gtest/gtest.h"

namespace fdpsep {
namespace {

TEST(RandomGuess, DiagonalLine) {
  TradeoffCurve c = TradeoffCurve::random_guess();
  EXPECT_TRUE(c.symmetric());
  EXPECT_TRUE(c.convex());
  for (double a = 0.0; a <= 1.0; a += 0.125) {
    EXPECT_DOUBLE_EQ(c.eval(a), 1.0 - a);
    EXPECT_DOUBLE_EQ(pointwise_separation(c, a), 0.0);
  }
  SeparationResult r = global_separation(c);
  EXPECT_EQ(r.method, SeparationMethod::kFixedPoint);
  EXPECT_NEAR(r.kappa, 0.0, 1e-12);
  EXPECT_NEAR(r.attaining_alpha, 0.5, 1e-12);
}

TEST(Gaussian, KnownValues) {
  TradeoffCurve g1 = TradeoffCurve::gaussian(1.0);
  EXPECT_DOUBLE_EQ(g1.eval(0.0), 1.0);
  EXPECT_DOUBLE_EQ(g1.eval(1.0), 0.0);
  // At alpha = Phi(-1) the argument of the outer Phi is exactly 0.
  EXPECT_NEAR(g1.eval(0.15865525393145705), 0.5, 1e-12);

  TradeoffCurve g0 = TradeoffCurve::gaussian(0.0);
  for (double a = 0.0; a <= 1.0; a += 0.01) {
    EXPECT_NEAR(g0.eval(a), 1.0 - a, 1e-12);
  }
}

TEST(Gaussian, FixedPointAndSeparation) {
  TradeoffCurve g1 = TradeoffCurve::gaussian(1.0);
  EXPECT_NEAR(fixed_point(g1), 0.3085375387259869, 1e-10);
  SeparationResult r1 = global_separation(g1);
  EXPECT_EQ(r1.method, SeparationMethod::kFixedPoint);
  EXPECT_NEAR(r1.kappa, 0.27076880941904283, 1e-10);
  EXPECT_NEAR(r1.attaining_alpha, 0.3085375387259869, 1e-10);

  SeparationResult r2 = global_separation(TradeoffCurve::gaussian(2.0));
  EXPECT_NEAR(r2.kappa, 0.48273436933493365, 1e-10);
}

TEST(EpsDelta, ShapeAndFixedPoint) {
  TradeoffCurve f = TradeoffCurve::eps_delta(1.0, 0.0);
  EXPECT_TRUE(f.symmetric());
  EXPECT_TRUE(f.convex());
  EXPECT_DOUBLE_EQ(f.eval(0.0), 1.0);
  EXPECT_DOUBLE_EQ(f.eval(1.0), 0.0);

  EXPECT_NEAR(fixed_point(f), 0.26894142136999512, 1e-10);
  SeparationResult r = global_separation(f);
  EXPECT_EQ(r.method, SeparationMethod::kFixedPoint);
  EXPECT_NEAR(r.kappa, 0.32676617560120309, 1e-10);

  TradeoffCurve id = TradeoffCurve::eps_delta(0.0, 0.0);
  for (double a = 0.0; a <= 1.0; a += 0.01) {
    EXPECT_NEAR(id.eval(a), 1.0 - a, 1e-15);
  }
}

TEST(EpsDelta, DegenerateDeltaOneHasNoFixedPoint) {
  TradeoffCurve z = TradeoffCurve::eps_delta(0.5, 1.0);
  EXPECT_DOUBLE_EQ(z.eval(0.0), 0.0);
  EXPECT_THROW(fixed_point(z), std::domain_error);
}

TEST(SubShuffled, KnownValues) {
  TradeoffCurve f = TradeoffCurve::sub_shuffled(20, 0.3);
  EXPECT_FALSE(f.symmetric());
  EXPECT_FALSE(f.convex());
  EXPECT_DOUBLE_EQ(f.eval(0.0), 1.0);
  EXPECT_DOUBLE_EQ(f.eval(1.0), 0.0);
  EXPECT_NEAR(f.eval(0.1), 0.19837583743051488, 1e-12);
  EXPECT_NEAR(f.eval(0.3), 0.078051808771951601, 1e-12);
  EXPECT_NEAR(f.eval(0.5), 0.033971031490279645, 1e-12);
}

TEST(SubShuffled, M1CollapsesToGaussian) {
  for (double sigma : {0.3, 1.0}) {
    TradeoffCurve sub = TradeoffCurve::sub_shuffled(1, sigma);
    TradeoffCurve g = TradeoffCurve::gaussian(1.0 / sigma);
    for (int i = 0; i <= 100; ++i) {
      double a = static_cast<double>(i) / 100;
      EXPECT_NEAR(sub.eval(a), g.eval(a), 1e-12) << "sigma=" << sigma << " a=" << a;
    }
  }
}

TEST(SubShuffled, GlobalSeparationByMaximization) {
  TradeoffCurve f100 = TradeoffCurve::sub_shuffled(100, 0.32950511449113041);
  SeparationResult r = global_separation(f100);
  EXPECT_EQ(r.method, SeparationMethod::kMaximization);
  EXPECT_NEAR(r.kappa, 0.32519602386154770, 1e-10);
  EXPECT_NEAR(r.attaining_alpha, 0.19497970144616153, 1e-6);

  SeparationResult r20 = global_separation(TradeoffCurve::sub_shuffled(20, 0.3));
  EXPECT_NEAR(r20.kappa, 0.49718250720402836, 1e-10);
  EXPECT_NEAR(r20.attaining_alpha, 0.11687707280275739, 1e-6);
}

TEST(PoissonMixture, EvalIsConvexCombination) {
  TradeoffCurve base = TradeoffCurve::sub_shuffled(20, 0.3);
  TradeoffCurve mix = TradeoffCurve::poisson_mixture(base, 0.25);
  EXPECT_EQ(mix.base().kind(), CurveKind::kSubShuffled);
  for (double a = 0.0; a <= 1.0; a += 0.05) {
    EXPECT_NEAR(mix.eval(a), 0.25 * (1.0 - a) + 0.75 * base.eval(a), 1e-15);
  }
  TradeoffCurve all_diag = TradeoffCurve::poisson_mixture(base, 1.0);
  EXPECT_DOUBLE_EQ(all_diag.eval(0.4), 0.6);
}

// Mixing with the diagonal scales every pointwise separation by (1 - p), so
// the global separation scales the same way.
TEST(PoissonMixture, SeparationScalesWithWeight) {
  TradeoffCurve base = TradeoffCurve::sub_shuffled(50, 0.35750679618388477);
  TradeoffCurve mix = TradeoffCurve::poisson_mixture(base, 0.4);
  SeparationResult rb = global_separation(base);
  SeparationResult rm = global_separation(mix);
  EXPECT_EQ(rm.method, SeparationMethod::kMaximization);
  EXPECT_NEAR(rm.kappa, 0.6 * rb.kappa, 1e-9);
  EXPECT_NEAR(rm.attaining_alpha, rb.attaining_alpha, 1e-5);
}

TEST(TradeoffCurve, ParameterValidation) {
  EXPECT_THROW(TradeoffCurve::gaussian(-0.1), std::invalid_argument);
  EXPECT_THROW(TradeoffCurve::gaussian(kInf), std::invalid_argument);
  EXPECT_THROW(TradeoffCurve::eps_delta(-1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(TradeoffCurve::eps_delta(1.0, 1.5), std::invalid_argument);
  EXPECT_THROW(TradeoffCurve::sub_shuffled(0, 1.0), std::invalid_argument);
  EXPECT_THROW(TradeoffCurve::sub_shuffled(10, 0.0), std::invalid_argument);
  EXPECT_THROW(TradeoffCurve::poisson_mixture(TradeoffCurve::random_guess(), 1.5),
               std::invalid_argument);
  EXPECT_THROW(TradeoffCurve::gaussian(1.0).eval(-0.01), std::invalid_argument);
  EXPECT_THROW(TradeoffCurve::gaussian(1.0).eval(1.01), std::invalid_argument);
}

TEST(WriteCurveCsv, GridAndRoundTrip) {
  TradeoffCurve g = TradeoffCurve::gaussian(1.0);
  std::ostringstream os;
  write_curve_csv(g, 5, os);
  std::istringstream is(os.str());
  auto rows = parse_csv(is);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0][0], "alpha");
  EXPECT_EQ(rows[0][1], "beta");
  for (int i = 0; i < 5; ++i) {
    double a = std::stod(rows[static_cast<size_t>(i + 1)][0]);
    double b = std::stod(rows[static_cast<size_t>(i + 1)][1]);
    EXPECT_DOUBLE_EQ(a, i / 4.0);
    EXPECT_DOUBLE_EQ(b, g.eval(a));  // full-precision output parses back exactly
  }
  EXPECT_THROW(write_curve_csv(g, 1, os), std::invalid_argument);
}

}  // namespace
}  // namespace fdpsep
