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

#ifndef FDPSEP_TRADEOFF_HPP_
#define FDPSEP_TRADEOFF_HPP_

// Hypothesis-testing trade-off curves as immutable first-class values.
//
// A trade-off curve f maps a type I error level alpha to the smallest type II
// error beta achievable by the test family it describes. The curves here are
// the closed forms used throughout the toolkit:
//
//   random_guess       f(a) = 1 - a
//   gaussian(mu)       G_mu(a) = Phi(Phi^-1(1-a) - mu)
//   eps_delta(e, d)    max{0, 1-d-e^e a, e^-e (1-d-a)}
//   sub_shuffled(M, s) Phi(Phi^-1((1-a)^(1/M)) - 1/s) (1-a)^((M-1)/M)
//   poisson_mixture    p (1-a) + (1-p) base(a)
//
// The separation of a curve is its maximum Euclidean distance below the
// random-guessing diagonal beta = 1 - alpha, a single scalar summary of how
// distinguishable the two hypotheses are. For symmetric convex curves the
// maximum is attained at the unique fixed point a = f(a), which gives the
// shortcut kappa = (1 - 2a) / sqrt(2); everything else goes through direct
// scalar maximization.

#include <cmath>
#include <cstdint>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "fdpsep/csv.hpp"
#include "fdpsep/numerics.hpp"

namespace fdpsep {

enum class CurveKind {
  kRandomGuess,
  kGaussian,
  kEpsDelta,
  kSubShuffled,
  kPoissonMixture,
};

class TradeoffCurve {
 public:
  static TradeoffCurve random_guess() {
    TradeoffCurve c(CurveKind::kRandomGuess, true, true);
    return c;
  }

  static TradeoffCurve gaussian(double mu) {
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
      throw std::invalid_argument("gaussian curve: mu must be finite and >= 0");
    }
    TradeoffCurve c(CurveKind::kGaussian, true, true);
    c.mu_ = mu;
    return c;
  }

  static TradeoffCurve eps_delta(double eps, double delta) {
    if (!(eps >= 0.0) || !std::isfinite(eps)) {
      throw std::invalid_argument("eps_delta curve: eps must be finite and >= 0");
    }
    if (!(delta >= 0.0 && delta <= 1.0)) {
      throw std::invalid_argument("eps_delta curve: delta must lie in [0,1]");
    }
    TradeoffCurve c(CurveKind::kEpsDelta, true, true);
    c.eps_ = eps;
    c.delta_ = delta;
    return c;
  }

  static TradeoffCurve sub_shuffled(int64_t M, double sigma) {
    if (M < 1) {
      throw std::invalid_argument("sub_shuffled curve: M must be >= 1");
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
      throw std::invalid_argument(
          "sub_shuffled curve: sigma must be finite and > 0");
    }
    // Not flagged symmetric or convex: neither property is established for
    // this family, so its separation always uses the maximization path.
    TradeoffCurve c(CurveKind::kSubShuffled, false, false);
    c.M_ = M;
    c.sigma_ = sigma;
    return c;
  }

  static TradeoffCurve poisson_mixture(TradeoffCurve base, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("poisson_mixture curve: p must lie in [0,1]");
    }
    TradeoffCurve c(CurveKind::kPoissonMixture, false, false);
    c.p_ = p;
    c.base_ = std::make_shared<const TradeoffCurve>(std::move(base));
    return c;
  }

  CurveKind kind() const { return kind_; }
  bool symmetric() const { return symmetric_; }
  bool convex() const { return convex_; }
  double mu() const { return mu_; }
  double eps() const { return eps_; }
  double delta() const { return delta_; }
  int64_t M() const { return M_; }
  double sigma() const { return sigma_; }
  double p() const { return p_; }
  const TradeoffCurve& base() const { return *base_; }

  double eval(double alpha) const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
      throw std::invalid_argument("TradeoffCurve::eval: alpha outside [0,1]");
    }
    switch (kind_) {
      case CurveKind::kRandomGuess:
        return 1.0 - alpha;
      case CurveKind::kGaussian:
        return std_normal_cdf(std_normal_cdf_inv(1.0 - alpha) - mu_);
      case CurveKind::kEpsDelta: {
        double lo = 0.0;
        double mid = 1.0 - delta_ - std::exp(eps_) * alpha;
        double hi = std::exp(-eps_) * (1.0 - delta_ - alpha);
        return std::max(lo, std::max(mid, hi));
      }
      case CurveKind::kSubShuffled: {
        if (alpha == 1.0) return 0.0;
        // (1-a)^(1/M) as exp(log1p(-a)/M): no cancellation for large M.
        double log1a = std::log1p(-alpha);
        double root = std::exp(log1a / static_cast<double>(M_));
        double head = std_normal_cdf(std_normal_cdf_inv(root) - 1.0 / sigma_);
        double tail =
            std::exp(log1a * static_cast<double>(M_ - 1) / static_cast<double>(M_));
        return head * tail;
      }
      case CurveKind::kPoissonMixture:
        return p_ * (1.0 - alpha) + (1.0 - p_) * base_->eval(alpha);
    }
    throw std::logic_error("TradeoffCurve::eval: unreachable");
  }

 private:
  TradeoffCurve(CurveKind kind, bool symmetric, bool convex)
      : kind_(kind), symmetric_(symmetric), convex_(convex) {}

  CurveKind kind_;
  bool symmetric_;
  bool convex_;
  double mu_ = 0.0;
  double eps_ = 0.0;
  double delta_ = 0.0;
  int64_t M_ = 0;
  double sigma_ = 0.0;
  double p_ = 0.0;
  std::shared_ptr<const TradeoffCurve> base_;
};

inline double eval_curve(const TradeoffCurve& curve, double alpha) {
  return curve.eval(alpha);
}

// Euclidean distance from (alpha, f(alpha)) to the diagonal beta = 1 - alpha.
// Valid as a distance because every curve here lies on or below the diagonal.
inline double pointwise_separation(const TradeoffCurve& curve, double alpha) {
  return ((1.0 - alpha) - curve.eval(alpha)) / kSqrt2;
}

// Unique fixed point a = f(a) of a nonincreasing curve with f(0) > 0 and
// f(1) < 1, located by bisection on f(a) - a.
inline double fixed_point(const TradeoffCurve& curve, double tol = 1e-12) {
  double g0 = curve.eval(0.0);
  double g1 = curve.eval(1.0) - 1.0;
  if (!(g0 > 0.0) || !(g1 < 0.0)) {
    throw std::domain_error("fixed_point: not found (degenerate curve)");
  }
  return find_root([&curve](double a) { return curve.eval(a) - a; }, 0.0, 1.0,
                   tol);
}

enum class SeparationMethod { kFixedPoint, kMaximization };

struct SeparationResult {
  double kappa = 0.0;
  double attaining_alpha = 0.0;
  SeparationMethod method = SeparationMethod::kMaximization;
};

// Maximum pointwise separation over alpha in [0,1]. Curves flagged both
// symmetric and convex take the fixed-point shortcut; the two paths agree to
// 1e-8 wherever both apply.
inline SeparationResult global_separation(const TradeoffCurve& curve,
                                          double root_tol = 1e-12,
                                          double max_tol = 1e-10) {
  if (curve.symmetric() && curve.convex()) {
    double a_hat = fixed_point(curve, root_tol);
    return {(1.0 - 2.0 * a_hat) / kSqrt2, a_hat, SeparationMethod::kFixedPoint};
  }
  MaximizeResult r = maximize_scalar(
      [&curve](double a) { return pointwise_separation(curve, a); }, 0.0, 1.0,
      max_tol);
  return {r.max, r.argmax, SeparationMethod::kMaximization};
}

// Samples the curve on an evenly spaced alpha grid. Schema: alpha,beta
inline void write_curve_csv(const TradeoffCurve& curve, int points,
                            std::ostream& os) {
  if (points < 2) {
    throw std::invalid_argument("write_curve_csv: need at least 2 points");
  }
  os << "alpha,beta\n";
  for (int i = 0; i < points; ++i) {
    double alpha = static_cast<double>(i) / (points - 1);
    write_csv_row(os, {alpha, curve.eval(alpha)});
  }
}

}  // namespace fdpsep

#endif  // FDPSEP_TRADEOFF_HPP_
