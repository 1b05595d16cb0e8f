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

#ifndef FDPSEP_ADVERSARY_SIM_HPP_
#define FDPSEP_ADVERSARY_SIM_HPP_

// Monte Carlo hypothesis-testing harness.
//
// The adversary observes M real values. Under H0 all M are independent
// standard normals. Under H1 the shuffled model adds a shift of 1/sigma to
// exactly one uniformly chosen coordinate; the Poisson model adds the shift
// to each coordinate independently with probability q (no conditioning on the
// number of shifted coordinates, so q = 0 events are kept). Two test
// statistics are provided: the maximum coordinate, and the exact
// likelihood-ratio statistic (1/M) sum_j exp(x_j/sigma - 1/(2 sigma^2)).
//
// Determinism contract: trial i under hypothesis h uses the Philox stream
// base_stream + 2 i + [h == H1], so results are bit-identical for any thread
// count and any evaluation order.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "fdpsep/csv.hpp"
#include "fdpsep/numerics.hpp"
#include "fdpsep/rng.hpp"
#include "fdpsep/samplers.hpp"

namespace fdpsep {

enum class Hypothesis { kH0, kH1 };
enum class TestStatistic { kMax, kNp };

struct ObservationModel {
  SamplingScheme scheme = SamplingScheme::kShuffle;
  int64_t M = 1;
  double sigma = 1.0;
  double q = 0.0;  // Poisson only

  void validate() const {
    if (M < 1) throw std::invalid_argument("ObservationModel: M must be >= 1");
    if (!(sigma > 0.0)) {
      throw std::invalid_argument("ObservationModel: sigma must be > 0");
    }
    if (scheme == SamplingScheme::kPoisson && !(q > 0.0 && q < 1.0)) {
      throw std::invalid_argument(
          "ObservationModel: poisson q must lie in (0,1)");
    }
  }
};

inline std::vector<double> draw_observation(const ObservationModel& model,
                                            Hypothesis hyp, PhiloxRng& rng) {
  model.validate();
  std::vector<double> obs(static_cast<size_t>(model.M));
  for (double& x : obs) x = rng.normal();
  if (hyp == Hypothesis::kH1) {
    double shift = 1.0 / model.sigma;
    if (model.scheme == SamplingScheme::kShuffle) {
      obs[rng.bounded_u64(static_cast<uint64_t>(model.M))] += shift;
    } else {
      for (double& x : obs) {
        if (rng.uniform() < model.q) x += shift;
      }
    }
  }
  return obs;
}

inline double max_statistic(const std::vector<double>& obs) {
  if (obs.empty()) {
    throw std::invalid_argument("max_statistic: empty observation");
  }
  return *std::max_element(obs.begin(), obs.end());
}

// Likelihood-ratio statistic (1/M) sum_j exp(x_j/sigma - 1/(2 sigma^2)),
// evaluated through log-sum-exp. Raw exponentials overflow for sigma < 0.1 at
// moderate |x|; the log path only overflows on the final exp, where +inf is
// the honest answer (the statistic is monotone, so thresholding still works).
inline double np_statistic(const std::vector<double>& obs, int64_t M,
                           double sigma) {
  if (static_cast<int64_t>(obs.size()) != M) {
    throw std::invalid_argument("np_statistic: observation length != M");
  }
  if (obs.empty()) throw std::invalid_argument("np_statistic: empty observation");
  if (!(sigma > 0.0)) throw std::invalid_argument("np_statistic: sigma must be > 0");
  double top = -kInf;
  for (double x : obs) top = std::max(top, x / sigma);
  double acc = 0.0;
  for (double x : obs) acc += std::exp(x / sigma - top);
  double log_stat = top + std::log(acc) - 1.0 / (2.0 * sigma * sigma) -
                    std::log(static_cast<double>(M));
  return std::exp(log_stat);
}

inline double apply_statistic(TestStatistic test, const ObservationModel& model,
                              const std::vector<double>& obs) {
  if (test == TestStatistic::kMax) return max_statistic(obs);
  return np_statistic(obs, model.M, model.sigma);
}

// Runs `trials` independent draws under one hypothesis and returns the
// statistic values indexed by trial.
inline std::vector<double> collect_statistics(const ObservationModel& model,
                                              TestStatistic test,
                                              Hypothesis hyp, int64_t trials,
                                              RngSeed base, int threads = 1) {
  model.validate();
  if (trials < 1) {
    throw std::invalid_argument("collect_statistics: trials must be >= 1");
  }
  if (threads < 1) threads = 1;
  std::vector<double> stats(static_cast<size_t>(trials));
  uint64_t hyp_bit = hyp == Hypothesis::kH1 ? 1 : 0;
  auto run = [&](int64_t first) {
    for (int64_t i = first; i < trials; i += threads) {
      PhiloxRng rng(base.seed,
                    base.stream + 2 * static_cast<uint64_t>(i) + hyp_bit);
      std::vector<double> obs = draw_observation(model, hyp, rng);
      stats[static_cast<size_t>(i)] = apply_statistic(test, model, obs);
    }
  };
  if (threads == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(run, t);
    for (std::thread& th : pool) th.join();
  }
  return stats;
}

// Threshold grid at empirical quantiles of the pooled statistics: levels
// k/(count+1), k = 1..count, read off the pooled order statistics. Covers the
// ROC uniformly without wasting grid points in the tails.
inline std::vector<double> quantile_thresholds(const std::vector<double>& h0,
                                               const std::vector<double>& h1,
                                               int count = 512) {
  if (count < 1) {
    throw std::invalid_argument("quantile_thresholds: count must be >= 1");
  }
  if (h0.empty() && h1.empty()) {
    throw std::invalid_argument("quantile_thresholds: no statistics");
  }
  std::vector<double> pooled;
  pooled.reserve(h0.size() + h1.size());
  pooled.insert(pooled.end(), h0.begin(), h0.end());
  pooled.insert(pooled.end(), h1.begin(), h1.end());
  std::sort(pooled.begin(), pooled.end());
  std::vector<double> out;
  out.reserve(static_cast<size_t>(count));
  double last = static_cast<double>(pooled.size() - 1);
  for (int k = 1; k <= count; ++k) {
    double level = static_cast<double>(k) / (count + 1);
    auto idx = static_cast<size_t>(std::llround(level * last));
    out.push_back(pooled[idx]);
  }
  return out;
}

struct EmpiricalTradeoffPoint {
  double threshold = 0.0;
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  double alpha_se = 0.0;
  double beta_se = 0.0;
  int64_t trials_h0 = 0;
  int64_t trials_h1 = 0;
};

// Evaluates (alpha, beta) at each threshold against already collected
// statistics. Rejection rule: statistic >= threshold (ties reject; the
// equality set has measure zero for these continuous statistics).
inline std::vector<EmpiricalTradeoffPoint> tradeoff_points_from_stats(
    const std::vector<double>& h0_stats, const std::vector<double>& h1_stats,
    const std::vector<double>& thresholds) {
  if (thresholds.empty()) {
    throw std::invalid_argument("tradeoff_points_from_stats: thresholds empty");
  }
  if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
    throw std::invalid_argument(
        "tradeoff_points_from_stats: thresholds must be sorted");
  }
  if (h0_stats.empty() || h1_stats.empty()) {
    throw std::invalid_argument("tradeoff_points_from_stats: no statistics");
  }
  std::vector<double> s0 = h0_stats;
  std::vector<double> s1 = h1_stats;
  std::sort(s0.begin(), s0.end());
  std::sort(s1.begin(), s1.end());
  double n0 = static_cast<double>(s0.size());
  double n1 = static_cast<double>(s1.size());
  std::vector<EmpiricalTradeoffPoint> points;
  points.reserve(thresholds.size());
  for (double h : thresholds) {
    EmpiricalTradeoffPoint pt;
    pt.threshold = h;
    auto below0 = std::lower_bound(s0.begin(), s0.end(), h) - s0.begin();
    auto below1 = std::lower_bound(s1.begin(), s1.end(), h) - s1.begin();
    pt.alpha_hat = (n0 - static_cast<double>(below0)) / n0;
    pt.beta_hat = static_cast<double>(below1) / n1;
    pt.alpha_se = std::sqrt(pt.alpha_hat * (1.0 - pt.alpha_hat) / n0);
    pt.beta_se = std::sqrt(pt.beta_hat * (1.0 - pt.beta_hat) / n1);
    pt.trials_h0 = static_cast<int64_t>(s0.size());
    pt.trials_h1 = static_cast<int64_t>(s1.size());
    points.push_back(pt);
  }
  return points;
}

// Estimates (alpha, beta) at each threshold from `trials` fresh draws per
// hypothesis. One collection pass serves every threshold.
inline std::vector<EmpiricalTradeoffPoint> estimate_tradeoff(
    const ObservationModel& model, TestStatistic test,
    const std::vector<double>& thresholds, int64_t trials, RngSeed base,
    int threads = 1) {
  std::vector<double> s0 =
      collect_statistics(model, test, Hypothesis::kH0, trials, base, threads);
  std::vector<double> s1 =
      collect_statistics(model, test, Hypothesis::kH1, trials, base, threads);
  return tradeoff_points_from_stats(s0, s1, thresholds);
}

inline double estimate_separation(
    const std::vector<EmpiricalTradeoffPoint>& points) {
  if (points.empty()) {
    throw std::invalid_argument("estimate_separation: no points");
  }
  double best = -kInf;
  for (const EmpiricalTradeoffPoint& pt : points) {
    best = std::max(best, ((1.0 - pt.alpha_hat) - pt.beta_hat) / kSqrt2);
  }
  return best;
}

// Closed forms for the max test under the shuffled model.
inline double max_test_alpha(double h, int64_t M) {
  if (M < 1) throw std::invalid_argument("max_test_alpha: M must be >= 1");
  return 1.0 - std::pow(std_normal_cdf(h), static_cast<double>(M));
}

inline double max_test_beta(double h, int64_t M, double sigma) {
  if (M < 1) throw std::invalid_argument("max_test_beta: M must be >= 1");
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("max_test_beta: sigma must be > 0");
  }
  return std_normal_cdf(h - 1.0 / sigma) *
         std::pow(std_normal_cdf(h), static_cast<double>(M - 1));
}

// Schema: threshold,alpha_hat,beta_hat,alpha_se,beta_se
inline void write_tradeoff_csv(const std::vector<EmpiricalTradeoffPoint>& points,
                               std::ostream& os) {
  os << "threshold,alpha_hat,beta_hat,alpha_se,beta_se\n";
  for (const EmpiricalTradeoffPoint& pt : points) {
    write_csv_row(os, {pt.threshold, pt.alpha_hat, pt.beta_hat, pt.alpha_se,
                       pt.beta_se});
  }
}

}  // namespace fdpsep

#endif  // FDPSEP_ADVERSARY_SIM_HPP_
