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

#ifndef FDPSEP_DPSGD_TOY_HPP_
#define FDPSEP_DPSGD_TOY_HPP_

// Desk-scale DP-SGD on a synthetic two-blob logistic-regression task.
//
// One epoch of clipped, noised minibatch SGD under either sampler, recording
// per round exactly what the informed adversary sees: the noisy averaged
// update, the partial clipped sum excluding the target record, and the
// target's membership flag. The target is fixed to the last training record.
//
// Normalization follows the sampler: shuffling divides by the realized batch
// size b (deterministic, since plans are exact partitions), Poisson divides
// by the expected batch size q * n_train. Both equal config.batch_size.
//
// RNG streams under one seed: 0 draws the dataset, 1 draws the batch plan,
// 2 draws the per-round noise. A clean (sigma = 0) and a noisy run with the
// same seed therefore train on the same data and the same plan.

#include <cfloat>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "fdpsep/csv.hpp"
#include "fdpsep/rng.hpp"
#include "fdpsep/samplers.hpp"

namespace fdpsep {

inline constexpr uint64_t kDatasetStream = 0;
inline constexpr uint64_t kPlanStream = 1;
inline constexpr uint64_t kNoiseStream = 2;

struct ToyDataset {
  int64_t n = 0;
  int64_t d = 0;
  int64_t n_train = 0;
  int64_t n_test = 0;                  // last n_test rows are the holdout
  std::vector<double> features;        // row-major n x d
  std::vector<int> labels;             // +1 / -1, balanced
  uint64_t seed = 0;
};

// Two isotropic unit-covariance Gaussian blobs centered at
// +/- (separation/2) e_1, alternating labels, 25% holdout.
inline ToyDataset make_synthetic_dataset(int64_t n, int64_t d,
                                         double separation, uint64_t seed) {
  if (n < 2) throw std::invalid_argument("make_synthetic_dataset: n must be >= 2");
  if (d < 1) throw std::invalid_argument("make_synthetic_dataset: d must be >= 1");
  if (!(separation >= 0.0)) {
    throw std::invalid_argument(
        "make_synthetic_dataset: separation must be >= 0");
  }
  ToyDataset ds;
  ds.n = n;
  ds.d = d;
  ds.n_test = n / 4;
  ds.n_train = n - ds.n_test;
  ds.seed = seed;
  ds.features.resize(static_cast<size_t>(n * d));
  ds.labels.resize(static_cast<size_t>(n));
  PhiloxRng rng(seed, kDatasetStream);
  for (int64_t i = 0; i < n; ++i) {
    int label = i % 2 == 0 ? 1 : -1;
    ds.labels[static_cast<size_t>(i)] = label;
    for (int64_t j = 0; j < d; ++j) {
      ds.features[static_cast<size_t>(i * d + j)] = rng.normal();
    }
    ds.features[static_cast<size_t>(i * d)] += label * separation / 2.0;
  }
  return ds;
}

struct TrainConfig {
  int64_t M = 1;
  int64_t batch_size = 1;
  double clip = 1.0;          // may be +inf (no clipping)
  double sigma = 0.0;         // noise multiplier; 0 disables noise
  double learning_rate = 1.0;
  SamplingScheme sampler = SamplingScheme::kShuffle;
  uint64_t seed = 0;

  void validate() const {
    if (M < 1) throw std::invalid_argument("TrainConfig: M must be >= 1");
    if (batch_size < 1) {
      throw std::invalid_argument("TrainConfig: batch_size must be >= 1");
    }
    if (!(clip > 0.0)) throw std::invalid_argument("TrainConfig: clip must be > 0");
    if (!(sigma >= 0.0)) {
      throw std::invalid_argument("TrainConfig: sigma must be >= 0");
    }
    if (std::isinf(clip) && sigma > 0.0) {
      throw std::invalid_argument(
          "TrainConfig: clip = inf with sigma > 0 leaves the noise scale "
          "undefined");
    }
    if (!(learning_rate > 0.0)) {
      throw std::invalid_argument("TrainConfig: learning_rate must be > 0");
    }
  }
};

// Derives M from the batch size for one epoch over the training split.
inline TrainConfig make_train_config(const ToyDataset& ds, int64_t batch_size,
                                     double sigma, double clip, uint64_t seed,
                                     SamplingScheme sampler = SamplingScheme::kShuffle,
                                     double learning_rate = 1.0) {
  if (batch_size < 1 || batch_size > ds.n_train) {
    throw std::invalid_argument(
        "make_train_config: batch_size must lie in [1, n_train]");
  }
  TrainConfig cfg;
  cfg.M = ds.n_train / batch_size;
  cfg.batch_size = batch_size;
  cfg.clip = clip;
  cfg.sigma = sigma;
  cfg.learning_rate = learning_rate;
  cfg.sampler = sampler;
  cfg.seed = seed;
  cfg.validate();
  return cfg;
}

inline std::vector<double> clip_gradient(const std::vector<double>& g,
                                         double C) {
  if (!(C > 0.0)) throw std::invalid_argument("clip_gradient: C must be > 0");
  double norm_sq = 0.0;
  for (double v : g) norm_sq += v * v;
  double norm = std::sqrt(norm_sq);
  if (norm <= C) return g;
  // The nudge keeps the recomputed norm of the result at or below C under
  // round-to-nearest; without it the rescaled norm can land one ulp above.
  double factor = (C / norm) * (1.0 - 16.0 * DBL_EPSILON);
  std::vector<double> out(g.size());
  for (size_t i = 0; i < g.size(); ++i) out[i] = g[i] * factor;
  return out;
}

// (sum of clipped gradients + z) / batch_size with z ~ N(0, (C sigma)^2 I_d).
// An empty gradient list contributes a zero sum (zero-out semantics). The
// noise draw is exposed through z_out for the reconstruction tests.
inline std::vector<double> noisy_batch_update(
    const std::vector<std::vector<double>>& clipped_grads, int64_t d, double C,
    double sigma, double batch_size, PhiloxRng& rng,
    std::vector<double>* z_out = nullptr) {
  if (d < 1) throw std::invalid_argument("noisy_batch_update: d must be >= 1");
  if (!(sigma >= 0.0)) {
    throw std::invalid_argument("noisy_batch_update: sigma must be >= 0");
  }
  if (!(batch_size >= 1.0)) {
    throw std::invalid_argument("noisy_batch_update: batch_size must be >= 1");
  }
  std::vector<double> sum(static_cast<size_t>(d), 0.0);
  for (const std::vector<double>& g : clipped_grads) {
    if (static_cast<int64_t>(g.size()) != d) {
      throw std::invalid_argument("noisy_batch_update: gradient length != d");
    }
    for (int64_t k = 0; k < d; ++k) sum[static_cast<size_t>(k)] += g[static_cast<size_t>(k)];
  }
  std::vector<double> z(static_cast<size_t>(d), 0.0);
  if (sigma > 0.0) {
    for (double& v : z) v = C * sigma * rng.normal();
  }
  if (z_out != nullptr) *z_out = z;
  std::vector<double> out(static_cast<size_t>(d));
  for (int64_t k = 0; k < d; ++k) {
    out[static_cast<size_t>(k)] =
        (sum[static_cast<size_t>(k)] + z[static_cast<size_t>(k)]) / batch_size;
  }
  return out;
}

struct RoundRecord {
  int64_t round = 0;
  int64_t batch_actual = 0;           // realized |S_j|
  double denom = 1.0;                 // normalization used by the update
  bool membership = false;            // target in S_j
  std::vector<double> update;         // noisy averaged update
  std::vector<double> partial_sum;    // clipped sum excluding the target
  std::vector<double> z;              // retained noise draw (test support)
  std::vector<double> target_clipped; // target's clipped gradient if member
};

struct TrainResult {
  std::vector<double> weights;
  std::vector<RoundRecord> records;
  double test_accuracy = 0.0;
};

namespace detail {

// Gradient of log(1 + exp(-y w.x)) at example i.
inline std::vector<double> logistic_gradient(const ToyDataset& ds,
                                             const std::vector<double>& w,
                                             int64_t i) {
  const double* x = &ds.features[static_cast<size_t>(i * ds.d)];
  double y = ds.labels[static_cast<size_t>(i)];
  double margin = 0.0;
  for (int64_t j = 0; j < ds.d; ++j) margin += w[static_cast<size_t>(j)] * x[j];
  margin *= y;
  double coef = -y / (1.0 + std::exp(margin));
  std::vector<double> g(static_cast<size_t>(ds.d));
  for (int64_t j = 0; j < ds.d; ++j) g[static_cast<size_t>(j)] = coef * x[j];
  return g;
}

}  // namespace detail

inline double evaluate_accuracy(const ToyDataset& ds,
                                const std::vector<double>& w) {
  if (ds.n_test == 0) return 0.0;
  int64_t correct = 0;
  for (int64_t i = ds.n_train; i < ds.n; ++i) {
    const double* x = &ds.features[static_cast<size_t>(i * ds.d)];
    double dot = 0.0;
    for (int64_t j = 0; j < ds.d; ++j) dot += w[static_cast<size_t>(j)] * x[j];
    int pred = dot > 0.0 ? 1 : -1;
    if (pred == ds.labels[static_cast<size_t>(i)]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(ds.n_test);
}

// One epoch of DP-SGD from w = 0. Rounds are strictly sequential; batch sums
// run in ascending index order so results are bit-deterministic per seed.
inline TrainResult train(const ToyDataset& ds, const TrainConfig& cfg) {
  cfg.validate();
  if (static_cast<int64_t>(ds.labels.size()) != ds.n ||
      static_cast<int64_t>(ds.features.size()) != ds.n * ds.d) {
    throw std::invalid_argument("train: malformed dataset");
  }
  PhiloxRng plan_rng(cfg.seed, kPlanStream);
  BatchPlan plan;
  if (cfg.sampler == SamplingScheme::kShuffle) {
    if (cfg.batch_size != ds.n_train / cfg.M) {
      throw std::invalid_argument(
          "train: shuffle requires batch_size == floor(n_train / M)");
    }
    plan = shuffle_sample(ds.n_train, cfg.M, plan_rng);
  } else {
    if (cfg.batch_size >= ds.n_train) {
      throw std::invalid_argument(
          "train: poisson requires batch_size < n_train");
    }
    double q = static_cast<double>(cfg.batch_size) /
               static_cast<double>(ds.n_train);
    plan = poisson_sample(ds.n_train, q, cfg.M, plan_rng);
  }
  PhiloxRng noise_rng(cfg.seed, kNoiseStream);
  int64_t target = ds.n_train - 1;
  double denom = static_cast<double>(cfg.batch_size);

  TrainResult result;
  result.weights.assign(static_cast<size_t>(ds.d), 0.0);
  result.records.reserve(static_cast<size_t>(cfg.M));
  for (int64_t j = 0; j < cfg.M; ++j) {
    const std::vector<int64_t>& batch = plan.rounds[static_cast<size_t>(j)];
    RoundRecord rec;
    rec.round = j;
    rec.batch_actual = static_cast<int64_t>(batch.size());
    rec.denom = denom;
    rec.partial_sum.assign(static_cast<size_t>(ds.d), 0.0);
    rec.target_clipped.assign(static_cast<size_t>(ds.d), 0.0);
    std::vector<std::vector<double>> clipped;
    clipped.reserve(batch.size());
    for (int64_t idx : batch) {
      std::vector<double> g =
          clip_gradient(detail::logistic_gradient(ds, result.weights, idx),
                        cfg.clip);
      if (idx == target) {
        rec.membership = true;
        rec.target_clipped = g;
      } else {
        for (int64_t k = 0; k < ds.d; ++k) {
          rec.partial_sum[static_cast<size_t>(k)] += g[static_cast<size_t>(k)];
        }
      }
      clipped.push_back(std::move(g));
    }
    rec.update = noisy_batch_update(clipped, ds.d, cfg.clip, cfg.sigma, denom,
                                    noise_rng, &rec.z);
    for (int64_t k = 0; k < ds.d; ++k) {
      result.weights[static_cast<size_t>(k)] -=
          cfg.learning_rate * rec.update[static_cast<size_t>(k)];
    }
    result.records.push_back(std::move(rec));
  }
  result.test_accuracy = evaluate_accuracy(ds, result.weights);
  return result;
}

// Adversary's reconstruction: denominator * update - partial clipped sum.
// Equals membership * clipped target gradient + noise.
inline std::vector<double> reconstruct_contribution(const RoundRecord& rec) {
  std::vector<double> out(rec.update.size());
  for (size_t k = 0; k < rec.update.size(); ++k) {
    out[k] = rec.denom * rec.update[k] - rec.partial_sum[k];
  }
  return out;
}

struct RunMetrics {
  double accuracy_clean = 0.0;
  double accuracy_dp = 0.0;
  double sigma = 0.0;
  int64_t M = 0;
  double C = 0.0;
};

namespace detail {

inline double vec_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace detail

// Run log rows `round,batch_size,membership,update_norm,z_norm` followed by
// a final metrics block `accuracy_clean,accuracy_dp,sigma,M,C`.
inline void write_run_log_csv(const std::vector<RoundRecord>& records,
                              const RunMetrics& metrics, std::ostream& os) {
  os << "round,batch_size,membership,update_norm,z_norm\n";
  for (const RoundRecord& rec : records) {
    os << rec.round << ',' << rec.batch_actual << ','
       << (rec.membership ? 1 : 0) << ',' << format_full(detail::vec_norm(rec.update))
       << ',' << format_full(detail::vec_norm(rec.z)) << '\n';
  }
  os << "accuracy_clean,accuracy_dp,sigma,M,C\n";
  os << format_full(metrics.accuracy_clean) << ','
     << format_full(metrics.accuracy_dp) << ',' << format_full(metrics.sigma)
     << ',' << metrics.M << ',' << format_full(metrics.C) << '\n';
}

}  // namespace fdpsep

#endif  // FDPSEP_DPSGD_TOY_HPP_
