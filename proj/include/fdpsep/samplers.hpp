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

#ifndef FDPSEP_SAMPLERS_HPP_
#define FDPSEP_SAMPLERS_HPP_

// Batch-index generation for the two subsampling schemes.
//
// Poisson: every record enters every round independently with probability q,
// so rounds are mutually independent and batch sizes are Binomial(N, q).
//
// Shuffle: one uniform permutation of [N] is cut into M consecutive blocks
// of size floor(N/M); the trailing N mod M indices are discarded.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "fdpsep/rng.hpp"

namespace fdpsep {

enum class SamplingScheme { kPoisson, kShuffle };

struct BatchPlan {
  SamplingScheme scheme = SamplingScheme::kShuffle;
  double q = 0.0;  // inclusion probability; meaningful for kPoisson only
  int64_t N = 0;
  int64_t M = 0;
  std::vector<std::vector<int64_t>> rounds;  // each round sorted ascending
};

inline BatchPlan poisson_sample(int64_t N, double q, int64_t M,
                                PhiloxRng& rng) {
  if (N < 1) throw std::invalid_argument("poisson_sample: N must be >= 1");
  if (M < 1) throw std::invalid_argument("poisson_sample: M must be >= 1");
  if (!(q > 0.0 && q < 1.0)) {
    throw std::invalid_argument("poisson_sample: q must lie in (0,1)");
  }
  BatchPlan plan{SamplingScheme::kPoisson, q, N, M, {}};
  plan.rounds.resize(static_cast<size_t>(M));
  for (auto& round : plan.rounds) {
    for (int64_t i = 0; i < N; ++i) {
      if (rng.uniform() < q) round.push_back(i);
    }
  }
  return plan;
}

inline BatchPlan shuffle_sample(int64_t N, int64_t M, PhiloxRng& rng) {
  if (M < 1) throw std::invalid_argument("shuffle_sample: M must be >= 1");
  if (M > N) throw std::invalid_argument("shuffle_sample: M must be <= N");
  std::vector<int64_t> perm(static_cast<size_t>(N));
  std::iota(perm.begin(), perm.end(), 0);
  // Fisher-Yates with rejection-sampled bounded draws: exactly uniform.
  for (int64_t i = N - 1; i > 0; --i) {
    uint64_t j = rng.bounded_u64(static_cast<uint64_t>(i) + 1);
    std::swap(perm[static_cast<size_t>(i)], perm[j]);
  }
  int64_t b = N / M;
  BatchPlan plan{SamplingScheme::kShuffle, 0.0, N, M, {}};
  plan.rounds.resize(static_cast<size_t>(M));
  for (int64_t j = 0; j < M; ++j) {
    auto first = perm.begin() + j * b;
    plan.rounds[static_cast<size_t>(j)].assign(first, first + b);
    std::sort(plan.rounds[static_cast<size_t>(j)].begin(),
              plan.rounds[static_cast<size_t>(j)].end());
  }
  return plan;
}

// Debug dump, schema: round,index
inline void write_batch_plan_csv(const BatchPlan& plan, std::ostream& os) {
  os << "round,index\n";
  for (size_t j = 0; j < plan.rounds.size(); ++j) {
    for (int64_t idx : plan.rounds[j]) {
      os << j << ',' << idx << '\n';
    }
  }
}

}  // namespace fdpsep

#endif  // FDPSEP_SAMPLERS_HPP_
