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

#ifndef FDPSEP_BOUNDS_HPP_
#define FDPSEP_BOUNDS_HPP_

// Closed-form separation bounds for one epoch of noisy SGD under random
// shuffling and under Poisson subsampling, together with the conversions
// between a separation level kappa and the (eps, delta) guarantees it rules
// out. All formulas take M = number of rounds per epoch and require M >= 2:
// every bound divides by sqrt(ln M) or sqrt(2 ln M), so M = 1 is rejected
// loudly instead of returning infinities.

#include <cmath>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "fdpsep/csv.hpp"
#include "fdpsep/numerics.hpp"

namespace fdpsep {

struct BoundParams {
  int64_t M = 2;       // rounds per epoch
  double sigma = 1.0;  // noise multiplier
  int64_t N = 1;       // dataset size
  double delta = 0.0;
  double E = 1.0;  // epoch budget

  void validate() const {
    if (M < 2) throw std::invalid_argument("BoundParams: M must be >= 2");
    if (!(sigma > 0.0)) {
      throw std::invalid_argument("BoundParams: sigma must be > 0");
    }
    if (N < 1) throw std::invalid_argument("BoundParams: N must be >= 1");
    if (!(delta >= 0.0 && delta <= 1.0)) {
      throw std::invalid_argument("BoundParams: delta must lie in [0,1]");
    }
    if (!(E > 0.0)) throw std::invalid_argument("BoundParams: E must be > 0");
  }
};

namespace detail {

inline void require_m_at_least_2(int64_t M, const char* op) {
  if (M < 2) {
    std::ostringstream msg;
    msg << op << ": M must be >= 2 (got " << M << "; ln M <= 0 otherwise)";
    throw std::domain_error(msg.str());
  }
}

}  // namespace detail

// Noise level below which one round already leaks: sigma >= 1/sqrt(2 ln M) is
// the regime where per-round signals stay hidden in the noise.
inline double sigma_threshold(int64_t M) {
  detail::require_m_at_least_2(M, "sigma_threshold");
  return 1.0 / std::sqrt(2.0 * std::log(static_cast<double>(M)));
}

inline double epsilon_M(int64_t M) {
  detail::require_m_at_least_2(M, "epsilon_M");
  double m = static_cast<double>(M);
  return 2.0 / (m * std::sqrt(4.0 * M_PI * std::log(m)));
}

// Lower bound on the separation of one shuffled epoch at sigma below the
// threshold. The corrected form multiplies by (1 - epsilon_M); the plain form
// is what the reproduced table uses.
inline double kappa_shuf_lower(int64_t M, bool with_correction) {
  detail::require_m_at_least_2(M, "kappa_shuf_lower");
  double m = static_cast<double>(M);
  double k = (1.0 / std::sqrt(8.0)) *
             (1.0 - 1.0 / std::sqrt(4.0 * M_PI * std::log(m)));
  if (with_correction) k *= 1.0 - epsilon_M(M);
  return k;
}

inline double kappa_pois_lower(int64_t M) {
  detail::require_m_at_least_2(M, "kappa_pois_lower");
  return (1.0 - std::exp(-1.0)) * kappa_shuf_lower(M, false);
}

// Type I error of the max-statistic test at the threshold that makes all M
// null coordinates stay below it: a* = 1 - Phi(1/sigma)^M. The companion
// bound 1/sqrt(4 pi ln M) holds whenever sigma <= sigma_threshold(M).
struct AStar {
  double value = 0.0;
  double upper_bound = 0.0;
  bool bound_applies = false;
};

inline AStar a_star(int64_t M, double sigma) {
  if (M < 1) throw std::invalid_argument("a_star: M must be >= 1");
  if (!(sigma > 0.0)) throw std::invalid_argument("a_star: sigma must be > 0");
  AStar out;
  // 1 - Phi(1/sigma)^M via expm1/log1p keeps precision when Phi(1/sigma) is
  // within ulps of 1 and M is large.
  double log_phi = std::log(std_normal_cdf(1.0 / sigma));
  out.value = -std::expm1(static_cast<double>(M) * log_phi);
  if (M >= 2) {
    out.upper_bound =
        1.0 / std::sqrt(4.0 * M_PI * std::log(static_cast<double>(M)));
    out.bound_applies = sigma <= sigma_threshold(M);
  } else {
    out.upper_bound = kInf;
    out.bound_applies = false;
  }
  return out;
}

inline double kappa_eps_delta(double eps, double delta) {
  if (!(eps >= 0.0)) {
    throw std::invalid_argument("kappa_eps_delta: eps must be >= 0");
  }
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("kappa_eps_delta: delta must lie in [0,1]");
  }
  return (std::exp(eps) - 1.0 + 2.0 * delta) /
         ((1.0 + std::exp(eps)) * kSqrt2);
}

// Smallest eps consistent with separation kappa at a given delta. Inverse of
// kappa_eps_delta in its eps argument.
inline double eps_min_from_kappa(double kappa, double delta) {
  if (!(kappa >= 0.0)) {
    throw std::invalid_argument("eps_min_from_kappa: kappa must be >= 0");
  }
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("eps_min_from_kappa: delta must lie in [0,1]");
  }
  double k2 = kappa * kSqrt2;
  if (k2 >= 1.0) {
    throw std::domain_error(
        "eps_min_from_kappa: kappa >= 1/sqrt(2), no finite eps exists");
  }
  double numer = 1.0 + k2 - 2.0 * delta;
  if (!(numer > 0.0)) {
    throw std::domain_error(
        "eps_min_from_kappa: delta too large for this kappa");
  }
  return std::log(numer / (1.0 - k2));
}

// Gaussian DP level of one epoch in the large-M limit, at fixed epoch budget
// E = M q^2 sigma^-2 ... expressed directly in (M, E, sigma):
//   mu = sqrt(2 E / M) * sqrt(e^{1/sigma^2} Phi(1.5/sigma)
//                             + 3 Phi(-0.5/sigma) - 2)
// For 1/sigma^2 > 700 the radicand is evaluated in log space; past the point
// where mu itself exceeds the double range an overflow error names the sigma
// that caused it.
inline double mu_gdp_asymptotic(int64_t M, double E, double sigma) {
  if (M < 1) throw std::invalid_argument("mu_gdp_asymptotic: M must be >= 1");
  if (!(E > 0.0)) throw std::invalid_argument("mu_gdp_asymptotic: E must be > 0");
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("mu_gdp_asymptotic: sigma must be > 0");
  }
  double is = 1.0 / sigma;
  double is2 = is * is;
  double m = static_cast<double>(M);
  if (is2 > 700.0) {
    // Phi(1.5/sigma) == 1 and 3 Phi(-0.5/sigma) - 2 == -2 to double
    // precision here, and the -2 is below one ulp of e^{is2}.
    double log_mu = 0.5 * (std::log(2.0) + std::log(E) - std::log(m) + is2);
    if (log_mu > 709.78) {
      std::ostringstream msg;
      msg << "mu_gdp_asymptotic: exp(1/sigma^2) overflows for sigma=" << sigma;
      throw std::overflow_error(msg.str());
    }
    return std::exp(log_mu);
  }
  double inner = std::exp(is2) * std_normal_cdf(1.5 * is) +
                 3.0 * std_normal_cdf(-0.5 * is) - 2.0;
  if (inner < 0.0) inner = 0.0;  // roundoff below ~1e-15 near sigma -> inf
  return kSqrt2 * std::sqrt(E / m) * std::sqrt(inner);
}

// Tail lower bound on the separation of the mu-Gaussian curve:
//   1/sqrt(2) - (2/sqrt(pi)) e^{-mu^2/8} / mu.
// May be negative for small mu; it never exceeds the exact Gaussian
// separation (2 Phi(mu/2) - 1)/sqrt(2).
inline double sep_tail_lower(double mu) {
  if (!(mu > 0.0)) {
    throw std::domain_error("sep_tail_lower: mu must be > 0");
  }
  return 1.0 / kSqrt2 -
         (2.0 / std::sqrt(M_PI)) * std::exp(-mu * mu / 8.0) / mu;
}

// Fully explicit separation bound at sigma = s/sqrt(ln M) and unit epoch
// budget:
//   1/sqrt(2) - (2/sqrt(pi)) exp(-M^{1/s^2-1}/16)
//              / ((1/sqrt(2)) M^{1/(2 s^2)-1/2}).
// Valid whenever M^{1/s^2} >= 4.
inline double explicit_separation_bound(int64_t M, double s) {
  detail::require_m_at_least_2(M, "explicit_separation_bound");
  if (!(s > 0.0)) {
    throw std::invalid_argument("explicit_separation_bound: s must be > 0");
  }
  double log_m = std::log(static_cast<double>(M));
  if (log_m / (s * s) < std::log(4.0)) {
    throw std::domain_error(
        "explicit_separation_bound: validity condition M^(1/s^2) >= 4 "
        "violated");
  }
  double grow = std::exp((1.0 / (s * s) - 1.0) * log_m);
  double denom = (1.0 / kSqrt2) *
                 std::exp((1.0 / (2.0 * s * s) - 0.5) * log_m);
  return 1.0 / kSqrt2 -
         (2.0 / std::sqrt(M_PI)) * std::exp(-grow / 16.0) / denom;
}

struct BoundsRow {
  int64_t M = 0;
  double kappa_shuf = 0.0;
  double eps_min_shuf = 0.0;
  double kappa_pois = 0.0;
  double eps_min_pois = 0.0;
  double sigma_threshold = 0.0;
};

inline std::vector<BoundsRow> bounds_table(const std::vector<int64_t>& M_list,
                                           int64_t N) {
  if (N < 1) throw std::invalid_argument("bounds_table: N must be >= 1");
  double delta = 1.0 / static_cast<double>(N);
  std::vector<BoundsRow> rows;
  rows.reserve(M_list.size());
  for (int64_t M : M_list) {
    BoundsRow row;
    row.M = M;
    row.kappa_shuf = kappa_shuf_lower(M, false);
    row.eps_min_shuf = eps_min_from_kappa(row.kappa_shuf, delta);
    row.kappa_pois = kappa_pois_lower(M);
    row.eps_min_pois = eps_min_from_kappa(row.kappa_pois, delta);
    row.sigma_threshold = fdpsep::sigma_threshold(M);
    rows.push_back(row);
  }
  return rows;
}

// Schema: M,kappa_shuf,eps_min_shuf,kappa_pois,eps_min_pois,sigma_threshold
inline void write_bounds_csv(const std::vector<BoundsRow>& rows,
                             std::ostream& os) {
  os << "M,kappa_shuf,eps_min_shuf,kappa_pois,eps_min_pois,sigma_threshold\n";
  for (const BoundsRow& r : rows) {
    os << r.M << ',' << format_full(r.kappa_shuf) << ','
       << format_full(r.eps_min_shuf) << ',' << format_full(r.kappa_pois)
       << ',' << format_full(r.eps_min_pois) << ','
       << format_full(r.sigma_threshold) << '\n';
  }
}

}  // namespace fdpsep

#endif  // FDPSEP_BOUNDS_HPP_
