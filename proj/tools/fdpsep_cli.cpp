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

// fdpsep command-line front end.
//
// Subcommands: bounds, curve, separation, simulate, train-toy, mugdp.
// CSV goes to --out when given, stdout otherwise; the resolved configuration
// (including seeds) goes to stderr. Exit codes: 0 success, 1 domain error
// (message names the violated precondition), 2 argument error (with usage).

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fdpsep/adversary_sim.hpp"
#include "fdpsep/bounds.hpp"
#include "fdpsep/csv.hpp"
#include "fdpsep/dpsgd_toy.hpp"
#include "fdpsep/numerics.hpp"
#include "fdpsep/rng.hpp"
#include "fdpsep/samplers.hpp"
#include "fdpsep/tradeoff.hpp"
#include "fdpsep/version.hpp"

namespace {

class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) : path_(path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) {
        throw std::runtime_error("cannot open output file: " + path);
      }
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  std::string display() const { return path_.empty() ? "-" : path_; }

 private:
  std::string path_;
  std::ofstream file_;
};

double resolve_sigma(const std::string& text, int64_t M) {
  if (text == "auto") return fdpsep::sigma_threshold(M);
  try {
    size_t pos = 0;
    double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("--sigma: expected a real number or 'auto', got '" +
                               text + "'");
  }
}

fdpsep::TradeoffCurve build_curve(const std::string& kind, const CLI::Option* mu_opt,
                                  double mu, const CLI::Option* eps_opt, double eps,
                                  double delta, const CLI::Option* m_opt, int64_t M,
                                  const CLI::Option* sigma_opt,
                                  const std::string& sigma_text,
                                  const CLI::Option* q_opt, double q,
                                  double* sigma_resolved, double* p_resolved) {
  if (kind == "gaussian") {
    if (!mu_opt->count()) throw CLI::ValidationError("--mu is required for --kind gaussian");
    return fdpsep::TradeoffCurve::gaussian(mu);
  }
  if (kind == "epsdelta") {
    if (!eps_opt->count()) throw CLI::ValidationError("--eps is required for --kind epsdelta");
    return fdpsep::TradeoffCurve::eps_delta(eps, delta);
  }
  if (!m_opt->count() || !sigma_opt->count()) {
    throw CLI::ValidationError("--m and --sigma are required for --kind " + kind);
  }
  double sigma = resolve_sigma(sigma_text, M);
  if (sigma_resolved != nullptr) *sigma_resolved = sigma;
  if (kind == "sub") return fdpsep::TradeoffCurve::sub_shuffled(M, sigma);
  // poissonmix: mixture weight p = (1-q)^M over the sub_shuffled base.
  if (!q_opt->count()) throw CLI::ValidationError("--q is required for --kind poissonmix");
  if (!(q > 0.0 && q < 1.0)) throw CLI::ValidationError("--q must lie in (0,1)");
  double p = std::exp(static_cast<double>(M) * std::log1p(-q));
  if (p_resolved != nullptr) *p_resolved = p;
  return fdpsep::TradeoffCurve::poisson_mixture(
      fdpsep::TradeoffCurve::sub_shuffled(M, sigma), p);
}

double sep_gaussian_closed_form(double mu) {
  return (2.0 * fdpsep::std_normal_cdf(mu / 2.0) - 1.0) / fdpsep::kSqrt2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fdpsep: trade-off curves, separation bounds, and simulators "
               "for shuffled vs Poisson-subsampled noisy SGD"};
  app.set_version_flag("--version", std::string("fdpsep ") + FDPSEP_VERSION_STRING);
  app.require_subcommand(1);

  // ---- bounds ----
  auto* sub_bounds = app.add_subcommand("bounds", "Reproduce the kappa / eps_min table");
  std::vector<int64_t> m_list;
  int64_t table_n = 100000000;
  std::string bounds_out;
  sub_bounds->add_option("--m-list", m_list, "Comma-separated rounds-per-epoch values")
      ->required()
      ->delimiter(',');
  sub_bounds->add_option("--n", table_n, "Dataset size (delta = 1/n)")->required();
  sub_bounds->add_option("--out", bounds_out, "Output CSV path (default stdout)");

  // ---- curve / separation (shared parameter set) ----
  std::string kind;
  double mu = 0.0, eps = 0.0, delta = 0.0, q = 0.0;
  int64_t curve_m = 0;
  std::string sigma_text;
  int points = 256;
  std::string curve_out, sep_out;

  auto add_curve_params = [&](CLI::App* sub, CLI::Option*& mu_o, CLI::Option*& eps_o,
                              CLI::Option*& m_o, CLI::Option*& sigma_o,
                              CLI::Option*& q_o) {
    sub->add_option("--kind", kind, "gaussian | epsdelta | sub | poissonmix")
        ->required()
        ->check(CLI::IsMember({"gaussian", "epsdelta", "sub", "poissonmix"}));
    mu_o = sub->add_option("--mu", mu, "Gaussian curve parameter");
    eps_o = sub->add_option("--eps", eps, "epsdelta curve epsilon");
    sub->add_option("--delta", delta, "epsdelta curve delta (default 0)");
    m_o = sub->add_option("--m", curve_m, "Rounds per epoch");
    sigma_o = sub->add_option("--sigma", sigma_text, "Noise multiplier or 'auto'");
    q_o = sub->add_option("--q", q, "Poisson sampling rate (poissonmix)");
  };

  auto* sub_curve = app.add_subcommand("curve", "Sample a trade-off curve to CSV");
  CLI::Option *c_mu, *c_eps, *c_m, *c_sigma, *c_q;
  add_curve_params(sub_curve, c_mu, c_eps, c_m, c_sigma, c_q);
  sub_curve->add_option("--points", points, "Grid size (default 256)")
      ->check(CLI::Range(2, 1 << 24));
  sub_curve->add_option("--out", curve_out, "Output CSV path (default stdout)");

  auto* sub_sep = app.add_subcommand("separation", "Report kappa and the attaining alpha");
  CLI::Option *s_mu, *s_eps, *s_m, *s_sigma, *s_q;
  add_curve_params(sub_sep, s_mu, s_eps, s_m, s_sigma, s_q);
  sub_sep->add_option("--out", sep_out, "Output CSV path (default stdout)");

  // ---- simulate ----
  auto* sub_sim = app.add_subcommand("simulate", "Monte Carlo trade-off estimation");
  std::string scheme = "shuffled", test_name = "max", sim_sigma_text;
  int64_t sim_m = 0, trials = 0;
  uint64_t sim_seed = 0;
  double sim_q = 0.0;
  int threads = 1, n_thresholds = 512;
  std::string sim_out;
  sub_sim->add_option("--scheme", scheme, "shuffled | poisson")
      ->required()
      ->check(CLI::IsMember({"shuffled", "poisson"}));
  sub_sim->add_option("--m", sim_m, "Observation dimension / rounds")->required();
  sub_sim->add_option("--sigma", sim_sigma_text, "Noise multiplier or 'auto'")->required();
  sub_sim->add_option("--test", test_name, "max | np")
      ->required()
      ->check(CLI::IsMember({"max", "np"}));
  sub_sim->add_option("--trials", trials, "Trials per hypothesis")->required();
  sub_sim->add_option("--seed", sim_seed, "RNG seed")->required();
  auto* sim_q_opt =
      sub_sim->add_option("--q", sim_q, "Poisson shift probability (default 1/m)");
  sub_sim->add_option("--threads", threads, "Worker threads (default 1)");
  sub_sim->add_option("--thresholds", n_thresholds, "Threshold grid size (default 512)");
  sub_sim->add_option("--out", sim_out, "Output CSV path (default stdout)");

  // ---- train-toy ----
  auto* sub_train = app.add_subcommand("train-toy", "One epoch of DP-SGD on the synthetic task");
  std::string sampler_name = "shuffle", train_sigma_text = "auto";
  int64_t batch = 8, data_n = 4096, data_d = 16;
  double clip = 5.0, sep_dist = 4.0, lr = 1.0;
  uint64_t train_seed = 0;
  std::string train_out;
  sub_train->add_option("--sampler", sampler_name, "shuffle | poisson")
      ->check(CLI::IsMember({"shuffle", "poisson"}));
  sub_train->add_option("--batch", batch, "Batch size (default 8)");
  sub_train->add_option("--sigma", train_sigma_text, "Noise multiplier, 'auto', or 0");
  sub_train->add_option("--clip", clip, "Clipping bound C (default 5)");
  sub_train->add_option("--seed", train_seed, "RNG seed");
  sub_train->add_option("--n", data_n, "Dataset size (default 4096)");
  sub_train->add_option("--d", data_d, "Feature dimension (default 16)");
  sub_train->add_option("--sep", sep_dist, "Class separation (default 4)");
  sub_train->add_option("--lr", lr, "Learning rate (default 1)");
  sub_train->add_option("--out", train_out, "Output CSV path (default stdout)");

  // ---- mugdp ----
  auto* sub_mugdp = app.add_subcommand("mugdp", "Asymptotic Gaussian DP level and tail bounds");
  int64_t mugdp_m = 0;
  double mugdp_e = 1.0, mugdp_sigma = 0.0, mugdp_s = 0.0;
  std::vector<int64_t> sweep_m;
  bool want_tail = false, want_inst = false;
  std::string mugdp_out;
  auto* mg_m = sub_mugdp->add_option("--m", mugdp_m, "Rounds per epoch");
  sub_mugdp->add_option("--e", mugdp_e, "Epoch budget E (default 1)");
  auto* mg_sigma = sub_mugdp->add_option("--sigma", mugdp_sigma, "Noise multiplier");
  auto* mg_s = sub_mugdp->add_option("--s", mugdp_s, "Scale s in sigma = s/sqrt(ln M)");
  sub_mugdp->add_option("--sweep-m", sweep_m, "Comma-separated M sweep for figure data")
      ->delimiter(',');
  sub_mugdp->add_flag("--tail", want_tail, "Include the tail lower bound column");
  sub_mugdp->add_flag("--instantiation", want_inst,
                      "Include the explicit separation bound column (needs --s)");
  sub_mugdp->add_option("--out", mugdp_out, "Output CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  }

  try {
    if (*sub_bounds) {
      OutputTarget out(bounds_out);
      std::cerr << "# resolved bounds: m_list=";
      for (size_t i = 0; i < m_list.size(); ++i) {
        std::cerr << (i ? "," : "") << m_list[i];
      }
      std::cerr << " n=" << table_n << " delta=" << 1.0 / static_cast<double>(table_n)
                << " out=" << out.display() << '\n';
      fdpsep::write_bounds_csv(fdpsep::bounds_table(m_list, table_n), out.stream());
      return 0;
    }

    if (*sub_curve || *sub_sep) {
      bool is_curve = static_cast<bool>(*sub_curve);
      double sigma_resolved = 0.0, p_resolved = 0.0;
      fdpsep::TradeoffCurve curve =
          is_curve ? build_curve(kind, c_mu, mu, c_eps, eps, delta, c_m, curve_m,
                                 c_sigma, sigma_text, c_q, q, &sigma_resolved,
                                 &p_resolved)
                   : build_curve(kind, s_mu, mu, s_eps, eps, delta, s_m, curve_m,
                                 s_sigma, sigma_text, s_q, q, &sigma_resolved,
                                 &p_resolved);
      OutputTarget out(is_curve ? curve_out : sep_out);
      std::cerr << "# resolved " << (is_curve ? "curve" : "separation")
                << ": kind=" << kind;
      if (kind == "gaussian") std::cerr << " mu=" << mu;
      if (kind == "epsdelta") std::cerr << " eps=" << eps << " delta=" << delta;
      if (kind == "sub" || kind == "poissonmix") {
        std::cerr << " m=" << curve_m << " sigma=" << sigma_resolved;
      }
      if (kind == "poissonmix") std::cerr << " q=" << q << " p=" << p_resolved;
      if (is_curve) std::cerr << " points=" << points;
      std::cerr << " out=" << out.display() << '\n';
      if (is_curve) {
        fdpsep::write_curve_csv(curve, points, out.stream());
      } else {
        fdpsep::SeparationResult r = fdpsep::global_separation(curve);
        out.stream() << "kappa,attaining_alpha,method\n"
                     << fdpsep::format_full(r.kappa) << ','
                     << fdpsep::format_full(r.attaining_alpha) << ','
                     << (r.method == fdpsep::SeparationMethod::kFixedPoint
                             ? "fixed_point"
                             : "maximization")
                     << '\n';
      }
      return 0;
    }

    if (*sub_sim) {
      fdpsep::ObservationModel model;
      model.M = sim_m;
      model.sigma = resolve_sigma(sim_sigma_text, sim_m);
      if (scheme == "poisson") {
        model.scheme = fdpsep::SamplingScheme::kPoisson;
        model.q = sim_q_opt->count() ? sim_q : 1.0 / static_cast<double>(sim_m);
      } else {
        model.scheme = fdpsep::SamplingScheme::kShuffle;
      }
      model.validate();
      fdpsep::TestStatistic test = test_name == "max" ? fdpsep::TestStatistic::kMax
                                                      : fdpsep::TestStatistic::kNp;
      OutputTarget out(sim_out);
      std::cerr << "# resolved simulate: scheme=" << scheme << " m=" << model.M
                << " sigma=" << model.sigma;
      if (scheme == "poisson") std::cerr << " q=" << model.q;
      std::cerr << " test=" << test_name << " trials=" << trials
                << " seed=" << sim_seed << " threads=" << threads
                << " thresholds=" << n_thresholds << " out=" << out.display()
                << '\n';
      fdpsep::RngSeed base{sim_seed, 0};
      std::vector<double> s0 = fdpsep::collect_statistics(
          model, test, fdpsep::Hypothesis::kH0, trials, base, threads);
      std::vector<double> s1 = fdpsep::collect_statistics(
          model, test, fdpsep::Hypothesis::kH1, trials, base, threads);
      std::vector<double> ths = fdpsep::quantile_thresholds(s0, s1, n_thresholds);
      fdpsep::write_tradeoff_csv(
          fdpsep::tradeoff_points_from_stats(s0, s1, ths), out.stream());
      return 0;
    }

    if (*sub_train) {
      fdpsep::ToyDataset ds =
          fdpsep::make_synthetic_dataset(data_n, data_d, sep_dist, train_seed);
      if (batch < 1 || batch > ds.n_train) {
        throw CLI::ValidationError("--batch must lie in [1, n_train]");
      }
      int64_t rounds = ds.n_train / batch;
      double sigma = resolve_sigma(train_sigma_text, rounds);
      fdpsep::SamplingScheme sampler = sampler_name == "poisson"
                                           ? fdpsep::SamplingScheme::kPoisson
                                           : fdpsep::SamplingScheme::kShuffle;
      fdpsep::TrainConfig cfg_dp =
          fdpsep::make_train_config(ds, batch, sigma, clip, train_seed, sampler, lr);
      fdpsep::TrainConfig cfg_clean = cfg_dp;
      cfg_clean.sigma = 0.0;
      OutputTarget out(train_out);
      std::cerr << "# resolved train-toy: sampler=" << sampler_name
                << " n=" << data_n << " d=" << data_d << " sep=" << sep_dist
                << " batch=" << batch << " m=" << cfg_dp.M << " sigma=" << sigma
                << " clip=" << clip << " lr=" << lr << " seed=" << train_seed
                << " out=" << out.display() << '\n';
      fdpsep::TrainResult dp = fdpsep::train(ds, cfg_dp);
      fdpsep::TrainResult clean = fdpsep::train(ds, cfg_clean);
      fdpsep::RunMetrics metrics;
      metrics.accuracy_clean = clean.test_accuracy;
      metrics.accuracy_dp = dp.test_accuracy;
      metrics.sigma = sigma;
      metrics.M = cfg_dp.M;
      metrics.C = clip;
      fdpsep::write_run_log_csv(dp.records, metrics, out.stream());
      return 0;
    }

    if (*sub_mugdp) {
      OutputTarget out(mugdp_out);
      if (!sweep_m.empty()) {
        bool use_s = mg_s->count() > 0;
        if (!use_s && !mg_sigma->count()) {
          throw CLI::ValidationError("--sweep-m needs --s or --sigma");
        }
        std::cerr << "# resolved mugdp: sweep_m=" << sweep_m.size()
                  << " values e=" << mugdp_e
                  << (use_s ? " s=" : " sigma=") << (use_s ? mugdp_s : mugdp_sigma)
                  << " out=" << out.display() << '\n';
        out.stream() << (use_s ? "M,mu,sep_gmu,tail_lower,explicit_bound\n"
                               : "M,mu,sep_gmu,tail_lower\n");
        for (int64_t M : sweep_m) {
          double sg = use_s
                          ? mugdp_s / std::sqrt(std::log(static_cast<double>(M)))
                          : mugdp_sigma;
          double m_val = fdpsep::mu_gdp_asymptotic(M, mugdp_e, sg);
          out.stream() << M << ',' << fdpsep::format_full(m_val) << ','
                       << fdpsep::format_full(sep_gaussian_closed_form(m_val))
                       << ',' << fdpsep::format_full(fdpsep::sep_tail_lower(m_val));
          if (use_s) {
            out.stream() << ','
                         << fdpsep::format_full(
                                fdpsep::explicit_separation_bound(M, mugdp_s));
          }
          out.stream() << '\n';
        }
        return 0;
      }
      if (!mg_m->count() || !mg_sigma->count()) {
        throw CLI::ValidationError("mugdp needs --m and --sigma (or --sweep-m)");
      }
      if (want_inst && !mg_s->count()) {
        throw CLI::ValidationError("--instantiation needs --s");
      }
      std::cerr << "# resolved mugdp: m=" << mugdp_m << " e=" << mugdp_e
                << " sigma=" << mugdp_sigma;
      if (want_inst) std::cerr << " s=" << mugdp_s;
      std::cerr << " out=" << out.display() << '\n';
      double m_val = fdpsep::mu_gdp_asymptotic(mugdp_m, mugdp_e, mugdp_sigma);
      out.stream() << "mu,sep_gmu" << (want_tail ? ",tail_lower" : "")
                   << (want_inst ? ",explicit_bound" : "") << '\n';
      out.stream() << fdpsep::format_full(m_val) << ','
                   << fdpsep::format_full(sep_gaussian_closed_form(m_val));
      if (want_tail) {
        out.stream() << ',' << fdpsep::format_full(fdpsep::sep_tail_lower(m_val));
      }
      if (want_inst) {
        out.stream() << ','
                     << fdpsep::format_full(
                            fdpsep::explicit_separation_bound(mugdp_m, mugdp_s));
      }
      out.stream() << '\n';
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
