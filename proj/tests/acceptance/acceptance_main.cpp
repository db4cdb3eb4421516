// Acceptance suite: end-to-end statistical and numerical checks that gate a
// release. Each criterion prints exactly one [PASS]/[FAIL] line on stdout;
// progress notes for the long-running groups go to stderr. Exit status is 0
// iff every selected criterion passes.
//
// Groups (argv[1]): fast | calibration | agreement | tuning | efficiency | all

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "glpm/diagnostics.hpp"
#include "glpm/model.hpp"
#include "glpm/network.hpp"
#include "glpm/precision.hpp"
#include "glpm/prior.hpp"
#include "glpm/rng.hpp"
#include "glpm/samplers.hpp"
#include "glpm/synthgen.hpp"
#include "glpm/tuning.hpp"

namespace {

using namespace glpm;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

void note(const std::string& text) {
  std::fprintf(stderr, "  .. %s\n", text.c_str());
  std::fflush(stderr);
}

bool report(bool pass, int num, const std::string& text) {
  std::printf("[%s] %2d %s\n", pass ? "PASS" : "FAIL", num, text.c_str());
  std::fflush(stdout);
  return pass;
}

Eigen::SparseMatrix<double> identity_sparse(std::int32_t n) {
  Eigen::SparseMatrix<double> m(n, n);
  m.setIdentity();
  return m;
}

Network random_network(std::int32_t n, double edge_prob, std::int32_t c_count,
                       Rng& rng) {
  std::vector<Dyad> edges;
  std::vector<std::int16_t> codes(dyad_count(n), 1);
  for (std::int64_t k = 0; k < dyad_count(n); ++k) {
    if (c_count > 1)
      codes[k] = static_cast<std::int16_t>(1 + rng.uniform_int(0, c_count - 1));
    if (rng.bernoulli(edge_prob)) edges.push_back(dyad_from_index(k));
  }
  return Network(n, std::move(edges), std::move(codes), c_count);
}

GlpmState random_state(const Network& net, std::int32_t d, Rng& rng) {
  GlpmState st;
  st.positions.resize(net.n(), d);
  for (std::int32_t i = 0; i < net.n(); ++i)
    for (std::int32_t l = 0; l < d; ++l) st.positions(i, l) = rng.normal();
  st.tau.resize(net.num_categories());
  for (double& t : st.tau) t = rng.uniform(0.05, 0.95);
  st.gamma2 = rng.uniform(0.3, 3.0);
  return st;
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double variance_of(const std::vector<double>& v) {
  const double m = mean_of(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return acc / static_cast<double>(v.size() - 1);
}

// ---------------------------------------------------------------------------
// 1. The three samplers target the same posterior: per-dyad functional means
//    agree pairwise within 3 combined standard errors on a small network.

bool check_agreement() {
  const auto t0 = Clock::now();
  SynthSpec spec;
  spec.n = 6;
  spec.d = 2;
  spec.tau = {0.5};
  spec.gamma2 = 0.5;
  const SynthResult gen = generate_network(spec, 91101);
  const Network& net = gen.network;
  const PriorSpec prior = default_prior(6, 1, 2);

  const std::int64_t iters = 200000;
  const std::int64_t discard = 20000;
  const std::array<SamplerKind, 3> kinds = {
      SamplerKind::mwg, SamplerKind::split_hmc, SamplerKind::split_hmc_flymc};

  std::vector<Dyad> dyads;
  for (std::int64_t k = 0; k < dyad_count(6); ++k)
    dyads.push_back(dyad_from_index(k));

  struct Summ {
    double mean = 0.0;
    double se = 0.0;
  };
  std::vector<std::array<Summ, 3>> summ(dyads.size());
  bool ok = true;

  for (std::size_t s = 0; s < kinds.size(); ++s) {
    SamplerConfig cfg;
    cfg.kind = kinds[s];
    cfg.tau_steps = {0.2};
    SamplerSession session(net, prior, cfg, 5100 + s);
    if (kinds[s] == SamplerKind::mwg) {
      tune_step_size(TunedKernel::mwg, session);
      tune_step_size(TunedKernel::rw_tau, session);
    } else {
      tune_step_size(TunedKernel::hmc, session);
      if (kinds[s] == SamplerKind::split_hmc)
        tune_step_size(TunedKernel::rw_tau, session);
    }
    const ChainOutput chain = session.run_recorded(iters, 1);
    note(fmt("agreement: %s done in %.0f s, position acceptance %.2f",
             to_string(kinds[s]).c_str(), chain.total_seconds,
             chain.position_stats.acceptance_rate()));
    for (std::size_t k = 0; k < dyads.size(); ++k) {
      const std::vector<double> f =
          functional_series(chain, net, dyads[k], discard);
      const EssEstimate e = effective_sample_size(f);
      if (e.degenerate || !(e.ess > 1.0)) {
        ok = false;
        continue;
      }
      summ[k][s].mean = mean_of(f);
      summ[k][s].se = std::sqrt(variance_of(f) / e.ess);
    }
  }

  double worst_z = 0.0;
  for (std::size_t k = 0; k < dyads.size(); ++k) {
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        const double se =
            std::sqrt(summ[k][a].se * summ[k][a].se + summ[k][b].se * summ[k][b].se);
        const double z = std::abs(summ[k][a].mean - summ[k][b].mean) / se;
        worst_z = std::max(worst_z, z);
      }
    }
  }
  const double elapsed = seconds_since(t0);
  ok = ok && worst_z <= 3.0 && elapsed <= 600.0;
  return report(ok, 1,
                fmt("three samplers agree on all %zu dyad functionals "
                    "(max pairwise |z| %.2f, limit 3; %lld edges; %.0f s of 600)",
                    dyads.size(), worst_z,
                    static_cast<long long>(net.edge_count()), elapsed));
}

// ---------------------------------------------------------------------------
// 2. Summing the augmented model over every indicator configuration recovers
//    the exact likelihood on enumerable instances.

bool check_marginalization() {
  Rng rng(2201);
  double worst = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const auto n = static_cast<std::int32_t>(2 + rng.uniform_int(0, 2));
    const auto c_count = static_cast<std::int32_t>(1 + rng.uniform_int(0, 1));
    const Network net = random_network(n, 0.4, c_count, rng);
    const auto d = static_cast<std::int32_t>(1 + rng.uniform_int(0, 2));
    const GlpmState st = random_state(net, d, rng);
    const auto [marginal, augmented] = marginal_vs_augmented_check(st, net);
    const double err =
        std::abs(marginal - augmented) / std::max(1.0, std::abs(marginal));
    worst = std::max(worst, err);
  }
  return report(worst <= 1e-10, 2,
                fmt("indicator sum over 50 random instances matches the exact "
                    "likelihood (max rel err %.2e, limit 1e-10)",
                    worst));
}

// ---------------------------------------------------------------------------
// 3. Analytic non-edge gradients match central finite differences, full and
//    bright-restricted.

bool check_gradients() {
  // Step chosen so that both the O(h^2) truncation (third derivatives blow up
  // near coincident pairs) and the O(eps/h) cancellation stay well under the
  // tolerance.
  Rng rng(3301);
  const double h = 1e-6;
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const auto n = static_cast<std::int32_t>(4 + rng.uniform_int(0, 6));
    const auto c_count = static_cast<std::int32_t>(1 + rng.uniform_int(0, 1));
    const auto d = static_cast<std::int32_t>(1 + rng.uniform_int(0, 2));
    const Network net = random_network(n, 0.35, c_count, rng);
    GlpmState st = random_state(net, d, rng);

    BrightSet bright(net);
    for (const Dyad& dy : net.observed_non_edges())
      if (rng.bernoulli(0.5)) bright.brighten(dyad_index(dy));

    for (int variant = 0; variant < 2; ++variant) {
      const bool restricted = variant == 1;
      const auto value = [&](const GlpmState& s) {
        return restricted ? log_p0_bright(s, net, bright) : log_p0(s, net);
      };
      const Eigen::MatrixXd g = restricted
                                    ? grad_log_p0_bright(st, net, bright)
                                    : grad_log_p0(st, net);
      const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
      for (std::int32_t i = 0; i < n; ++i) {
        for (std::int32_t l = 0; l < d; ++l) {
          GlpmState plus = st, minus = st;
          plus.positions(i, l) += h;
          minus.positions(i, l) -= h;
          const double fd = (value(plus) - value(minus)) / (2.0 * h);
          worst = std::max(worst, std::abs(fd - g(i, l)) / scale);
        }
      }
    }
  }
  return report(worst <= 1e-6, 3,
                fmt("non-edge gradients match central differences on 100 "
                    "instances, both variants (max rel err %.2e, limit 1e-6)",
                    worst));
}

// ---------------------------------------------------------------------------
// 4. On a complete graph the position update degenerates to an exact Gaussian
//    rotation: the Metropolis log ratio vanishes to rounding and the rotation
//    conserves the quadratic energy.

bool check_complete_graph() {
  const std::int32_t n = 10, d = 2;
  std::vector<Dyad> edges;
  for (std::int64_t k = 0; k < dyad_count(n); ++k)
    edges.push_back(dyad_from_index(k));
  const Network net(n, std::move(edges), {}, 1);
  const PrecisionOperator op(identity_sparse(n), net.laplacian(), 0.7, true);

  Rng rng(4401);
  bool ok = true;
  double worst_dh = 0.0;
  for (const double eps : {0.1, 0.5, 1.0}) {
    HmcConfig cfg;
    cfg.epsilon = eps;
    cfg.leap_count = std::max(1, static_cast<int>(std::lround(2.0 / eps)));
    GlpmState st;
    st.positions = op.sample_with_precision(d, rng);
    st.tau = {0.9};
    st.gamma2 = 0.7;
    for (int step = 0; step < 1000; ++step) {
      const HmcResult res = split_hmc_step(st, net, op, cfg, nullptr, rng);
      worst_dh = std::max(worst_dh, std::abs(res.delta_h));
      ok = ok && !res.singular;
    }
  }

  double worst_energy = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    HmcConfig cfg;
    cfg.epsilon = rng.uniform(0.05, 1.5);
    cfg.leap_count = static_cast<int>(rng.uniform_int(1, 20));
    GlpmState st;
    st.positions = op.sample_with_precision(d, rng);
    st.tau = {0.9};
    st.gamma2 = 0.7;
    Eigen::MatrixXd v = op.sample_with_precision(d, rng);
    const double before = op.quadratic_form(st.positions) + op.quadratic_form(v);
    split_hmc_trajectory(st, v, net, op, cfg, nullptr);
    const double after = op.quadratic_form(st.positions) + op.quadratic_form(v);
    worst_energy = std::max(
        worst_energy, std::abs(after - before) / std::max(1.0, std::abs(before)));
  }

  ok = ok && worst_dh <= 1e-8 && worst_energy <= 1e-10;
  return report(ok, 4,
                fmt("complete-graph steps are exact (max |log ratio| %.2e of "
                    "1e-8 over 3x1000 steps; rotation energy drift %.2e of "
                    "1e-10)",
                    worst_dh, worst_energy));
}

// ---------------------------------------------------------------------------
// 5. The split integrator is reversible: integrate, flip the velocity,
//    integrate again, and land on the start.

bool check_reversibility() {
  Rng rng(5501);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const auto n = static_cast<std::int32_t>(4 + rng.uniform_int(0, 6));
    const auto d = static_cast<std::int32_t>(1 + rng.uniform_int(0, 2));
    const Network net = random_network(n, 0.4, 1, rng);
    GlpmState st = random_state(net, d, rng);
    const PrecisionOperator op(identity_sparse(n), net.laplacian(), st.gamma2,
                               true);

    BrightSet bright(net);
    for (const Dyad& dy : net.observed_non_edges())
      if (rng.bernoulli(0.6)) bright.brighten(dyad_index(dy));
    const BrightSet* restrict_to = rep % 2 == 1 ? &bright : nullptr;

    HmcConfig cfg;
    cfg.epsilon = rng.uniform(0.05, 0.5);
    cfg.leap_count = static_cast<int>(rng.uniform_int(1, 5));

    GlpmState fwd = st;
    Eigen::MatrixXd v0 = op.sample_with_precision(d, rng);
    Eigen::MatrixXd v = v0;
    split_hmc_trajectory(fwd, v, net, op, cfg, restrict_to);
    v = -v;
    split_hmc_trajectory(fwd, v, net, op, cfg, restrict_to);

    const double pos_err = (fwd.positions - st.positions).cwiseAbs().maxCoeff() /
                           std::max(1.0, st.positions.cwiseAbs().maxCoeff());
    const double vel_err = (v + v0).cwiseAbs().maxCoeff() /
                           std::max(1.0, v0.cwiseAbs().maxCoeff());
    worst = std::max({worst, pos_err, vel_err});
  }
  return report(worst <= 1e-8, 5,
                fmt("integrate, flip, integrate returns to the start on 100 "
                    "instances (max rel err %.2e, limit 1e-8)",
                    worst));
}

// ---------------------------------------------------------------------------
// 6. The generator's empirical edge fraction matches the closed-form marginal
//    edge probability in every design cell.

bool check_generator_calibration() {
  const std::int32_t n = 100, d = 2;
  const int reps = 200;
  std::uint64_t seed = 60001;
  bool ok = true;
  double worst_z = 0.0;
  std::string detail;
  for (const double tau : {0.2, 0.8}) {
    for (const double g2 : {0.2, 1.0}) {
      SynthSpec spec;
      spec.n = n;
      spec.d = d;
      spec.tau = {tau};
      spec.gamma2 = g2;
      const double target = expected_edge_prob(tau, g2, d);
      std::vector<double> fracs(reps);
      for (int r = 0; r < reps; ++r) {
        const SynthResult out = generate_network(spec, seed++);
        fracs[r] = static_cast<double>(out.network.edge_count()) /
                   static_cast<double>(dyad_count(n));
      }
      const double se = std::sqrt(variance_of(fracs) / reps);
      const double z = std::abs(mean_of(fracs) - target) / se;
      worst_z = std::max(worst_z, z);
      ok = ok && z <= 3.0;
      note(fmt("calibration cell tau=%.1f gamma2=%.1f: mean %.4f vs %.4f, "
               "|z| %.2f",
               tau, g2, mean_of(fracs), target, z));
    }
  }
  return report(ok, 6,
                fmt("generated edge fractions match the closed form in all 4 "
                    "cells, 200 replicates each (max |z| %.2f, limit 3)",
                    worst_z));
}

// ---------------------------------------------------------------------------
// 7. Relative efficiency against the single-site baseline at n = 500: the
//    analytic-flow sampler on a dense cell and the subsampled variant on a
//    sparse cell each clear a 10x median ESS/second ratio.

struct EffCellResult {
  double median = 0.0;
  std::int64_t undefined = 0;
  double seconds = 0.0;
};

EffCellResult run_efficiency_cell(double tau, double gamma2, SamplerKind target,
                                  std::uint64_t seed_base) {
  const auto t0 = Clock::now();
  SynthSpec spec;
  spec.n = 500;
  spec.d = 2;
  spec.tau = {tau};
  spec.gamma2 = gamma2;
  const SynthResult gen = generate_network(spec, seed_base);
  const Network& net = gen.network;
  const PriorSpec prior = default_prior(500, 1, 2);
  note(fmt("efficiency cell tau=%.1f gamma2=%.1f: %lld edges", tau, gamma2,
           static_cast<long long>(net.edge_count())));

  const std::int64_t iters = 10000;
  const std::int64_t discard = 1000;
  const auto run_kind = [&](SamplerKind kind, std::uint64_t tune_seed,
                            std::uint64_t fit_seed) {
    SamplerConfig cfg;
    cfg.kind = kind;
    cfg.tau_steps = {0.1};
    SamplerSession session(net, prior, cfg, tune_seed);
    if (kind == SamplerKind::mwg) {
      tune_step_size(TunedKernel::mwg, session);
      tune_step_size(TunedKernel::rw_tau, session);
    } else {
      tune_step_size(TunedKernel::hmc, session);
      if (kind == SamplerKind::split_hmc)
        tune_step_size(TunedKernel::rw_tau, session);
    }
    ChainOutput chain =
        run_sampler(net, prior, session.config(), iters, 1, fit_seed);
    note(fmt("efficiency: %s ran %.0f s, position acceptance %.2f",
             to_string(kind).c_str(), chain.total_seconds,
             chain.position_stats.acceptance_rate()));
    return chain;
  };

  const ChainOutput baseline = run_kind(SamplerKind::mwg, seed_base + 1, seed_base + 2);
  const ChainOutput chain = run_kind(target, seed_base + 3, seed_base + 4);

  Rng dyad_rng(seed_base + 5);
  const std::vector<Dyad> dyads = sample_dyads(net, 500, dyad_rng);
  const EfficiencyReport rep =
      relative_efficiency(chain, baseline, net, dyads, discard);
  return {rep.median_ratio, rep.undefined_count, seconds_since(t0)};
}

bool check_efficiency() {
  const auto t0 = Clock::now();
  const EffCellResult dense =
      run_efficiency_cell(0.8, 1.0, SamplerKind::split_hmc, 70001);
  const EffCellResult sparse =
      run_efficiency_cell(0.2, 1.0, SamplerKind::split_hmc_flymc, 70101);
  const double elapsed = seconds_since(t0);
  const bool ok = dense.median >= 10.0 && sparse.median >= 10.0 &&
                  elapsed <= 7200.0;
  return report(
      ok, 7,
      fmt("median ESS/second ratio over the single-site baseline at n=500: "
          "analytic flow %.1fx (dense cell), subsampled %.1fx (sparse cell); "
          "limit 10x each; %.0f s of 7200",
          dense.median, sparse.median, elapsed));
}

// ---------------------------------------------------------------------------
// 8. Tuned step sizes track the posterior geometry: the single-site width
//    shrinks (never grows) with n, while the flow step stays within a factor
//    of 2 across the same grid.

bool check_tuning_trend() {
  const std::array<std::int32_t, 4> sizes = {50, 100, 200, 500};
  std::vector<double> deltas, epsilons;
  bool tunes_ok = true;
  for (const std::int32_t n : sizes) {
    SynthSpec spec;
    spec.n = n;
    spec.d = 2;
    spec.tau = {0.5};
    spec.gamma2 = 1.0;
    const SynthResult gen = generate_network(spec, 8800 + n);
    const PriorSpec prior = default_prior(n, 1, 2);

    // The tuner stops at the first in-band pilot measurement, so a single run
    // carries ~15% stopping noise; the median over three independent tuning
    // runs measures the central tuned value instead of seed luck.
    std::vector<double> delta_runs, eps_runs;
    for (std::uint64_t rep = 1; rep <= 3; ++rep) {
      SamplerConfig mcfg;
      mcfg.kind = SamplerKind::mwg;
      mcfg.tau_steps = {0.1};
      SamplerSession msession(gen.network, prior, mcfg, 8200 + 1000 * rep + n);
      const TuneResult mres = tune_step_size(TunedKernel::mwg, msession);
      delta_runs.push_back(mres.values[0]);
      tunes_ok = tunes_ok && !mres.exhausted;

      SamplerConfig hcfg;
      hcfg.kind = SamplerKind::split_hmc;
      hcfg.tau_steps = {0.1};
      SamplerSession hsession(gen.network, prior, hcfg, 8300 + 1000 * rep + n);
      const TuneResult hres = tune_step_size(TunedKernel::hmc, hsession);
      eps_runs.push_back(hres.values[0]);
      tunes_ok = tunes_ok && !hres.exhausted;
    }
    deltas.push_back(median_of(delta_runs));
    epsilons.push_back(median_of(eps_runs));
    note(fmt("tuning n=%d: delta %.4f %.4f %.4f, epsilon %.4f %.4f %.4f", n,
             delta_runs[0], delta_runs[1], delta_runs[2], eps_runs[0],
             eps_runs[1], eps_runs[2]));
  }

  bool non_increasing = true;
  for (std::size_t k = 1; k < deltas.size(); ++k)
    non_increasing = non_increasing && deltas[k] <= deltas[k - 1];
  const double spread = *std::max_element(epsilons.begin(), epsilons.end()) /
                        *std::min_element(epsilons.begin(), epsilons.end());
  const bool ok = tunes_ok && non_increasing && spread <= 2.0;
  return report(
      ok, 8,
      fmt("tuned steps across n=50..500 (median of 3 runs): single-site width "
          "%.3f/%.3f/%.3f/%.3f %s, flow step %.3f/%.3f/%.3f/%.3f spread %.2fx "
          "(limit 2x)",
          deltas[0], deltas[1], deltas[2], deltas[3],
          non_increasing ? "non-increasing" : "NOT non-increasing", epsilons[0],
          epsilons[1], epsilons[2], epsilons[3], spread));
}

// ---------------------------------------------------------------------------
// 9. The conjugate draws reproduce closed-form Beta and inverse-gamma moments.

struct MomentTarget {
  double mean, var, mu4;  // central fourth moment, for the variance SE
};

MomentTarget beta_target(double a, double b) {
  // Raw moments m_k = prod_{r<k} (a+r)/(a+b+r).
  double m[5] = {1.0, 0.0, 0.0, 0.0, 0.0};
  for (int k = 1; k <= 4; ++k)
    m[k] = m[k - 1] * (a + k - 1) / (a + b + k - 1);
  const double mu = m[1];
  const double var = m[2] - mu * mu;
  const double mu4 =
      m[4] - 4.0 * mu * m[3] + 6.0 * mu * mu * m[2] - 3.0 * mu * mu * mu * mu;
  return {mu, var, mu4};
}

MomentTarget inverse_gamma_target(double alpha, double beta) {
  // Raw moments m_k = beta^k / prod_{r=1..k} (alpha - r), finite for alpha > 4.
  double m[5] = {1.0, 0.0, 0.0, 0.0, 0.0};
  for (int k = 1; k <= 4; ++k) m[k] = m[k - 1] * beta / (alpha - k);
  const double mu = m[1];
  const double var = m[2] - mu * mu;
  const double mu4 =
      m[4] - 4.0 * mu * m[3] + 6.0 * mu * mu * m[2] - 3.0 * mu * mu * mu * mu;
  return {mu, var, mu4};
}

// max |z| over the mean and variance checks for one sampled series.
double moment_z(const std::vector<double>& draws, const MomentTarget& t) {
  const auto n = static_cast<double>(draws.size());
  const double mean_z =
      std::abs(mean_of(draws) - t.mean) / std::sqrt(t.var / n);
  const double var_se = std::sqrt((t.mu4 - t.var * t.var) / n);
  const double var_z = std::abs(variance_of(draws) - t.var) / var_se;
  return std::max(mean_z, var_z);
}

bool check_conjugate_moments() {
  const int draws = 100000;

  // Two-category network: edges {0,1} and {2,3}, category-2 dyads (1,2) and
  // (0,3). With everything dark the conditionals are Beta(4,6) and Beta(3,3).
  std::vector<std::int16_t> codes = {1, 1, 2, 2, 1, 1};
  Network net(4, {Dyad{0, 1}, Dyad{2, 3}}, std::move(codes), 2);
  PriorSpec prior = default_prior(4, 2, 2);
  prior.tau_alpha = {2.0, 3.0};
  prior.tau_beta = {4.0, 1.0};
  BrightSet bright(net);

  GlpmState st;
  st.positions = Eigen::MatrixXd::Zero(4, 2);
  st.tau = {0.5, 0.5};
  st.gamma2 = 1.0;

  Rng rng(9901);
  std::vector<double> tau1(draws), tau2(draws);
  for (int i = 0; i < draws; ++i) {
    gibbs_tau(st, net, prior, bright, rng);
    tau1[i] = st.tau[0];
    tau2[i] = st.tau[1];
  }
  const double z1 = moment_z(tau1, beta_target(4.0, 6.0));
  const double z2 = moment_z(tau2, beta_target(3.0, 3.0));

  // Scale draw: Z = ones(2x2), identity Omega, prior shape 5 rate 1 gives an
  // inverse-gamma with shape 7 and rate 3.
  PriorSpec gprior = default_prior(2, 1, 2, 5.0, 1.0);
  GlpmState gst;
  gst.positions = Eigen::MatrixXd::Ones(2, 2);
  gst.tau = {0.5};
  gst.gamma2 = 1.0;
  std::vector<double> g2(draws);
  for (int i = 0; i < draws; ++i) {
    gibbs_gamma2(gst, gprior, rng);
    g2[i] = gst.gamma2;
  }
  const double z3 = moment_z(g2, inverse_gamma_target(7.0, 3.0));

  const double worst = std::max({z1, z2, z3});
  return report(worst <= 5.0, 9,
                fmt("conjugate draws match closed-form moments on 1e5 draws "
                    "(max moment |z| %.2f, limit 5)",
                    worst));
}

// ---------------------------------------------------------------------------
// 10. The autocorrelation-time estimator is calibrated on series with known
//     effective size: iid noise and a first-order autoregression.

bool check_ess_calibration() {
  bool ok = true;
  double worst_iid = 1.0;
  std::vector<double> ratios;
  for (std::uint64_t seed = 101; seed <= 110; ++seed) {
    Rng rng(seed);
    std::vector<double> x(10000);
    for (double& v : x) v = rng.normal();
    const double ratio = effective_sample_size(x).ess / 10000.0;
    ratios.push_back(ratio);
    if (std::abs(ratio - 1.0) > std::abs(worst_iid - 1.0)) worst_iid = ratio;
    ok = ok && ratio >= 0.8 && ratio <= 1.2;
  }
  const double mean_ratio = mean_of(ratios);
  ok = ok && mean_ratio >= 0.95 && mean_ratio <= 1.05;

  // AR(1) with rho = 0.9: true effective fraction (1-rho)/(1+rho) = 1/19.
  const double rho = 0.9;
  double worst_ar = 1.0;
  for (std::uint64_t seed = 201; seed <= 203; ++seed) {
    Rng rng(seed);
    const int n = 100000;
    std::vector<double> x(n);
    x[0] = rng.normal();
    const double innov = std::sqrt(1.0 - rho * rho);
    for (int t = 1; t < n; ++t) x[t] = rho * x[t - 1] + innov * rng.normal();
    const double expected = n * (1.0 - rho) / (1.0 + rho);
    const double factor = effective_sample_size(x).ess / expected;
    if (std::abs(std::log(factor)) > std::abs(std::log(worst_ar)))
      worst_ar = factor;
    ok = ok && factor >= 1.0 / 1.5 && factor <= 1.5;
  }
  return report(ok, 10,
                fmt("effective-size estimator calibrated: iid ratio worst %.3f "
                    "(band 0.8-1.2, mean %.3f), AR(1) factor worst %.2f "
                    "(band 1/1.5-1.5)",
                    worst_iid, mean_ratio, worst_ar));
}

// ---------------------------------------------------------------------------
// 11. The per-dyad indicator kernel leaves its exact conditional invariant,
//     checked as a matrix identity, including products over several dyads.

bool check_indicator_invariance() {
  const auto kernel = [](double tau, double s, double K[2][2]) {
    const double p01 = tau * (-std::expm1(-0.5 * s));
    K[0][0] = 1.0 - p01;
    K[0][1] = p01;
    K[1][0] = 1.0 - tau;
    K[1][1] = tau;
  };
  const auto stationary = [](double tau, double s) {
    return tau * (-std::expm1(-0.5 * s)) / (1.0 - tau * std::exp(-0.5 * s));
  };

  double worst = 0.0;
  const double taus[] = {1e-6, 0.2, 0.5, 0.8, 0.999999};
  const double dists[] = {1e-8, 0.1, 1.0, 4.0, 40.0};
  for (const double tau : taus) {
    for (const double s : dists) {
      double K[2][2];
      kernel(tau, s, K);
      const double pi1 = stationary(tau, s);
      const double pi0 = 1.0 - pi1;
      worst = std::max(worst, std::abs(pi0 * K[0][1] + pi1 * K[1][1] - pi1));
      worst = std::max(worst, std::abs(pi0 * K[0][0] + pi1 * K[1][0] - pi0));
    }
  }

  // Joint invariance over two dyads: the sweep factorizes, so the joint kernel
  // is the tensor product and the joint conditional the product measure.
  {
    const double tau = 0.35;
    const double sa = 4.0, sb = 5.0;
    double Ka[2][2], Kb[2][2];
    kernel(tau, sa, Ka);
    kernel(tau, sb, Kb);
    const double pa = stationary(tau, sa), pb = stationary(tau, sb);
    double pi[4], K[4][4];
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        pi[2 * a + b] = (a ? pa : 1.0 - pa) * (b ? pb : 1.0 - pb);
        for (int a2 = 0; a2 < 2; ++a2)
          for (int b2 = 0; b2 < 2; ++b2)
            K[2 * a + b][2 * a2 + b2] = Ka[a][a2] * Kb[b][b2];
      }
    for (int col = 0; col < 4; ++col) {
      double acc = 0.0;
      for (int row = 0; row < 4; ++row) acc += pi[row] * K[row][col];
      worst = std::max(worst, std::abs(acc - pi[col]));
    }
  }
  return report(worst <= 1e-10, 11,
                fmt("indicator kernel leaves its exact conditional invariant "
                    "(max |piK - pi| %.2e, limit 1e-10)",
                    worst));
}

}  // namespace

int main(int argc, char** argv) {
  const std::string group = argc > 1 ? argv[1] : "all";
  std::vector<int> selected;
  if (group == "fast")
    selected = {2, 3, 4, 5, 9, 10, 11};
  else if (group == "calibration")
    selected = {6};
  else if (group == "agreement")
    selected = {1};
  else if (group == "tuning")
    selected = {8};
  else if (group == "efficiency")
    selected = {7};
  else if (group == "all")
    selected = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  else {
    std::fprintf(stderr,
                 "usage: %s [fast|calibration|agreement|tuning|efficiency|all]\n",
                 argv[0]);
    return 2;
  }

  int failures = 0;
  for (const int c : selected) {
    bool pass = false;
    switch (c) {
      case 1: pass = check_agreement(); break;
      case 2: pass = check_marginalization(); break;
      case 3: pass = check_gradients(); break;
      case 4: pass = check_complete_graph(); break;
      case 5: pass = check_reversibility(); break;
      case 6: pass = check_generator_calibration(); break;
      case 7: pass = check_efficiency(); break;
      case 8: pass = check_tuning_trend(); break;
      case 9: pass = check_conjugate_moments(); break;
      case 10: pass = check_ess_calibration(); break;
      case 11: pass = check_indicator_invariance(); break;
    }
    failures += pass ? 0 : 1;
  }
  std::printf("%zu/%zu criteria passed\n", selected.size() - failures,
              selected.size());
  return failures == 0 ? 0 : 1;
}
