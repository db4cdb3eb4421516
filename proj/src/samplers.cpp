#include "glpm/samplers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "glpm/errors.hpp"

namespace glpm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void add_stats(KernelStats& stats, std::int64_t proposals, std::int64_t accepts,
               double seconds) {
  stats.proposals += proposals;
  stats.accepts += accepts;
  stats.seconds += seconds;
}

}  // namespace

std::string to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::mwg: return "mwg";
    case SamplerKind::split_hmc: return "split_hmc";
    case SamplerKind::split_hmc_flymc: return "split_hmc_flymc";
  }
  return "unknown";
}

SamplerKind sampler_kind_from_string(const std::string& name) {
  if (name == "mwg") return SamplerKind::mwg;
  if (name == "split_hmc") return SamplerKind::split_hmc;
  if (name == "split_hmc_flymc") return SamplerKind::split_hmc_flymc;
  throw ValidationError("unknown sampler kind '" + name + "'");
}

double mwg_log_ratio(const GlpmState& state, const Network& net,
                     const PrecisionOperator& op, std::int32_t i,
                     const Eigen::RowVectorXd& zi_new) {
  const Eigen::MatrixXd& Z = state.positions;
  const auto n = static_cast<std::int32_t>(Z.rows());
  const auto d = static_cast<std::int32_t>(Z.cols());
  const Eigen::SparseMatrix<double>& sigma = op.matrix();
  const Eigen::RowVectorXd delta = zi_new - Z.row(i);

  // Quadratic difference along row i: sum_k 2 delta_k (Sigma Z)_{ik}
  // + delta_k^2 Sigma_ii. Column i of the symmetric Sigma is row i.
  Eigen::RowVectorXd wi = Eigen::RowVectorXd::Zero(d);
  double sigma_ii = 0.0;
  for (Eigen::SparseMatrix<double>::InnerIterator it(sigma, i); it; ++it) {
    wi += it.value() * Z.row(it.row());
    if (it.row() == i) sigma_ii = it.value();
  }
  double dq = 0.0;
  for (std::int32_t k = 0; k < d; ++k)
    dq += 2.0 * delta[k] * wi[k] + delta[k] * delta[k] * sigma_ii;

  std::vector<double> log_tau(state.tau.size());
  for (std::size_t c = 0; c < state.tau.size(); ++c)
    log_tau[c] = std::log(state.tau[c]);

  double dp0 = 0.0;
  for (std::int32_t j = 0; j < n; ++j) {
    if (j == i) continue;
    const std::int64_t idx = dyad_index(i, j);
    if (net.is_edge_idx(idx) || !net.is_observed_idx(idx)) continue;
    const double lt = log_tau[net.category_at(idx) - 1];
    const double s_old = (Z.row(i) - Z.row(j)).squaredNorm();
    const double s_new = (zi_new - Z.row(j)).squaredNorm();
    dp0 += log1m_exp(lt - 0.5 * s_new) - log1m_exp(lt - 0.5 * s_old);
  }
  return -0.5 * dq + dp0;
}

int mwg_sweep(GlpmState& state, const Network& net, const PrecisionOperator& op,
              const MwgConfig& cfg, Rng& rng) {
  if (!(cfg.delta > 0.0)) throw ValidationError("mwg: delta must be positive");
  Eigen::MatrixXd& Z = state.positions;
  const auto n = static_cast<std::int32_t>(Z.rows());
  const auto d = static_cast<std::int32_t>(Z.cols());

  Eigen::RowVectorXd zi_new(d);
  int accepts = 0;
  for (std::int32_t i = 0; i < n; ++i) {
    for (std::int32_t k = 0; k < d; ++k)
      zi_new[k] = Z(i, k) + rng.uniform(-cfg.delta, cfg.delta);
    const double log_ratio = mwg_log_ratio(state, net, op, i, zi_new);
    if (std::log(rng.uniform()) < log_ratio) {
      Z.row(i) = zi_new;
      ++accepts;
    }
  }
  return accepts;
}

void split_hmc_trajectory(GlpmState& traj, Eigen::MatrixXd& V,
                          const Network& net, const PrecisionOperator& op,
                          const HmcConfig& cfg, const BrightSet* bright) {
  if (!(cfg.epsilon > 0.0) || cfg.leap_count < 1)
    throw ValidationError("hmc: need epsilon > 0 and leap_count >= 1");
  const double eps = cfg.epsilon;
  const double sin_e = std::sin(eps);
  const double cos_e = std::cos(eps);

  const auto kicked_gradient = [&](const GlpmState& s) {
    const Eigen::MatrixXd g =
        bright ? grad_log_p0_bright(s, net, *bright) : grad_log_p0(s, net);
    return op.solve(g);
  };

  Eigen::MatrixXd g = kicked_gradient(traj);
  Eigen::MatrixXd z_new;
  for (int t = 0; t < cfg.leap_count; ++t) {
    V += (0.5 * eps) * g;
    z_new = sin_e * V + cos_e * traj.positions;
    V = (cos_e * V - sin_e * traj.positions).eval();
    traj.positions = z_new;
    g = kicked_gradient(traj);
    V += (0.5 * eps) * g;
  }
}

HmcResult split_hmc_step(GlpmState& state, const Network& net,
                         const PrecisionOperator& op, const HmcConfig& cfg,
                         const BrightSet* bright, Rng& rng) {
  const auto d = static_cast<int>(state.positions.cols());

  const auto non_edge_part = [&](const GlpmState& s) {
    return bright ? log_p0_bright(s, net, *bright) : log_p0(s, net);
  };
  const auto energy = [&](const GlpmState& s, const Eigen::MatrixXd& v) {
    return -non_edge_part(s) + op.quadratic_form(s.positions) +
           op.quadratic_form(v);
  };

  const Eigen::MatrixXd momentum = op.sample_with_covariance(d, rng);
  Eigen::MatrixXd V = op.solve(momentum);
  const double h0 = energy(state, V);

  GlpmState traj = state;
  split_hmc_trajectory(traj, V, net, op, cfg, bright);
  // Mapping V back to a momentum U'' = Sigma V would give the kinetic term
  // 0.5 U'' Sigma^{-1} U'' = 0.5 V' Sigma V, so it is evaluated through V.
  const double h1 = energy(traj, V);

  HmcResult res;
  res.delta_h = h1 - h0;
  res.singular = !std::isfinite(h1);
  const double log_u = std::log(rng.uniform());
  res.accepted = std::isfinite(res.delta_h) && log_u < -res.delta_h;
  if (res.accepted) state.positions = traj.positions;
  return res;
}

FlymcStats flymc_sweep(const GlpmState& state, const Network& net,
                       BrightSet& bright, Rng& rng) {
  FlymcStats out;
  const std::int32_t c_count = net.num_categories();

  // Snapshot so each dyad's update depends on its sweep-start state only.
  const std::vector<std::int64_t> start_bright = bright.sorted_bright();

  // Brighten: per category, a Binomial(#dark, tau) candidate subset of the
  // start-dark dyads is exactly an independent Bernoulli(tau) proposal per
  // dyad; each candidate is accepted with the 0->1 Metropolis probability.
  std::vector<std::int64_t> candidates;
  for (std::int32_t c = 1; c <= c_count; ++c) {
    const double tau = state.tau[c - 1];
    const std::int64_t dark = bright.dark_count(c);
    const std::int64_t k = rng.binomial(dark, tau);
    out.brighten_proposals += k;
    candidates.clear();
    candidates.reserve(k);
    for (std::int64_t t = 0; t < k; ++t) {
      bright.swap_dark(c, t, rng.uniform_int(t, dark - 1));
      candidates.push_back(bright.dark_at(c, t));
    }
    for (std::int64_t idx : candidates) {
      const Dyad dy = dyad_from_index(idx);
      const double s = sq_dist(state.positions, dy.i, dy.j);
      const double accept_p = -std::expm1(-0.5 * s);
      if (rng.uniform() < accept_p) {
        bright.brighten(idx);
        ++out.brightened;
      }
    }
  }

  // Darken: 1->0 moves are always accepted, so a bright dyad goes dark
  // exactly when the Bernoulli(tau) proposal lands on zero.
  for (std::int64_t idx : start_bright) {
    const double tau = state.tau[net.category_at(idx) - 1];
    if (rng.uniform() >= tau) {
      bright.darken(idx);
      ++out.darkened;
    }
  }
  return out;
}

void gibbs_tau(GlpmState& state, const Network& net, const PriorSpec& prior,
               const BrightSet& bright, Rng& rng) {
  const std::int32_t c_count = net.num_categories();
  for (std::int32_t c = 1; c <= c_count; ++c) {
    const double s1 = static_cast<double>(net.edge_count_per_category()[c] +
                                          bright.bright_count(c));
    const double s0 = static_cast<double>(bright.dark_count(c));
    const double draw =
        rng.beta(prior.tau_alpha[c - 1] + s1, prior.tau_beta[c - 1] + s0);
    state.tau[c - 1] = std::clamp(draw, 1e-12, 1.0 - 1e-12);
  }
}

double rw_tau_log_ratio(const GlpmState& state, const Network& net,
                        const PriorSpec& prior, std::int32_t c, double prop) {
  if (!(prop > 0.0) || !(prop < 1.0))
    throw ValidationError("rw_tau: ratio needs a proposal inside (0, 1)");
  const double cur = state.tau[c - 1];
  const double zeta1 = static_cast<double>(net.edge_count_per_category()[c]);
  double dlp =
      (prior.tau_alpha[c - 1] + zeta1 - 1.0) * (std::log(prop) - std::log(cur)) +
      (prior.tau_beta[c - 1] - 1.0) * (std::log1p(-prop) - std::log1p(-cur));
  for (const Dyad& dy : net.observed_non_edges(c)) {
    const double e = std::exp(-0.5 * sq_dist(state.positions, dy.i, dy.j));
    dlp += std::log1p(-prop * e) - std::log1p(-cur * e);
  }
  return dlp;
}

std::vector<char> rw_tau(GlpmState& state, const Network& net,
                         const PriorSpec& prior,
                         const std::vector<double>& step_widths, Rng& rng) {
  const std::int32_t c_count = net.num_categories();
  if (static_cast<std::int32_t>(step_widths.size()) != c_count)
    throw ValidationError("rw_tau: need one step width per category");
  std::vector<char> flags(c_count, 0);
  for (std::int32_t c = 1; c <= c_count; ++c) {
    const double width = step_widths[c - 1];
    if (!(width > 0.0)) throw ValidationError("rw_tau: step width must be positive");
    const double cur = state.tau[c - 1];
    const double prop = cur + rng.uniform(-width, width);
    if (prop <= 0.0 || prop >= 1.0) continue;  // certain reject, no density work
    if (std::log(rng.uniform()) < rw_tau_log_ratio(state, net, prior, c, prop)) {
      state.tau[c - 1] = prop;
      flags[c - 1] = 1;
    }
  }
  return flags;
}

void gibbs_gamma2(GlpmState& state, const PriorSpec& prior, Rng& rng) {
  const Eigen::MatrixXd& Z = state.positions;
  const double q = 0.5 * (Z.cwiseProduct(prior.omega * Z)).sum();
  const double nd = static_cast<double>(Z.rows()) * static_cast<double>(Z.cols());
  const double draw =
      rng.inverse_gamma(prior.gamma_a + 0.5 * nd, prior.gamma_b + q);
  if (!std::isfinite(draw) || !(draw > 0.0))
    throw NumericError("gamma2 draw is not a positive finite number");
  state.gamma2 = draw;
}

int repair_singular_bright(const GlpmState& state, BrightSet& bright) {
  std::vector<std::int64_t> victims;
  for (std::int64_t k : bright.sorted_bright()) {
    const Dyad dy = dyad_from_index(k);
    if (sq_dist(state.positions, dy.i, dy.j) <= 0.0) victims.push_back(k);
  }
  for (std::int64_t k : victims) bright.darken(k);
  return static_cast<int>(victims.size());
}

SamplerSession::SamplerSession(const Network& net, const PriorSpec& prior,
                               const SamplerConfig& config, std::uint64_t seed)
    : net_(net), prior_(prior), config_(config), seed_(seed), rng_(seed) {
  prior_.validate(net_.n(), net_.num_categories());
  const std::int32_t c_count = net_.num_categories();
  switch (config_.kind) {
    case SamplerKind::mwg:
      if (!(config_.mwg.delta > 0.0))
        throw ValidationError("sampler config: mwg delta must be positive");
      break;
    case SamplerKind::split_hmc:
    case SamplerKind::split_hmc_flymc:
      if (!(config_.hmc.epsilon > 0.0) || config_.hmc.leap_count < 1)
        throw ValidationError(
            "sampler config: need hmc epsilon > 0 and leap count >= 1");
      break;
  }
  if (config_.kind != SamplerKind::split_hmc_flymc &&
      static_cast<std::int32_t>(config_.tau_steps.size()) != c_count)
    throw ValidationError(
        "sampler config: need one tau step width per covariate category");
  initialize(seed);
}

SamplerSession::~SamplerSession() = default;

void SamplerSession::initialize(std::uint64_t seed) {
  (void)seed;
  const std::int32_t c_count = net_.num_categories();
  const std::int32_t d = prior_.d;

  state_.gamma2 = prior_.gamma_a > 1.0
                      ? prior_.gamma_b / (prior_.gamma_a - 1.0)
                      : 1.0;

  state_.tau.resize(c_count);
  for (std::int32_t c = 1; c <= c_count; ++c) {
    const std::int64_t edges_c = net_.edge_count_per_category()[c];
    const std::int64_t dyads_c =
        edges_c +
        static_cast<std::int64_t>(net_.observed_non_edges(c).size());
    const double frac =
        dyads_c > 0 ? static_cast<double>(edges_c) / dyads_c : 0.5;
    state_.tau[c - 1] = std::clamp(frac, 0.01, 0.99);
  }

  const bool needs_factor = config_.kind != SamplerKind::mwg;
  op_ = std::make_unique<PrecisionOperator>(prior_.omega, net_.laplacian(),
                                            state_.gamma2, needs_factor);

  state_.positions = sample_gaussian_prior(prior_.omega, state_.gamma2, d, rng_);

  // Deterministic sharpening: gradient ascent on the position part of the log
  // posterior with step halving on non-increase.
  double eta = 0.1;
  double cur = -op_->quadratic_form(state_.positions) + log_p0(state_, net_);
  for (int it = 0; it < 200; ++it) {
    const Eigen::MatrixXd g =
        grad_log_p0(state_, net_) - op_->multiply(state_.positions);
    GlpmState cand = state_;
    cand.positions += eta * g;
    const double cl = -op_->quadratic_form(cand.positions) + log_p0(cand, net_);
    if (cl > cur && std::isfinite(cl)) {
      state_.positions = cand.positions;
      cur = cl;
    } else {
      eta *= 0.5;
    }
  }

  if (config_.kind == SamplerKind::split_hmc_flymc) {
    bright_ = std::make_unique<BrightSet>(net_);
    for (const Dyad& dy : net_.observed_non_edges()) {
      if (rng_.bernoulli(state_.tau[net_.category(dy) - 1]))
        bright_->brighten(dyad_index(dy));
    }
  }
}

void SamplerSession::iterate(ChainOutput*) {
  const std::int32_t c_count = net_.num_categories();
  switch (config_.kind) {
    case SamplerKind::mwg: {
      auto t0 = Clock::now();
      const int acc = mwg_sweep(state_, net_, *op_, config_.mwg, rng_);
      add_stats(position_stats_, net_.n(), acc, seconds_since(t0));

      t0 = Clock::now();
      const auto flags = rw_tau(state_, net_, prior_, config_.tau_steps, rng_);
      std::int64_t tau_acc = 0;
      for (std::size_t c = 0; c < flags.size(); ++c) {
        tau_acc += flags[c];
        tau_accepts_per_cat_[c] += flags[c];
      }
      add_stats(tau_stats_, c_count, tau_acc, seconds_since(t0));

      t0 = Clock::now();
      gibbs_gamma2(state_, prior_, rng_);
      add_stats(gamma_stats_, 1, 1, seconds_since(t0));

      t0 = Clock::now();
      op_->update_gamma2(state_.gamma2, false);
      rebuild_seconds_ += seconds_since(t0);
      break;
    }
    case SamplerKind::split_hmc: {
      auto t0 = Clock::now();
      const HmcResult res =
          split_hmc_step(state_, net_, *op_, config_.hmc, nullptr, rng_);
      add_stats(position_stats_, 1, res.accepted ? 1 : 0, seconds_since(t0));
      singular_rejects_ += res.singular ? 1 : 0;

      t0 = Clock::now();
      const auto flags = rw_tau(state_, net_, prior_, config_.tau_steps, rng_);
      std::int64_t tau_acc = 0;
      for (std::size_t c = 0; c < flags.size(); ++c) {
        tau_acc += flags[c];
        tau_accepts_per_cat_[c] += flags[c];
      }
      add_stats(tau_stats_, c_count, tau_acc, seconds_since(t0));

      t0 = Clock::now();
      gibbs_gamma2(state_, prior_, rng_);
      add_stats(gamma_stats_, 1, 1, seconds_since(t0));

      t0 = Clock::now();
      op_->update_gamma2(state_.gamma2, true);
      rebuild_seconds_ += seconds_since(t0);
      break;
    }
    case SamplerKind::split_hmc_flymc: {
      repair_singular_bright(state_, *bright_);
      auto t0 = Clock::now();
      const HmcResult res =
          split_hmc_step(state_, net_, *op_, config_.hmc, bright_.get(), rng_);
      add_stats(position_stats_, 1, res.accepted ? 1 : 0, seconds_since(t0));
      singular_rejects_ += res.singular ? 1 : 0;

      t0 = Clock::now();
      const FlymcStats fs = flymc_sweep(state_, net_, *bright_, rng_);
      add_stats(theta_stats_, fs.brighten_proposals, fs.brightened,
                seconds_since(t0));

      t0 = Clock::now();
      gibbs_tau(state_, net_, prior_, *bright_, rng_);
      add_stats(tau_stats_, c_count, c_count, seconds_since(t0));

      t0 = Clock::now();
      gibbs_gamma2(state_, prior_, rng_);
      add_stats(gamma_stats_, 1, 1, seconds_since(t0));

      t0 = Clock::now();
      op_->update_gamma2(state_.gamma2, true);
      rebuild_seconds_ += seconds_since(t0);
      break;
    }
  }
}

void SamplerSession::reset_segment_stats() {
  position_stats_ = {};
  tau_stats_ = {};
  theta_stats_ = {};
  gamma_stats_ = {};
  rebuild_seconds_ = 0.0;
  singular_rejects_ = 0;
  tau_accepts_per_cat_.assign(net_.num_categories(), 0);
}

SegmentStats SamplerSession::run(std::int64_t iterations) {
  if (iterations < 0) throw ValidationError("run: iterations must be >= 0");
  reset_segment_stats();
  for (std::int64_t t = 0; t < iterations; ++t) iterate(nullptr);
  SegmentStats out;
  out.position_acceptance = position_stats_.acceptance_rate();
  out.tau_acceptance.resize(net_.num_categories());
  for (std::size_t c = 0; c < out.tau_acceptance.size(); ++c) {
    out.tau_acceptance[c] =
        iterations > 0
            ? static_cast<double>(tau_accepts_per_cat_[c]) / iterations
            : 0.0;
  }
  return out;
}

ChainOutput SamplerSession::run_recorded(std::int64_t iterations,
                                         std::int64_t thin) {
  if (iterations < 0) throw ValidationError("run: iterations must be >= 0");
  if (thin < 1) throw ValidationError("run: thin must be >= 1");
  reset_segment_stats();

  ChainOutput out;
  out.kind = config_.kind;
  out.seed = seed_;
  out.iterations = iterations;
  out.thin = thin;
  const std::int64_t draws = 1 + iterations / thin;
  out.position_draws.reserve(draws);
  out.tau_draws.reserve(draws);
  out.gamma2_draws.reserve(draws);

  const auto record = [&] {
    out.position_draws.push_back(state_.positions);
    out.tau_draws.push_back(state_.tau);
    out.gamma2_draws.push_back(state_.gamma2);
  };

  const auto t0 = Clock::now();
  record();
  for (std::int64_t t = 1; t <= iterations; ++t) {
    iterate(&out);
    if (t % thin == 0) record();
  }
  out.total_seconds = seconds_since(t0);

  out.position_stats = position_stats_;
  out.tau_stats = tau_stats_;
  out.theta_stats = theta_stats_;
  out.gamma_stats = gamma_stats_;
  out.rebuild_seconds = rebuild_seconds_;
  out.singular_rejects = singular_rejects_;
  return out;
}

ChainOutput run_sampler(const Network& net, const PriorSpec& prior,
                        const SamplerConfig& config, std::int64_t iterations,
                        std::int64_t thin, std::uint64_t seed) {
  SamplerSession session(net, prior, config, seed);
  return session.run_recorded(iterations, thin);
}

}  // namespace glpm
