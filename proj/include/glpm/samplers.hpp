#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "glpm/bright.hpp"
#include "glpm/chain.hpp"
#include "glpm/model.hpp"
#include "glpm/network.hpp"
#include "glpm/precision.hpp"
#include "glpm/prior.hpp"
#include "glpm/rng.hpp"

namespace glpm {

struct HmcConfig {
  double epsilon = 0.2;
  int leap_count = 10;
};

struct MwgConfig {
  double delta = 0.1;
};

/// Full per-sampler configuration; which fields apply depends on the kind.
struct SamplerConfig {
  SamplerKind kind = SamplerKind::mwg;
  MwgConfig mwg;
  HmcConfig hmc;
  std::vector<double> tau_steps;  // random-walk half-widths, one per category
};

/// One full deterministic-scan sweep of single-node uniform-box moves. The
/// acceptance ratio per node uses the Sigma row of that node (prior plus edge
/// quadratic) and the observed non-edge terms containing it. Returns the
/// number of accepted node moves.
int mwg_sweep(GlpmState& state, const Network& net, const PrecisionOperator& op,
              const MwgConfig& cfg, Rng& rng);

/// Log acceptance ratio for moving node i to zi_new with all else fixed:
/// -0.5 * (Sigma-quadratic difference along row i) plus the difference of the
/// observed non-edge terms containing i. Equal to the full log-posterior
/// difference of the two states.
double mwg_log_ratio(const GlpmState& state, const Network& net,
                     const PrecisionOperator& op, std::int32_t i,
                     const Eigen::RowVectorXd& zi_new);

struct HmcResult {
  bool accepted = false;
  bool singular = false;  // proposal had non-finite energy
  double delta_h = 0.0;
};

/// The deterministic integrator inside split_hmc_step: L rounds of {half-kick
/// on V, exact rotation of (Z, V) by angle epsilon, half-kick}, in place.
/// Volume-preserving and reversible under V -> -V.
void split_hmc_trajectory(GlpmState& traj, Eigen::MatrixXd& V,
                          const Network& net, const PrecisionOperator& op,
                          const HmcConfig& cfg, const BrightSet* bright);

/// One split Hamiltonian step: momentum refresh from N(0, Sigma), L rounds of
/// {half-kick, exact Gaussian rotation by angle epsilon, half-kick}, then a
/// Metropolis correction with the full split energy. When bright is given the
/// non-edge terms are bright-restricted.
HmcResult split_hmc_step(GlpmState& state, const Network& net,
                         const PrecisionOperator& op, const HmcConfig& cfg,
                         const BrightSet* bright, Rng& rng);

struct FlymcStats {
  std::int64_t brighten_proposals = 0;
  std::int64_t brightened = 0;
  std::int64_t darkened = 0;
};

/// Refreshes every theta indicator: equivalent in distribution to proposing
/// theta' ~ Bernoulli(tau_c) independently per observed non-edge and applying
/// the Metropolis ratios (1->0 always accepted; 0->1 accepted with probability
/// 1 - e^{-s/2}). Brighten candidates are drawn from the sweep-start dark set
/// and darkening is applied to the sweep-start bright set, so each dyad's
/// update depends only on its own start state.
FlymcStats flymc_sweep(const GlpmState& state, const Network& net,
                       BrightSet& bright, Rng& rng);

/// Conjugate update: tau_c ~ Beta(alpha_c + S1_c, beta_c + S0_c) with S1_c the
/// theta=1 count (edges included) and S0_c the dark count.
void gibbs_tau(GlpmState& state, const Network& net, const PriorSpec& prior,
               const BrightSet& bright, Rng& rng);

/// Per-category random-walk tau update against the marginal conditional
/// (Beta prior, edge count zeta^1_c, and the product of (1 - tau e^{-s/2})
/// over category-c observed non-edges). Out-of-range proposals are rejected
/// without evaluating the density. Returns per-category accept flags.
std::vector<char> rw_tau(GlpmState& state, const Network& net,
                         const PriorSpec& prior,
                         const std::vector<double>& step_widths, Rng& rng);

/// Log acceptance ratio for proposing tau_c (1-based c) -> prop with all else
/// fixed; prop must lie in (0, 1). Equal to the full log-posterior difference.
double rw_tau_log_ratio(const GlpmState& state, const Network& net,
                        const PriorSpec& prior, std::int32_t c, double prop);

/// Conjugate update: gamma2 ~ InverseGamma(a + nd/2, b + 0.5 sum_l Z_l' Omega
/// Z_l). The caller must refresh the PrecisionOperator afterwards.
void gibbs_gamma2(GlpmState& state, const PriorSpec& prior, Rng& rng);

/// Darkens any bright dyad with exactly coincident positions so the current
/// state carries finite energy. Returns the number darkened.
int repair_singular_bright(const GlpmState& state, BrightSet& bright);

/// Measured acceptance rates of a run segment (tuning support).
struct SegmentStats {
  double position_acceptance = 0.0;
  std::vector<double> tau_acceptance;  // per category (random-walk kinds only)
};

/// A persistent chain: deterministic initialization from (network, prior,
/// seed), then repeated iteration via the kind-specific update cycle. Step
/// sizes may be adjusted between segments (warm tuning).
class SamplerSession {
 public:
  SamplerSession(const Network& net, const PriorSpec& prior,
                 const SamplerConfig& config, std::uint64_t seed);
  ~SamplerSession();

  const GlpmState& state() const { return state_; }
  SamplerConfig& config() { return config_; }
  const Network& network() const { return net_; }

  /// Advances without recording; returns acceptance rates over the segment.
  SegmentStats run(std::int64_t iterations);

  /// Advances recording thinned draws and phase timings. The initial draw
  /// (index 0) is the state on entry.
  ChainOutput run_recorded(std::int64_t iterations, std::int64_t thin);

 private:
  void iterate(ChainOutput* record);
  void initialize(std::uint64_t seed);
  void reset_segment_stats();

  const Network& net_;
  const PriorSpec& prior_;
  SamplerConfig config_;
  std::uint64_t seed_;
  Rng rng_;
  GlpmState state_;
  std::unique_ptr<PrecisionOperator> op_;
  std::unique_ptr<BrightSet> bright_;
  // Per-segment tallies, reset by run/run_recorded.
  KernelStats position_stats_, tau_stats_, theta_stats_, gamma_stats_;
  std::vector<std::int64_t> tau_accepts_per_cat_;
  double rebuild_seconds_ = 0.0;
  std::int64_t singular_rejects_ = 0;
};

/// Builds a session and records a full chain in one call.
ChainOutput run_sampler(const Network& net, const PriorSpec& prior,
                        const SamplerConfig& config, std::int64_t iterations,
                        std::int64_t thin, std::uint64_t seed);

}  // namespace glpm
