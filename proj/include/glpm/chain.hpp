#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace glpm {

enum class SamplerKind { mwg, split_hmc, split_hmc_flymc };

std::string to_string(SamplerKind kind);
SamplerKind sampler_kind_from_string(const std::string& name);

/// Proposal/acceptance tallies and wall-clock seconds for one kernel phase.
struct KernelStats {
  std::int64_t proposals = 0;
  std::int64_t accepts = 0;
  double seconds = 0.0;

  double acceptance_rate() const {
    return proposals > 0 ? static_cast<double>(accepts) / proposals : 0.0;
  }
};

/// Thinned draws plus bookkeeping for one chain. Draw t=0 is the initial
/// state; draw count = 1 + floor(iterations / thin).
struct ChainOutput {
  SamplerKind kind = SamplerKind::mwg;
  std::uint64_t seed = 0;
  std::int64_t iterations = 0;
  std::int64_t thin = 1;

  std::vector<Eigen::MatrixXd> position_draws;
  std::vector<std::vector<double>> tau_draws;
  std::vector<double> gamma2_draws;

  KernelStats position_stats;  // MwG sweeps or HMC steps
  KernelStats tau_stats;       // random-walk or Gibbs tau updates
  KernelStats theta_stats;     // FlyMC brighten proposals
  KernelStats gamma_stats;     // gamma2 Gibbs draws
  double rebuild_seconds = 0.0;
  double total_seconds = 0.0;
  std::int64_t singular_rejects = 0;  // non-finite-energy HMC rejects

  std::int64_t draw_count() const {
    return static_cast<std::int64_t>(gamma2_draws.size());
  }
};

}  // namespace glpm
