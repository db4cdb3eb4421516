#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "glpm/network.hpp"
#include "glpm/prior.hpp"
#include "glpm/synthgen.hpp"

namespace glpm {

/// Flat key=value experiment description. Unknown keys are rejected; every
/// run echoes the fully resolved values back so defaults are auditable.
struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::string out_dir = "out";

  enum class NetworkSource { unset, files, synthetic };
  NetworkSource source = NetworkSource::unset;
  std::string edge_list;
  std::string covariates_path;
  std::string mask_path;

  // synthetic network parameters (synth_* keys)
  std::int32_t synth_n = 0;
  std::int32_t synth_d = 2;
  std::vector<double> synth_tau;
  double synth_gamma2 = 1.0;
  std::string synth_covariate_rule = "all_one";

  OmegaSpec omega;

  std::int32_t latent_d = 2;
  std::vector<double> tau_alpha{1.0};
  std::vector<double> tau_beta{1.0};
  double gamma_a = 2.0;
  double gamma_b = 1.0;

  std::string sampler;                 // fit / tune / diagnose
  std::vector<std::string> samplers;   // benchmark
  std::int64_t iterations = 1000;
  std::int64_t thin = 1;
  std::int64_t burn_in = -1;           // -1: resolved to iterations / 10
  std::int64_t dyad_count = 500;
  bool tune = false;

  double mwg_delta = 0.1;
  double hmc_epsilon = 0.2;
  int hmc_leaps = -1;                  // -1: resolved to max(1, round(2/eps))
  std::vector<double> tau_step{0.1};

  std::int64_t resolved_burn_in() const {
    return burn_in >= 0 ? burn_in : iterations / 10;
  }
  int resolved_hmc_leaps() const;

  /// Canonical key=value rendering of every resolved field.
  std::string echo() const;

  SynthSpec synth_spec() const;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

/// Prior built from the config for a concrete network: scalar Beta
/// hyperparameters broadcast across the network's categories, omega built at
/// the network's size.
PriorSpec build_prior(const ExperimentConfig& config, const Network& net);

/// Broadcast helper: size-1 vectors stretch to length c; other lengths must
/// match exactly.
std::vector<double> broadcast_per_category(const std::vector<double>& values,
                                           std::int32_t c,
                                           const std::string& what);

}  // namespace glpm
