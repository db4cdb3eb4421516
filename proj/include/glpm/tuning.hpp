#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "glpm/samplers.hpp"

namespace glpm {

enum class TunedKernel { mwg, hmc, rw_tau };

struct TuneResult {
  // Tuned step sizes: one entry for mwg delta or hmc epsilon, one per
  // covariate category for the tau random-walk widths.
  std::vector<double> values;
  int leap_count = 0;  // hmc only: max(1, round(2 / epsilon))
  double final_acceptance = 0.0;
  int rounds_used = 0;
  bool exhausted = false;  // round cap reached outside the target band
  int monotone_violations = 0;
  std::vector<std::string> warnings;
};

/// Pilot tuning on a warm session: repeats {100-iteration burn, 100-iteration
/// measurement}, nudging the step by exp(kappa * (observed - band middle))
/// until the acceptance rate lands in the target band ([0.2, 0.3] for mwg and
/// rw_tau, [0.8, 0.85] for hmc) or 25 rounds pass. Steps are clamped to
/// [1e-6, 1e2]. The session's config is updated in place.
TuneResult tune_step_size(TunedKernel kernel, SamplerSession& session);

/// Convenience wrapper that builds a fresh session from the initial config.
TuneResult tune_step_size(TunedKernel kernel, const Network& net,
                          const PriorSpec& prior, const SamplerConfig& initial,
                          std::uint64_t seed);

}  // namespace glpm
