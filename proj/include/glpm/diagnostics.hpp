#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "glpm/chain.hpp"
#include "glpm/dyads.hpp"
#include "glpm/network.hpp"
#include "glpm/rng.hpp"

namespace glpm {

struct EssEstimate {
  double ess = 0.0;
  std::vector<double> rho;  // autocorrelations entering the sum, rho[0] = 1
  int truncation_lag = 0;   // last even lag whose pair was included
  bool degenerate = false;  // constant series
};

/// Initial-monotone-sequence estimator: autocorrelations are summed in
/// adjacent-lag pairs, truncated at the first nonpositive pair, with the pair
/// sequence forced non-increasing; ess = N / (1 + 2 sum rho), capped at 1.5 N.
EssEstimate effective_sample_size(const std::vector<double>& series);

/// The per-dyad functional: log tau_c - 0.5 ||z_i - z_j||^2.
double dyad_log_prob(const Eigen::MatrixXd& positions,
                     const std::vector<double>& tau, const Dyad& dyad,
                     std::int32_t category);

/// The functional evaluated along a chain's draws, dropping the first
/// discard_draws draws.
std::vector<double> functional_series(const ChainOutput& chain,
                                      const Network& net, const Dyad& dyad,
                                      std::int64_t discard_draws = 0);

struct DyadEfficiency {
  Dyad dyad;
  std::int32_t category = 1;
  double ess_target = 0.0;
  double ess_baseline = 0.0;
  double seconds_target = 0.0;
  double seconds_baseline = 0.0;
  double ratio = 0.0;
  bool defined = false;
};

struct EfficiencyReport {
  std::vector<DyadEfficiency> rows;
  double median_ratio = 0.0;  // across defined rows; NaN when none defined
  std::int64_t undefined_count = 0;
};

/// Per-dyad (ESS_target / ESS_baseline) * (seconds_baseline / seconds_target)
/// on the dyad_log_prob series, plus the median across defined dyads.
EfficiencyReport relative_efficiency(const ChainOutput& target,
                                     const ChainOutput& baseline,
                                     const Network& net,
                                     const std::vector<Dyad>& dyads,
                                     std::int64_t discard_draws = 0);

/// Uniform sample of observed dyads without replacement, returned in canonical
/// order. count above the number available returns all of them and sets
/// *truncated.
std::vector<Dyad> sample_dyads(const Network& net, std::int64_t count, Rng& rng,
                               bool* truncated = nullptr);

/// Median of the values (average of the middle two for even counts).
double median_of(std::vector<double> values);

}  // namespace glpm
