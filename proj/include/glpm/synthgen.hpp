#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "glpm/network.hpp"
#include "glpm/prior.hpp"

namespace glpm {

/// Generation design: positions drawn from N(0, Omega^{-1}) at the original
/// scale, each dyad an independent Bernoulli with probability
/// tau_{x_ij} exp(-||z_i - z_j||^2 / (2 gamma2)).
struct SynthSpec {
  std::int32_t n = 50;
  std::int32_t d = 2;
  std::vector<double> tau = {0.5};  // one per covariate category
  double gamma2 = 1.0;
  OmegaSpec omega;

  enum class CovariateRule { all_one, uniform };
  CovariateRule covariate_rule = CovariateRule::all_one;

  void validate() const;
  std::int32_t num_categories() const {
    return static_cast<std::int32_t>(tau.size());
  }
};

struct SynthResult {
  Network network;
  Eigen::MatrixXd true_positions;  // n x d, original scale
};

SynthResult generate_network(const SynthSpec& spec, std::uint64_t seed);

/// Closed-form marginal edge probability under an identity Omega:
/// tau_c (1 + 2 / gamma2)^{-d/2}.
double expected_edge_prob(double tau_c, double gamma2, std::int32_t d);

}  // namespace glpm
