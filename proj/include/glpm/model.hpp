#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "glpm/bright.hpp"
#include "glpm/network.hpp"
#include "glpm/precision.hpp"
#include "glpm/prior.hpp"

namespace glpm {

/// Current parameter state at the reparameterized scale: positions Z* (the
/// link is evaluated at unit scale), per-category sparsity tau, prior scale
/// gamma2.
struct GlpmState {
  Eigen::MatrixXd positions;  // n x d
  std::vector<double> tau;    // length C, each in (0,1)
  double gamma2 = 1.0;
};

/// log(1 - e^t) for t < 0, stable near both ends; t >= 0 returns -inf.
inline double log1m_exp(double t) {
  if (t >= 0.0) return -std::numeric_limits<double>::infinity();
  constexpr double ln2 = 0.6931471805599453;
  return t < -ln2 ? std::log1p(-std::exp(t)) : std::log(-std::expm1(t));
}

/// e^t / (1 - e^t) for t < 0; diverges to +inf as t -> 0.
inline double exp_over_one_minus_exp(double t) {
  return std::exp(t) / (-std::expm1(t));
}

inline double sq_dist(const Eigen::MatrixXd& Z, std::int32_t i, std::int32_t j) {
  return (Z.row(i) - Z.row(j)).squaredNorm();
}

/// Edge probability tau_c * exp(-sq_dist / 2).
inline double link_prob(double tau_c, double sq_dist) {
  return tau_c * std::exp(-0.5 * sq_dist);
}

/// Edge-and-prior part: sum over edges of log tau_{x_ij} minus the quadratic
/// form 0.5 * sum_l Z_l^T Sigma Z_l (which folds together the prior and the
/// exp(-s/2) edge factors through the Laplacian inside Sigma).
double log_p1(const GlpmState& state, const Network& net,
              const PrecisionOperator& op);

/// Sum over the edges of log tau_{x_ij} alone.
double edge_tau_sum(const GlpmState& state, const Network& net);

/// Non-edge part over all observed non-edges: sum of log(1 - tau_c e^{-s/2}).
double log_p0(const GlpmState& state, const Network& net);

/// Bright-restricted non-edge part: sum over bright dyads of log(1 - e^{-s/2}).
/// A coincident bright pair makes this -inf (never throws).
double log_p0_bright(const GlpmState& state, const Network& net,
                     const BrightSet& bright);

/// Gradient of log_p0 with respect to the positions. Row i accumulates
/// (z_i - z_j) * w_ij over active non-edges {i,j}.
Eigen::MatrixXd grad_log_p0(const GlpmState& state, const Network& net);

/// Bright-restricted gradient; a coincident bright pair yields non-finite
/// entries (callers reject such trajectories).
Eigen::MatrixXd grad_log_p0_bright(const GlpmState& state, const Network& net,
                                   const BrightSet& bright);

/// Unnormalized log posterior: log_p1 + log_p0 + Beta terms for tau +
/// InverseGamma terms for gamma2 + the -(n d / 2) log gamma2 from the
/// position-prior normalization. Constants independent of the state omitted.
double log_posterior(const GlpmState& state, const Network& net,
                     const PriorSpec& prior, const PrecisionOperator& op);

/// (log marginal likelihood, log of the theta-summed augmented joint), both
/// conditional on (Z*, tau). Enumerates all 2^K bright configurations over the
/// K observed non-edges; throws ValidationError when K > 20.
std::pair<double, double> marginal_vs_augmented_check(const GlpmState& state,
                                                      const Network& net);

}  // namespace glpm
