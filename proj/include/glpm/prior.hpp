#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

namespace glpm {

/// Structural description of the per-dimension latent precision matrix.
struct OmegaSpec {
  enum class Kind { identity, ar1, triplets };
  Kind kind = Kind::identity;
  // ar1
  std::vector<std::vector<std::int32_t>> blocks;  // 0-based node sequences
  double rho = 0.0;
  // triplets
  std::string triplet_path;
};

/// Builds the sparse precision for n nodes. AR(1) blocks use the stationary
/// tridiagonal precision scaled to unit marginal variance; nodes outside every
/// block get a unit diagonal entry.
Eigen::SparseMatrix<double> build_omega(const OmegaSpec& spec, std::int32_t n);

/// Unit-variance AR(1) precision for a single chain of length t:
/// (1/(1-rho^2)) tridiag(-rho; 1, 1+rho^2, ..., 1+rho^2, 1; -rho).
Eigen::SparseMatrix<double> ar1_precision(std::int32_t t, double rho);

/// Prior hyperparameters: latent precision, Beta(alpha, beta) per covariate
/// category for tau, InverseGamma(a, b) for gamma2, latent dimension d.
struct PriorSpec {
  Eigen::SparseMatrix<double> omega;
  std::vector<double> tau_alpha;
  std::vector<double> tau_beta;
  double gamma_a = 1.0;
  double gamma_b = 1.0;
  std::int32_t d = 2;

  /// Throws ValidationError unless all hyperparameters are strictly positive,
  /// the Beta vectors have length num_categories, and omega is square of the
  /// right size and symmetric.
  void validate(std::int32_t n, std::int32_t num_categories) const;
};

/// Convenience constructor: identity omega, Beta(1,1) per category, IG(a, b).
PriorSpec default_prior(std::int32_t n, std::int32_t num_categories,
                        std::int32_t d, double gamma_a = 2.0,
                        double gamma_b = 1.0);

}  // namespace glpm
