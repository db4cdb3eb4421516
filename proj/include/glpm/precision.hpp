#pragma once

#include <memory>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "glpm/rng.hpp"

namespace glpm {

/// Sigma = (1/gamma2) * Omega + L with a sparse LDL^T factorization behind a
/// fill-reducing ordering. Doubles as the HMC mass matrix. The symbolic
/// analysis is done once per sparsity pattern; gamma2 changes refactorize
/// numerically only (optionally deferred for callers that never solve).
class PrecisionOperator {
 public:
  PrecisionOperator(Eigen::SparseMatrix<double> omega,
                    Eigen::SparseMatrix<double> laplacian, double gamma2,
                    bool factorize_now = true);

  /// Rebuilds Sigma at a new gamma2. The sparsity pattern is unchanged, so the
  /// numeric refactorization reuses the symbolic analysis. Callers that only
  /// need Sigma rows (the Metropolis baseline) pass factorize_now = false.
  void update_gamma2(double gamma2, bool factorize_now = true);

  double gamma2_at_build() const { return gamma2_; }
  const Eigen::SparseMatrix<double>& matrix() const { return sigma_; }
  bool factorized() const { return factorized_; }

  /// Sigma^{-1} B, column-wise.
  Eigen::MatrixXd solve(const Eigen::MatrixXd& B) const;

  /// 0.5 * sum_l Z_l^T Sigma Z_l.
  double quadratic_form(const Eigen::MatrixXd& Z) const;

  /// Sigma * Z.
  Eigen::MatrixXd multiply(const Eigen::MatrixXd& Z) const { return sigma_ * Z; }

  /// Applies the covariance factor G (G G^T = Sigma) to xi: standard-normal
  /// columns map to N(0, Sigma) draws.
  Eigen::MatrixXd covariance_transform(const Eigen::MatrixXd& xi) const;

  /// Applies H with H H^T = Sigma^{-1} to xi: standard-normal columns map to
  /// draws with precision Sigma.
  Eigen::MatrixXd precision_transform(const Eigen::MatrixXd& xi) const;

  /// d independent columns from N(0, Sigma) (covariance Sigma).
  Eigen::MatrixXd sample_with_covariance(int d, Rng& rng) const;

  /// d independent columns from the Gaussian with PRECISION Sigma.
  Eigen::MatrixXd sample_with_precision(int d, Rng& rng) const;

  /// log det Sigma (from the factor diagonal).
  double log_det() const;

 private:
  void rebuild_matrix();
  void factorize();
  void require_factor(const char* op) const;

  Eigen::SparseMatrix<double> omega_;
  Eigen::SparseMatrix<double> laplacian_;
  double gamma2_;
  Eigen::SparseMatrix<double> sigma_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower,
                        Eigen::AMDOrdering<int>>
      ldlt_;
  bool pattern_analyzed_ = false;
  bool factorized_ = false;
};

/// Columns drawn from the zero-mean Gaussian with precision (1/gamma2) * Omega:
/// the latent-position prior at the reparameterized scale.
Eigen::MatrixXd sample_gaussian_prior(const Eigen::SparseMatrix<double>& omega,
                                      double gamma2, int d, Rng& rng);

}  // namespace glpm
