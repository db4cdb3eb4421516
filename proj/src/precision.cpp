#include "glpm/precision.hpp"

#include <cmath>
#include <string>

#include "glpm/errors.hpp"

namespace glpm {

PrecisionOperator::PrecisionOperator(Eigen::SparseMatrix<double> omega,
                                     Eigen::SparseMatrix<double> laplacian,
                                     double gamma2, bool factorize_now)
    : omega_(std::move(omega)), laplacian_(std::move(laplacian)), gamma2_(gamma2) {
  if (!(gamma2_ > 0.0)) throw ValidationError("precision: gamma2 must be positive");
  if (omega_.rows() != omega_.cols())
    throw ValidationError("precision: omega must be square");
  if (laplacian_.rows() == 0 && laplacian_.cols() == 0) {
    laplacian_.resize(omega_.rows(), omega_.cols());
  }
  if (laplacian_.rows() != omega_.rows() || laplacian_.cols() != omega_.cols())
    throw ValidationError("precision: omega/laplacian dimension mismatch");
  omega_.makeCompressed();
  laplacian_.makeCompressed();
  rebuild_matrix();
  if (factorize_now) factorize();
}

void PrecisionOperator::rebuild_matrix() {
  sigma_ = (1.0 / gamma2_) * omega_ + laplacian_;
  sigma_.makeCompressed();
}

void PrecisionOperator::factorize() {
  if (!pattern_analyzed_) {
    ldlt_.analyzePattern(sigma_);
    pattern_analyzed_ = true;
  }
  ldlt_.factorize(sigma_);
  factorized_ = false;
  if (ldlt_.info() != Eigen::Success) {
    throw NumericError("precision: sparse factorization failed");
  }
  const Eigen::VectorXd& d = ldlt_.vectorD();
  for (Eigen::Index k = 0; k < d.size(); ++k) {
    if (!(d[k] > 0.0) || !std::isfinite(d[k])) {
      throw NumericError("precision: matrix not positive definite (pivot " +
                         std::to_string(k) + " in elimination order, value " +
                         std::to_string(d[k]) + ")");
    }
  }
  factorized_ = true;
}

void PrecisionOperator::update_gamma2(double gamma2, bool factorize_now) {
  if (!(gamma2 > 0.0)) throw NumericError("precision: gamma2 must be positive");
  gamma2_ = gamma2;
  rebuild_matrix();
  factorized_ = false;
  if (factorize_now) factorize();
}

void PrecisionOperator::require_factor(const char* op) const {
  if (!factorized_)
    throw NumericError(std::string("precision: ") + op +
                       " requires a numeric factorization (call update_gamma2 "
                       "with factorize_now=true)");
}

Eigen::MatrixXd PrecisionOperator::solve(const Eigen::MatrixXd& B) const {
  require_factor("solve");
  if (B.rows() != sigma_.rows())
    throw ValidationError("precision: solve dimension mismatch");
  return ldlt_.solve(B);
}

double PrecisionOperator::quadratic_form(const Eigen::MatrixXd& Z) const {
  if (Z.rows() != sigma_.rows())
    throw ValidationError("precision: quadratic form dimension mismatch");
  return 0.5 * (Z.cwiseProduct(sigma_ * Z)).sum();
}

Eigen::MatrixXd PrecisionOperator::covariance_transform(
    const Eigen::MatrixXd& xi) const {
  require_factor("covariance_transform");
  if (xi.rows() != sigma_.rows())
    throw ValidationError("precision: transform dimension mismatch");
  const Eigen::VectorXd sqrt_d = ldlt_.vectorD().cwiseSqrt();
  // Sigma = Pinv L D L^T P, so G = Pinv L D^{1/2} satisfies G G^T = Sigma.
  return ldlt_.permutationPinv() *
         (ldlt_.matrixL() * (sqrt_d.asDiagonal() * xi)).eval();
}

Eigen::MatrixXd PrecisionOperator::precision_transform(
    const Eigen::MatrixXd& xi) const {
  require_factor("precision_transform");
  if (xi.rows() != sigma_.rows())
    throw ValidationError("precision: transform dimension mismatch");
  const Eigen::VectorXd inv_sqrt_d = ldlt_.vectorD().cwiseSqrt().cwiseInverse();
  // Sigma^{-1} = Pinv L^{-T} D^{-1} L^{-1} P, so H = Pinv L^{-T} D^{-1/2}.
  return ldlt_.permutationPinv() *
         ldlt_.matrixU().solve((inv_sqrt_d.asDiagonal() * xi).eval());
}

Eigen::MatrixXd PrecisionOperator::sample_with_covariance(int d, Rng& rng) const {
  require_factor("sample_with_covariance");
  const Eigen::Index n = sigma_.rows();
  Eigen::MatrixXd xi(n, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < n; ++i) xi(i, j) = rng.normal();
  return covariance_transform(xi);
}

Eigen::MatrixXd PrecisionOperator::sample_with_precision(int d, Rng& rng) const {
  require_factor("sample_with_precision");
  const Eigen::Index n = sigma_.rows();
  Eigen::MatrixXd xi(n, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < n; ++i) xi(i, j) = rng.normal();
  return precision_transform(xi);
}

double PrecisionOperator::log_det() const {
  require_factor("log_det");
  return ldlt_.vectorD().array().log().sum();
}

Eigen::MatrixXd sample_gaussian_prior(const Eigen::SparseMatrix<double>& omega,
                                      double gamma2, int d, Rng& rng) {
  PrecisionOperator op(omega, Eigen::SparseMatrix<double>(), gamma2, true);
  return op.sample_with_precision(d, rng);
}

}  // namespace glpm
