#include "glpm/model.hpp"

#include <limits>

#include "glpm/errors.hpp"

namespace glpm {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double edge_tau_sum(const GlpmState& state, const Network& net) {
  double total = 0.0;
  for (const Dyad& d : net.edges())
    total += std::log(state.tau[net.category(d) - 1]);
  return total;
}

double log_p1(const GlpmState& state, const Network& net,
              const PrecisionOperator& op) {
  return edge_tau_sum(state, net) - op.quadratic_form(state.positions);
}

double log_p0(const GlpmState& state, const Network& net) {
  double total = 0.0;
  for (const Dyad& d : net.observed_non_edges()) {
    const double s = sq_dist(state.positions, d.i, d.j);
    const double t = std::log(state.tau[net.category(d) - 1]) - 0.5 * s;
    total += log1m_exp(t);
  }
  return total;
}

double log_p0_bright(const GlpmState& state, const Network& net,
                     const BrightSet& bright) {
  (void)net;
  double total = 0.0;
  for (std::int64_t k : bright.sorted_bright()) {
    const Dyad d = dyad_from_index(k);
    const double s = sq_dist(state.positions, d.i, d.j);
    if (s <= 0.0) return kNegInf;
    total += log1m_exp(-0.5 * s);
  }
  return total;
}

Eigen::MatrixXd grad_log_p0(const GlpmState& state, const Network& net) {
  const Eigen::MatrixXd& Z = state.positions;
  Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(Z.rows(), Z.cols());
  for (const Dyad& d : net.observed_non_edges()) {
    const auto diff = Z.row(d.i) - Z.row(d.j);
    const double s = diff.squaredNorm();
    const double t = std::log(state.tau[net.category(d) - 1]) - 0.5 * s;
    const double w = exp_over_one_minus_exp(t);
    grad.row(d.i) += w * diff;
    grad.row(d.j) -= w * diff;
  }
  return grad;
}

Eigen::MatrixXd grad_log_p0_bright(const GlpmState& state, const Network& net,
                                   const BrightSet& bright) {
  (void)net;
  const Eigen::MatrixXd& Z = state.positions;
  Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(Z.rows(), Z.cols());
  for (std::int64_t k : bright.sorted_bright()) {
    const Dyad d = dyad_from_index(k);
    const auto diff = Z.row(d.i) - Z.row(d.j);
    const double s = diff.squaredNorm();
    // s == 0 gives w = inf and a NaN row; the proposal is then rejected by the
    // non-finite-energy guard in the integrator.
    const double w = exp_over_one_minus_exp(-0.5 * s);
    grad.row(d.i) += w * diff;
    grad.row(d.j) -= w * diff;
  }
  return grad;
}

double log_posterior(const GlpmState& state, const Network& net,
                     const PriorSpec& prior, const PrecisionOperator& op) {
  double total = log_p1(state, net, op) + log_p0(state, net);
  for (std::size_t c = 0; c < state.tau.size(); ++c) {
    total += (prior.tau_alpha[c] - 1.0) * std::log(state.tau[c]) +
             (prior.tau_beta[c] - 1.0) * std::log1p(-state.tau[c]);
  }
  const double g2 = state.gamma2;
  total += -(prior.gamma_a + 1.0) * std::log(g2) - prior.gamma_b / g2;
  const double nd =
      static_cast<double>(state.positions.rows()) * state.positions.cols();
  total += -0.5 * nd * std::log(g2);
  return total;
}

std::pair<double, double> marginal_vs_augmented_check(const GlpmState& state,
                                                      const Network& net) {
  const auto& non_edges = net.observed_non_edges();
  const auto k_count = static_cast<std::int32_t>(non_edges.size());
  if (k_count > 20)
    throw ValidationError("marginalization check: too many non-edges (" +
                          std::to_string(k_count) + " > 20) to enumerate");

  double edge_part = 0.0;
  for (const Dyad& d : net.edges()) {
    const double s = sq_dist(state.positions, d.i, d.j);
    edge_part += std::log(state.tau[net.category(d) - 1]) - 0.5 * s;
  }

  // Per-dyad pieces reused across configurations.
  std::vector<double> log_tau_k(k_count), log_one_minus_tau_k(k_count),
      log_bright_k(k_count);
  double marginal = edge_part;
  for (std::int32_t k = 0; k < k_count; ++k) {
    const Dyad& d = non_edges[k];
    const double tau = state.tau[net.category(d) - 1];
    const double s = sq_dist(state.positions, d.i, d.j);
    log_tau_k[k] = std::log(tau);
    log_one_minus_tau_k[k] = std::log1p(-tau);
    log_bright_k[k] = log1m_exp(-0.5 * s);
    marginal += log1m_exp(std::log(tau) - 0.5 * s);
  }

  // log sum over all 2^K theta configurations of the augmented joint.
  double max_term = kNegInf;
  std::vector<double> terms;
  terms.reserve(std::size_t{1} << k_count);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << k_count); ++mask) {
    double term = edge_part;
    for (std::int32_t k = 0; k < k_count; ++k) {
      if (mask & (std::uint32_t{1} << k))
        term += log_tau_k[k] + log_bright_k[k];
      else
        term += log_one_minus_tau_k[k];
    }
    terms.push_back(term);
    max_term = std::max(max_term, term);
  }
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - max_term);
  const double augmented = max_term + std::log(sum);
  return {marginal, augmented};
}

}  // namespace glpm
