#include "glpm/synthgen.hpp"

#include <cmath>

#include "glpm/errors.hpp"
#include "glpm/precision.hpp"
#include "glpm/rng.hpp"

namespace glpm {

void SynthSpec::validate() const {
  if (n < 2) throw ValidationError("synth: need at least 2 nodes");
  if (d < 1) throw ValidationError("synth: latent dimension must be positive");
  if (tau.empty()) throw ValidationError("synth: need at least one tau value");
  for (double t : tau) {
    if (!(t >= 0.0) || !(t <= 1.0))
      throw ValidationError("synth: tau values must lie in [0, 1]");
  }
  if (!(gamma2 > 0.0)) throw ValidationError("synth: gamma2 must be positive");
}

SynthResult generate_network(const SynthSpec& spec, std::uint64_t seed) {
  spec.validate();
  Rng rng(seed);
  const std::int32_t n = spec.n;
  const std::int32_t c_count = spec.num_categories();

  const Eigen::SparseMatrix<double> omega = build_omega(spec.omega, n);
  const Eigen::MatrixXd Z = sample_gaussian_prior(omega, 1.0, spec.d, rng);

  std::vector<std::int16_t> codes;
  if (spec.covariate_rule == SynthSpec::CovariateRule::uniform && c_count > 1) {
    codes.resize(dyad_count(n));
    for (auto& code : codes)
      code = static_cast<std::int16_t>(1 + rng.uniform_int(0, c_count - 1));
  }

  std::vector<Dyad> edges;
  const std::int64_t m = dyad_count(n);
  for (std::int64_t k = 0; k < m; ++k) {
    const Dyad dy = dyad_from_index(k);
    const double tau = spec.tau[codes.empty() ? 0 : codes[k] - 1];
    const double s = (Z.row(dy.i) - Z.row(dy.j)).squaredNorm();
    const double p = tau * std::exp(-s / (2.0 * spec.gamma2));
    if (rng.uniform() < p) edges.push_back(dy);
  }

  return SynthResult{Network(n, std::move(edges), std::move(codes), c_count),
                     Z};
}

double expected_edge_prob(double tau_c, double gamma2, std::int32_t d) {
  if (!(tau_c >= 0.0) || tau_c > 1.0 || !(gamma2 > 0.0) || d < 1)
    throw ValidationError(
        "expected_edge_prob: need tau in [0,1], gamma2 > 0, d >= 1");
  return tau_c * std::pow(1.0 + 2.0 / gamma2, -0.5 * static_cast<double>(d));
}

}  // namespace glpm
