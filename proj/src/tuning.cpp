#include "glpm/tuning.hpp"

#include <algorithm>
#include <cmath>

#include "glpm/errors.hpp"

namespace glpm {

namespace {

constexpr int kMaxRounds = 25;
constexpr int kPilotIterations = 100;
constexpr double kStepLo = 1e-6;
constexpr double kStepHi = 1e2;

struct Band {
  double lo, hi, kappa;
  double mid() const { return 0.5 * (lo + hi); }
};

Band band_for(TunedKernel kernel) {
  if (kernel == TunedKernel::hmc) return {0.8, 0.85, 1.0};
  return {0.2, 0.3, 2.0};
}

double adjusted(double step, double observed, const Band& band) {
  return std::clamp(step * std::exp(band.kappa * (observed - band.mid())),
                    kStepLo, kStepHi);
}

void check_kernel_kind(TunedKernel kernel, SamplerKind kind) {
  switch (kernel) {
    case TunedKernel::mwg:
      if (kind != SamplerKind::mwg)
        throw ValidationError("tuning: mwg delta applies to the mwg sampler only");
      return;
    case TunedKernel::hmc:
      if (kind == SamplerKind::mwg)
        throw ValidationError("tuning: hmc epsilon applies to the split "
                              "Hamiltonian samplers only");
      return;
    case TunedKernel::rw_tau:
      if (kind == SamplerKind::split_hmc_flymc)
        throw ValidationError("tuning: the firefly sampler updates tau by "
                              "Gibbs, nothing to tune");
      return;
  }
}

}  // namespace

TuneResult tune_step_size(TunedKernel kernel, SamplerSession& session) {
  check_kernel_kind(kernel, session.config().kind);
  const Band band = band_for(kernel);
  TuneResult result;

  const auto current_values = [&]() -> std::vector<double> {
    switch (kernel) {
      case TunedKernel::mwg: return {session.config().mwg.delta};
      case TunedKernel::hmc: return {session.config().hmc.epsilon};
      case TunedKernel::rw_tau: return session.config().tau_steps;
    }
    return {};
  };

  std::vector<double> prev_steps;
  std::vector<double> prev_rates;
  for (int round = 1; round <= kMaxRounds; ++round) {
    session.run(kPilotIterations);  // burn toward the current step's regime
    const SegmentStats stats = session.run(kPilotIterations);

    std::vector<double> rates;
    if (kernel == TunedKernel::rw_tau) rates = stats.tau_acceptance;
    else rates = {stats.position_acceptance};
    const std::vector<double> steps = current_values();

    // Larger steps should not raise acceptance; flag clear reversals.
    if (!prev_steps.empty()) {
      for (std::size_t k = 0; k < steps.size(); ++k) {
        const bool grew = steps[k] > prev_steps[k];
        const bool shrank = steps[k] < prev_steps[k];
        const double change = rates[k] - prev_rates[k];
        if ((grew && change > 0.1) || (shrank && change < -0.1)) {
          ++result.monotone_violations;
          result.warnings.push_back(
              "acceptance moved with the step size at round " +
              std::to_string(round));
        }
      }
    }
    prev_steps = steps;
    prev_rates = rates;

    result.rounds_used = round;
    double mean_rate = 0.0;
    for (double r : rates) mean_rate += r;
    result.final_acceptance = mean_rate / static_cast<double>(rates.size());

    const bool in_band = std::all_of(rates.begin(), rates.end(), [&](double r) {
      return r >= band.lo && r <= band.hi;
    });
    if (in_band) {
      result.values = steps;
      result.exhausted = false;
      break;
    }
    result.exhausted = round == kMaxRounds;
    if (result.exhausted) {
      result.values = steps;
      break;
    }

    switch (kernel) {
      case TunedKernel::mwg:
        session.config().mwg.delta = adjusted(steps[0], rates[0], band);
        break;
      case TunedKernel::hmc: {
        const double eps = adjusted(steps[0], rates[0], band);
        session.config().hmc.epsilon = eps;
        session.config().hmc.leap_count =
            std::max(1, static_cast<int>(std::lround(2.0 / eps)));
        break;
      }
      case TunedKernel::rw_tau:
        for (std::size_t k = 0; k < steps.size(); ++k)
          session.config().tau_steps[k] = adjusted(steps[k], rates[k], band);
        break;
    }
  }

  if (kernel == TunedKernel::hmc) {
    result.leap_count = std::max(
        1, static_cast<int>(std::lround(2.0 / session.config().hmc.epsilon)));
    session.config().hmc.leap_count = result.leap_count;
  }
  return result;
}

TuneResult tune_step_size(TunedKernel kernel, const Network& net,
                          const PriorSpec& prior, const SamplerConfig& initial,
                          std::uint64_t seed) {
  SamplerSession session(net, prior, initial, seed);
  return tune_step_size(kernel, session);
}

}  // namespace glpm
