#include "glpm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include <unsupported/Eigen/FFT>

#include "glpm/errors.hpp"

namespace glpm {

namespace {

/// Biased-normalization autocovariances c_0..c_{max_lag} via FFT (zero-padded
/// linear correlation), c_k = (1/N) sum_t x_t x_{t+k} on the centered series.
std::vector<double> autocovariances(const std::vector<double>& series,
                                    std::size_t max_lag) {
  const std::size_t n = series.size();
  double mean = 0.0;
  for (double x : series) mean += x;
  mean /= static_cast<double>(n);

  std::size_t m = 1;
  while (m < 2 * n) m <<= 1;
  std::vector<double> padded(m, 0.0);
  for (std::size_t t = 0; t < n; ++t) padded[t] = series[t] - mean;

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> freq;
  fft.fwd(freq, padded);
  for (auto& z : freq) z *= std::conj(z);
  std::vector<double> corr;
  fft.inv(corr, freq);

  std::vector<double> out(max_lag + 1);
  for (std::size_t k = 0; k <= max_lag; ++k)
    out[k] = corr[k] / static_cast<double>(n);
  return out;
}

}  // namespace

EssEstimate effective_sample_size(const std::vector<double>& series) {
  const auto n = static_cast<std::int64_t>(series.size());
  if (n < 10) throw ValidationError("ess: series too short (need >= 10)");
  double lo = series[0], hi = series[0];
  for (double x : series) {
    if (!std::isfinite(x)) throw ValidationError("ess: non-finite value in series");
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }

  EssEstimate out;
  // Constancy is decided on the raw values; the centered autocovariance of a
  // constant series carries mean-subtraction roundoff and need not be zero.
  if (lo == hi) {
    out.degenerate = true;
    out.ess = 0.0;
    return out;
  }
  const std::vector<double> acov =
      autocovariances(series, static_cast<std::size_t>(n - 1));
  const double c0 = acov[0];
  if (c0 <= 0.0) {
    out.degenerate = true;
    out.ess = 0.0;
    return out;
  }

  // Pair sums Gamma_m = rho_{2m} + rho_{2m+1}; the initial pair always enters,
  // later pairs stop at the first nonpositive value and are clipped to be
  // non-increasing.
  double pair_sum = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  std::size_t pairs = 0;
  for (std::size_t m = 0; 2 * m + 1 < static_cast<std::size_t>(n); ++m) {
    double g = (acov[2 * m] + acov[2 * m + 1]) / c0;
    if (m > 0 && g <= 0.0) break;
    g = std::min(g, prev);
    pair_sum += g;
    prev = g;
    ++pairs;
  }
  out.truncation_lag = static_cast<int>(2 * (pairs - 1));
  out.rho.reserve(2 * pairs);
  for (std::size_t k = 0; k < 2 * pairs; ++k) out.rho.push_back(acov[k] / c0);

  const double var_factor = 2.0 * pair_sum - 1.0;
  const double cap = 1.5 * static_cast<double>(n);
  out.ess = var_factor > 0.0 ? std::min(static_cast<double>(n) / var_factor, cap)
                             : cap;
  return out;
}

double dyad_log_prob(const Eigen::MatrixXd& positions,
                     const std::vector<double>& tau, const Dyad& dyad,
                     std::int32_t category) {
  const double s = (positions.row(dyad.i) - positions.row(dyad.j)).squaredNorm();
  return std::log(tau[category - 1]) - 0.5 * s;
}

std::vector<double> functional_series(const ChainOutput& chain,
                                      const Network& net, const Dyad& dyad,
                                      std::int64_t discard_draws) {
  if (!net.is_observed(dyad))
    throw ValidationError("functional series: dyad is not observed");
  const std::int32_t c = net.category(dyad);
  const auto draws = static_cast<std::int64_t>(chain.position_draws.size());
  if (discard_draws < 0 || discard_draws >= draws)
    throw ValidationError("functional series: discard count out of range");
  std::vector<double> out;
  out.reserve(draws - discard_draws);
  for (std::int64_t t = discard_draws; t < draws; ++t)
    out.push_back(
        dyad_log_prob(chain.position_draws[t], chain.tau_draws[t], dyad, c));
  return out;
}

EfficiencyReport relative_efficiency(const ChainOutput& target,
                                     const ChainOutput& baseline,
                                     const Network& net,
                                     const std::vector<Dyad>& dyads,
                                     std::int64_t discard_draws) {
  EfficiencyReport report;
  report.rows.reserve(dyads.size());
  std::vector<double> defined_ratios;
  for (const Dyad& dyad : dyads) {
    DyadEfficiency row;
    row.dyad = dyad;
    row.category = net.category(dyad);
    const EssEstimate et = effective_sample_size(
        functional_series(target, net, dyad, discard_draws));
    const EssEstimate eb = effective_sample_size(
        functional_series(baseline, net, dyad, discard_draws));
    row.ess_target = et.ess;
    row.ess_baseline = eb.ess;
    row.seconds_target = target.total_seconds;
    row.seconds_baseline = baseline.total_seconds;
    row.defined = !et.degenerate && !eb.degenerate && et.ess > 0.0 &&
                  eb.ess > 0.0 && row.seconds_target > 0.0 &&
                  row.seconds_baseline > 0.0;
    if (row.defined) {
      row.ratio = (row.ess_target / row.ess_baseline) *
                  (row.seconds_baseline / row.seconds_target);
      defined_ratios.push_back(row.ratio);
    } else {
      row.ratio = std::numeric_limits<double>::quiet_NaN();
      ++report.undefined_count;
    }
    report.rows.push_back(row);
  }
  report.median_ratio = defined_ratios.empty()
                            ? std::numeric_limits<double>::quiet_NaN()
                            : median_of(defined_ratios);
  return report;
}

std::vector<Dyad> sample_dyads(const Network& net, std::int64_t count, Rng& rng,
                               bool* truncated) {
  if (count < 0) throw ValidationError("sample_dyads: count must be >= 0");
  std::vector<Dyad> pool = net.observed_dyads();
  const auto available = static_cast<std::int64_t>(pool.size());
  if (truncated) *truncated = false;
  if (count >= available) {
    if (truncated && count > available) *truncated = true;
    return pool;
  }
  for (std::int64_t t = 0; t < count; ++t) {
    const std::int64_t r = rng.uniform_int(t, available - 1);
    std::swap(pool[t], pool[r]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end(), dyad_less);
  return pool;
}

double median_of(std::vector<double> values) {
  if (values.empty()) throw ValidationError("median of empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2]
                    : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace glpm
