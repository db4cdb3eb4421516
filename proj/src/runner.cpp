#include "glpm/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "glpm/diagnostics.hpp"
#include "glpm/errors.hpp"
#include "glpm/hash.hpp"
#include "glpm/io.hpp"
#include "glpm/samplers.hpp"
#include "glpm/synthgen.hpp"
#include "glpm/tuning.hpp"

namespace glpm {

namespace {

using ordered_json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Seed streams: 0 network generation, 1 dyad sampling, 100+k tuning of the
// k-th sampler, 200+k fitting of the k-th sampler.
constexpr std::uint64_t kStreamGenerate = 0;
constexpr std::uint64_t kStreamDyads = 1;
constexpr std::uint64_t kStreamTune = 100;
constexpr std::uint64_t kStreamFit = 200;

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

/// Content hash over the resolved configuration and any referenced input
/// files. Wall-clock timings never enter it, and neither does the output
/// location: the same experiment hashes the same wherever it is written.
std::string content_hash(const ExperimentConfig& cfg) {
  ExperimentConfig keyed = cfg;
  keyed.out_dir.clear();
  std::string material = keyed.echo();
  if (cfg.source == ExperimentConfig::NetworkSource::files) {
    material += "\nedge_list_sha256=" + sha256_file(cfg.edge_list);
    if (!cfg.covariates_path.empty())
      material += "\ncovariates_sha256=" + sha256_file(cfg.covariates_path);
    if (!cfg.mask_path.empty())
      material += "\nmask_sha256=" + sha256_file(cfg.mask_path);
  }
  if (cfg.omega.kind == OmegaSpec::Kind::triplets)
    material += "\nomega_triplets_sha256=" + sha256_file(cfg.omega.triplet_path);
  return sha256_hex(material);
}

ordered_json network_summary(const Network& net) {
  return ordered_json{{"nodes", net.n()},
                      {"edges", net.edge_count()},
                      {"categories", net.num_categories()},
                      {"observed_dyads", net.observed_dyad_count()},
                      {"unobserved_dyads", net.unobserved_dyad_count()}};
}

ordered_json stats_json(const KernelStats& stats) {
  return ordered_json{{"proposals", stats.proposals},
                      {"accepts", stats.accepts},
                      {"acceptance_rate", stats.acceptance_rate()}};
}

ordered_json chain_summary(const ChainOutput& chain) {
  return ordered_json{{"kind", to_string(chain.kind)},
                      {"seed", chain.seed},
                      {"iterations", chain.iterations},
                      {"thin", chain.thin},
                      {"draws", chain.draw_count()},
                      {"position", stats_json(chain.position_stats)},
                      {"tau", stats_json(chain.tau_stats)},
                      {"theta", stats_json(chain.theta_stats)},
                      {"singular_rejects", chain.singular_rejects}};
}

ordered_json chain_timings(const ChainOutput& chain) {
  return ordered_json{{"total_seconds", chain.total_seconds},
                      {"position_seconds", chain.position_stats.seconds},
                      {"tau_seconds", chain.tau_stats.seconds},
                      {"theta_seconds", chain.theta_stats.seconds},
                      {"gamma_seconds", chain.gamma_stats.seconds},
                      {"rebuild_seconds", chain.rebuild_seconds}};
}

void write_manifest(const ExperimentConfig& cfg, const std::string& name,
                    ordered_json manifest) {
  manifest["config_echo"] = cfg.echo();
  manifest["content_hash"] = content_hash(cfg);
  write_text_file(out_path(cfg, name), manifest.dump(2) + "\n");
}

struct NetworkBundle {
  Network network;
  std::optional<Eigen::MatrixXd> truth;
};

/// Builds the experiment's network, writing the generated files when the
/// source is synthetic so every run is auditable from disk.
NetworkBundle acquire_network(const ExperimentConfig& cfg, bool write_files) {
  switch (cfg.source) {
    case ExperimentConfig::NetworkSource::files: {
      if (cfg.edge_list.empty())
        throw ValidationError("config: network=files needs edge_list=");
      return {load_network(cfg.edge_list, cfg.covariates_path, cfg.mask_path),
              std::nullopt};
    }
    case ExperimentConfig::NetworkSource::synthetic: {
      const SynthSpec spec = cfg.synth_spec();
      spec.validate();
      SynthResult res =
          generate_network(spec, derive_seed(cfg.seed, kStreamGenerate));
      if (write_files) {
        write_edge_list(out_path(cfg, "network_edges.tsv"), res.network);
        write_covariate_file(out_path(cfg, "network_covariates.tsv"),
                             res.network);
        write_mask_file(out_path(cfg, "network_mask.tsv"), res.network);
        write_truth_csv(out_path(cfg, "truth_positions.csv"),
                        res.true_positions);
      }
      return {std::move(res.network), std::move(res.true_positions)};
    }
    case ExperimentConfig::NetworkSource::unset:
      break;
  }
  throw ValidationError("config: network= must be set to files or synthetic");
}

SamplerConfig sampler_config_for(const ExperimentConfig& cfg, SamplerKind kind,
                                 const Network& net) {
  SamplerConfig scfg;
  scfg.kind = kind;
  scfg.mwg.delta = cfg.mwg_delta;
  scfg.hmc.epsilon = cfg.hmc_epsilon;
  scfg.hmc.leap_count = cfg.resolved_hmc_leaps();
  if (kind != SamplerKind::split_hmc_flymc)
    scfg.tau_steps =
        broadcast_per_category(cfg.tau_step, net.num_categories(), "tau_step");
  return scfg;
}

struct TunedSampler {
  SamplerConfig config;
  double tuning_seconds = 0.0;
  ordered_json report;
};

/// Tunes the kernels applicable to the kind on a throwaway warm session and
/// returns the tuned step sizes.
TunedSampler tune_sampler(const ExperimentConfig& cfg, const Network& net,
                          const PriorSpec& prior, SamplerKind kind,
                          std::uint64_t seed) {
  TunedSampler out;
  out.config = sampler_config_for(cfg, kind, net);
  const auto t0 = Clock::now();
  SamplerSession session(net, prior, out.config, seed);

  ordered_json rounds = ordered_json::object();
  if (kind == SamplerKind::mwg) {
    const TuneResult r = tune_step_size(TunedKernel::mwg, session);
    rounds["mwg_delta"] = {{"value", r.values[0]},
                           {"acceptance", r.final_acceptance},
                           {"rounds", r.rounds_used},
                           {"exhausted", r.exhausted}};
  } else {
    const TuneResult r = tune_step_size(TunedKernel::hmc, session);
    rounds["hmc_epsilon"] = {{"value", r.values[0]},
                             {"leap_count", r.leap_count},
                             {"acceptance", r.final_acceptance},
                             {"rounds", r.rounds_used},
                             {"exhausted", r.exhausted}};
  }
  if (kind != SamplerKind::split_hmc_flymc) {
    const TuneResult r = tune_step_size(TunedKernel::rw_tau, session);
    rounds["tau_step"] = {{"values", r.values},
                          {"acceptance", r.final_acceptance},
                          {"rounds", r.rounds_used},
                          {"exhausted", r.exhausted}};
  }
  out.config = session.config();
  out.tuning_seconds = seconds_since(t0);
  out.report = std::move(rounds);
  return out;
}

std::int64_t discard_draws_for(const ExperimentConfig& cfg) {
  const std::int64_t burn = cfg.resolved_burn_in();
  if (burn <= 0) return 0;
  return (burn + cfg.thin - 1) / cfg.thin;
}

SamplerKind required_single_sampler(const ExperimentConfig& cfg) {
  if (cfg.sampler.empty())
    throw ValidationError("config: this command needs sampler=");
  return sampler_kind_from_string(cfg.sampler);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  // splitmix64 over the combined value; distinct streams give unrelated seeds.
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void run_generate(const ExperimentConfig& cfg) {
  if (cfg.source != ExperimentConfig::NetworkSource::synthetic)
    throw ValidationError("generate: needs network=synthetic");
  cfg.synth_spec().validate();  // fail before any file is touched
  const auto t0 = Clock::now();
  NetworkBundle bundle = acquire_network(cfg, true);
  ordered_json manifest{{"command", "generate"},
                        {"seed", cfg.seed},
                        {"network", network_summary(bundle.network)},
                        {"outputs",
                         {"network_edges.tsv", "network_covariates.tsv",
                          "network_mask.tsv", "truth_positions.csv"}},
                        {"timings", {{"generate_seconds", seconds_since(t0)}}}};
  write_manifest(cfg, "generate_manifest.json", std::move(manifest));
}

void run_tune(const ExperimentConfig& cfg) {
  const SamplerKind kind = required_single_sampler(cfg);
  NetworkBundle bundle = acquire_network(cfg, true);
  const PriorSpec prior = build_prior(cfg, bundle.network);
  const TunedSampler tuned = tune_sampler(cfg, bundle.network, prior, kind,
                                          derive_seed(cfg.seed, kStreamTune));

  std::ostringstream frag;
  if (kind == SamplerKind::mwg)
    frag << "mwg_delta=" << format_double(tuned.config.mwg.delta) << "\n";
  else
    frag << "hmc_epsilon=" << format_double(tuned.config.hmc.epsilon) << "\n"
         << "hmc_leaps=" << tuned.config.hmc.leap_count << "\n";
  if (kind != SamplerKind::split_hmc_flymc) {
    frag << "tau_step=";
    for (std::size_t k = 0; k < tuned.config.tau_steps.size(); ++k)
      frag << (k ? "," : "") << format_double(tuned.config.tau_steps[k]);
    frag << "\n";
  }
  write_text_file(out_path(cfg, "tuned.txt"), frag.str());

  ordered_json manifest{{"command", "tune"},
                        {"seed", cfg.seed},
                        {"sampler", to_string(kind)},
                        {"network", network_summary(bundle.network)},
                        {"tuning", tuned.report},
                        {"outputs", {"tuned.txt"}},
                        {"timings", {{"tuning_seconds", tuned.tuning_seconds}}}};
  write_manifest(cfg, "tune_manifest.json", std::move(manifest));
}

void run_fit(const ExperimentConfig& cfg) {
  const SamplerKind kind = required_single_sampler(cfg);
  NetworkBundle bundle = acquire_network(cfg, true);
  const Network& net = bundle.network;
  const PriorSpec prior = build_prior(cfg, net);

  SamplerConfig scfg = sampler_config_for(cfg, kind, net);
  double tuning_seconds = 0.0;
  ordered_json tuning_report = ordered_json::object();
  if (cfg.tune) {
    TunedSampler tuned = tune_sampler(cfg, net, prior, kind,
                                      derive_seed(cfg.seed, kStreamTune));
    scfg = tuned.config;
    tuning_seconds = tuned.tuning_seconds;
    tuning_report = std::move(tuned.report);
  }

  const ChainOutput chain = run_sampler(net, prior, scfg, cfg.iterations,
                                        cfg.thin, derive_seed(cfg.seed, kStreamFit));

  Rng dyad_rng(derive_seed(cfg.seed, kStreamDyads));
  bool truncated = false;
  const std::vector<Dyad> dyads =
      sample_dyads(net, cfg.dyad_count, dyad_rng, &truncated);

  const std::string draws_name = "draws_" + to_string(kind) + ".csv";
  write_draws_csv(out_path(cfg, draws_name), chain, net, dyads);

  ordered_json manifest{{"command", "fit"},
                        {"seed", cfg.seed},
                        {"network", network_summary(net)},
                        {"chain", chain_summary(chain)},
                        {"steps",
                         {{"mwg_delta", scfg.mwg.delta},
                          {"hmc_epsilon", scfg.hmc.epsilon},
                          {"hmc_leaps", scfg.hmc.leap_count},
                          {"tau_step", scfg.tau_steps}}},
                        {"functional_dyads", dyads.size()},
                        {"dyad_sample_truncated", truncated},
                        {"tuning", tuning_report},
                        {"outputs", {draws_name}},
                        {"timings",
                         {{"tuning_seconds", tuning_seconds},
                          {"chain", chain_timings(chain)}}}};
  write_manifest(cfg, "fit_manifest.json", std::move(manifest));
}

void run_diagnose(const ExperimentConfig& cfg) {
  const SamplerKind kind = required_single_sampler(cfg);
  NetworkBundle bundle = acquire_network(cfg, true);
  const Network& net = bundle.network;
  const PriorSpec prior = build_prior(cfg, net);

  SamplerConfig scfg = sampler_config_for(cfg, kind, net);
  double tuning_seconds = 0.0;
  if (cfg.tune) {
    TunedSampler tuned = tune_sampler(cfg, net, prior, kind,
                                      derive_seed(cfg.seed, kStreamTune));
    scfg = tuned.config;
    tuning_seconds = tuned.tuning_seconds;
  }
  const ChainOutput chain = run_sampler(net, prior, scfg, cfg.iterations,
                                        cfg.thin, derive_seed(cfg.seed, kStreamFit));

  Rng dyad_rng(derive_seed(cfg.seed, kStreamDyads));
  const std::vector<Dyad> dyads = sample_dyads(net, cfg.dyad_count, dyad_rng);
  const std::int64_t discard = discard_draws_for(cfg);
  if (discard >= chain.draw_count())
    throw ValidationError("diagnose: burn-in discards every draw");

  std::vector<SeriesEss> scalar_rows;
  for (std::size_t c = 0; c < chain.tau_draws.front().size(); ++c) {
    std::vector<double> series;
    series.reserve(chain.draw_count() - discard);
    for (std::int64_t t = discard; t < chain.draw_count(); ++t)
      series.push_back(chain.tau_draws[t][c]);
    scalar_rows.push_back({"tau_" + std::to_string(c + 1),
                           effective_sample_size(series).ess,
                           chain.total_seconds});
  }
  {
    std::vector<double> series(chain.gamma2_draws.begin() + discard,
                               chain.gamma2_draws.end());
    scalar_rows.push_back(
        {"gamma2", effective_sample_size(series).ess, chain.total_seconds});
  }
  write_series_ess_csv(out_path(cfg, "scalar_ess.csv"), scalar_rows);

  std::ostringstream dyad_csv;
  dyad_csv << "i,j,category,ess,ess_per_second\r\n";
  for (const Dyad& d : dyads) {
    const EssEstimate est =
        effective_sample_size(functional_series(chain, net, d, discard));
    dyad_csv << (d.i + 1) << "," << (d.j + 1) << "," << net.category(d) << ","
             << format_double(est.ess) << ","
             << format_double(chain.total_seconds > 0.0
                                  ? est.ess / chain.total_seconds
                                  : 0.0)
             << "\r\n";
  }
  write_text_file(out_path(cfg, "dyad_ess.csv"), dyad_csv.str());

  ordered_json manifest{{"command", "diagnose"},
                        {"seed", cfg.seed},
                        {"network", network_summary(net)},
                        {"chain", chain_summary(chain)},
                        {"burn_in_draws_discarded", discard},
                        {"outputs", {"scalar_ess.csv", "dyad_ess.csv"}},
                        {"timings",
                         {{"tuning_seconds", tuning_seconds},
                          {"chain", chain_timings(chain)}}}};
  write_manifest(cfg, "diagnose_manifest.json", std::move(manifest));
}

void run_benchmark(const ExperimentConfig& cfg) {
  if (cfg.samplers.empty())
    throw ValidationError("benchmark: needs samplers= (a list including mwg)");
  std::vector<SamplerKind> kinds;
  for (const std::string& name : cfg.samplers)
    kinds.push_back(sampler_kind_from_string(name));
  const auto mwg_pos =
      std::find(kinds.begin(), kinds.end(), SamplerKind::mwg) - kinds.begin();
  if (mwg_pos == static_cast<std::ptrdiff_t>(kinds.size()))
    throw ValidationError("benchmark: samplers= must include the mwg baseline");

  NetworkBundle bundle = acquire_network(cfg, true);
  const Network& net = bundle.network;
  const PriorSpec prior = build_prior(cfg, net);

  Rng dyad_rng(derive_seed(cfg.seed, kStreamDyads));
  bool truncated = false;
  const std::vector<Dyad> dyads =
      sample_dyads(net, cfg.dyad_count, dyad_rng, &truncated);
  const std::int64_t discard = discard_draws_for(cfg);

  struct Fit {
    SamplerKind kind;
    TunedSampler tuned;
    ChainOutput chain;
  };
  std::vector<Fit> fits;
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    Fit fit;
    fit.kind = kinds[k];
    fit.tuned = tune_sampler(cfg, net, prior, kinds[k],
                             derive_seed(cfg.seed, kStreamTune + k));
    fit.chain = run_sampler(net, prior, fit.tuned.config, cfg.iterations,
                            cfg.thin, derive_seed(cfg.seed, kStreamFit + k));
    if (discard >= fit.chain.draw_count())
      throw ValidationError("benchmark: burn-in discards every draw");
    fits.push_back(std::move(fit));
  }

  // Every comparison below runs against the one baseline chain fitted on the
  // same network with the same functional dyads.
  const ChainOutput& baseline = fits[mwg_pos].chain;

  std::ostringstream summary;
  summary << "sampler,median_relative_efficiency,undefined_dyads,"
             "tuning_seconds,sampling_seconds\r\n";
  ordered_json per_sampler = ordered_json::array();
  for (const Fit& fit : fits) {
    const EfficiencyReport report =
        relative_efficiency(fit.chain, baseline, net, dyads, discard);
    const std::string eff_name =
        "relative_efficiency_" + to_string(fit.kind) + ".csv";
    write_efficiency_csv(out_path(cfg, eff_name), report);
    summary << to_string(fit.kind) << ","
            << format_double(report.median_ratio) << ","
            << report.undefined_count << ","
            << format_double(fit.tuned.tuning_seconds) << ","
            << format_double(fit.chain.total_seconds) << "\r\n";
    per_sampler.push_back(
        ordered_json{{"kind", to_string(fit.kind)},
                     {"tuning", fit.tuned.report},
                     {"chain", chain_summary(fit.chain)},
                     {"median_relative_efficiency", report.median_ratio},
                     {"undefined_dyads", report.undefined_count},
                     {"timings",
                      {{"tuning_seconds", fit.tuned.tuning_seconds},
                       {"chain", chain_timings(fit.chain)}}}});
  }
  write_text_file(out_path(cfg, "summary.csv"), summary.str());

  ordered_json manifest{{"command", "benchmark"},
                        {"seed", cfg.seed},
                        {"network", network_summary(net)},
                        {"functional_dyads", dyads.size()},
                        {"dyad_sample_truncated", truncated},
                        {"burn_in_draws_discarded", discard},
                        {"samplers", per_sampler},
                        {"outputs", {"summary.csv"}}};
  write_manifest(cfg, "benchmark_manifest.json", std::move(manifest));
}

void run_command(const std::string& command, const ExperimentConfig& cfg) {
  if (command == "generate") return run_generate(cfg);
  if (command == "tune") return run_tune(cfg);
  if (command == "fit") return run_fit(cfg);
  if (command == "diagnose") return run_diagnose(cfg);
  if (command == "benchmark") return run_benchmark(cfg);
  throw ValidationError("unknown command '" + command + "'");
}

}  // namespace glpm
