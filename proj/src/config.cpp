#include "glpm/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "glpm/errors.hpp"
#include "glpm/io.hpp"

namespace glpm {

namespace {

std::string trim(const std::string& text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return text.substr(b, e - b);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, sep)) out.push_back(trim(token));
  return out;
}

double parse_double(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("config: key '" + key + "' needs a number, got '" +
                          value + "'");
  }
}

std::int64_t parse_int(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    const std::int64_t v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("config: key '" + key + "' needs an integer, got '" +
                          value + "'");
  }
}

std::vector<double> parse_double_list(const std::string& value,
                                      const std::string& key) {
  std::vector<double> out;
  for (const std::string& tok : split(value, ',')) {
    if (tok.empty())
      throw ValidationError("config: key '" + key + "' has an empty entry");
    out.push_back(parse_double(tok, key));
  }
  if (out.empty())
    throw ValidationError("config: key '" + key + "' needs at least one value");
  return out;
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ValidationError("config: key '" + key + "' needs true or false");
}

/// "1-16;17-32" or "1,3,5;2,4" -> 0-based node blocks.
std::vector<std::vector<std::int32_t>> parse_blocks(const std::string& value) {
  std::vector<std::vector<std::int32_t>> blocks;
  for (const std::string& block_text : split(value, ';')) {
    if (block_text.empty()) continue;
    std::vector<std::int32_t> block;
    for (const std::string& tok : split(block_text, ',')) {
      const auto dash = tok.find('-', 1);  // allow no negatives anyway
      if (dash != std::string::npos) {
        const std::int64_t lo = parse_int(tok.substr(0, dash), "omega_blocks");
        const std::int64_t hi = parse_int(tok.substr(dash + 1), "omega_blocks");
        if (lo < 1 || hi < lo)
          throw ValidationError("config: bad omega_blocks range '" + tok + "'");
        for (std::int64_t v = lo; v <= hi; ++v)
          block.push_back(static_cast<std::int32_t>(v - 1));
      } else {
        const std::int64_t v = parse_int(tok, "omega_blocks");
        if (v < 1)
          throw ValidationError("config: omega_blocks indices are 1-based");
        block.push_back(static_cast<std::int32_t>(v - 1));
      }
    }
    if (!block.empty()) blocks.push_back(std::move(block));
  }
  if (blocks.empty())
    throw ValidationError("config: omega_blocks defines no blocks");
  return blocks;
}

}  // namespace

int ExperimentConfig::resolved_hmc_leaps() const {
  if (hmc_leaps > 0) return hmc_leaps;
  return std::max(1, static_cast<int>(std::lround(2.0 / hmc_epsilon)));
}

SynthSpec ExperimentConfig::synth_spec() const {
  SynthSpec spec;
  spec.n = synth_n;
  spec.d = synth_d;
  spec.tau = synth_tau;
  spec.gamma2 = synth_gamma2;
  spec.omega = omega;
  if (synth_covariate_rule == "all_one")
    spec.covariate_rule = SynthSpec::CovariateRule::all_one;
  else if (synth_covariate_rule == "uniform")
    spec.covariate_rule = SynthSpec::CovariateRule::uniform;
  else
    throw ValidationError("config: synth_covariate_rule must be all_one or "
                          "uniform");
  return spec;
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  std::int64_t lineno = 0;
  std::vector<std::string> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config: line " + std::to_string(lineno) +
                            " is not key=value");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty())
      throw ValidationError("config: empty key on line " +
                            std::to_string(lineno));
    if (std::find(seen.begin(), seen.end(), key) != seen.end())
      throw ValidationError("config: duplicate key '" + key + "'");
    seen.push_back(key);

    if (key == "seed") {
      const std::int64_t v = parse_int(value, key);
      if (v < 0) throw ValidationError("config: seed must be >= 0");
      cfg.seed = static_cast<std::uint64_t>(v);
    } else if (key == "out_dir") {
      cfg.out_dir = value;
    } else if (key == "network") {
      if (value == "files") cfg.source = ExperimentConfig::NetworkSource::files;
      else if (value == "synthetic")
        cfg.source = ExperimentConfig::NetworkSource::synthetic;
      else
        throw ValidationError("config: network must be files or synthetic");
    } else if (key == "edge_list") {
      cfg.edge_list = value;
    } else if (key == "covariates") {
      cfg.covariates_path = value;
    } else if (key == "mask") {
      cfg.mask_path = value;
    } else if (key == "synth_n") {
      cfg.synth_n = static_cast<std::int32_t>(parse_int(value, key));
    } else if (key == "synth_d") {
      cfg.synth_d = static_cast<std::int32_t>(parse_int(value, key));
    } else if (key == "synth_tau") {
      cfg.synth_tau = parse_double_list(value, key);
      for (double t : cfg.synth_tau)
        if (!(t >= 0.0 && t <= 1.0))
          throw ValidationError("config: synth_tau values must lie in [0, 1]");
    } else if (key == "synth_gamma2") {
      cfg.synth_gamma2 = parse_double(value, key);
      if (!(cfg.synth_gamma2 > 0.0))
        throw ValidationError("config: synth_gamma2 must be positive");
    } else if (key == "synth_covariate_rule") {
      cfg.synth_covariate_rule = value;
    } else if (key == "omega") {
      if (value == "identity") cfg.omega.kind = OmegaSpec::Kind::identity;
      else if (value == "ar1") cfg.omega.kind = OmegaSpec::Kind::ar1;
      else if (value == "triplets") cfg.omega.kind = OmegaSpec::Kind::triplets;
      else
        throw ValidationError(
            "config: omega must be identity, ar1, or triplets");
    } else if (key == "omega_rho") {
      cfg.omega.rho = parse_double(value, key);
      if (!(cfg.omega.rho > -1.0 && cfg.omega.rho < 1.0))
        throw ValidationError("config: omega_rho must lie in (-1, 1)");
    } else if (key == "omega_blocks") {
      cfg.omega.blocks = parse_blocks(value);
    } else if (key == "omega_triplets") {
      cfg.omega.triplet_path = value;
    } else if (key == "latent_d") {
      cfg.latent_d = static_cast<std::int32_t>(parse_int(value, key));
      if (cfg.latent_d < 1)
        throw ValidationError("config: latent_d must be positive");
    } else if (key == "tau_alpha") {
      cfg.tau_alpha = parse_double_list(value, key);
    } else if (key == "tau_beta") {
      cfg.tau_beta = parse_double_list(value, key);
    } else if (key == "gamma_a") {
      cfg.gamma_a = parse_double(value, key);
    } else if (key == "gamma_b") {
      cfg.gamma_b = parse_double(value, key);
    } else if (key == "sampler") {
      cfg.sampler = value;
    } else if (key == "samplers") {
      for (const std::string& s : split(value, ','))
        if (!s.empty()) cfg.samplers.push_back(s);
      if (cfg.samplers.empty())
        throw ValidationError("config: samplers list is empty");
    } else if (key == "iterations") {
      cfg.iterations = parse_int(value, key);
      if (cfg.iterations < 0)
        throw ValidationError("config: iterations must be >= 0");
    } else if (key == "thin") {
      cfg.thin = parse_int(value, key);
      if (cfg.thin < 1) throw ValidationError("config: thin must be >= 1");
    } else if (key == "burn_in") {
      cfg.burn_in = parse_int(value, key);
      if (cfg.burn_in < 0) throw ValidationError("config: burn_in must be >= 0");
    } else if (key == "dyad_count") {
      cfg.dyad_count = parse_int(value, key);
      if (cfg.dyad_count < 0)
        throw ValidationError("config: dyad_count must be >= 0");
    } else if (key == "tune") {
      cfg.tune = parse_bool(value, key);
    } else if (key == "mwg_delta") {
      cfg.mwg_delta = parse_double(value, key);
      if (!(cfg.mwg_delta > 0.0))
        throw ValidationError("config: mwg_delta must be positive");
    } else if (key == "hmc_epsilon") {
      cfg.hmc_epsilon = parse_double(value, key);
      if (!(cfg.hmc_epsilon > 0.0))
        throw ValidationError("config: hmc_epsilon must be positive");
    } else if (key == "hmc_leaps") {
      cfg.hmc_leaps = static_cast<int>(parse_int(value, key));
      if (cfg.hmc_leaps < 1)
        throw ValidationError("config: hmc_leaps must be >= 1");
    } else if (key == "tau_step") {
      cfg.tau_step = parse_double_list(value, key);
      for (double w : cfg.tau_step)
        if (!(w > 0.0))
          throw ValidationError("config: tau_step widths must be positive");
    } else {
      throw ValidationError("config: unknown key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config: " + path);
  return parse_config(in);
}

namespace {

std::string join_doubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ",";
    out += format_double(values[k]);
  }
  return out;
}

}  // namespace

std::string ExperimentConfig::echo() const {
  std::ostringstream out;
  // Unset or empty keys are omitted so the echo is itself a loadable config.
  out << "seed=" << seed << "\n";
  out << "out_dir=" << out_dir << "\n";
  if (source != NetworkSource::unset)
    out << "network="
        << (source == NetworkSource::files ? "files" : "synthetic") << "\n";
  out << "edge_list=" << edge_list << "\n";
  out << "covariates=" << covariates_path << "\n";
  out << "mask=" << mask_path << "\n";
  out << "synth_n=" << synth_n << "\n";
  out << "synth_d=" << synth_d << "\n";
  if (!synth_tau.empty()) out << "synth_tau=" << join_doubles(synth_tau) << "\n";
  out << "synth_gamma2=" << format_double(synth_gamma2) << "\n";
  out << "synth_covariate_rule=" << synth_covariate_rule << "\n";
  out << "omega="
      << (omega.kind == OmegaSpec::Kind::identity
              ? "identity"
              : omega.kind == OmegaSpec::Kind::ar1 ? "ar1" : "triplets")
      << "\n";
  out << "omega_rho=" << format_double(omega.rho) << "\n";
  if (!omega.blocks.empty()) {
    std::string blocks_text;
    for (std::size_t b = 0; b < omega.blocks.size(); ++b) {
      if (b) blocks_text += ";";
      for (std::size_t k = 0; k < omega.blocks[b].size(); ++k) {
        if (k) blocks_text += ",";
        blocks_text += std::to_string(omega.blocks[b][k] + 1);
      }
    }
    out << "omega_blocks=" << blocks_text << "\n";
  }
  out << "omega_triplets=" << omega.triplet_path << "\n";
  out << "latent_d=" << latent_d << "\n";
  out << "tau_alpha=" << join_doubles(tau_alpha) << "\n";
  out << "tau_beta=" << join_doubles(tau_beta) << "\n";
  out << "gamma_a=" << format_double(gamma_a) << "\n";
  out << "gamma_b=" << format_double(gamma_b) << "\n";
  out << "sampler=" << sampler << "\n";
  if (!samplers.empty()) {
    std::string list;
    for (std::size_t k = 0; k < samplers.size(); ++k) {
      if (k) list += ",";
      list += samplers[k];
    }
    out << "samplers=" << list << "\n";
  }
  out << "iterations=" << iterations << "\n";
  out << "thin=" << thin << "\n";
  out << "burn_in=" << resolved_burn_in() << "\n";
  out << "dyad_count=" << dyad_count << "\n";
  out << "tune=" << (tune ? "true" : "false") << "\n";
  out << "mwg_delta=" << format_double(mwg_delta) << "\n";
  out << "hmc_epsilon=" << format_double(hmc_epsilon) << "\n";
  out << "hmc_leaps=" << resolved_hmc_leaps() << "\n";
  out << "tau_step=" << join_doubles(tau_step) << "\n";
  return out.str();
}

std::vector<double> broadcast_per_category(const std::vector<double>& values,
                                           std::int32_t c,
                                           const std::string& what) {
  if (static_cast<std::int32_t>(values.size()) == c) return values;
  if (values.size() == 1) return std::vector<double>(c, values[0]);
  throw ValidationError(what + ": need 1 or " + std::to_string(c) +
                        " values, got " + std::to_string(values.size()));
}

PriorSpec build_prior(const ExperimentConfig& config, const Network& net) {
  PriorSpec prior;
  prior.omega = build_omega(config.omega, net.n());
  prior.tau_alpha =
      broadcast_per_category(config.tau_alpha, net.num_categories(), "tau_alpha");
  prior.tau_beta =
      broadcast_per_category(config.tau_beta, net.num_categories(), "tau_beta");
  prior.gamma_a = config.gamma_a;
  prior.gamma_b = config.gamma_b;
  prior.d = config.latent_d;
  prior.validate(net.n(), net.num_categories());
  return prior;
}

}  // namespace glpm
