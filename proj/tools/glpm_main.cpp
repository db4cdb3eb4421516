#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "glpm/config.hpp"
#include "glpm/errors.hpp"
#include "glpm/runner.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

struct CommonArgs {
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir;
};

void attach_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment config file")
      ->required();
  cmd->add_option("--seed", args.seed, "override the config's seed");
  cmd->add_option("--out", args.out_dir, "override the config's out_dir");
}

int dispatch(const std::string& command, const CLI::App* cmd,
             const CommonArgs& args) {
  glpm::ExperimentConfig cfg = glpm::load_config(args.config_path);
  if (cmd->count("--seed") > 0) cfg.seed = args.seed;
  if (cmd->count("--out") > 0) cfg.out_dir = args.out_dir;
  glpm::run_command(command, cfg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latent position network sampler"};
  app.require_subcommand(1);

  const char* names[] = {"generate", "tune", "fit", "diagnose", "benchmark"};
  const char* blurbs[] = {
      "simulate a network from the model and write it to disk",
      "calibrate proposal step sizes for one sampler",
      "run one sampler and record its draws",
      "run one sampler and report effective sample sizes",
      "compare samplers against the per-node random-walk baseline"};
  CommonArgs args[5];
  for (int k = 0; k < 5; ++k)
    attach_common(app.add_subcommand(names[k], blurbs[k]), args[k]);

  CLI11_PARSE(app, argc, argv);

  for (int k = 0; k < 5; ++k) {
    const CLI::App* cmd = app.get_subcommand(names[k]);
    if (!cmd->parsed()) continue;
    try {
      return dispatch(names[k], cmd, args[k]);
    } catch (const glpm::ValidationError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitValidation;
    } catch (const glpm::NumericError& e) {
      std::cerr << "numeric error: " << e.what() << "\n";
      return kExitNumeric;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitNumeric;
    }
  }
  return kExitValidation;
}
