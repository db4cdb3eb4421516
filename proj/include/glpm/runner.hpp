#pragma once

#include <string>

#include "glpm/config.hpp"

namespace glpm {

/// Deterministic sub-stream seed for a run phase (generation, dyad sampling,
/// per-sampler tuning and fitting all get distinct streams).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

void run_generate(const ExperimentConfig& config);
void run_tune(const ExperimentConfig& config);
void run_fit(const ExperimentConfig& config);
void run_diagnose(const ExperimentConfig& config);
void run_benchmark(const ExperimentConfig& config);

/// Dispatches one of the five commands; throws ValidationError on an unknown
/// command name.
void run_command(const std::string& command, const ExperimentConfig& config);

}  // namespace glpm
