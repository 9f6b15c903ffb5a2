#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ssc/datagen.hpp"

namespace ssc {

struct GeneratorConfig {
  std::string name;  // semirandom | nh | adversarial | simplex
  // Shared parameter bag; generators read what they need.
  int n = 0, m = 0, d = 0, l = 0, points_per_cluster = 0;
  double delta = 0.0, sigma = 0.0, epsilon = 0.0, sigma_l = 0.0;
  bool normalize = false;
};

struct AlgorithmConfig {
  std::string name;  // lasso | bp
  double lambda = 1e-3;
  int l = 2;
  int d = 4;
};

struct ExperimentConfig {
  GeneratorConfig generator;
  AlgorithmConfig algorithm;
  std::vector<std::uint64_t> seeds;
  std::string report_path;    // outputs.report
  std::string matrices_dir;   // outputs.matrices (optional)
};

struct SeedResult {
  std::uint64_t seed = 0;
  bool ok = false;
  double acc1 = 0.0;           // spectral clustering on the raw graph
  double acc2 = 0.0;           // with subspace-merging post-processing
  double rel_violation = 0.0;
  int n_components = 0;
  std::optional<std::pair<double, double>> lambda_interval;
  std::vector<std::string> warnings;
};

struct Aggregate {
  double mean = 0.0, min = 0.0, max = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<SeedResult> per_seed;
  Aggregate acc1, acc2, rel_violation, n_components;
  int n_success = 0;
  double runtime_seconds = 0.0;
};

Dataset generate(const GeneratorConfig& config, std::uint64_t seed);

// Full per-seed loop: generate, solve, cluster with and without the merging
// post-processing, compute metrics and diagnostics. A failing seed is
// recorded in its SeedResult instead of aborting the run.
ExperimentReport run_experiment(const ExperimentConfig& config);

// JSON round-trip for configs and reports.
ExperimentConfig parse_config(const std::string& json_text);
std::string serialize_config(const ExperimentConfig& config);
ExperimentReport parse_report(const std::string& json_text);
std::string serialize_report(const ExperimentReport& report);

ExperimentConfig load_config(const std::string& path);
void save_report(const ExperimentReport& report, const std::string& path);

}  // namespace ssc
