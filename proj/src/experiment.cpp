#include "ssc/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "ssc/diagnostics.hpp"
#include "ssc/graph.hpp"
#include "ssc/io.hpp"
#include "ssc/metrics.hpp"
#include "ssc/pipeline.hpp"
#include "ssc/spectral.hpp"

namespace ssc {

using nlohmann::json;

Dataset generate(const GeneratorConfig& config, std::uint64_t seed) {
  if (config.name == "semirandom") {
    return gen_semirandom(config.n, config.d, config.l,
                          config.points_per_cluster, seed);
  }
  if (config.name == "nh") {
    return gen_nh(config.n, config.m, config.delta, config.sigma, seed);
  }
  if (config.name == "adversarial") {
    return gen_adversarial(config.epsilon, config.normalize);
  }
  if (config.name == "simplex") {
    return gen_simplex_degenerate(config.d, config.sigma_l, seed);
  }
  throw InvalidParameter("unknown generator '" + config.name + "'");
}

namespace {

SeedResult run_seed(const ExperimentConfig& config, std::uint64_t seed) {
  SeedResult result;
  result.seed = seed;

  const Dataset ds = generate(config.generator, seed);
  const int l = config.algorithm.l;
  const int d = config.algorithm.d;
  const Eigen::MatrixXd normalized = normalize_columns(ds.y);

  SelfExpressionParams params;
  SolverKind kind;
  if (config.algorithm.name == "lasso") {
    kind = SolverKind::Lasso;
    params.lambda = config.algorithm.lambda;
  } else if (config.algorithm.name == "bp") {
    kind = SolverKind::BasisPursuit;
  } else {
    throw InvalidParameter("unknown algorithm '" + config.algorithm.name +
                           "'");
  }
  const CoefficientMatrix coeffs =
      self_expression_matrix(normalized, kind, params);
  const SimilarityGraph graph = symmetrize(coeffs);

  result.n_components =
      static_cast<int>(connected_components(graph).size());
  try {
    result.rel_violation = relative_violation(graph, ds.labels);
  } catch (const DegenerateInput& e) {
    result.rel_violation = std::numeric_limits<double>::quiet_NaN();
    result.warnings.push_back(std::string("relative violation: ") + e.what());
  }

  result.acc1 = accuracy(spectral_cluster(graph, l, seed), ds.labels);

  RecoveredStructure rs;
  if (config.algorithm.name == "bp") {
    rs = cluster_noiseless(ds.y);
  } else {
    // Cross-cluster noise can fuse the components, so the post-processing
    // recovers subspaces from an over-segmented spectral clustering.
    rs = cluster_noisy_spectral(ds.y, l, d, config.algorithm.lambda, seed);
  }
  result.acc2 = accuracy(rs.assignment, ds.labels);
  for (const auto& w : rs.warnings) result.warnings.push_back(w);

  try {
    const DiagnosticsReport diag =
        check_recovery_conditions(ds.x, ds.y - ds.x, ds.labels, d);
    result.lambda_interval = diag.lambda_interval;
  } catch (const BudgetExceeded& e) {
    result.warnings.push_back(std::string("diagnostics skipped: ") + e.what());
  } catch (const DegenerateInput& e) {
    result.warnings.push_back(std::string("diagnostics skipped: ") + e.what());
  }

  if (!config.matrices_dir.empty()) {
    const std::string stem =
        config.matrices_dir + "/seed" + std::to_string(seed);
    write_matrix_csv(stem + "_similarity.csv", graph.weights);
    write_labels_csv(stem + "_assignment.csv", rs.assignment.labels);
  }

  result.ok = true;
  return result;
}

Aggregate aggregate_of(const std::vector<SeedResult>& seeds,
                       double SeedResult::* field) {
  Aggregate agg;
  agg.min = std::numeric_limits<double>::infinity();
  agg.max = -std::numeric_limits<double>::infinity();
  int count = 0;
  for (const auto& s : seeds) {
    if (!s.ok || std::isnan(s.*field)) continue;
    agg.mean += s.*field;
    agg.min = std::min(agg.min, s.*field);
    agg.max = std::max(agg.max, s.*field);
    ++count;
  }
  if (count > 0) {
    agg.mean /= count;
  } else {
    agg.min = agg.max = 0.0;
  }
  return agg;
}

json interval_to_json(const std::optional<std::pair<double, double>>& iv) {
  if (!iv) return nullptr;
  return json::array({iv->first, iv->second});
}

std::optional<std::pair<double, double>> interval_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return std::make_pair(j.at(0).get<double>(), j.at(1).get<double>());
}

json config_to_json(const ExperimentConfig& c) {
  json gen{{"name", c.generator.name}};
  json p;
  if (c.generator.name == "semirandom") {
    p = {{"n", c.generator.n},
         {"d", c.generator.d},
         {"L", c.generator.l},
         {"points_per_cluster", c.generator.points_per_cluster}};
  } else if (c.generator.name == "nh") {
    p = {{"n", c.generator.n},
         {"m", c.generator.m},
         {"delta", c.generator.delta},
         {"sigma", c.generator.sigma}};
  } else if (c.generator.name == "adversarial") {
    p = {{"epsilon", c.generator.epsilon},
         {"normalize", c.generator.normalize}};
  } else if (c.generator.name == "simplex") {
    p = {{"d", c.generator.d}, {"sigma_l", c.generator.sigma_l}};
  }
  gen["params"] = p;
  json out{{"generator", gen},
           {"algorithm",
            {{"name", c.algorithm.name},
             {"lambda", c.algorithm.lambda},
             {"L", c.algorithm.l},
             {"d", c.algorithm.d}}},
           {"seeds", c.seeds},
           {"outputs",
            {{"report", c.report_path}, {"matrices", c.matrices_dir}}}};
  return out;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  const json& gen = j.at("generator");
  c.generator.name = gen.at("name").get<std::string>();
  const json p = gen.value("params", json::object());
  c.generator.n = p.value("n", 0);
  c.generator.m = p.value("m", 0);
  c.generator.d = p.value("d", 0);
  c.generator.l = p.value("L", 0);
  c.generator.points_per_cluster = p.value("points_per_cluster", 0);
  c.generator.delta = p.value("delta", 0.0);
  c.generator.sigma = p.value("sigma", 0.0);
  c.generator.epsilon = p.value("epsilon", 0.0);
  c.generator.sigma_l = p.value("sigma_l", 0.0);
  c.generator.normalize = p.value("normalize", false);
  const json& alg = j.at("algorithm");
  c.algorithm.name = alg.at("name").get<std::string>();
  c.algorithm.lambda = alg.value("lambda", 1e-3);
  c.algorithm.l = alg.value("L", 2);
  c.algorithm.d = alg.value("d", 4);
  c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  if (c.seeds.empty()) throw InvalidParameter("config: seeds must not be empty");
  const json outputs = j.value("outputs", json::object());
  c.report_path = outputs.value("report", "");
  c.matrices_dir = outputs.value("matrices", "");
  return c;
}

json aggregate_to_json(const Aggregate& a) {
  return {{"mean", a.mean}, {"min", a.min}, {"max", a.max}};
}

Aggregate aggregate_from_json(const json& j) {
  return {j.at("mean").get<double>(), j.at("min").get<double>(),
          j.at("max").get<double>()};
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  if (!config.matrices_dir.empty()) {
    std::filesystem::create_directories(config.matrices_dir);
  }
  ExperimentReport report;
  report.config = config;
  for (std::uint64_t seed : config.seeds) {
    SeedResult r;
    try {
      r = run_seed(config, seed);
    } catch (const Error& e) {
      r.seed = seed;
      r.ok = false;
      r.warnings.push_back(std::string("failed: ") + e.what());
    }
    report.per_seed.push_back(std::move(r));
  }
  report.acc1 = aggregate_of(report.per_seed, &SeedResult::acc1);
  report.acc2 = aggregate_of(report.per_seed, &SeedResult::acc2);
  report.rel_violation =
      aggregate_of(report.per_seed, &SeedResult::rel_violation);
  {
    Aggregate agg;
    agg.min = std::numeric_limits<double>::infinity();
    agg.max = -agg.min;
    int count = 0;
    for (const auto& s : report.per_seed) {
      if (!s.ok) continue;
      agg.mean += s.n_components;
      agg.min = std::min(agg.min, static_cast<double>(s.n_components));
      agg.max = std::max(agg.max, static_cast<double>(s.n_components));
      ++count;
    }
    if (count > 0) {
      agg.mean /= count;
    } else {
      agg.min = agg.max = 0.0;
    }
    report.n_components = agg;
  }
  report.n_success = static_cast<int>(
      std::count_if(report.per_seed.begin(), report.per_seed.end(),
                    [](const SeedResult& s) { return s.ok; }));
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

ExperimentConfig parse_config(const std::string& json_text) {
  return config_from_json(json::parse(json_text));
}

std::string serialize_config(const ExperimentConfig& config) {
  return config_to_json(config).dump(2);
}

std::string serialize_report(const ExperimentReport& report) {
  json seeds = json::array();
  for (const auto& s : report.per_seed) {
    json entry{{"seed", s.seed},
               {"ok", s.ok},
               {"acc1", s.acc1},
               {"acc2", s.acc2},
               {"rel_violation", s.rel_violation},
               {"n_components", s.n_components},
               {"lambda_interval", interval_to_json(s.lambda_interval)},
               {"warnings", s.warnings}};
    if (std::isnan(s.rel_violation)) entry["rel_violation"] = nullptr;
    seeds.push_back(entry);
  }
  json out{{"config_echo", config_to_json(report.config)},
           {"per_seed", seeds},
           {"aggregates",
            {{"acc1", aggregate_to_json(report.acc1)},
             {"acc2", aggregate_to_json(report.acc2)},
             {"rel_violation", aggregate_to_json(report.rel_violation)},
             {"n_components", aggregate_to_json(report.n_components)},
             {"n_success", report.n_success}}},
           {"runtime_seconds", report.runtime_seconds}};
  return out.dump(2);
}

ExperimentReport parse_report(const std::string& json_text) {
  const json j = json::parse(json_text);
  ExperimentReport report;
  report.config = config_from_json(j.at("config_echo"));
  for (const json& entry : j.at("per_seed")) {
    SeedResult s;
    s.seed = entry.at("seed").get<std::uint64_t>();
    s.ok = entry.at("ok").get<bool>();
    s.acc1 = entry.at("acc1").get<double>();
    s.acc2 = entry.at("acc2").get<double>();
    s.rel_violation =
        entry.at("rel_violation").is_null()
            ? std::numeric_limits<double>::quiet_NaN()
            : entry.at("rel_violation").get<double>();
    s.n_components = entry.at("n_components").get<int>();
    s.lambda_interval = interval_from_json(entry.at("lambda_interval"));
    s.warnings = entry.at("warnings").get<std::vector<std::string>>();
    report.per_seed.push_back(std::move(s));
  }
  const json& agg = j.at("aggregates");
  report.acc1 = aggregate_from_json(agg.at("acc1"));
  report.acc2 = aggregate_from_json(agg.at("acc2"));
  report.rel_violation = aggregate_from_json(agg.at("rel_violation"));
  report.n_components = aggregate_from_json(agg.at("n_components"));
  report.n_success = agg.at("n_success").get<int>();
  report.runtime_seconds = j.at("runtime_seconds").get<double>();
  return report;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_config(text);
}

void save_report(const ExperimentReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << serialize_report(report) << "\n";
}

}  // namespace ssc
