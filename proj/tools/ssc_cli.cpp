#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <string>

#include "ssc/diagnostics.hpp"
#include "ssc/experiment.hpp"
#include "ssc/graph.hpp"
#include "ssc/io.hpp"
#include "ssc/metrics.hpp"
#include "ssc/pipeline.hpp"

#include <json.hpp>

namespace {

using nlohmann::json;

int cmd_gen(const ssc::GeneratorConfig& gen, std::uint64_t seed,
            const std::string& out) {
  const ssc::Dataset ds = ssc::generate(gen, seed);
  ssc::write_matrix_csv(out + "_X.csv", ds.x);
  ssc::write_matrix_csv(out + "_Y.csv", ds.y);
  ssc::write_labels_csv(out + "_labels.csv", ds.labels);
  std::cout << "wrote " << out << "_{X,Y,labels}.csv: " << ds.ambient_dim()
            << "x" << ds.num_points() << ", xi=" << ds.meta.xi << "\n";
  return 0;
}

int cmd_solve(const std::string& data, const std::string& model,
              double lambda, double tol, const std::string& out) {
  const Eigen::MatrixXd y = ssc::read_matrix_csv(data);
  ssc::SolverKind kind;
  ssc::SelfExpressionParams params;
  params.tol = tol;
  if (model == "bp") {
    kind = ssc::SolverKind::BasisPursuit;
  } else if (model == "lasso") {
    kind = ssc::SolverKind::Lasso;
    params.lambda = lambda;
  } else if (model == "l0") {
    kind = ssc::SolverKind::ExhaustiveL0;
  } else {
    throw ssc::InvalidParameter("solve: unknown model '" + model + "'");
  }
  const ssc::CoefficientMatrix coeffs =
      ssc::self_expression_matrix(ssc::normalize_columns(y), kind, params);
  ssc::write_matrix_csv(out, coeffs.coeffs);
  std::cout << "wrote " << out << " (" << coeffs.zero_columns().size()
            << " zero columns)\n";
  return 0;
}

int cmd_cluster(const std::string& data, const std::string& model, int l,
                int d, double lambda, std::uint64_t seed,
                const std::string& out) {
  const Eigen::MatrixXd y = ssc::read_matrix_csv(data);
  ssc::RecoveredStructure rs;
  if (model == "noiseless") {
    rs = ssc::cluster_noiseless(y);
  } else if (model == "noisy") {
    rs = ssc::cluster_noisy(y, l, d, lambda, seed);
  } else if (model == "noisy-spectral") {
    rs = ssc::cluster_noisy_spectral(y, l, d, lambda, seed);
  } else {
    throw ssc::InvalidParameter("cluster: unknown model '" + model + "'");
  }
  ssc::write_labels_csv(out, rs.assignment.labels);
  std::cout << "wrote " << out << ": " << rs.assignment.num_clusters
            << " clusters, " << rs.components.size() << " graph components";
  if (rs.small_component_points > 0) {
    std::cout << ", " << rs.small_component_points
              << " points assigned by residual";
  }
  std::cout << "\n";
  for (const auto& w : rs.warnings) std::cout << "warning: " << w << "\n";
  return 0;
}

int cmd_diagnose(const std::string& data, const std::string& observed,
                 const std::string& labels_path, int d,
                 const std::string& out) {
  const Eigen::MatrixXd x = ssc::read_matrix_csv(data);
  const Eigen::MatrixXd y =
      observed.empty() ? x : ssc::read_matrix_csv(observed);
  const Eigen::VectorXi labels = ssc::read_labels_csv(labels_path);
  const ssc::DiagnosticsReport report =
      ssc::check_recovery_conditions(x, y - x, labels, d);
  json j{{"xi", report.xi},
         {"mu_eps", report.mu_eps},
         {"separation_ok", report.separation_ok},
         {"noise_ok", report.noise_ok},
         {"inradii", std::vector<double>(report.inradii.begin(),
                                         report.inradii.end())},
         {"restricted_eigenvalues",
          std::vector<double>(report.restricted_eigenvalues.begin(),
                              report.restricted_eigenvalues.end())}};
  if (report.lambda_interval) {
    j["lambda_interval"] = {report.lambda_interval->first,
                            report.lambda_interval->second};
  } else {
    j["lambda_interval"] = nullptr;
  }
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream f(out);
    f << j.dump(2) << "\n";
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int cmd_metrics(const std::string& pred, const std::string& truth,
                const std::string& out) {
  const Eigen::VectorXi p = ssc::read_labels_csv(pred);
  const Eigen::VectorXi t = ssc::read_labels_csv(truth);
  const double acc = ssc::accuracy(p, t);
  json j{{"accuracy", acc}};
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream f(out);
    f << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& out) {
  ssc::ExperimentConfig config = ssc::load_config(config_path);
  if (!out.empty()) config.report_path = out;
  const ssc::ExperimentReport report = ssc::run_experiment(config);
  if (!config.report_path.empty()) {
    ssc::save_report(report, config.report_path);
    std::cout << "wrote " << config.report_path << "\n";
  } else {
    std::cout << ssc::serialize_report(report) << "\n";
  }
  std::cout << "seeds ok: " << report.n_success << "/"
            << report.per_seed.size() << ", mean acc1=" << report.acc1.mean
            << ", mean acc2=" << report.acc2.mean
            << ", mean rel_violation=" << report.rel_violation.mean << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse subspace clustering toolkit"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a synthetic dataset");
  ssc::GeneratorConfig gen_cfg;
  std::uint64_t seed = 0;
  std::string out, data, labels, observed, pred, model, config_path;
  gen->add_option("--model", gen_cfg.name,
                  "semirandom | nh | adversarial | simplex")->required();
  gen->add_option("--n", gen_cfg.n, "ambient dimension");
  gen->add_option("--m", gen_cfg.m, "points parameter (nh)");
  gen->add_option("--d", gen_cfg.d, "intrinsic dimension");
  gen->add_option("--L", gen_cfg.l, "number of subspaces");
  gen->add_option("--ppc", gen_cfg.points_per_cluster, "points per cluster");
  gen->add_option("--delta", gen_cfg.delta, "nh offset parameter");
  gen->add_option("--sigma", gen_cfg.sigma, "noise level");
  gen->add_option("--epsilon", gen_cfg.epsilon, "adversarial epsilon");
  gen->add_option("--sigma-l", gen_cfg.sigma_l, "simplex margin");
  gen->add_flag("--normalize", gen_cfg.normalize, "normalize adversarial columns");
  gen->add_option("--seed", seed, "random seed");
  gen->add_option("--out", out, "output file prefix")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "Self-expression coefficients");
  double lambda = 1e-3, tol = 1e-8;
  solve->add_option("--data", data, "matrix CSV")->required();
  solve->add_option("--model", model, "bp | lasso | l0")->required();
  solve->add_option("--lambda", lambda, "lasso regularization");
  solve->add_option("--tol", tol, "solver tolerance");
  solve->add_option("--out", out, "coefficient matrix CSV")->required();

  // cluster
  auto* cluster = app.add_subcommand("cluster", "Run a clustering pipeline");
  int opt_l = 2, opt_d = 4;
  cluster->add_option("--data", data, "matrix CSV")->required();
  cluster->add_option("--model", model, "noiseless | noisy | noisy-spectral")
      ->required();
  cluster->add_option("--L", opt_l, "number of clusters (noisy)");
  cluster->add_option("--d", opt_d, "intrinsic dimension (noisy)");
  cluster->add_option("--lambda", lambda, "lasso regularization");
  cluster->add_option("--seed", seed, "seed for the d-point draw");
  cluster->add_option("--out", out, "predicted labels CSV")->required();

  // diagnose
  auto* diagnose = app.add_subcommand("diagnose", "Condition diagnostics");
  diagnose->add_option("--data", data, "noiseless matrix CSV")->required();
  diagnose->add_option("--observed", observed, "observed matrix CSV");
  diagnose->add_option("--labels", labels, "labels CSV")->required();
  diagnose->add_option("--d", opt_d, "intrinsic dimension")->required();
  diagnose->add_option("--out", out, "report JSON path");

  // metrics
  auto* metrics = app.add_subcommand("metrics", "Clustering accuracy");
  metrics->add_option("--pred", pred, "predicted labels CSV")->required();
  metrics->add_option("--labels", labels, "truth labels CSV")->required();
  metrics->add_option("--out", out, "metrics JSON path");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run a config");
  experiment->add_option("--config", config_path, "config JSON")->required();
  experiment->add_option("--out", out, "report JSON path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(gen_cfg, seed, out);
    if (solve->parsed()) return cmd_solve(data, model, lambda, tol, out);
    if (cluster->parsed()) {
      return cmd_cluster(data, model, opt_l, opt_d, lambda, seed, out);
    }
    if (diagnose->parsed()) {
      return cmd_diagnose(data, observed, labels, opt_d, out);
    }
    if (metrics->parsed()) return cmd_metrics(pred, labels, out);
    if (experiment->parsed()) return cmd_experiment(config_path, out);
  } catch (const ssc::SolverDiverged& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 2;
  } catch (const ssc::Infeasible& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 2;
  } catch (const ssc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
