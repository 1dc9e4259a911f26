#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "moshrink/diagnostics.hpp"
#include "moshrink/samplers.hpp"

namespace moshrink {

enum class Scenario { B0, B1 };

struct TruthMatrix {
  Eigen::MatrixXd B_true;                               // p x K
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> zero_mask;  // p x K

  std::vector<Eigen::Index> nonzero_rows() const;
};

struct SimConfig {
  Eigen::Index n = 500;
  Eigen::Index n_test = 500;
  Eigen::Index p = 20;
  Eigen::Index K = 10;
  Scenario scenario = Scenario::B0;
  double psi_offdiag = 0.5;
  long replicates = 10;
  long iterations = 9000;
  long burn_in = 1000;
  long thin = 10;
  std::vector<ModelSpec> families;
  std::uint64_t seed = 1;
};

Eigen::MatrixXd make_design(Eigen::Index n, Eigen::Index p, RngStream& rng);
TruthMatrix make_truth(Scenario scenario, Eigen::Index p, Eigen::Index K);
Eigen::MatrixXd equicorrelation(Eigen::Index K, double offdiag);
Eigen::MatrixXd gen_responses(const Eigen::MatrixXd& X,
                              const TruthMatrix& truth, double psi_offdiag,
                              RngStream& rng);

struct ReplicateResult {
  long replicate;
  std::string family;
  double mspe;
  SsePartition sse;
};

struct ExperimentTable {
  // one aggregated row per family, preserving the configured family order
  std::vector<std::string> family;
  std::vector<double> mspe;
  std::vector<double> sse_all, sse_nonzero, sse_zero;
  std::vector<ReplicateResult> replicate_results;
};

ExperimentTable run_experiment(
    const SimConfig& cfg,
    const std::function<void(long, const std::string&)>& progress = {});

}  // namespace moshrink
