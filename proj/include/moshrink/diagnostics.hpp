#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "moshrink/samplers.hpp"

namespace moshrink {

struct SsePartition {
  double all = 0.0;
  double nonzero = 0.0;
  double zero = 0.0;
};

struct PredictorRank {
  Eigen::Index predictor;  // 0-based row index into B
  double local_mean;
  bool selected;
};

struct MetricsReport {
  double mspe = 0.0;
  SsePartition sse;
  double dic = 0.0;
  double d_at_mean = 0.0;
  double p_d = 0.0;
  double mean_deviance = 0.0;
  std::vector<PredictorRank> rankings;
};

// Mean squared prediction error of X_test * B_hat against Y_test.
double mspe(const Eigen::MatrixXd& B_hat, const Dataset& test);

// Total squared estimation error, split over truly nonzero / zero coordinates.
SsePartition sse_partitioned(const Eigen::MatrixXd& B_hat,
                             const Eigen::MatrixXd& B_true);

struct DicResult {
  double dic;
  double d_at_mean;
  double p_d;
  double mean_deviance;
};
DicResult dic(const PosteriorSamples& samples, const Dataset& data);

// Predictors ordered by posterior-mean local parameter, with the selection
// flag lambda_hat > 1 (MONG/MOHS) or phi_hat > 1/p (MODL).
std::vector<PredictorRank> rank_predictors(const PosteriorSamples& samples,
                                           const ModelSpec& spec);

}  // namespace moshrink
