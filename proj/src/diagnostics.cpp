#include "moshrink/diagnostics.hpp"

#include <algorithm>

namespace moshrink {

double mspe(const Eigen::MatrixXd& B_hat, const Dataset& test) {
  if (test.n() < 1) throw std::invalid_argument("empty test set");
  if (test.p() != B_hat.rows() || test.K() != B_hat.cols()) {
    throw std::invalid_argument("mspe dimension mismatch");
  }
  const Eigen::MatrixXd E = test.X * B_hat - test.Y;
  return E.squaredNorm() /
         (static_cast<double>(test.n()) * static_cast<double>(test.K()));
}

SsePartition sse_partitioned(const Eigen::MatrixXd& B_hat,
                             const Eigen::MatrixXd& B_true) {
  if (B_hat.rows() != B_true.rows() || B_hat.cols() != B_true.cols()) {
    throw std::invalid_argument("sse shape mismatch");
  }
  SsePartition out;
  for (Eigen::Index j = 0; j < B_hat.rows(); ++j) {
    for (Eigen::Index k = 0; k < B_hat.cols(); ++k) {
      const double e = B_hat(j, k) - B_true(j, k);
      const double e2 = e * e;
      out.all += e2;
      if (B_true(j, k) != 0.0) {
        out.nonzero += e2;
      } else {
        out.zero += e2;
      }
    }
  }
  return out;
}

DicResult dic(const PosteriorSamples& samples, const Dataset& data) {
  if (samples.accum_count < 1) {
    throw std::invalid_argument("posterior samples carry no accumulators");
  }
  const double d_at_mean =
      -2.0 * log_likelihood(data, samples.B_mean, samples.Psi_mean);
  const double p_d = samples.mean_deviance - d_at_mean;
  return {d_at_mean + 2.0 * p_d, d_at_mean, p_d, samples.mean_deviance};
}

std::vector<PredictorRank> rank_predictors(const PosteriorSamples& samples,
                                           const ModelSpec& spec) {
  if (!family_has_shared_locals(spec.family)) {
    throw std::invalid_argument(
        "predictor ranking requires a shared-local family (MONG/MOHS/MODL)");
  }
  if (samples.local_mean.size() != samples.p) {
    throw std::invalid_argument("posterior samples lack local means");
  }
  const double threshold =
      spec.family == Family::MODL ? 1.0 / static_cast<double>(samples.p) : 1.0;
  std::vector<PredictorRank> out;
  out.reserve(static_cast<std::size_t>(samples.p));
  for (Eigen::Index j = 0; j < samples.p; ++j) {
    const double m = samples.local_mean[j];
    out.push_back({j, m, m > threshold});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.local_mean != b.local_mean) return a.local_mean > b.local_mean;
    return a.predictor < b.predictor;
  });
  return out;
}

}  // namespace moshrink
