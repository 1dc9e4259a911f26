#include "moshrink/model.hpp"

#include <cmath>

namespace moshrink {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::MONG: return "mong";
    case Family::MOHS: return "mohs";
    case Family::MODL: return "modl";
    case Family::NaiveNG: return "naive-ng";
    case Family::NaiveHS: return "naive-hs";
    case Family::NaiveDL: return "naive-dl";
    case Family::NoShrinkage: return "none";
  }
  return "mong";
}

Family family_from_name(const std::string& name) {
  if (name == "mong") return Family::MONG;
  if (name == "mohs") return Family::MOHS;
  if (name == "modl") return Family::MODL;
  if (name == "naive-ng") return Family::NaiveNG;
  if (name == "naive-hs") return Family::NaiveHS;
  if (name == "naive-dl") return Family::NaiveDL;
  if (name == "none" || name == "no-shrinkage") return Family::NoShrinkage;
  throw std::invalid_argument("unknown model family: " + name);
}

bool family_has_shared_locals(Family f) {
  return f == Family::MONG || f == Family::MOHS || f == Family::MODL;
}

void Dataset::validate() const {
  if (Y.rows() < 1 || X.rows() < 1 || X.cols() < 1 || Y.cols() < 1) {
    throw std::invalid_argument("dataset must have n, p, K >= 1");
  }
  if (X.rows() != Y.rows()) {
    throw std::invalid_argument("X and Y row counts differ");
  }
  if (!X.allFinite() || !Y.allFinite()) {
    throw std::invalid_argument("dataset contains non-finite entries");
  }
}

namespace {

void standardize_columns(Eigen::MatrixXd& M, Eigen::VectorXd& mean,
                         Eigen::VectorXd& sd, const char* which) {
  const Eigen::Index n = M.rows();
  mean.resize(M.cols());
  sd.resize(M.cols());
  for (Eigen::Index j = 0; j < M.cols(); ++j) {
    mean[j] = M.col(j).mean();
    const double ss = (M.col(j).array() - mean[j]).square().sum();
    sd[j] = std::sqrt(ss / static_cast<double>(n - 1));
    if (!(sd[j] > 0.0)) {
      throw std::invalid_argument(std::string("degenerate (constant) column ") +
                                  std::to_string(j) + " in " + which);
    }
    M.col(j) = (M.col(j).array() - mean[j]) / sd[j];
  }
}

}  // namespace

Dataset standardize(const Dataset& raw) {
  raw.validate();
  if (raw.n() < 2) {
    throw std::invalid_argument("standardization needs at least 2 rows");
  }
  Dataset out = raw;
  standardize_columns(out.X, out.x_mean, out.x_sd, "X");
  standardize_columns(out.Y, out.y_mean, out.y_sd, "Y");
  out.standardized = true;
  return out;
}

double log_likelihood(const Dataset& data, const Eigen::MatrixXd& B,
                      const Eigen::MatrixXd& Psi) {
  const Eigen::Index n = data.n(), K = data.K();
  if (B.rows() != data.p() || B.cols() != K || Psi.rows() != K ||
      Psi.cols() != K) {
    throw std::invalid_argument("log_likelihood dimension mismatch");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(Psi);
  if (llt.info() != Eigen::Success) {
    throw numeric_error("Psi is not positive definite");
  }
  const Eigen::MatrixXd R = data.Y - data.X * B;  // n x K residuals
  // solve L Z^T = R^T; quadratic form per row is the squared norm of Z's row
  const Eigen::MatrixXd Z =
      llt.matrixL().solve(R.transpose());  // K x n
  const double quad = Z.squaredNorm();
  const double logdet =
      2.0 * Eigen::MatrixXd(llt.matrixL()).diagonal().array().log().sum();
  return -0.5 * (static_cast<double>(n) *
                     (static_cast<double>(K) * kLog2Pi + logdet) +
                 quad);
}

Eigen::MatrixXd predict(const Eigen::MatrixXd& B,
                        const Eigen::MatrixXd& X_new) {
  if (X_new.cols() != B.rows()) {
    throw std::invalid_argument("predict: X_new column count != p");
  }
  return X_new * B;
}

Eigen::MatrixXd predict_destandardized(const Eigen::MatrixXd& B,
                                       const Eigen::MatrixXd& X_new_raw,
                                       const Dataset& fit_data) {
  if (!fit_data.standardized) return predict(B, X_new_raw);
  Eigen::MatrixXd Xs = X_new_raw;
  for (Eigen::Index j = 0; j < Xs.cols(); ++j) {
    Xs.col(j) = (Xs.col(j).array() - fit_data.x_mean[j]) / fit_data.x_sd[j];
  }
  Eigen::MatrixXd P = predict(B, Xs);
  for (Eigen::Index k = 0; k < P.cols(); ++k) {
    P.col(k) = P.col(k).array() * fit_data.y_sd[k] + fit_data.y_mean[k];
  }
  return P;
}

}  // namespace moshrink
