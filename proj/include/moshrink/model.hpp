#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "moshrink/distributions.hpp"

namespace moshrink {

enum class Family {
  MONG,
  MOHS,
  MODL,
  NaiveNG,
  NaiveHS,
  NaiveDL,
  NoShrinkage,
};

std::string family_name(Family f);
Family family_from_name(const std::string& name);
bool family_has_shared_locals(Family f);

struct Hyperparams {
  double gamma_hc = 0.5;     // half-Cauchy scale on tau (NG families)
  double lambda_c = 0.5;     // Exp rate on the NG shape c
  double dl_a = 0.5;         // Dirichlet concentration (DL families)
  double nu0 = 0.0;          // inverse-Wishart df; 0 means K+2
  Eigen::MatrixXd S0;        // inverse-Wishart scale; empty means identity
  double noshrink_var = 10.0;

  double resolve_nu0(Eigen::Index K) const {
    return nu0 > 0.0 ? nu0 : static_cast<double>(K) + 2.0;
  }
  Eigen::MatrixXd resolve_S0(Eigen::Index K) const {
    if (S0.size() == 0) return Eigen::MatrixXd::Identity(K, K);
    return S0;
  }
};

struct ModelSpec {
  Family family = Family::MONG;
  Hyperparams hyper;
};

struct Dataset {
  Eigen::MatrixXd Y;  // n x K
  Eigen::MatrixXd X;  // n x p
  bool standardized = false;
  Eigen::VectorXd x_mean, x_sd;  // standardization metadata (empty if raw)
  Eigen::VectorXd y_mean, y_sd;
  std::vector<std::string> x_names, y_names;

  Eigen::Index n() const { return Y.rows(); }
  Eigen::Index p() const { return X.cols(); }
  Eigen::Index K() const { return Y.cols(); }

  void validate() const;
};

// Center/scale every column of X and Y, keeping the inverse transform.
Dataset standardize(const Dataset& raw);

// Sum over rows of log N_K(Y_i | X_i B, Psi); deviance is -2x this.
double log_likelihood(const Dataset& data, const Eigen::MatrixXd& B,
                      const Eigen::MatrixXd& Psi);

Eigen::MatrixXd predict(const Eigen::MatrixXd& B, const Eigen::MatrixXd& X_new);

// Prediction on raw-scale inputs for a fit done on standardized data.
Eigen::MatrixXd predict_destandardized(const Eigen::MatrixXd& B,
                                       const Eigen::MatrixXd& X_new_raw,
                                       const Dataset& fit_data);

}  // namespace moshrink
