#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

#include "moshrink/rng.hpp"

namespace moshrink {

// Numerical failure (e.g. Cholesky of a non-SPD matrix).
struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& msg, int index = -1)
      : std::runtime_error(msg), pivot_index(index) {}
  int pivot_index;
};

// Generalized inverse Gaussian with kernel x^{rho-1} exp(-(kappa*x + chi/x)/2).
struct GigParams {
  double rho;
  double kappa;
  double chi;

  bool valid() const {
    if (!(kappa >= 0.0) || !(chi >= 0.0)) return false;
    if (chi > 0.0 && kappa > 0.0) return true;
    if (chi > 0.0 && kappa >= 0.0 && rho < 0.0) return true;
    if (chi >= 0.0 && kappa > 0.0 && rho > 0.0) return true;
    return false;
  }
};

double sample_normal(RngStream& rng);
double sample_exponential(double rate, RngStream& rng);
double sample_gamma(double shape, double scale, RngStream& rng);
double sample_half_cauchy(double scale, RngStream& rng);
double sample_inverse_gamma(double shape, double scale, RngStream& rng);
double sample_inverse_gaussian(double mu, double theta, RngStream& rng);
double sample_gig(const GigParams& params, RngStream& rng);

Eigen::VectorXd sample_dirichlet(const Eigen::VectorXd& alpha, RngStream& rng);
Eigen::VectorXd sample_mvn(const Eigen::VectorXd& mean,
                           const Eigen::MatrixXd& covariance, RngStream& rng);
Eigen::MatrixXd sample_inv_wishart(double df, const Eigen::MatrixXd& scale,
                                   RngStream& rng);

}  // namespace moshrink
