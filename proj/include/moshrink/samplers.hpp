#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <vector>

#include "moshrink/model.hpp"
#include "moshrink/rng.hpp"

namespace moshrink {

// Robbins-Monro tuner for a log-scale random-walk step size.
// step gamma_t = min(500^{-1/2}, t^{-1/2}), diminishing, never frozen.
struct StepSizeTuner {
  double log_step = 0.0;
  long t = 0;
  long attempts = 0;
  double accept_sum = 0.0;

  double step() const { return std::exp(log_step); }
  double acceptance_rate() const {
    return attempts > 0 ? accept_sum / static_cast<double>(attempts) : 0.0;
  }
  void adapt(double alpha, double target) {
    ++t;
    ++attempts;
    accept_sum += alpha;
    const double g = std::min(1.0 / std::sqrt(500.0),
                              1.0 / std::sqrt(static_cast<double>(t)));
    log_step += g * (alpha - target);
  }
};

// Tuner for the Dirichlet-proposal dispersion zeta (larger zeta = smaller
// steps, so the sign of the correction is flipped relative to StepSizeTuner).
struct ZetaTuner {
  double log_zeta = 0.0;
  long t = 0;
  long attempts = 0;
  double accept_sum = 0.0;

  double zeta() const { return std::exp(log_zeta); }
  double acceptance_rate() const {
    return attempts > 0 ? accept_sum / static_cast<double>(attempts) : 0.0;
  }
  void adapt(double alpha, double target) {
    ++t;
    ++attempts;
    accept_sum += alpha;
    const double g = std::min(1.0 / std::sqrt(500.0),
                              1.0 / std::sqrt(static_cast<double>(t)));
    log_zeta -= g * (alpha - target);
  }
};

struct MhAdaptState {
  std::vector<StepSizeTuner> tau;  // one per response (MONG)
  StepSizeTuner c;                 // MONG shape walk
  std::vector<ZetaTuner> zeta;     // MODL: size 1; NaiveDL: one per response
};

// All latent quantities of one chain. Only the blocks demanded by the family
// are sized; the rest stay empty.
struct ChainState {
  Eigen::MatrixXd B;    // p x K
  Eigen::MatrixXd Psi;  // K x K
  Eigen::VectorXd tau;  // K global scales (tau_k; tau^2_k stored as squares
                        // internally by the MOHS update)
  // shared-local families
  Eigen::VectorXd lambda;  // p (MONG: variance multiplier; MOHS: lambda^2)
  double c = 1.0;          // MONG
  Eigen::VectorXd nu, omega;  // MOHS augmentation
  Eigen::VectorXd phi;        // MODL simplex
  // naive families: per-(j,k) locals
  Eigen::MatrixXd lambda_jk;  // p x K (NaiveNG: variance mult; NaiveHS: sq)
  Eigen::MatrixXd nu_jk;      // p x K (NaiveHS augmentation)
  Eigen::MatrixXd phi_jk;     // p x K, each column a simplex (NaiveDL)
  Eigen::MatrixXd eta;        // p x K (DL augmentation)

  MhAdaptState mh;

  void check_finite(long iteration) const;
};

ChainState init_chain_state(const ModelSpec& spec, Eigen::Index p,
                            Eigen::Index K);

struct RunOptions {
  long iterations = 9000;
  long burn_in = 1000;
  long thin = 10;
  std::uint64_t seed = 1;
  bool allow_raw = false;  // permit fitting unstandardized data
};

struct PosteriorSamples {
  Family family = Family::MONG;
  Eigen::Index p = 0, K = 0;
  long iterations = 0, burn_in = 0, thin = 0;
  std::uint64_t seed = 0;

  // thinned retained draws
  std::vector<Eigen::MatrixXd> B_draws;
  std::vector<Eigen::MatrixXd> Psi_draws;
  std::vector<Eigen::VectorXd> local_draws;  // lambda (sd/variance scale
                                             // depending on family) or phi
  std::vector<Eigen::VectorXd> tau_draws;
  std::vector<double> c_draws;

  // streaming accumulators over every post-burn-in draw
  Eigen::MatrixXd B_mean;
  Eigen::MatrixXd Psi_mean;
  Eigen::VectorXd local_mean;
  Eigen::VectorXd tau_mean;
  double c_mean = 0.0;
  double mean_deviance = 0.0;
  long accum_count = 0;

  // per-target acceptance rates (empty where the family has no MH step)
  std::vector<double> tau_accept;
  double c_accept = 0.0;
  std::vector<double> phi_accept;

  long retained() const { return static_cast<long>(B_draws.size()); }
};

// Precomputed per-dataset quantities for the coefficient update.
struct BUpdateWorkspace {
  Eigen::MatrixXd XtX;  // p x p
  Eigen::MatrixXd XtY;  // p x K
  explicit BUpdateWorkspace(const Dataset& data)
      : XtX(data.X.transpose() * data.X), XtY(data.X.transpose() * data.Y) {}
};

// Fill the diagonal of the vec(B) prior covariance Omega (j fastest, k
// slowest, matching column-major vec of the p x K matrix B).
Eigen::VectorXd prior_variance_diagonal(const ChainState& state,
                                        const ModelSpec& spec, Eigen::Index p,
                                        Eigen::Index K);

void update_B(ChainState& state, const Dataset& data,
              const BUpdateWorkspace& ws, const ModelSpec& spec,
              RngStream& rng);

// Posterior mean and covariance of vec(B) through the structured
// (block-assembled, Cholesky-factored) route used by update_B.
struct BPosterior {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};
BPosterior b_posterior_moments(const ChainState& state, const Dataset& data,
                               const BUpdateWorkspace& ws,
                               const ModelSpec& spec);
void update_lambda_mong(ChainState& state, RngStream& rng);
void update_tau_mong(ChainState& state, const Hyperparams& hyper,
                     RngStream& rng);
void update_c_mong(ChainState& state, const Hyperparams& hyper,
                   RngStream& rng);
void update_mohs_blocks(ChainState& state, RngStream& rng);
void update_tau_modl(ChainState& state, const Hyperparams& hyper,
                     RngStream& rng);
void update_phi_modl(ChainState& state, const Hyperparams& hyper,
                     RngStream& rng);
void update_eta_modl(ChainState& state, RngStream& rng);
void update_psi(ChainState& state, const Dataset& data,
                const Hyperparams& hyper, RngStream& rng);
void update_naive_locals(ChainState& state, const ModelSpec& spec,
                         RngStream& rng);

// One full Gibbs sweep in the published order (B, shrinkage blocks, Psi).
void gibbs_sweep(ChainState& state, const Dataset& data,
                 const BUpdateWorkspace& ws, const ModelSpec& spec,
                 RngStream& rng);

PosteriorSamples run_chain(const Dataset& data, const ModelSpec& spec,
                           const RunOptions& opts);

// Local-parameter vector on the reporting scale (MONG: lambda_j; MOHS:
// sqrt(lambda^2_j); MODL: phi_j).
Eigen::VectorXd reporting_locals(const ChainState& state, Family family);

}  // namespace moshrink
