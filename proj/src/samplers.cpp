#include "moshrink/samplers.hpp"

#include <cmath>

namespace moshrink {

namespace {

constexpr double kChiFloor = 1e-300;
constexpr double kBetaFloor = 1e-12;
constexpr double kTargetScalar = 0.44;  // scalar log-walk acceptance target
constexpr double kTargetSimplex = 0.24; // Dirichlet-walk acceptance target

double floored_chi(double chi, double rho) {
  // rho <= 0 with chi = 0 is outside the giG domain; measure-zero event
  if (chi <= 0.0 && rho <= 0.0) return kChiFloor;
  return std::min(chi, 1e300);
}

}  // namespace

ChainState init_chain_state(const ModelSpec& spec, Eigen::Index p,
                            Eigen::Index K) {
  ChainState s;
  s.B = Eigen::MatrixXd::Zero(p, K);
  s.Psi = Eigen::MatrixXd::Identity(K, K);
  switch (spec.family) {
    case Family::MONG:
      s.lambda = Eigen::VectorXd::Ones(p);
      s.tau = Eigen::VectorXd::Ones(K);
      s.c = 1.0;
      s.mh.tau.resize(static_cast<std::size_t>(K));
      break;
    case Family::MOHS:
      s.lambda = Eigen::VectorXd::Ones(p);  // lambda^2
      s.tau = Eigen::VectorXd::Ones(K);
      s.nu = Eigen::VectorXd::Ones(p);
      s.omega = Eigen::VectorXd::Ones(K);
      break;
    case Family::MODL:
      s.phi = Eigen::VectorXd::Constant(p, 1.0 / static_cast<double>(p));
      s.tau = Eigen::VectorXd::Ones(K);
      s.eta = Eigen::MatrixXd::Ones(p, K);
      s.mh.zeta.resize(1);
      s.mh.zeta[0].log_zeta = std::log(static_cast<double>(p));
      break;
    case Family::NaiveNG:
      s.lambda_jk = Eigen::MatrixXd::Ones(p, K);
      s.tau = Eigen::VectorXd::Ones(K);
      s.c = 1.0;
      s.mh.tau.resize(static_cast<std::size_t>(K));
      break;
    case Family::NaiveHS:
      s.lambda_jk = Eigen::MatrixXd::Ones(p, K);  // lambda^2
      s.nu_jk = Eigen::MatrixXd::Ones(p, K);
      s.tau = Eigen::VectorXd::Ones(K);
      s.omega = Eigen::VectorXd::Ones(K);
      break;
    case Family::NaiveDL:
      s.phi_jk = Eigen::MatrixXd::Constant(p, K, 1.0 / static_cast<double>(p));
      s.tau = Eigen::VectorXd::Ones(K);
      s.eta = Eigen::MatrixXd::Ones(p, K);
      s.mh.zeta.resize(static_cast<std::size_t>(K));
      for (auto& z : s.mh.zeta) z.log_zeta = std::log(static_cast<double>(p));
      break;
    case Family::NoShrinkage:
      break;
  }
  return s;
}

void ChainState::check_finite(long iteration) const {
  auto bad = [iteration](const char* block) {
    throw numeric_error("non-finite state in block '" + std::string(block) +
                        "' at iteration " + std::to_string(iteration));
  };
  if (!B.allFinite()) bad("B");
  if (!Psi.allFinite()) bad("Psi");
  if (tau.size() && !(tau.array() > 0.0).all()) bad("tau");
  if (lambda.size() && !(lambda.array() > 0.0).all()) bad("lambda");
  if (!std::isfinite(c) || c <= 0.0) bad("c");
  if (phi.size() && !(phi.array() > 0.0).all()) bad("phi");
  if (lambda_jk.size() && !(lambda_jk.array() > 0.0).all()) bad("lambda_jk");
  if (phi_jk.size() && !(phi_jk.array() > 0.0).all()) bad("phi_jk");
  if (eta.size() && !(eta.array() > 0.0).all()) bad("eta");
}

Eigen::VectorXd prior_variance_diagonal(const ChainState& state,
                                        const ModelSpec& spec, Eigen::Index p,
                                        Eigen::Index K) {
  Eigen::VectorXd d(p * K);
  for (Eigen::Index k = 0; k < K; ++k) {
    for (Eigen::Index j = 0; j < p; ++j) {
      double v = 0.0;
      switch (spec.family) {
        case Family::MONG:
          v = state.lambda[j] * state.tau[k] * state.tau[k];
          break;
        case Family::MOHS:
          v = state.lambda[j] * state.tau[k] * state.tau[k];
          break;
        case Family::MODL:
          v = state.eta(j, k) * state.phi[j] * state.phi[j] * state.tau[k] *
              state.tau[k];
          break;
        case Family::NaiveNG:
        case Family::NaiveHS:
          v = state.lambda_jk(j, k) * state.tau[k] * state.tau[k];
          break;
        case Family::NaiveDL:
          v = state.eta(j, k) * state.phi_jk(j, k) * state.phi_jk(j, k) *
              state.tau[k] * state.tau[k];
          break;
        case Family::NoShrinkage:
          v = spec.hyper.noshrink_var;
          break;
      }
      d[k * p + j] = std::max(v, kChiFloor);
    }
  }
  return d;
}

namespace {

// Precision Q = Psi^{-1} (x) X'X + Omega^{-1} and linear term b = vec(X'Y
// Psi^{-1}), assembled blockwise (vec order: j fastest, k slowest).
void assemble_b_system(const ChainState& state, const Dataset& data,
                       const BUpdateWorkspace& ws, const ModelSpec& spec,
                       Eigen::MatrixXd& Q, Eigen::MatrixXd& BtY) {
  const Eigen::Index p = data.p(), K = data.K();
  Eigen::LLT<Eigen::MatrixXd> llt_psi(state.Psi);
  if (llt_psi.info() != Eigen::Success) {
    throw numeric_error("Psi not SPD in coefficient update");
  }
  const Eigen::MatrixXd Psi_inv =
      llt_psi.solve(Eigen::MatrixXd::Identity(K, K));

  Q.resize(p * K, p * K);
  for (Eigen::Index k = 0; k < K; ++k) {
    for (Eigen::Index k2 = k; k2 < K; ++k2) {
      Q.block(k * p, k2 * p, p, p) = Psi_inv(k, k2) * ws.XtX;
      if (k2 != k) {
        Q.block(k2 * p, k * p, p, p) = Q.block(k * p, k2 * p, p, p);
      }
    }
  }
  const Eigen::VectorXd ovar = prior_variance_diagonal(state, spec, p, K);
  Q.diagonal() += ovar.cwiseInverse();
  BtY = ws.XtY * Psi_inv;
}

Eigen::LLT<Eigen::MatrixXd> factor_with_jitter(Eigen::MatrixXd& Q) {
  Eigen::LLT<Eigen::MatrixXd> llt(Q);
  double jitter = 1e-10 * Q.diagonal().maxCoeff();
  int tries = 0;
  while (llt.info() != Eigen::Success && tries < 4) {
    Q.diagonal().array() += jitter;
    jitter *= 100.0;
    ++tries;
    llt.compute(Q);
  }
  if (llt.info() != Eigen::Success) {
    throw numeric_error("coefficient precision not SPD after jitter retries");
  }
  return llt;
}

}  // namespace

BPosterior b_posterior_moments(const ChainState& state, const Dataset& data,
                               const BUpdateWorkspace& ws,
                               const ModelSpec& spec) {
  const Eigen::Index m = data.p() * data.K();
  Eigen::MatrixXd Q, BtY;
  assemble_b_system(state, data, ws, spec, Q, BtY);
  Eigen::LLT<Eigen::MatrixXd> llt = factor_with_jitter(Q);
  const Eigen::Map<const Eigen::VectorXd> b(BtY.data(), m);
  BPosterior out;
  out.mean = llt.solve(b);
  out.covariance = llt.solve(Eigen::MatrixXd::Identity(m, m));
  return out;
}

void update_B(ChainState& state, const Dataset& data,
              const BUpdateWorkspace& ws, const ModelSpec& spec,
              RngStream& rng) {
  const Eigen::Index p = data.p(), K = data.K(), m = p * K;
  Eigen::MatrixXd Q, BtY;
  assemble_b_system(state, data, ws, spec, Q, BtY);
  Eigen::LLT<Eigen::MatrixXd> llt = factor_with_jitter(Q);
  const Eigen::Map<const Eigen::VectorXd> b(BtY.data(), m);
  const Eigen::VectorXd mean = llt.solve(b);
  Eigen::VectorXd z(m);
  for (Eigen::Index i = 0; i < m; ++i) z[i] = sample_normal(rng);
  const Eigen::VectorXd dev = llt.matrixU().solve(z);
  Eigen::Map<Eigen::VectorXd>(state.B.data(), m) = mean + dev;
}

void update_lambda_mong(ChainState& state, RngStream& rng) {
  const Eigen::Index p = state.B.rows(), K = state.B.cols();
  const double rho = state.c - 0.5 * static_cast<double>(K);
  for (Eigen::Index j = 0; j < p; ++j) {
    double chi = 0.0;
    for (Eigen::Index k = 0; k < K; ++k) {
      chi += state.B(j, k) * state.B(j, k) / (state.tau[k] * state.tau[k]);
    }
    state.lambda[j] =
        sample_gig({rho, 2.0 * state.c, floored_chi(chi, rho)}, rng);
  }
}

namespace {

// log pi(tau_k) + log-scale Jacobian for the NG global walk
double ng_tau_logpost(double tau, double ssq_over_lambda, double p_count,
                      double gamma_hc) {
  return -p_count * std::log(tau) -
         0.5 * ssq_over_lambda / (tau * tau) -
         std::log(tau * tau + gamma_hc * gamma_hc) + std::log(tau);
}

void ng_tau_walk(Eigen::VectorXd& tau, const Eigen::VectorXd& ssq,
                 double p_count, double gamma_hc,
                 std::vector<StepSizeTuner>& tuners, RngStream& rng) {
  for (Eigen::Index k = 0; k < tau.size(); ++k) {
    StepSizeTuner& tuner = tuners[static_cast<std::size_t>(k)];
    const double cur = tau[k];
    const double prop = cur * std::exp(tuner.step() * sample_normal(rng));
    const double lr = ng_tau_logpost(prop, ssq[k], p_count, gamma_hc) -
                      ng_tau_logpost(cur, ssq[k], p_count, gamma_hc);
    const double alpha = std::min(1.0, std::exp(lr));
    if (rng.uniform() < alpha) tau[k] = prop;
    tuner.adapt(alpha, kTargetScalar);
  }
}

double ng_c_logpost(double c, double p_count, double sum_lambda,
                    double sum_log_lambda, double lambda_rate) {
  return c * p_count * std::log(c) - p_count * std::lgamma(c) -
         c * (lambda_rate + sum_lambda) + (c - 1.0) * sum_log_lambda +
         std::log(c);  // Jacobian of the log-scale walk
}

void ng_c_walk(double& c, double p_count, double sum_lambda,
               double sum_log_lambda, double lambda_rate, StepSizeTuner& tuner,
               RngStream& rng) {
  const double cur = c;
  const double prop = cur * std::exp(tuner.step() * sample_normal(rng));
  double alpha = 0.0;
  if (std::isfinite(prop) && prop > 0.0) {
    const double lr =
        ng_c_logpost(prop, p_count, sum_lambda, sum_log_lambda, lambda_rate) -
        ng_c_logpost(cur, p_count, sum_lambda, sum_log_lambda, lambda_rate);
    alpha = std::min(1.0, std::exp(lr));
    if (rng.uniform() < alpha) c = prop;
  }
  tuner.adapt(alpha, kTargetScalar);
}

}  // namespace

void update_tau_mong(ChainState& state, const Hyperparams& hyper,
                     RngStream& rng) {
  const Eigen::Index p = state.B.rows(), K = state.B.cols();
  Eigen::VectorXd ssq(K);
  for (Eigen::Index k = 0; k < K; ++k) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      s += state.B(j, k) * state.B(j, k) / state.lambda[j];
    }
    ssq[k] = s;
  }
  ng_tau_walk(state.tau, ssq, static_cast<double>(p), hyper.gamma_hc,
              state.mh.tau, rng);
}

void update_c_mong(ChainState& state, const Hyperparams& hyper,
                   RngStream& rng) {
  const double p = static_cast<double>(state.lambda.size());
  ng_c_walk(state.c, p, state.lambda.sum(),
            state.lambda.array().log().sum(), hyper.lambda_c, state.mh.c, rng);
}

void update_mohs_blocks(ChainState& state, RngStream& rng) {
  const Eigen::Index p = state.B.rows(), K = state.B.cols();
  for (Eigen::Index j = 0; j < p; ++j) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < K; ++k) {
      s += state.B(j, k) * state.B(j, k) / (2.0 * state.tau[k] * state.tau[k]);
    }
    state.lambda[j] = sample_inverse_gamma(
        0.5 * (static_cast<double>(K) + 1.0), 1.0 / state.nu[j] + s, rng);
  }
  for (Eigen::Index k = 0; k < K; ++k) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      s += state.B(j, k) * state.B(j, k) / (2.0 * state.lambda[j]);
    }
    const double tau2 = sample_inverse_gamma(
        0.5 * (static_cast<double>(p) + 1.0), 1.0 / state.omega[k] + s, rng);
    state.tau[k] = std::sqrt(tau2);
  }
  for (Eigen::Index j = 0; j < p; ++j) {
    state.nu[j] = sample_inverse_gamma(1.0, 1.0 + 1.0 / state.lambda[j], rng);
  }
  for (Eigen::Index k = 0; k < K; ++k) {
    state.omega[k] = sample_inverse_gamma(
        1.0, 1.0 + 1.0 / (state.tau[k] * state.tau[k]), rng);
  }
}

void update_tau_modl(ChainState& state, const Hyperparams& hyper,
                     RngStream& rng) {
  const Eigen::Index p = state.B.rows(), K = state.B.cols();
  const double rho =
      static_cast<double>(p) * hyper.dl_a - static_cast<double>(p);
  for (Eigen::Index k = 0; k < K; ++k) {
    double chi = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      chi += 2.0 * std::abs(state.B(j, k)) / state.phi[j];
    }
    state.tau[k] = sample_gig({rho, 1.0, floored_chi(chi, rho)}, rng);
  }
}

namespace {

double dl_phi_logtarget(const Eigen::VectorXd& phi, const Eigen::VectorXd& r,
                        double a, double K_count) {
  double lp = 0.0;
  for (Eigen::Index j = 0; j < phi.size(); ++j) {
    lp += (a - K_count - 1.0) * std::log(phi[j]) - r[j] / phi[j];
  }
  return lp;
}

double dirichlet_logpdf(const Eigen::VectorXd& x, const Eigen::VectorXd& alpha) {
  double lp = std::lgamma(alpha.sum());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    lp += (alpha[j] - 1.0) * std::log(x[j]) - std::lgamma(alpha[j]);
  }
  return lp;
}

// One Dirichlet-proposal MH attempt on a simplex block; r_j = sum_k |b_jk|/tau_k.
void dl_phi_walk(Eigen::VectorXd phi_view, const Eigen::VectorXd& r, double a,
                 double K_count, ZetaTuner& tuner, RngStream& rng,
                 Eigen::VectorXd* out) {
  const double zeta = tuner.zeta();
  const Eigen::VectorXd alpha_prop = zeta * phi_view;
  Eigen::VectorXd prop = sample_dirichlet(alpha_prop, rng);
  double alpha_mh = 0.0;
  if ((prop.array() > 0.0).all()) {
    const double lr = dl_phi_logtarget(prop, r, a, K_count) -
                      dl_phi_logtarget(phi_view, r, a, K_count) +
                      dirichlet_logpdf(phi_view, zeta * prop) -
                      dirichlet_logpdf(prop, alpha_prop);
    if (std::isfinite(lr)) alpha_mh = std::min(1.0, std::exp(lr));
    if (alpha_mh > 0.0 && rng.uniform() < alpha_mh) *out = prop;
  }
  tuner.adapt(alpha_mh, kTargetSimplex);
}

}  // namespace

void update_phi_modl(ChainState& state, const Hyperparams& hyper,
                     RngStream& rng) {
  const Eigen::Index p = state.B.rows(), K = state.B.cols();
  Eigen::VectorXd r(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < K; ++k) {
      s += std::abs(state.B(j, k)) / state.tau[k];
    }
    r[j] = s;
  }
  Eigen::VectorXd next = state.phi;
  dl_phi_walk(state.phi, r, hyper.dl_a, static_cast<double>(K), state.mh.zeta[0],
              rng, &next);
  state.phi = next;
}

void update_eta_modl(ChainState& state, RngStream& rng) {
  const Eigen::Index p = state.B.rows(), K = state.B.cols();
  const bool naive = state.phi.size() == 0;
  for (Eigen::Index j = 0; j < p; ++j) {
    for (Eigen::Index k = 0; k < K; ++k) {
      const double scale =
          (naive ? state.phi_jk(j, k) : state.phi[j]) * state.tau[k];
      const double ab = std::max(std::abs(state.B(j, k)), kBetaFloor);
      const double inv = sample_inverse_gaussian(scale / ab, 1.0, rng);
      state.eta(j, k) = 1.0 / std::max(inv, kChiFloor);
    }
  }
}

void update_psi(ChainState& state, const Dataset& data,
                const Hyperparams& hyper, RngStream& rng) {
  const Eigen::Index K = data.K();
  const Eigen::MatrixXd R = data.Y - data.X * state.B;
  const Eigen::MatrixXd S = R.transpose() * R;
  state.Psi = sample_inv_wishart(
      hyper.resolve_nu0(K) + static_cast<double>(data.n()),
      hyper.resolve_S0(K) + S, rng);
}

void update_naive_locals(ChainState& state, const ModelSpec& spec,
                         RngStream& rng) {
  const Eigen::Index p = state.B.rows(), K = state.B.cols();
  switch (spec.family) {
    case Family::NaiveNG: {
      // per-(j,k) giG locals, then the same tau / c walks with per-response
      // sufficient statistics
      const double rho = state.c - 0.5;
      for (Eigen::Index j = 0; j < p; ++j) {
        for (Eigen::Index k = 0; k < K; ++k) {
          const double chi =
              state.B(j, k) * state.B(j, k) / (state.tau[k] * state.tau[k]);
          state.lambda_jk(j, k) =
              sample_gig({rho, 2.0 * state.c, floored_chi(chi, rho)}, rng);
        }
      }
      Eigen::VectorXd ssq(K);
      for (Eigen::Index k = 0; k < K; ++k) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < p; ++j) {
          s += state.B(j, k) * state.B(j, k) / state.lambda_jk(j, k);
        }
        ssq[k] = s;
      }
      ng_tau_walk(state.tau, ssq, static_cast<double>(p), spec.hyper.gamma_hc,
                  state.mh.tau, rng);
      ng_c_walk(state.c, static_cast<double>(p * K), state.lambda_jk.sum(),
                state.lambda_jk.array().log().sum(), spec.hyper.lambda_c,
                state.mh.c, rng);
      break;
    }
    case Family::NaiveHS: {
      for (Eigen::Index j = 0; j < p; ++j) {
        for (Eigen::Index k = 0; k < K; ++k) {
          const double s = state.B(j, k) * state.B(j, k) /
                           (2.0 * state.tau[k] * state.tau[k]);
          state.lambda_jk(j, k) =
              sample_inverse_gamma(1.0, 1.0 / state.nu_jk(j, k) + s, rng);
        }
      }
      for (Eigen::Index k = 0; k < K; ++k) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < p; ++j) {
          s += state.B(j, k) * state.B(j, k) / (2.0 * state.lambda_jk(j, k));
        }
        const double tau2 = sample_inverse_gamma(
            0.5 * (static_cast<double>(p) + 1.0), 1.0 / state.omega[k] + s,
            rng);
        state.tau[k] = std::sqrt(tau2);
      }
      for (Eigen::Index j = 0; j < p; ++j) {
        for (Eigen::Index k = 0; k < K; ++k) {
          state.nu_jk(j, k) =
              sample_inverse_gamma(1.0, 1.0 + 1.0 / state.lambda_jk(j, k), rng);
        }
      }
      for (Eigen::Index k = 0; k < K; ++k) {
        state.omega[k] = sample_inverse_gamma(
            1.0, 1.0 + 1.0 / (state.tau[k] * state.tau[k]), rng);
      }
      break;
    }
    case Family::NaiveDL: {
      const double a = spec.hyper.dl_a;
      const double rho = static_cast<double>(p) * a - static_cast<double>(p);
      for (Eigen::Index k = 0; k < K; ++k) {
        double chi = 0.0;
        for (Eigen::Index j = 0; j < p; ++j) {
          chi += 2.0 * std::abs(state.B(j, k)) / state.phi_jk(j, k);
        }
        state.tau[k] = sample_gig({rho, 1.0, floored_chi(chi, rho)}, rng);
      }
      for (Eigen::Index k = 0; k < K; ++k) {
        Eigen::VectorXd r(p);
        for (Eigen::Index j = 0; j < p; ++j) {
          r[j] = std::abs(state.B(j, k)) / state.tau[k];
        }
        Eigen::VectorXd col = state.phi_jk.col(k);
        Eigen::VectorXd next = col;
        dl_phi_walk(col, r, a, 1.0, state.mh.zeta[static_cast<std::size_t>(k)],
                    rng, &next);
        state.phi_jk.col(k) = next;
      }
      update_eta_modl(state, rng);
      break;
    }
    default:
      throw std::invalid_argument(
          "update_naive_locals requires a naive family");
  }
}

void gibbs_sweep(ChainState& state, const Dataset& data,
                 const BUpdateWorkspace& ws, const ModelSpec& spec,
                 RngStream& rng) {
  update_B(state, data, ws, spec, rng);
  switch (spec.family) {
    case Family::MONG:
      update_lambda_mong(state, rng);
      update_tau_mong(state, spec.hyper, rng);
      update_c_mong(state, spec.hyper, rng);
      break;
    case Family::MOHS:
      update_mohs_blocks(state, rng);
      break;
    case Family::MODL:
      update_tau_modl(state, spec.hyper, rng);
      update_phi_modl(state, spec.hyper, rng);
      update_eta_modl(state, rng);
      break;
    case Family::NaiveNG:
    case Family::NaiveHS:
    case Family::NaiveDL:
      update_naive_locals(state, spec, rng);
      break;
    case Family::NoShrinkage:
      break;
  }
  update_psi(state, data, spec.hyper, rng);
}

Eigen::VectorXd reporting_locals(const ChainState& state, Family family) {
  switch (family) {
    case Family::MONG:
      return state.lambda;
    case Family::MOHS:
      return state.lambda.cwiseSqrt();
    case Family::MODL:
      return state.phi;
    default:
      return Eigen::VectorXd();
  }
}

PosteriorSamples run_chain(const Dataset& data, const ModelSpec& spec,
                           const RunOptions& opts) {
  data.validate();
  if (opts.burn_in >= opts.iterations || opts.burn_in < 0) {
    throw std::invalid_argument("burn_in must be < iterations");
  }
  if (opts.thin < 1) throw std::invalid_argument("thin must be >= 1");
  if (!data.standardized && !opts.allow_raw) {
    throw std::invalid_argument(
        "data is not standardized; pass allow_raw to fit anyway");
  }

  const Eigen::Index p = data.p(), K = data.K();
  BUpdateWorkspace ws(data);
  ChainState state = init_chain_state(spec, p, K);
  RngStream root(opts.seed);
  RngStream rng = root.substream(1);

  PosteriorSamples out;
  out.family = spec.family;
  out.p = p;
  out.K = K;
  out.iterations = opts.iterations;
  out.burn_in = opts.burn_in;
  out.thin = opts.thin;
  out.seed = opts.seed;
  out.B_mean = Eigen::MatrixXd::Zero(p, K);
  out.Psi_mean = Eigen::MatrixXd::Zero(K, K);
  const bool shared = family_has_shared_locals(spec.family);
  if (shared) out.local_mean = Eigen::VectorXd::Zero(p);
  if (spec.family != Family::NoShrinkage)
    out.tau_mean = Eigen::VectorXd::Zero(K);

  // acceptance tallies restricted to post-burn-in attempts
  std::vector<double> tau_acc0(state.mh.tau.size(), 0.0);
  std::vector<long> tau_att0(state.mh.tau.size(), 0);
  double c_acc0 = 0.0;
  long c_att0 = 0;
  std::vector<double> zeta_acc0(state.mh.zeta.size(), 0.0);
  std::vector<long> zeta_att0(state.mh.zeta.size(), 0);

  for (long it = 0; it < opts.iterations; ++it) {
    gibbs_sweep(state, data, ws, spec, rng);
    if ((it & 0xff) == 0) state.check_finite(it);

    if (it == opts.burn_in - 1) {
      for (std::size_t i = 0; i < state.mh.tau.size(); ++i) {
        tau_acc0[i] = state.mh.tau[i].accept_sum;
        tau_att0[i] = state.mh.tau[i].attempts;
      }
      c_acc0 = state.mh.c.accept_sum;
      c_att0 = state.mh.c.attempts;
      for (std::size_t i = 0; i < state.mh.zeta.size(); ++i) {
        zeta_acc0[i] = state.mh.zeta[i].accept_sum;
        zeta_att0[i] = state.mh.zeta[i].attempts;
      }
    }
    if (it < opts.burn_in) continue;

    state.check_finite(it);
    out.B_mean += state.B;
    out.Psi_mean += state.Psi;
    if (shared) out.local_mean += reporting_locals(state, spec.family);
    if (out.tau_mean.size()) out.tau_mean += state.tau;
    if (spec.family == Family::MONG || spec.family == Family::NaiveNG)
      out.c_mean += state.c;
    out.mean_deviance += -2.0 * log_likelihood(data, state.B, state.Psi);
    ++out.accum_count;

    if ((it - opts.burn_in + 1) % opts.thin == 0) {
      out.B_draws.push_back(state.B);
      out.Psi_draws.push_back(state.Psi);
      if (shared) out.local_draws.push_back(reporting_locals(state, spec.family));
      if (state.tau.size()) out.tau_draws.push_back(state.tau);
      if (spec.family == Family::MONG || spec.family == Family::NaiveNG)
        out.c_draws.push_back(state.c);
    }
  }

  const double cnt = static_cast<double>(out.accum_count);
  out.B_mean /= cnt;
  out.Psi_mean /= cnt;
  if (shared) out.local_mean /= cnt;
  if (out.tau_mean.size()) out.tau_mean /= cnt;
  out.c_mean /= cnt;
  out.mean_deviance /= cnt;

  for (std::size_t i = 0; i < state.mh.tau.size(); ++i) {
    const long att = state.mh.tau[i].attempts - tau_att0[i];
    out.tau_accept.push_back(
        att > 0 ? (state.mh.tau[i].accept_sum - tau_acc0[i]) / att : 0.0);
  }
  if (spec.family == Family::MONG || spec.family == Family::NaiveNG) {
    const long att = state.mh.c.attempts - c_att0;
    out.c_accept = att > 0 ? (state.mh.c.accept_sum - c_acc0) / att : 0.0;
  }
  for (std::size_t i = 0; i < state.mh.zeta.size(); ++i) {
    const long att = state.mh.zeta[i].attempts - zeta_att0[i];
    out.phi_accept.push_back(
        att > 0 ? (state.mh.zeta[i].accept_sum - zeta_acc0[i]) / att : 0.0);
  }
  return out;
}

}  // namespace moshrink
