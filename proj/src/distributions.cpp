#include "moshrink/distributions.hpp"

#include <cmath>

namespace moshrink {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::invalid_argument(std::string(name) + " must be positive");
  }
}

}  // namespace

double sample_normal(RngStream& rng) {
  // Box-Muller; the second variate of the pair is discarded so the draw
  // count per call is fixed (needed for replayable streams).
  double u1 = rng.uniform();
  double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

double sample_exponential(double rate, RngStream& rng) {
  require_positive(rate, "exponential rate");
  return -std::log(rng.uniform()) / rate;
}

double sample_gamma(double shape, double scale, RngStream& rng) {
  require_positive(shape, "gamma shape");
  require_positive(scale, "gamma scale");
  // Marsaglia-Tsang squeeze; shape < 1 boosted through G(a) = G(a+1) U^{1/a}.
  double boost = 1.0;
  double a = shape;
  if (a < 1.0) {
    boost = std::pow(rng.uniform(), 1.0 / a);
    a += 1.0;
  }
  const double d = a - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = sample_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return boost * d * v * scale;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
      return boost * d * v * scale;
  }
}

double sample_half_cauchy(double scale, RngStream& rng) {
  require_positive(scale, "half-Cauchy scale");
  return scale * std::abs(std::tan(kPi * (rng.uniform() - 0.5)));
}

double sample_inverse_gamma(double shape, double scale, RngStream& rng) {
  require_positive(shape, "inverse-gamma shape");
  require_positive(scale, "inverse-gamma scale");
  return 1.0 / sample_gamma(shape, 1.0 / scale, rng);
}

double sample_inverse_gaussian(double mu, double theta, RngStream& rng) {
  require_positive(mu, "inverse-Gaussian mu");
  require_positive(theta, "inverse-Gaussian theta");
  // Michael, Schucany & Haas transformation with rejection.
  const double z = sample_normal(rng);
  const double y = z * z;
  const double x = mu + 0.5 * mu * mu * y / theta -
                   0.5 * (mu / theta) *
                       std::sqrt(4.0 * mu * theta * y + mu * mu * y * y);
  if (rng.uniform() <= mu / (mu + x)) return x;
  return mu * mu / x;
}

namespace {

// Two-parameter giG helpers: kernel y^{rho-1} exp(-omega/2 (y + 1/y)), rho >= 0.

double gig_mode(double rho, double omega) {
  if (rho >= 1.0) {
    return (std::sqrt((rho - 1.0) * (rho - 1.0) + omega * omega) + (rho - 1.0)) /
           omega;
  }
  return omega /
         (std::sqrt((1.0 - rho) * (1.0 - rho) + omega * omega) + (1.0 - rho));
}

double gig_logkernel(double x, double rho, double omega) {
  return (rho - 1.0) * std::log(x) - 0.5 * omega * (x + 1.0 / x);
}

// Ratio-of-uniforms without mode shift; bounded kernel regimes.
double gig_rou_noshift(double rho, double omega, RngStream& rng) {
  const double xm = gig_mode(rho, omega);
  const double lfm = gig_logkernel(xm, rho, omega);
  const double ym =
      ((rho + 1.0) + std::sqrt((rho + 1.0) * (rho + 1.0) + omega * omega)) /
      omega;
  const double um = std::exp(0.5 * (gig_logkernel(ym, rho, omega) - lfm)) * ym;
  for (;;) {
    const double u = um * rng.uniform();
    const double v = rng.uniform();
    const double x = u / v;
    if (2.0 * std::log(v) <= gig_logkernel(x, rho, omega) - lfm) return x;
  }
}

// Ratio-of-uniforms with shift by the mode; heavy-parameter regimes.
double gig_rou_shift(double rho, double omega, RngStream& rng) {
  const double xm = gig_mode(rho, omega);
  const double lfm = gig_logkernel(xm, rho, omega);

  // Extrema of (x-xm)^2 g(x): roots of x^3 + a x^2 + b x + xm.
  const double a = -(2.0 * (rho + 1.0) / omega + xm);
  const double b = 2.0 * (rho - 1.0) * xm / omega - 1.0;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + xm;
  const double fi = std::acos(-q / (2.0 * std::sqrt(-p * p * p / 27.0)));
  const double fak = 2.0 * std::sqrt(-p / 3.0);
  const double y1 = fak * std::cos(fi / 3.0) - a / 3.0;
  const double y2 = fak * std::cos(fi / 3.0 + 4.0 * kPi / 3.0) - a / 3.0;

  const double uplus =
      (y1 - xm) * std::exp(0.5 * (gig_logkernel(y1, rho, omega) - lfm));
  const double uminus =
      (y2 - xm) * std::exp(0.5 * (gig_logkernel(y2, rho, omega) - lfm));

  for (;;) {
    const double u = uminus + rng.uniform() * (uplus - uminus);
    const double v = rng.uniform();
    const double x = u / v + xm;
    if (x > 0.0 &&
        2.0 * std::log(v) <= gig_logkernel(x, rho, omega) - lfm) {
      return x;
    }
  }
}

// Hormann-Leydold three-part hat for 0 <= rho < 1, 0 < omega <= 1, where the
// kernel is unbounded at 0.
double gig_small(double rho, double omega, RngStream& rng) {
  const double xm = gig_mode(rho, omega);
  const double x0 = omega / (1.0 - rho);

  // hat pieces: constant on (0, x0], power on (x0, 2/omega], exponential tail
  double A0, A1, A2, k0, k1, k2;
  k0 = std::exp(gig_logkernel(xm, rho, omega));
  A0 = k0 * x0;
  if (x0 >= 2.0 / omega) {
    k1 = 0.0;
    A1 = 0.0;
    k2 = std::pow(x0, rho - 1.0);
    A2 = k2 * 2.0 * std::exp(-omega * x0 / 2.0) / omega;
  } else {
    k1 = std::exp(-omega);
    A1 = (rho == 0.0)
             ? k1 * std::log(2.0 / (omega * omega))
             : k1 / rho * (std::pow(2.0 / omega, rho) - std::pow(x0, rho));
    k2 = std::pow(2.0 / omega, rho - 1.0);
    A2 = k2 * 2.0 * std::exp(-1.0) / omega;
  }
  const double Atot = A0 + A1 + A2;

  for (;;) {
    double v = Atot * rng.uniform();
    double x, hx;
    if (v <= A0) {
      x = x0 * v / A0;
      hx = k0;
    } else if ((v -= A0) <= A1) {
      if (rho == 0.0) {
        x = omega * std::exp(std::exp(omega) * v);
        hx = k1 / x;
      } else {
        x = std::pow(std::pow(x0, rho) + rho / k1 * v, 1.0 / rho);
        hx = k1 * std::pow(x, rho - 1.0);
      }
    } else {
      v -= A1;
      const double left = std::max(x0, 2.0 / omega);
      x = -2.0 / omega *
          std::log(std::exp(-omega / 2.0 * left) - omega / (2.0 * k2) * v);
      hx = k2 * std::exp(-omega / 2.0 * x);
    }
    if (x <= 0.0 || !std::isfinite(x)) continue;
    const double u = rng.uniform() * hx;
    if (std::log(u) <= gig_logkernel(x, rho, omega)) return x;
  }
}

double gig_two_param(double rho, double omega, RngStream& rng) {
  if (rho > 2.0 || omega > 3.0) return gig_rou_shift(rho, omega, rng);
  if (rho >= 1.0 - 2.25 * omega * omega || omega > 0.2)
    return gig_rou_noshift(rho, omega, rng);
  return gig_small(rho, omega, rng);
}

}  // namespace

double sample_gig(const GigParams& params, RngStream& rng) {
  if (!params.valid()) {
    throw std::invalid_argument("invalid giG parameter combination");
  }
  const double rho = params.rho;
  // Degenerate boundaries reduce to exact gamma / inverse-gamma draws.
  if (params.chi == 0.0) {
    return sample_gamma(rho, 2.0 / params.kappa, rng);
  }
  if (params.kappa == 0.0) {
    return sample_inverse_gamma(-rho, params.chi / 2.0, rng);
  }
  // Reciprocal identity maps rho < 0 onto the nonnegative-power case.
  if (rho < 0.0) {
    return 1.0 / sample_gig({-rho, params.chi, params.kappa}, rng);
  }
  const double alpha = std::sqrt(params.chi / params.kappa);
  const double omega = std::sqrt(params.kappa * params.chi);
  return alpha * gig_two_param(rho, omega, rng);
}

Eigen::VectorXd sample_dirichlet(const Eigen::VectorXd& alpha, RngStream& rng) {
  const Eigen::Index m = alpha.size();
  if (m == 0) throw std::invalid_argument("empty Dirichlet concentration");
  Eigen::VectorXd g(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    require_positive(alpha[i], "Dirichlet concentration");
    g[i] = sample_gamma(alpha[i], 1.0, rng);
  }
  return g / g.sum();
}

Eigen::VectorXd sample_mvn(const Eigen::VectorXd& mean,
                           const Eigen::MatrixXd& covariance, RngStream& rng) {
  const Eigen::Index m = mean.size();
  if (covariance.rows() != m || covariance.cols() != m) {
    throw std::invalid_argument("covariance dimension mismatch");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(covariance);
  if (llt.info() != Eigen::Success) {
    // recover the failing pivot by running the factorization manually
    Eigen::LDLT<Eigen::MatrixXd> ldlt(covariance);
    int pivot = 0;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (ldlt.vectorD()[i] <= 0.0) {
        pivot = static_cast<int>(i);
        break;
      }
    }
    throw numeric_error("covariance is not positive definite", pivot);
  }
  Eigen::VectorXd z(m);
  for (Eigen::Index i = 0; i < m; ++i) z[i] = sample_normal(rng);
  return mean + llt.matrixL() * z;
}

Eigen::MatrixXd sample_inv_wishart(double df, const Eigen::MatrixXd& scale,
                                   RngStream& rng) {
  const Eigen::Index k = scale.rows();
  if (scale.cols() != k) throw std::invalid_argument("scale must be square");
  if (!(df > static_cast<double>(k) - 1.0)) {
    throw std::invalid_argument("inverse-Wishart df must exceed K-1");
  }
  Eigen::LLT<Eigen::MatrixXd> llt_scale(scale);
  if (llt_scale.info() != Eigen::Success) {
    throw std::invalid_argument("inverse-Wishart scale is not SPD");
  }

  // Bartlett draw of W ~ Wishart(df, scale^{-1}); the output is W^{-1}.
  // chol(scale^{-1}) = L^{-T} with L = chol(scale).
  Eigen::MatrixXd Linv_t = Eigen::MatrixXd(llt_scale.matrixL())
                               .triangularView<Eigen::Lower>()
                               .solve(Eigen::MatrixXd::Identity(k, k))
                               .transpose();

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    A(i, i) = std::sqrt(sample_gamma(0.5 * (df - static_cast<double>(i)), 2.0,
                                     rng));
    for (Eigen::Index j = 0; j < i; ++j) A(i, j) = sample_normal(rng);
  }
  Eigen::MatrixXd F = Linv_t * A;
  Eigen::MatrixXd W = F * F.transpose();
  Eigen::LLT<Eigen::MatrixXd> lltW(W);
  Eigen::MatrixXd out = lltW.solve(Eigen::MatrixXd::Identity(k, k));
  return 0.5 * (out + out.transpose());
}

}  // namespace moshrink
