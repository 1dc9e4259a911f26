#pragma once

// Test-only oracles: quadrature-normalized CDFs from raw density kernels,
// Kolmogorov-Smirnov distances, and simple moment helpers. Nothing here may
// call into the samplers under test.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

// CDF of a positive-support density given its log-kernel, computed by Simpson
// quadrature in log space (kills power singularities at zero).
class PositiveDensityCdf {
 public:
  PositiveDensityCdf(std::function<double(double)> log_kernel,
                     double scale_hint = 1.0, int nodes = 16001)
      : logk_(std::move(log_kernel)) {
    // expand bounds in w = log x until the integrand is negligible
    double w_lo = std::log(scale_hint) - 5.0;
    double w_hi = std::log(scale_hint) + 5.0;
    const double peak = peak_logint_(w_lo, w_hi);
    while (logint_(w_lo) > peak - 60.0 && w_lo > -700.0) w_lo -= 5.0;
    while (logint_(w_hi) > peak - 60.0 && w_hi < 700.0) w_hi += 5.0;

    if (nodes % 2 == 0) ++nodes;
    const double h = (w_hi - w_lo) / (nodes - 1);
    grid_.resize(nodes);
    cum_.assign(nodes, 0.0);
    std::vector<double> val(nodes);
    const double shift = peak_logint_(w_lo, w_hi);
    for (int i = 0; i < nodes; ++i) {
      grid_[i] = w_lo + h * i;
      val[i] = std::exp(logint_(grid_[i]) - shift);
    }
    // cumulative Simpson over pairs of intervals; odd nodes by trapezoid
    for (int i = 2; i < nodes; i += 2) {
      cum_[i] = cum_[i - 2] + h / 3.0 * (val[i - 2] + 4.0 * val[i - 1] + val[i]);
    }
    for (int i = 1; i < nodes; i += 2) {
      cum_[i] = cum_[i - 1] + h / 2.0 * (val[i - 1] + val[i]);
    }
    const double total = cum_[nodes - 1];
    if (!(total > 0.0) || !std::isfinite(total)) {
      throw std::runtime_error("quadrature failed to normalize kernel");
    }
    for (auto& c : cum_) c /= total;
    norm_log_ = std::log(total) + shift;
  }

  double cdf(double x) const {
    if (!(x > 0.0)) return 0.0;
    const double w = std::log(x);
    if (w <= grid_.front()) return 0.0;
    if (w >= grid_.back()) return 1.0;
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), w);
    const std::size_t i = static_cast<std::size_t>(it - grid_.begin());
    const double t = (w - grid_[i - 1]) / (grid_[i] - grid_[i - 1]);
    return cum_[i - 1] + t * (cum_[i] - cum_[i - 1]);
  }

  // E[g(X)] by Simpson reusing the stored grid
  double expect(const std::function<double(double)>& g) const {
    double acc = 0.0;
    const double h = grid_[1] - grid_[0];
    const int nodes = static_cast<int>(grid_.size());
    for (int i = 2; i < nodes; i += 2) {
      auto f = [&](int idx) {
        const double x = std::exp(grid_[idx]);
        return g(x) * std::exp(logint_(grid_[idx]) - norm_log_);
      };
      acc += h / 3.0 * (f(i - 2) + 4.0 * f(i - 1) + f(i));
    }
    return acc;
  }

  double mean() const {
    return expect([](double x) { return x; });
  }

 private:
  double logint_(double w) const {
    const double lk = logk_(std::exp(w));
    return std::isfinite(lk) ? lk + w : -1e308;  // kernel(x) * x  (dw measure)
  }
  double peak_logint_(double w_lo, double w_hi) const {
    double best = -1e308;
    for (int i = 0; i <= 200; ++i) {
      best = std::max(best, logint_(w_lo + (w_hi - w_lo) * i / 200.0));
    }
    return best;
  }

  std::function<double(double)> logk_;
  std::vector<double> grid_;  // in w = log x
  std::vector<double> cum_;
  double norm_log_ = 0.0;
};

inline double ks_statistic(std::vector<double> draws,
                           const std::function<double(double)>& cdf) {
  std::sort(draws.begin(), draws.end());
  const double n = static_cast<double>(draws.size());
  double d = 0.0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const double F = cdf(draws[i]);
    d = std::max(d, std::abs(F - static_cast<double>(i) / n));
    d = std::max(d, std::abs(F - static_cast<double>(i + 1) / n));
  }
  return d;
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double variance(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// batch-means standard error of the mean for autocorrelated sequences
inline double batch_se(const std::vector<double>& v, int batches = 50) {
  const std::size_t bs = v.size() / static_cast<std::size_t>(batches);
  std::vector<double> bm;
  for (int b = 0; b < batches; ++b) {
    double s = 0.0;
    for (std::size_t i = 0; i < bs; ++i) s += v[b * bs + i];
    bm.push_back(s / static_cast<double>(bs));
  }
  return std::sqrt(variance(bm) / static_cast<double>(batches));
}

// closed-form CDFs used as direct oracles
inline double cdf_half_cauchy(double x, double scale) {
  return x <= 0.0 ? 0.0 : 2.0 / M_PI * std::atan(x / scale);
}

inline double cdf_laplace(double x, double scale) {
  return x < 0.0 ? 0.5 * std::exp(x / scale)
                 : 1.0 - 0.5 * std::exp(-x / scale);
}

}  // namespace oracle
