#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "moshrink/diagnostics.hpp"
#include "moshrink/model.hpp"
#include "moshrink/samplers.hpp"
#include "moshrink/simulation.hpp"

namespace py = pybind11;
using namespace moshrink;

namespace {

Hyperparams make_hyper(double gamma_hc, double lambda_c, double dl_a,
                       double nu0, double noshrink_var) {
  Hyperparams h;
  h.gamma_hc = gamma_hc;
  h.lambda_c = lambda_c;
  h.dl_a = dl_a;
  h.nu0 = nu0;
  h.noshrink_var = noshrink_var;
  return h;
}

py::dict fit(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
             const std::string& family, long iterations, long burn_in,
             long thin, std::uint64_t seed, bool standardize_data,
             double gamma_hc, double lambda_c, double dl_a, double nu0,
             double noshrink_var) {
  Dataset raw;
  raw.X = X;
  raw.Y = Y;
  raw.validate();
  Dataset d = standardize_data ? standardize(raw) : raw;

  ModelSpec spec;
  spec.family = family_from_name(family);
  spec.hyper = make_hyper(gamma_hc, lambda_c, dl_a, nu0, noshrink_var);
  RunOptions opts;
  opts.iterations = iterations;
  opts.burn_in = burn_in;
  opts.thin = thin;
  opts.seed = seed;
  opts.allow_raw = !standardize_data;
  PosteriorSamples s = run_chain(d, spec, opts);

  py::dict out;
  out["family"] = family_name(spec.family);
  out["B_mean"] = s.B_mean;
  out["Psi_mean"] = s.Psi_mean;
  out["local_mean"] = s.local_mean;
  out["tau_mean"] = s.tau_mean;
  out["c_mean"] = s.c_mean;
  out["mean_deviance"] = s.mean_deviance;
  out["retained"] = s.retained();
  out["B_draws"] = s.B_draws;
  out["tau_draws"] = s.tau_draws;
  out["local_draws"] = s.local_draws;
  out["tau_accept"] = s.tau_accept;
  out["c_accept"] = s.c_accept;
  out["phi_accept"] = s.phi_accept;
  out["standardized"] = d.standardized;
  if (d.standardized) {
    out["x_mean"] = d.x_mean;
    out["x_sd"] = d.x_sd;
    out["y_mean"] = d.y_mean;
    out["y_sd"] = d.y_sd;
  }

  DicResult r = dic(s, d);
  out["dic"] = r.dic;
  out["p_d"] = r.p_d;
  out["d_at_mean"] = r.d_at_mean;

  ModelSpec rank_spec = spec;
  if (family_has_shared_locals(spec.family)) {
    py::list ranking;
    for (const auto& pr : rank_predictors(s, rank_spec)) {
      ranking.append(py::make_tuple(pr.predictor, pr.local_mean, pr.selected));
    }
    out["ranking"] = ranking;
  }
  return out;
}

py::tuple simulate(const std::string& scenario, long n, long p, long K,
                   double psi_offdiag, std::uint64_t seed) {
  Scenario sc;
  if (scenario == "b0" || scenario == "B0") {
    sc = Scenario::B0;
  } else if (scenario == "b1" || scenario == "B1") {
    sc = Scenario::B1;
  } else {
    throw std::invalid_argument("scenario must be b0 or b1");
  }
  const TruthMatrix t = make_truth(sc, p, K);
  RngStream rng(seed);
  Eigen::MatrixXd X = make_design(n, p, rng);
  Eigen::MatrixXd Y = gen_responses(X, t, psi_offdiag, rng);
  return py::make_tuple(X, Y, t.B_true);
}

}  // namespace

PYBIND11_MODULE(_moshrink, m) {
  m.doc() = "Bayesian multi-outcome regression with shared global-local "
            "shrinkage priors";

  m.def("fit", &fit, py::arg("X"), py::arg("Y"), py::arg("family") = "mong",
        py::arg("iterations") = 9000, py::arg("burn_in") = 1000,
        py::arg("thin") = 10, py::arg("seed") = 1,
        py::arg("standardize") = true, py::arg("gamma_hc") = 0.5,
        py::arg("lambda_c") = 0.5, py::arg("dl_a") = 0.5, py::arg("nu0") = 0.0,
        py::arg("noshrink_var") = 10.0,
        "Run the Gibbs sampler; returns posterior summaries, retained draws, "
        "acceptance rates, DIC, and the predictor ranking.");

  m.def("predict", &predict, py::arg("B"), py::arg("X_new"),
        "Posterior-mean predictions X_new @ B.");

  m.def(
      "predict_destandardized",
      [](const Eigen::MatrixXd& B, const Eigen::MatrixXd& X_new_raw,
         const Eigen::VectorXd& x_mean, const Eigen::VectorXd& x_sd,
         const Eigen::VectorXd& y_mean, const Eigen::VectorXd& y_sd) {
        Dataset meta;
        meta.standardized = true;
        meta.x_mean = x_mean;
        meta.x_sd = x_sd;
        meta.y_mean = y_mean;
        meta.y_sd = y_sd;
        return predict_destandardized(B, X_new_raw, meta);
      },
      py::arg("B"), py::arg("X_new_raw"), py::arg("x_mean"), py::arg("x_sd"),
      py::arg("y_mean"), py::arg("y_sd"),
      "Predictions on the raw response scale for a standardized fit.");

  m.def(
      "log_likelihood",
      [](const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
         const Eigen::MatrixXd& B, const Eigen::MatrixXd& Psi) {
        Dataset d;
        d.X = X;
        d.Y = Y;
        return log_likelihood(d, B, Psi);
      },
      py::arg("X"), py::arg("Y"), py::arg("B"), py::arg("Psi"),
      "Matrix-normal regression log likelihood.");

  m.def("simulate", &simulate, py::arg("scenario") = "b0", py::arg("n") = 500,
        py::arg("p") = 20, py::arg("K") = 10, py::arg("psi_offdiag") = 0.5,
        py::arg("seed") = 1,
        "Generate (X, Y, B_true) for a canonical sparse scenario.");

  m.def(
      "sse_partitioned",
      [](const Eigen::MatrixXd& B_hat, const Eigen::MatrixXd& B_true) {
        SsePartition s = sse_partitioned(B_hat, B_true);
        return py::make_tuple(s.all, s.nonzero, s.zero);
      },
      py::arg("B_hat"), py::arg("B_true"),
      "Squared estimation error split as (all, nonzero, zero).");

  m.def(
      "mspe",
      [](const Eigen::MatrixXd& B_hat, const Eigen::MatrixXd& X_test,
         const Eigen::MatrixXd& Y_test) {
        Dataset t;
        t.X = X_test;
        t.Y = Y_test;
        return mspe(B_hat, t);
      },
      py::arg("B_hat"), py::arg("X_test"), py::arg("Y_test"),
      "Mean squared prediction error on a test set.");

  m.attr("families") = py::make_tuple("mong", "mohs", "modl", "naive-ng",
                                      "naive-hs", "naive-dl", "none");
}
