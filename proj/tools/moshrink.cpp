// moshrink: multi-outcome shrinkage regression CLI.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <json.hpp>
#include <string>
#include <vector>

#include "moshrink/csv.hpp"
#include "moshrink/diagnostics.hpp"
#include "moshrink/draws_io.hpp"
#include "moshrink/model.hpp"
#include "moshrink/samplers.hpp"
#include "moshrink/simulation.hpp"

using json = nlohmann::ordered_json;
using namespace moshrink;

namespace {

std::string version_string() { return MOSHRINK_VERSION; }

std::vector<std::string> stamp(std::uint64_t seed) {
  return {"moshrink " + version_string() + " seed=" + std::to_string(seed)};
}

json matrix_to_json(const Eigen::MatrixXd& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Eigen::MatrixXd matrix_from_json(const json& rows) {
  const auto r = rows.size();
  const auto c = r > 0 ? rows[0].size() : 0;
  Eigen::MatrixXd M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j].get<double>();
  return M;
}

Eigen::VectorXd vector_from_json(const json& arr) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  return v;
}

// Shared flags for the data-loading subcommands.
struct DataArgs {
  std::string x_path, y_path, data_path;
  int y_split = -1;  // with --data: first y_split columns are X, rest are Y
  bool no_header = false;
};

void add_data_options(CLI::App* cmd, DataArgs& a) {
  auto* x = cmd->add_option("--x", a.x_path, "Predictor CSV (n x p)");
  auto* y = cmd->add_option("--y", a.y_path, "Response CSV (n x K)");
  auto* d = cmd->add_option(
      "--data", a.data_path,
      "Single CSV holding X then Y; requires --y-split");
  cmd->add_option("--y-split", a.y_split,
                  "Column index where Y starts in --data");
  cmd->add_flag("--no-header", a.no_header, "CSV files have no header row");
  d->excludes(x)->excludes(y);
}

Dataset load_dataset(const DataArgs& a) {
  Dataset out;
  const bool header = !a.no_header;
  if (!a.data_path.empty()) {
    if (a.y_split < 1) {
      throw std::invalid_argument("--data requires --y-split >= 1");
    }
    CsvTable t = read_csv(a.data_path, header);
    if (a.y_split >= t.values.cols()) {
      throw std::invalid_argument("--y-split leaves no response columns");
    }
    out.X = t.values.leftCols(a.y_split);
    out.Y = t.values.rightCols(t.values.cols() - a.y_split);
    if (!t.column_names.empty()) {
      out.x_names.assign(t.column_names.begin(),
                         t.column_names.begin() + a.y_split);
      out.y_names.assign(t.column_names.begin() + a.y_split,
                         t.column_names.end());
    }
  } else {
    if (a.x_path.empty() || a.y_path.empty()) {
      throw std::invalid_argument("need --x and --y (or --data with --y-split)");
    }
    CsvTable tx = read_csv(a.x_path, header);
    CsvTable ty = read_csv(a.y_path, header);
    out.X = tx.values;
    out.Y = ty.values;
    out.x_names = tx.column_names;
    out.y_names = ty.column_names;
  }
  out.validate();
  return out;
}

struct FitArgs {
  DataArgs data;
  std::string family = "mong";
  std::string out_prefix;
  long iterations = 9000, burn_in = 1000, thin = 10;
  std::uint64_t seed = 1;
  bool no_standardize = false;
  bool export_csv = false;
  Hyperparams hyper;
};

void add_fit_options(CLI::App* cmd, FitArgs& a) {
  add_data_options(cmd, a.data);
  cmd->add_option("--family", a.family,
                  "mong|mohs|modl|naive-ng|naive-hs|naive-dl|none");
  cmd->add_option("--out-prefix", a.out_prefix, "Output file prefix")
      ->required();
  cmd->add_option("--iterations", a.iterations, "Total MCMC iterations")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--burn-in", a.burn_in, "Burn-in iterations")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--thin", a.thin, "Thinning interval")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", a.seed, "RNG seed");
  cmd->add_flag("--no-standardize", a.no_standardize,
                "Fit on raw columns (default standardizes X and Y)");
  cmd->add_flag("--export-csv", a.export_csv,
                "Also write retained draws as CSV");
  cmd->add_option("--gamma-hc", a.hyper.gamma_hc,
                  "Half-Cauchy scale on tau (NG families)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--lambda-c", a.hyper.lambda_c, "Exponential rate on c")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--dl-a", a.hyper.dl_a, "Dirichlet concentration a")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--nu0", a.hyper.nu0,
                  "Inverse-Wishart df (default K+2)");
  cmd->add_option("--noshrink-var", a.hyper.noshrink_var,
                  "Prior variance for family none")
      ->check(CLI::PositiveNumber);
}

int cmd_fit(const FitArgs& a) {
  Dataset raw = load_dataset(a.data);
  ModelSpec spec;
  spec.family = family_from_name(a.family);
  spec.hyper = a.hyper;
  Dataset d = a.no_standardize ? raw : standardize(raw);

  RunOptions opts;
  opts.iterations = a.iterations;
  opts.burn_in = a.burn_in;
  opts.thin = a.thin;
  opts.seed = a.seed;
  opts.allow_raw = a.no_standardize;
  PosteriorSamples s = run_chain(d, spec, opts);

  save_draws(a.out_prefix + ".draws.bin", s);
  if (a.export_csv) export_draws_csv(a.out_prefix + ".draws.csv", s);
  write_csv(a.out_prefix + ".B_mean.csv", s.B_mean, d.y_names, stamp(a.seed));

  json out;
  out["tool"] = "moshrink";
  out["version"] = version_string();
  out["seed"] = a.seed;
  out["family"] = family_name(spec.family);
  out["n"] = d.n();
  out["p"] = d.p();
  out["K"] = d.K();
  out["iterations"] = a.iterations;
  out["burn_in"] = a.burn_in;
  out["thin"] = a.thin;
  out["retained"] = s.retained();
  out["standardized"] = d.standardized;
  if (d.standardized) {
    out["x_mean"] = vector_to_json(d.x_mean);
    out["x_sd"] = vector_to_json(d.x_sd);
    out["y_mean"] = vector_to_json(d.y_mean);
    out["y_sd"] = vector_to_json(d.y_sd);
  }
  out["x_names"] = d.x_names;
  out["y_names"] = d.y_names;
  out["hyper"] = {{"gamma_hc", a.hyper.gamma_hc},
                  {"lambda_c", a.hyper.lambda_c},
                  {"dl_a", a.hyper.dl_a},
                  {"nu0", a.hyper.resolve_nu0(d.K())},
                  {"noshrink_var", a.hyper.noshrink_var}};
  out["B_mean"] = matrix_to_json(s.B_mean);
  out["Psi_mean"] = matrix_to_json(s.Psi_mean);
  out["local_mean"] = vector_to_json(s.local_mean);
  out["tau_mean"] = vector_to_json(s.tau_mean);
  if (spec.family == Family::MONG || spec.family == Family::NaiveNG) {
    out["c_mean"] = s.c_mean;
  }
  out["mean_deviance"] = s.mean_deviance;
  out["acceptance"] = {{"tau", s.tau_accept},
                       {"c", s.c_accept},
                       {"phi", s.phi_accept}};
  std::ofstream js(a.out_prefix + ".summary.json");
  if (!js) throw std::runtime_error("cannot write summary JSON");
  js << out.dump(2) << "\n";

  std::cout << "fit " << family_name(spec.family) << ": n=" << d.n()
            << " p=" << d.p() << " K=" << d.K() << ", retained "
            << s.retained() << " draws -> " << a.out_prefix << ".*\n";
  return 0;
}

json load_summary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fit summary: " + path);
  json j;
  in >> j;
  return j;
}

int cmd_predict(const std::string& fit_path, const DataArgs& data,
                const std::string& out_path, bool no_destandardize) {
  json fit = load_summary(fit_path);
  const Eigen::MatrixXd B = matrix_from_json(fit.at("B_mean"));
  CsvTable xt = read_csv(data.x_path, !data.no_header);
  const bool standardized = fit.at("standardized").get<bool>();
  Eigen::MatrixXd P;
  if (standardized && !no_destandardize) {
    Dataset meta;
    meta.standardized = true;
    meta.x_mean = vector_from_json(fit.at("x_mean"));
    meta.x_sd = vector_from_json(fit.at("x_sd"));
    meta.y_mean = vector_from_json(fit.at("y_mean"));
    meta.y_sd = vector_from_json(fit.at("y_sd"));
    P = predict_destandardized(B, xt.values, meta);
  } else {
    P = predict(B, xt.values);
  }
  std::vector<std::string> names;
  for (const auto& n : fit.at("y_names")) names.push_back(n.get<std::string>());
  write_csv(out_path, P, names, stamp(fit.at("seed").get<std::uint64_t>()));
  std::cout << "predict: " << P.rows() << " rows -> " << out_path << "\n";
  return 0;
}

int cmd_rank(const std::string& fit_path, const std::string& out_path) {
  json fit = load_summary(fit_path);
  PosteriorSamples s;
  s.p = fit.at("p").get<Eigen::Index>();
  s.local_mean = vector_from_json(fit.at("local_mean"));
  ModelSpec spec;
  spec.family = family_from_name(fit.at("family").get<std::string>());
  auto ranks = rank_predictors(s, spec);

  std::vector<std::string> x_names;
  for (const auto& n : fit.at("x_names")) x_names.push_back(n.get<std::string>());
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << "# " << stamp(fit.at("seed").get<std::uint64_t>())[0] << "\n";
  out << "rank,predictor,name,local_mean,selected\n";
  out.precision(17);
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    const auto& r = ranks[i];
    const std::string name =
        r.predictor < static_cast<Eigen::Index>(x_names.size())
            ? x_names[static_cast<std::size_t>(r.predictor)]
            : "x" + std::to_string(r.predictor + 1);
    out << (i + 1) << "," << (r.predictor + 1) << "," << name << ","
        << r.local_mean << "," << (r.selected ? 1 : 0) << "\n";
  }
  std::cout << "rank: " << ranks.size() << " predictors -> " << out_path
            << "\n";
  return 0;
}

int cmd_dic(const std::string& draws_path, const DataArgs& data,
            bool no_standardize, const std::string& out_path) {
  PosteriorSamples s = load_draws(draws_path);
  Dataset raw = load_dataset(data);
  Dataset d = no_standardize ? raw : standardize(raw);
  DicResult r = dic(s, d);
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << "# " << stamp(s.seed)[0] << "\n";
  out << "metric,value\n";
  out.precision(17);
  out << "d_at_mean," << r.d_at_mean << "\n";
  out << "mean_deviance," << r.mean_deviance << "\n";
  out << "p_d," << r.p_d << "\n";
  out << "dic," << r.dic << "\n";
  std::cout << "dic: DIC=" << r.dic << " (D=" << r.d_at_mean
            << ", p_D=" << r.p_d << ") -> " << out_path << "\n";
  return 0;
}

Scenario scenario_from_name(const std::string& s) {
  if (s == "b0" || s == "B0") return Scenario::B0;
  if (s == "b1" || s == "B1") return Scenario::B1;
  throw std::invalid_argument("unknown scenario (use b0 or b1): " + s);
}

struct SimulateArgs {
  long n = 500, n_test = 500;
  long p = 20, K = 10;
  std::string scenario = "b0";
  double psi_offdiag = 0.5;
  std::uint64_t seed = 1;
  std::string out_prefix;
};

int cmd_simulate(const SimulateArgs& a) {
  const TruthMatrix truth = make_truth(scenario_from_name(a.scenario), a.p, a.K);
  RngStream root(a.seed);
  RngStream train_rng = root.substream(1);
  RngStream test_rng = root.substream(2);
  const Eigen::MatrixXd X = make_design(a.n, a.p, train_rng);
  const Eigen::MatrixXd Y = gen_responses(X, truth, a.psi_offdiag, train_rng);
  const Eigen::MatrixXd Xt = make_design(a.n_test, a.p, test_rng);
  const Eigen::MatrixXd Yt = gen_responses(Xt, truth, a.psi_offdiag, test_rng);

  std::vector<std::string> xn, yn;
  for (long j = 0; j < a.p; ++j) xn.push_back("x" + std::to_string(j + 1));
  for (long k = 0; k < a.K; ++k) yn.push_back("y" + std::to_string(k + 1));
  const auto hdr = stamp(a.seed);
  write_csv(a.out_prefix + ".X.csv", X, xn, hdr);
  write_csv(a.out_prefix + ".Y.csv", Y, yn, hdr);
  write_csv(a.out_prefix + ".X_test.csv", Xt, xn, hdr);
  write_csv(a.out_prefix + ".Y_test.csv", Yt, yn, hdr);
  write_csv(a.out_prefix + ".B_true.csv", truth.B_true, yn, hdr);
  std::cout << "simulate " << a.scenario << ": n=" << a.n << "+" << a.n_test
            << " p=" << a.p << " K=" << a.K << " -> " << a.out_prefix
            << ".*.csv\n";
  return 0;
}

// Flat key=value config for the experiment subcommand. CLI11's own config
// hook is attached per-app but only processed for the root command, so a
// subcommand-level set_config never fires; parse the file directly instead.
std::map<std::string, std::string> parse_flat_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::map<std::string, std::string> out;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               " is not key=value");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

struct ExperimentArgs {
  long n = 500, n_test = 500;
  long p = 20, K = 10;
  std::string scenario = "b0";
  double psi_offdiag = 0.5;
  long replicates = 10;
  long iterations = 9000, burn_in = 1000, thin = 10;
  std::uint64_t seed = 1;
  std::string families = "mong,mohs,modl,naive-ng,naive-hs,naive-dl,none";
  std::string out_prefix;
  bool quiet = false;
};

// Layer config-file values under command-line flags: a key only applies when
// the corresponding flag was not given.
void apply_experiment_config(const std::string& path, const CLI::App& cmd,
                             ExperimentArgs& a) {
  const auto kv = parse_flat_config(path);
  for (const auto& [key, value] : kv) {
    const std::string flag = "--" + key;
    bool known = true;
    try {
      if (cmd.count(flag) > 0) continue;  // flag wins
    } catch (const CLI::OptionNotFound&) {
      known = false;
    }
    if (!known) throw std::runtime_error("unknown config key: " + key);
    if (key == "n") a.n = std::stol(value);
    else if (key == "n-test") a.n_test = std::stol(value);
    else if (key == "p") a.p = std::stol(value);
    else if (key == "K") a.K = std::stol(value);
    else if (key == "scenario") a.scenario = value;
    else if (key == "psi-offdiag") a.psi_offdiag = std::stod(value);
    else if (key == "replicates") a.replicates = std::stol(value);
    else if (key == "iterations") a.iterations = std::stol(value);
    else if (key == "burn-in") a.burn_in = std::stol(value);
    else if (key == "thin") a.thin = std::stol(value);
    else if (key == "seed") a.seed = std::stoull(value);
    else if (key == "families") a.families = value;
    else if (key == "out-prefix") a.out_prefix = value;
    else if (key == "quiet") a.quiet = (value == "true" || value == "1");
    else throw std::runtime_error("unknown config key: " + key);
  }
}

int cmd_experiment(const ExperimentArgs& a) {
  SimConfig cfg;
  cfg.n = a.n;
  cfg.n_test = a.n_test;
  cfg.p = a.p;
  cfg.K = a.K;
  cfg.scenario = scenario_from_name(a.scenario);
  cfg.psi_offdiag = a.psi_offdiag;
  cfg.replicates = a.replicates;
  cfg.iterations = a.iterations;
  cfg.burn_in = a.burn_in;
  cfg.thin = a.thin;
  cfg.seed = a.seed;
  std::stringstream ss(a.families);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    ModelSpec spec;
    spec.family = family_from_name(tok);
    cfg.families.push_back(spec);
  }

  auto progress = [&](long rep, const std::string& fam) {
    if (!a.quiet) {
      std::cerr << "replicate " << (rep + 1) << "/" << cfg.replicates << " "
                << fam << "\n";
    }
  };
  ExperimentTable t = run_experiment(cfg, progress);

  const auto hdr = stamp(a.seed);
  {
    std::ofstream out(a.out_prefix + ".table.csv");
    if (!out) throw std::runtime_error("cannot write experiment table");
    out << "# " << hdr[0] << "\n";
    out << "family,mspe,sse_all,sse_nonzero,sse_zero\n";
    out.precision(17);
    for (std::size_t f = 0; f < t.family.size(); ++f) {
      out << t.family[f] << "," << t.mspe[f] << "," << t.sse_all[f] << ","
          << t.sse_nonzero[f] << "," << t.sse_zero[f] << "\n";
    }
  }
  {
    std::ofstream out(a.out_prefix + ".replicates.csv");
    if (!out) throw std::runtime_error("cannot write replicate table");
    out << "# " << hdr[0] << "\n";
    out << "replicate,family,mspe,sse_all,sse_nonzero,sse_zero\n";
    out.precision(17);
    for (const auto& r : t.replicate_results) {
      out << (r.replicate + 1) << "," << r.family << "," << r.mspe << ","
          << r.sse.all << "," << r.sse.nonzero << "," << r.sse.zero << "\n";
    }
  }
  std::cout << "experiment: " << t.family.size() << " families x "
            << cfg.replicates << " replicates -> " << a.out_prefix << ".*\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moshrink: Bayesian multi-outcome regression with shared "
               "global-local shrinkage"};
  app.set_version_flag("--version", "moshrink " + version_string());
  app.require_subcommand(1);

  FitArgs fit_args;
  auto* fit = app.add_subcommand("fit", "Run the MCMC sampler on a dataset");
  add_fit_options(fit, fit_args);

  std::string fit_path, out_path;
  DataArgs pred_data;
  bool no_destandardize = false;
  auto* pred = app.add_subcommand("predict", "Predict responses from a fit");
  pred->add_option("--fit", fit_path, "Path to <prefix>.summary.json")
      ->required();
  pred->add_option("--x", pred_data.x_path, "New predictor CSV")->required();
  pred->add_flag("--no-header", pred_data.no_header, "CSV has no header row");
  pred->add_flag("--no-destandardize", no_destandardize,
                 "Keep predictions on the standardized scale");
  pred->add_option("--out", out_path, "Output CSV")->required();

  std::string rank_fit, rank_out;
  auto* rank = app.add_subcommand(
      "rank", "Order predictors by posterior local shrinkage");
  rank->add_option("--fit", rank_fit, "Path to <prefix>.summary.json")
      ->required();
  rank->add_option("--out", rank_out, "Output CSV")->required();

  std::string dic_draws, dic_out;
  DataArgs dic_data;
  bool dic_no_standardize = false;
  auto* dic_cmd =
      app.add_subcommand("dic", "Deviance information criterion of a fit");
  dic_cmd->add_option("--draws", dic_draws, "Path to <prefix>.draws.bin")
      ->required();
  add_data_options(dic_cmd, dic_data);
  dic_cmd->add_flag("--no-standardize", dic_no_standardize,
                    "Data was fit with --no-standardize");
  dic_cmd->add_option("--out", dic_out, "Output CSV")->required();

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "Generate a synthetic dataset");
  sim->add_option("--n", sim_args.n)->check(CLI::PositiveNumber);
  sim->add_option("--n-test", sim_args.n_test)->check(CLI::PositiveNumber);
  sim->add_option("--p", sim_args.p)->check(CLI::PositiveNumber);
  sim->add_option("--K", sim_args.K)->check(CLI::PositiveNumber);
  sim->add_option("--scenario", sim_args.scenario, "b0 or b1");
  sim->add_option("--psi-offdiag", sim_args.psi_offdiag,
                  "Equicorrelation of the noise");
  sim->add_option("--seed", sim_args.seed);
  sim->add_option("--out-prefix", sim_args.out_prefix)->required();

  ExperimentArgs exp_args;
  auto* exp = app.add_subcommand(
      "experiment", "Replicate study across families (config file + flags)");
  std::string exp_config;
  exp->add_option("--config", exp_config, "Flat key=value config file");
  exp->add_option("--n", exp_args.n)->check(CLI::PositiveNumber);
  exp->add_option("--n-test", exp_args.n_test)->check(CLI::PositiveNumber);
  exp->add_option("--p", exp_args.p)->check(CLI::PositiveNumber);
  exp->add_option("--K", exp_args.K)->check(CLI::PositiveNumber);
  exp->add_option("--scenario", exp_args.scenario, "b0 or b1");
  exp->add_option("--psi-offdiag", exp_args.psi_offdiag);
  exp->add_option("--replicates", exp_args.replicates)
      ->check(CLI::PositiveNumber);
  exp->add_option("--iterations", exp_args.iterations)
      ->check(CLI::PositiveNumber);
  exp->add_option("--burn-in", exp_args.burn_in)->check(CLI::NonNegativeNumber);
  exp->add_option("--thin", exp_args.thin)->check(CLI::PositiveNumber);
  exp->add_option("--seed", exp_args.seed);
  exp->add_option("--families", exp_args.families,
                  "Comma-separated family list");
  exp->add_option("--out-prefix", exp_args.out_prefix);
  exp->add_flag("--quiet", exp_args.quiet, "Suppress progress lines");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fit->parsed()) return cmd_fit(fit_args);
    if (pred->parsed())
      return cmd_predict(fit_path, pred_data, out_path, no_destandardize);
    if (rank->parsed()) return cmd_rank(rank_fit, rank_out);
    if (dic_cmd->parsed())
      return cmd_dic(dic_draws, dic_data, dic_no_standardize, dic_out);
    if (sim->parsed()) return cmd_simulate(sim_args);
    if (exp->parsed()) {
      if (!exp_config.empty()) {
        apply_experiment_config(exp_config, *exp, exp_args);
      }
      if (exp_args.out_prefix.empty()) {
        throw std::invalid_argument("--out-prefix is required (flag or config)");
      }
      return cmd_experiment(exp_args);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
