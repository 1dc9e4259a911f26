#include "moshrink/draws_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <stdexcept>

namespace moshrink {

namespace {

constexpr char kMagic[8] = {'M', 'O', 'S', 'H', 'D', 'R', 'W', '1'};

struct Header {
  char magic[8];
  std::uint32_t family;
  std::uint32_t has_c;
  std::uint64_t p, K, local_len, tau_len, n_draws;
  std::uint64_t iterations, burn_in, thin, seed, accum_count;
  double mean_deviance;
};

void write_mat(std::ofstream& out, const Eigen::MatrixXd& M) {
  // row-major on disk
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      const double v = M(i, j);
      out.write(reinterpret_cast<const char*>(&v), sizeof(double));
    }
  }
}

Eigen::MatrixXd read_mat(std::ifstream& in, Eigen::Index rows,
                         Eigen::Index cols) {
  Eigen::MatrixXd M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      double v;
      in.read(reinterpret_cast<char*>(&v), sizeof(double));
      M(i, j) = v;
    }
  }
  return M;
}

}  // namespace

void save_draws(const std::string& path, const PosteriorSamples& s) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);

  Header h{};
  std::memcpy(h.magic, kMagic, 8);
  h.family = static_cast<std::uint32_t>(s.family);
  h.has_c = s.c_draws.empty() ? 0 : 1;
  h.p = static_cast<std::uint64_t>(s.p);
  h.K = static_cast<std::uint64_t>(s.K);
  h.local_len = s.local_draws.empty()
                    ? 0
                    : static_cast<std::uint64_t>(s.local_draws.front().size());
  h.tau_len = s.tau_draws.empty()
                  ? 0
                  : static_cast<std::uint64_t>(s.tau_draws.front().size());
  h.n_draws = static_cast<std::uint64_t>(s.retained());
  h.iterations = static_cast<std::uint64_t>(s.iterations);
  h.burn_in = static_cast<std::uint64_t>(s.burn_in);
  h.thin = static_cast<std::uint64_t>(s.thin);
  h.seed = s.seed;
  h.accum_count = static_cast<std::uint64_t>(s.accum_count);
  h.mean_deviance = s.mean_deviance;
  out.write(reinterpret_cast<const char*>(&h), sizeof(h));

  for (long d = 0; d < s.retained(); ++d) {
    write_mat(out, s.B_draws[static_cast<std::size_t>(d)]);
    write_mat(out, s.Psi_draws[static_cast<std::size_t>(d)]);
    if (h.local_len) write_mat(out, s.local_draws[static_cast<std::size_t>(d)]);
    if (h.tau_len) write_mat(out, s.tau_draws[static_cast<std::size_t>(d)]);
    if (h.has_c) {
      const double c = s.c_draws[static_cast<std::size_t>(d)];
      out.write(reinterpret_cast<const char*>(&c), sizeof(double));
    }
  }
  // streaming summaries after the draw block
  write_mat(out, s.B_mean);
  write_mat(out, s.Psi_mean);
  if (h.local_len) write_mat(out, s.local_mean);
  if (h.tau_len) write_mat(out, s.tau_mean);
  const double cm = s.c_mean;
  out.write(reinterpret_cast<const char*>(&cm), sizeof(double));
}

PosteriorSamples load_draws(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  Header h{};
  in.read(reinterpret_cast<char*>(&h), sizeof(h));
  if (!in || std::memcmp(h.magic, kMagic, 8) != 0) {
    throw std::runtime_error("not a draws file: " + path);
  }
  PosteriorSamples s;
  s.family = static_cast<Family>(h.family);
  s.p = static_cast<Eigen::Index>(h.p);
  s.K = static_cast<Eigen::Index>(h.K);
  s.iterations = static_cast<long>(h.iterations);
  s.burn_in = static_cast<long>(h.burn_in);
  s.thin = static_cast<long>(h.thin);
  s.seed = h.seed;
  s.accum_count = static_cast<long>(h.accum_count);
  s.mean_deviance = h.mean_deviance;

  const auto p = s.p, K = s.K;
  for (std::uint64_t d = 0; d < h.n_draws; ++d) {
    s.B_draws.push_back(read_mat(in, p, K));
    s.Psi_draws.push_back(read_mat(in, K, K));
    if (h.local_len) {
      s.local_draws.push_back(
          read_mat(in, static_cast<Eigen::Index>(h.local_len), 1));
    }
    if (h.tau_len) {
      s.tau_draws.push_back(
          read_mat(in, static_cast<Eigen::Index>(h.tau_len), 1));
    }
    if (h.has_c) {
      double c;
      in.read(reinterpret_cast<char*>(&c), sizeof(double));
      s.c_draws.push_back(c);
    }
  }
  s.B_mean = read_mat(in, p, K);
  s.Psi_mean = read_mat(in, K, K);
  if (h.local_len)
    s.local_mean = read_mat(in, static_cast<Eigen::Index>(h.local_len), 1);
  if (h.tau_len)
    s.tau_mean = read_mat(in, static_cast<Eigen::Index>(h.tau_len), 1);
  in.read(reinterpret_cast<char*>(&s.c_mean), sizeof(double));
  if (!in) throw std::runtime_error("truncated draws file: " + path);
  return s;
}

void export_draws_csv(const std::string& path, const PosteriorSamples& s) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << std::setprecision(17);

  out << "draw";
  for (Eigen::Index j = 0; j < s.p; ++j) {
    for (Eigen::Index k = 0; k < s.K; ++k) {
      out << ",B_" << (j + 1) << "_" << (k + 1);
    }
  }
  for (Eigen::Index a = 0; a < s.K; ++a) {
    for (Eigen::Index b = 0; b < s.K; ++b) {
      out << ",Psi_" << (a + 1) << "_" << (b + 1);
    }
  }
  const Eigen::Index nl =
      s.local_draws.empty() ? 0 : s.local_draws.front().size();
  for (Eigen::Index j = 0; j < nl; ++j) out << ",local_" << (j + 1);
  const Eigen::Index nt = s.tau_draws.empty() ? 0 : s.tau_draws.front().size();
  for (Eigen::Index k = 0; k < nt; ++k) out << ",tau_" << (k + 1);
  if (!s.c_draws.empty()) out << ",c";
  out << "\n";

  for (long d = 0; d < s.retained(); ++d) {
    const auto ud = static_cast<std::size_t>(d);
    out << d;
    for (Eigen::Index j = 0; j < s.p; ++j) {
      for (Eigen::Index k = 0; k < s.K; ++k) out << "," << s.B_draws[ud](j, k);
    }
    for (Eigen::Index a = 0; a < s.K; ++a) {
      for (Eigen::Index b = 0; b < s.K; ++b)
        out << "," << s.Psi_draws[ud](a, b);
    }
    for (Eigen::Index j = 0; j < nl; ++j) out << "," << s.local_draws[ud][j];
    for (Eigen::Index k = 0; k < nt; ++k) out << "," << s.tau_draws[ud][k];
    if (!s.c_draws.empty()) out << "," << s.c_draws[ud];
    out << "\n";
  }
}

}  // namespace moshrink
